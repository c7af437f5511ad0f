/*
* Copyright (C) 2026 The sveiqhr authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#ifndef SVEIQHR_TESTS_ORACLES_HPP
#define SVEIQHR_TESTS_ORACLES_HPP

// Reference computations written independently of the library's closed forms, plus
// values frozen from 40-digit mpmath evaluations of the same model.

#include "sveiqhr/parameters.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <cmath>
#include <random>

namespace oracle
{

using Real = boost::multiprecision::cpp_bin_float_50;

/// Parameters in extended precision, in declaration order.
struct Params {
    std::array<Real, sveiqhr::num_parameters> v;

    explicit Params(const sveiqhr::ParameterValues& pv)
    {
        for (auto p : sveiqhr::all_parameters) {
            v[static_cast<std::size_t>(p)] = Real(pv[p]);
        }
    }
    Real& operator[](sveiqhr::Parameter p)
    {
        return v[static_cast<std::size_t>(p)];
    }
    const Real& operator[](sveiqhr::Parameter p) const
    {
        return v[static_cast<std::size_t>(p)];
    }
};

using P = sveiqhr::Parameter;

/// The seven balance equations, transcribed term by term.
inline std::array<Real, 7> rhs(const std::array<Real, 7>& x, const Params& q)
{
    const auto& [S, V, E, I, Q, H, R] = x;
    const Real inf_s = (1 - q[P::U2]) * q[P::Beta] * S * I;
    const Real inf_v = (1 - q[P::Delta]) * q[P::Beta] * V * I;
    return {
        q[P::Lambda] + q[P::Alpha] * R - inf_s - q[P::U1] * S - q[P::Mu] * S,
        q[P::U1] * S - inf_v - q[P::Mu] * V,
        inf_s + inf_v - q[P::Theta] * E - q[P::U3] * E - q[P::Mu] * E,
        q[P::Theta] * E - (q[P::Gamma] + q[P::U4] + q[P::U5] + q[P::Mu] + q[P::MuPrime]) * I,
        q[P::LambdaPrime] + q[P::U3] * E + q[P::U4] * I - (q[P::Kappa] + q[P::Tau] + q[P::Mu]) * Q,
        q[P::Tau] * Q + q[P::U5] * I - (q[P::Phi] + q[P::Mu] + q[P::MuPrime]) * H,
        q[P::Gamma] * I - q[P::Alpha] * R + q[P::Kappa] * Q + q[P::Phi] * H - q[P::Mu] * R,
    };
}

/// Infection-free steady state solved compartment by compartment, Q first.
inline std::array<Real, 7> disease_free_state(const Params& q)
{
    const Real Qs = q[P::LambdaPrime] / (q[P::Kappa] + q[P::Tau] + q[P::Mu]);
    const Real Hs = q[P::Tau] * Qs / (q[P::Phi] + q[P::Mu] + q[P::MuPrime]);
    const Real Rs = (q[P::Kappa] * Qs + q[P::Phi] * Hs) / (q[P::Alpha] + q[P::Mu]);
    const Real Ss = (q[P::Lambda] + q[P::Alpha] * Rs) / (q[P::U1] + q[P::Mu]);
    const Real Vs = q[P::U1] * Ss / q[P::Mu];
    return {Ss, Vs, Real(0), Real(0), Qs, Hs, Rs};
}

/**
 * Expected secondary infections: new E per unit I at the disease-free state, times the
 * probability an exposed individual becomes infectious, times the mean infectious period.
 */
inline Real r0(const Params& q)
{
    const auto x             = disease_free_state(q);
    const Real new_exposed   = q[P::Beta] * ((1 - q[P::U2]) * x[0] + (1 - q[P::Delta]) * x[1]);
    const Real leave_e       = q[P::Theta] + q[P::U3] + q[P::Mu];
    const Real leave_i       = q[P::Gamma] + q[P::U4] + q[P::U5] + q[P::Mu] + q[P::MuPrime];
    return new_exposed * (q[P::Theta] / leave_e) / leave_i;
}

inline double r0(const sveiqhr::ParameterValues& pv)
{
    return static_cast<double>(r0(Params(pv)));
}

/// p d(ln R0)/dp by a central difference in 50-digit arithmetic.
inline double sensitivity(const sveiqhr::ParameterValues& pv, sveiqhr::Parameter which)
{
    Params q(pv);
    const Real p0 = q[which];
    if (p0 == 0) {
        return 0.0;
    }
    const Real h = p0 * Real("1e-18");
    q[which]     = p0 + h;
    const Real up = log(r0(q));
    q[which]      = p0 - h;
    const Real dn = log(r0(q));
    return static_cast<double>(p0 * (up - dn) / (2 * h));
}

/// Jacobian column by central differences of the transcribed equations.
inline std::array<std::array<double, 7>, 7> jacobian(const std::array<double, 7>& x0, const sveiqhr::ParameterValues& pv)
{
    const Params q(pv);
    std::array<std::array<double, 7>, 7> J{};
    for (std::size_t c = 0; c < 7; ++c) {
        std::array<Real, 7> up, dn;
        for (std::size_t i = 0; i < 7; ++i) {
            up[i] = dn[i] = Real(x0[i]);
        }
        const Real h = Real("1e-20") * (1 + abs(Real(x0[c])));
        up[c] += h;
        dn[c] -= h;
        const auto fu = rhs(up, q), fd = rhs(dn, q);
        for (std::size_t r = 0; r < 7; ++r) {
            J[r][c] = static_cast<double>((fu[r] - fd[r]) / (2 * h));
        }
    }
    return J;
}

//----------------------------------------------------------------------------------------------
// frozen high-precision values

inline constexpr double r0_disease_free_set = 0.992162149865007;
inline constexpr double r0_endemic_set      = 4.91423698549839;
inline constexpr double r0_no_vaccination   = 14.1604538621503; ///< u1 = 0, u2 = 0

struct Intercepts {
    double delta, l1, l3;
};
inline constexpr double l2 = 0.929380794589;
inline constexpr std::array<Intercepts, 4> intercepts = {{
    {0.653, -0.000141735817013, 1.07698274313e-5},
    {0.9, -0.00133328789351, 0.000101310175734},
    {0.93, 0.0632634293087, -0.00480708568043},
    {0.3, -6.22406308938e-5, 4.72936811646e-6},
}};

/// Endemic equilibrium of the endemic reference set.
inline constexpr std::array<double, 7> endemic_point = {829909.09417556722, 68318226.10535203, 374873.38814474942,
                                                        292617.13808245415, 2528320.6155966513, 58494.225760622389,
                                                        29889772.614037491};
inline constexpr std::array<double, 2> endemic_roots          = {-11643165.4059627, 292617.138082454};
inline constexpr std::array<double, 2> disease_free_set_roots = {-3902.45678559554, -1900.2588785038};

/// Sampled non-healthy counts from an 8th-order integration with relative tolerance 1e-13.
struct TrajectoryReference {
    double delta;
    double peak_day, peak, day365, day730;
};
inline constexpr std::array<TrajectoryReference, 3> trajectories = {{
    {0.653, 17.0, 176215493.59940073, 17849960.41554778, 15848194.863364534},
    {0.9, 114.0, 7858859.444234593, 3135554.1176136783, 2935274.029000231},
    {0.93, 14.0, 240382.20211223917, 27583.41335478995, 27583.413329177183},
}};

//----------------------------------------------------------------------------------------------
// reference values quoted to ten decimals

/// Bar labels of the two sensitivity charts, in declaration order.
inline constexpr std::array<double, 17> labels_disease_free = {
    0.7947142143,  0.2052857854,  -1.0019299760, -0.0574065790, 1.0000000000,  -0.0022106037,
    0.0007836083,  0.5555763692,  -0.1951439788, 0.0006205788,  0.0006557000,  -0.0005770690,
    0.0009375069,  -13.2701075492, -0.5555295385, -0.5854319365, -0.1625549344};
inline constexpr std::array<double, 17> labels_endemic = {
    0.7947142143, 0.2052857854, -1.0019299760, -0.0574065790, 1.0000000000,  -1.8814318750,
    0.0007836083, 0.5555763692, -0.1951439788, 0.0006205788,  0.0006557000,  -0.0005770690,
    -0.0001138399, -0.0000844022, -0.5555295385, -0.5854319365, -0.1625549344};

inline const std::array<sveiqhr::Parameter, 17> ordering_disease_free = {
    P::U2, P::Mu, P::Beta, P::Lambda, P::U4, P::Theta, P::U3, P::LambdaPrime, P::Gamma,
    P::U5, P::MuPrime, P::Delta, P::U1, P::Alpha, P::Kappa, P::Phi, P::Tau};
inline const std::array<sveiqhr::Parameter, 17> ordering_endemic = {
    P::Delta, P::Mu, P::Beta, P::Lambda, P::U4, P::Theta, P::U3, P::LambdaPrime, P::Gamma,
    P::U5, P::MuPrime, P::Alpha, P::Kappa, P::Phi, P::Tau, P::U1, P::U2};

inline constexpr double quoted_l2 = 0.9293807942;
inline constexpr std::array<Intercepts, 3> quoted_intercepts = {{
    {0.653, -0.0001417358, 0.0000107698},
    {0.9, -0.0013332879, 0.0001013102},
    {0.93, 0.0632634203, -0.0048070860},
}};
inline constexpr double quoted_r0_disease_free_set = 0.9921621498;
inline constexpr double quoted_r0_endemic_set      = 4.9142369856;
inline constexpr double quoted_no_vaccination_r0   = 14.1604538645;

} // namespace oracle

#endif // SVEIQHR_TESTS_ORACLES_HPP
