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
#ifndef SVEIQHR_MODEL_HPP
#define SVEIQHR_MODEL_HPP

#include "sveiqhr/parameters.hpp"

#include <algorithm>
#include <cmath>

namespace sveiqhr
{

/**
 * Composite rates that recur in the equilibrium and threshold formulas.
 *   k1 = theta + u3 + mu             (exit from E)
 *   k2 = gamma + u4 + u5 + mu + mu'  (exit from I)
 *   k3 = kappa + tau + mu            (exit from Q)
 *   k4 = phi + mu + mu'              (exit from H)
 *   k5 = mu + alpha                  (exit from R)
 *   k6 = susceptible population at the disease-free equilibrium
 * n_cap = (lambda + lambda') / mu bounds the total population of the invariant region.
 */
struct DerivedConstants {
    double k1    = 0.0;
    double k2    = 0.0;
    double k3    = 0.0;
    double k4    = 0.0;
    double k5    = 0.0;
    double k6    = 0.0;
    double n_cap = 0.0;
};

inline DerivedConstants derive_constants(const ModelParameters& p)
{
    DerivedConstants k;
    k.k1 = p.theta() + p.u3() + p.mu();
    k.k2 = p.gamma() + p.u4() + p.u5() + p.mu() + p.mu_prime();
    k.k3 = p.kappa() + p.tau() + p.mu();
    k.k4 = p.phi() + p.mu() + p.mu_prime();
    k.k5 = p.mu() + p.alpha();
    // three-fraction form, term by term
    const double vac_mu = p.u1() + p.mu();
    k.k6 = p.lambda() / vac_mu + p.alpha() * p.lambda_prime() * p.kappa() / (vac_mu * k.k3 * k.k5) +
           p.alpha() * p.lambda_prime() * p.phi() * p.tau() / (vac_mu * k.k3 * k.k4 * k.k5);
    k.n_cap = (p.lambda() + p.lambda_prime()) / p.mu();
    return k;
}

/// Right-hand side (dS, dV, dE, dI, dQ, dH, dR)/dt in individuals per day.
inline Vector7 rhs(const Vector7& x, const ModelParameters& p)
{
    const double S = x[0], V = x[1], E = x[2], I = x[3], Q = x[4], H = x[5], R = x[6];

    const double infect_s = (1.0 - p.u2()) * p.beta() * S * I;
    const double infect_v = (1.0 - p.delta()) * p.beta() * V * I;

    Vector7 dx;
    dx[0] = p.lambda() + p.alpha() * R - infect_s - p.u1() * S - p.mu() * S;
    dx[1] = p.u1() * S - infect_v - p.mu() * V;
    dx[2] = infect_s - p.theta() * E + infect_v - p.u3() * E - p.mu() * E;
    dx[3] = p.theta() * E - p.gamma() * I - p.u4() * I - p.u5() * I - p.mu() * I - p.mu_prime() * I;
    dx[4] = p.lambda_prime() + p.u3() * E + p.u4() * I - p.kappa() * Q - p.tau() * Q - p.mu() * Q;
    dx[5] = p.tau() * Q + p.u5() * I - p.phi() * H - p.mu() * H - p.mu_prime() * H;
    dx[6] = p.gamma() * I - p.alpha() * R + p.kappa() * Q + p.phi() * H - p.mu() * R;
    return dx;
}

inline Vector7 rhs(const State& s, const ModelParameters& p)
{
    return rhs(s.to_vector(), p);
}

/**
 * Per-equation sum of absolute flow terms. Residuals of equilibria are measured against
 * this: a residual is small when it is small compared to the flows that cancel in it.
 */
inline Vector7 flow_magnitude(const Vector7& x, const ModelParameters& p)
{
    const double S = std::abs(x[0]), V = std::abs(x[1]), E = std::abs(x[2]), I = std::abs(x[3]),
                 Q = std::abs(x[4]), H = std::abs(x[5]), R = std::abs(x[6]);
    const double infect_s = (1.0 - p.u2()) * p.beta() * S * I;
    const double infect_v = (1.0 - p.delta()) * p.beta() * V * I;
    const auto k          = derive_constants(p);

    Vector7 m;
    m[0] = p.lambda() + p.alpha() * R + infect_s + (p.u1() + p.mu()) * S;
    m[1] = p.u1() * S + infect_v + p.mu() * V;
    m[2] = infect_s + infect_v + k.k1 * E;
    m[3] = p.theta() * E + k.k2 * I;
    m[4] = p.lambda_prime() + p.u3() * E + p.u4() * I + k.k3 * Q;
    m[5] = p.tau() * Q + p.u5() * I + k.k4 * H;
    m[6] = p.gamma() * I + p.kappa() * Q + p.phi() * H + k.k5 * R;
    return m;
}

/// max_i |rhs_i| / max(1, max_i flow_magnitude_i).
inline double relative_residual(const Vector7& x, const ModelParameters& p)
{
    const double scale = std::max(1.0, flow_magnitude(x, p).maxCoeff());
    return rhs(x, p).cwiseAbs().maxCoeff() / scale;
}

/// Analytic Jacobian of rhs with respect to (S, V, E, I, Q, H, R).
inline Matrix7 jacobian(const Vector7& x, const ModelParameters& p)
{
    const double S = x[0], V = x[1], I = x[3];
    const auto k   = derive_constants(p);

    const double bs = (1.0 - p.u2()) * p.beta();
    const double bv = (1.0 - p.delta()) * p.beta();

    Matrix7 J = Matrix7::Zero();
    // S
    J(0, 0) = -bs * I - p.u1() - p.mu();
    J(0, 3) = -bs * S;
    J(0, 6) = p.alpha();
    // V
    J(1, 0) = p.u1();
    J(1, 1) = -bv * I - p.mu();
    J(1, 3) = -bv * V;
    // E
    J(2, 0) = bs * I;
    J(2, 1) = bv * I;
    J(2, 2) = -k.k1;
    J(2, 3) = bs * S + bv * V;
    // I
    J(3, 2) = p.theta();
    J(3, 3) = -k.k2;
    // Q
    J(4, 2) = p.u3();
    J(4, 3) = p.u4();
    J(4, 4) = -k.k3;
    // H
    J(5, 3) = p.u5();
    J(5, 4) = p.tau();
    J(5, 5) = -k.k4;
    // R
    J(6, 3) = p.gamma();
    J(6, 4) = p.kappa();
    J(6, 5) = p.phi();
    J(6, 6) = -k.k5;
    return J;
}

inline Matrix7 jacobian(const State& s, const ModelParameters& p)
{
    return jacobian(s.to_vector(), p);
}

} // namespace sveiqhr

#endif // SVEIQHR_MODEL_HPP
