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
#ifndef SVEIQHR_EQUILIBRIUM_HPP
#define SVEIQHR_EQUILIBRIUM_HPP

#include "sveiqhr/errors.hpp"
#include "sveiqhr/model.hpp"
#include "sveiqhr/parameters.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string_view>
#include <vector>

namespace sveiqhr
{

/// Real-part dead band (1/day) below which an eigenvalue is treated as neither stable nor unstable.
inline constexpr double stability_dead_band = 1e-10;

/// Relative rhs residual an equilibrium must satisfy.
inline constexpr double equilibrium_residual_tolerance = 1e-8;

enum class EquilibriumKind { DiseaseFree, Endemic };

enum class Verdict { LocallyAsymptoticallyStable, Unstable, Marginal };

inline constexpr std::string_view to_string(EquilibriumKind kind)
{
    return kind == EquilibriumKind::DiseaseFree ? "disease-free" : "endemic";
}

inline constexpr std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::LocallyAsymptoticallyStable:
        return "locally-asymptotically-stable";
    case Verdict::Unstable:
        return "unstable";
    case Verdict::Marginal:
        return "marginal";
    }
    return "marginal";
}

using Eigenvalues = std::array<std::complex<double>, num_compartments>;

struct EquilibriumReport {
    State point;
    EquilibriumKind kind = EquilibriumKind::DiseaseFree;
    double r0            = 0.0;
    Eigenvalues eigenvalues{};
    Verdict verdict   = Verdict::Marginal;
    double residual   = 0.0; ///< relative rhs residual at point
};

/// Eigenvalues sorted by decreasing real part.
inline Eigenvalues eigenvalues_of(const Matrix7& J)
{
    Eigen::EigenSolver<Matrix7> solver(J, false);
    Eigenvalues ev;
    for (std::size_t i = 0; i < num_compartments; ++i) {
        ev[i] = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    }
    std::sort(ev.begin(), ev.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
    });
    return ev;
}

inline Verdict classify(const Eigenvalues& ev)
{
    const double max_real =
        std::max_element(ev.begin(), ev.end(), [](auto a, auto b) { return a.real() < b.real(); })->real();
    if (max_real > stability_dead_band) {
        return Verdict::Unstable;
    }
    if (max_real < -stability_dead_band) {
        return Verdict::LocallyAsymptoticallyStable;
    }
    return Verdict::Marginal;
}

/// Closed form: (k6, u1 k6/mu, 0, 0, lambda'/k3, tau lambda'/(k3 k4), lambda'(kappa k4 + phi tau)/(k3 k4 k5)).
inline State disease_free_equilibrium(const ModelParameters& p)
{
    const auto k = derive_constants(p);
    State s;
    s.S = k.k6;
    s.V = p.u1() * k.k6 / p.mu();
    s.E = 0.0;
    s.I = 0.0;
    s.Q = p.lambda_prime() / k.k3;
    s.H = p.tau() * p.lambda_prime() / (k.k3 * k.k4);
    s.R = p.lambda_prime() * (p.kappa() * k.k4 + p.phi() * p.tau()) / (k.k3 * k.k4 * k.k5);
    return s;
}

/**
 * New-infection and transition matrices of the infected subsystem (E, I, Q, H),
 * linearised at the disease-free equilibrium.
 */
struct NgmPair {
    Eigen::Matrix4d F = Eigen::Matrix4d::Zero();
    Eigen::Matrix4d V = Eigen::Matrix4d::Zero();
};

inline NgmPair ngm(const ModelParameters& p)
{
    const auto k = derive_constants(p);
    NgmPair m;
    m.F(0, 1) = (1.0 - p.u2()) * p.beta() * k.k6 + (1.0 - p.delta()) * p.beta() * p.u1() * k.k6 / p.mu();

    // E leaves at theta + u3 + mu, so the E-E entry is k1
    m.V(0, 0) = k.k1;
    m.V(1, 0) = -p.theta();
    m.V(1, 1) = k.k2;
    m.V(2, 0) = -p.u3();
    m.V(2, 1) = -p.u4();
    m.V(2, 2) = k.k3;
    m.V(3, 1) = -p.u5();
    m.V(3, 2) = -p.tau();
    m.V(3, 3) = k.k4;
    return m;
}

/// Basic reproduction number, theta beta k6 (mu (1-u2) + (1-delta) u1) / (k1 k2 mu).
inline double compute_r0(const ModelParameters& p)
{
    const auto k = derive_constants(p);
    return p.theta() * p.beta() * k.k6 * (p.mu() * (1.0 - p.u2()) + (1.0 - p.delta()) * p.u1()) /
           (k.k1 * k.k2 * p.mu());
}

/// Coefficients of the x^2 + b x + c factor of the characteristic polynomial at the DFE.
struct QuadraticFactor {
    double b = 0.0;
    double c = 0.0;
};

inline QuadraticFactor dfe_quadratic_factor(const ModelParameters& p)
{
    const auto k      = derive_constants(p);
    const double mu   = p.mu();
    const double rest = p.gamma() + p.u4() + p.u5() + p.mu_prime();

    QuadraticFactor q;
    q.b = 2.0 * mu + p.gamma() + p.theta() + p.u3() + p.u4() + p.u5() + p.mu_prime();
    q.c = mu * mu + (p.gamma() + p.theta() + p.u3() + p.u4() + p.u5() + p.mu_prime()) * mu +
          ((p.u2() - 1.0) * p.beta() * k.k6 + rest) * p.theta() + p.u3() * rest +
          p.beta() * p.theta() * k.k6 * p.u1() * (p.delta() - 1.0) / mu;
    return q;
}

/// The five eigenvalues at the DFE that do not depend on transmission: -mu, -u1-mu, -k3, -k4, -k5.
inline std::array<double, 5> dfe_fixed_eigenvalues(const ModelParameters& p)
{
    const auto k = derive_constants(p);
    return {-p.mu(), -p.u1() - p.mu(), -k.k3, -k.k4, -k.k5};
}

struct DfeStability {
    EquilibriumReport report;
    QuadraticFactor factor;
};

/**
 * Local stability of the disease-free equilibrium from the eigenvalues of the analytic
 * Jacobian. The verdict agrees with the threshold R0 = 1 whenever R0 is away from 1;
 * c has the sign of 1 - R0.
 */
inline DfeStability dfe_stability(const ModelParameters& p)
{
    DfeStability out;
    auto& r       = out.report;
    r.point       = disease_free_equilibrium(p);
    r.kind        = EquilibriumKind::DiseaseFree;
    r.r0          = compute_r0(p);
    r.eigenvalues = eigenvalues_of(jacobian(r.point, p));
    r.verdict     = classify(r.eigenvalues);
    r.residual    = relative_residual(r.point.to_vector(), p);
    out.factor    = dfe_quadratic_factor(p);
    return out;
}

/// Coefficients of d I^2 + e I + f whose roots are the infected levels of candidate endemic equilibria.
struct EndemicCoefficients {
    double d = 0.0;
    double e = 0.0;
    double f = 0.0;
};

inline EndemicCoefficients endemic_coefficients(const ModelParameters& p)
{
    const auto k = derive_constants(p);
    const double mu = p.mu(), alpha = p.alpha(), beta = p.beta(), kappa = p.kappa(), theta = p.theta(),
                 lp = p.lambda_prime(), tau = p.tau(), phi = p.phi(), lambda = p.lambda(), delta = p.delta(),
                 u1 = p.u1(), u2 = p.u2(), u3 = p.u3(), u4 = p.u4(), u5 = p.u5(), gamma = p.gamma();
    const double k1 = k.k1, k2 = k.k2, k3 = k.k3, k4 = k.k4, k5 = k.k5;
    const double k12345 = k1 * k2 * k3 * k4 * k5;

    // recurring groups
    const double x = u4 * (u2 - 1.0) * mu + (u1 * u4 - beta * lp * (u2 - 1.0)) * (delta - 1.0);
    const double y = (u2 - 1.0) * mu + u1 * (delta - 1.0);
    const double g = (1.0 - u2) * mu + u1 * (1.0 - delta);

    EndemicCoefficients c;
    c.d = (1.0 - delta) * theta * (1.0 - u2) * beta * beta *
          ((((gamma * k3 + kappa * u4) * k4 + phi * (k3 * u5 + tau * u4)) * theta + u3 * k2 * (k4 * kappa + tau * phi)) *
               alpha -
           k12345);
    // (delta + u2 - 2) follows from eliminating S between the two S(I) expressions
    c.e = theta *
          (((((gamma * g * k3 - x * kappa) * k4 - phi * (u5 * y * k3 + tau * x)) * theta -
             u3 * k2 * (k4 * kappa + tau * phi) * y) *
                alpha +
            k3 * k4 * k5 *
                (beta * lambda * (u2 - 1.0) * (delta - 1.0) * theta + ((delta + u2 - 2.0) * mu + u1 * (delta - 1.0)) * k1 * k2))) *
          beta;
    c.f = theta * (g * ((alpha * kappa * lp + k3 * k5 * lambda) * k4 + alpha * phi * lp * tau) * beta * theta -
                   k12345 * mu * (mu + u1));
    return c;
}

/**
 * Equilibrium state with infected level I, from the Q, H, R, S, V equilibrium relations
 * and E = k2 I / theta.
 */
inline State endemic_state_from_infected(const ModelParameters& p, double I)
{
    const auto k = derive_constants(p);
    State s;
    s.I = I;
    s.E = k.k2 * I / p.theta();
    const double into_q = p.lambda_prime() + p.u3() * s.E + p.u4() * I;
    s.Q                 = into_q / k.k3;
    s.H                 = (p.tau() / k.k3 * into_q + p.u5() * I) / k.k4;
    s.R = (p.gamma() * I + p.kappa() / k.k3 * into_q + p.phi() / k.k4 * (p.tau() / k.k3 * into_q + p.u5() * I)) / k.k5;
    s.S = (p.lambda() + p.alpha() * s.R) / (p.mu() + p.u1() + (1.0 - p.u2()) * p.beta() * I);
    s.V = p.u1() * s.S / ((1.0 - p.delta()) * p.beta() * I + p.mu());
    return s;
}

enum class RootClass {
    ComplexPair,
    TwoNegative,
    OppositeSigns,
    TwoPositive,
    ZeroRoot,
};

inline constexpr std::string_view to_string(RootClass c)
{
    switch (c) {
    case RootClass::ComplexPair:
        return "complex-pair";
    case RootClass::TwoNegative:
        return "two-negative";
    case RootClass::OppositeSigns:
        return "opposite-signs";
    case RootClass::TwoPositive:
        return "two-positive";
    case RootClass::ZeroRoot:
        return "zero-root";
    }
    return "zero-root";
}

struct EndemicSolveReport {
    double d = 0.0;
    double e = 0.0;
    double f = 0.0;
    double r0 = 0.0;
    std::vector<std::complex<double>> roots;
    RootClass root_class = RootClass::ComplexPair;
    std::optional<State> positive_equilibrium;
    double residual = 0.0; ///< relative rhs residual of positive_equilibrium, 0 if absent
    /// R0 < 1 with two positive real roots: candidate equilibria are reported but not constructed.
    bool needs_review = false;
};

/// Roots of a x^2 + b x + c without cancellation; a must be nonzero.
inline std::vector<std::complex<double>> solve_quadratic(double a, double b, double c)
{
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double q  = -0.5 * (b + std::copysign(sq, b));
        if (q == 0.0) {
            return {0.0, 0.0};
        }
        double r1 = q / a, r2 = c / q;
        if (r1 > r2) {
            std::swap(r1, r2);
        }
        return {r1, r2};
    }
    const double re = -b / (2.0 * a);
    const double im = std::sqrt(-disc) / (2.0 * std::abs(a));
    return {std::complex<double>(re, -im), std::complex<double>(re, im)};
}

inline EndemicSolveReport endemic_equilibrium(const ModelParameters& p)
{
    const auto c = endemic_coefficients(p);
    EndemicSolveReport out;
    out.d  = c.d;
    out.e  = c.e;
    out.f  = c.f;
    out.r0 = compute_r0(p);

    if (std::abs(c.d) < 1e-300) {
        const double linear = c.e != 0.0 ? -c.f / c.e : std::nan("");
        throw DegenerateQuadraticError(linear, "leading coefficient d vanishes (delta = 1 or u2 = 1); linear root " +
                                                   std::to_string(linear));
    }

    // R0 > 1 iff f/d < 0; rounding can only blur this right at the threshold
    if (std::abs(out.r0 - 1.0) > 1e-9 && ((out.r0 > 1.0) != (c.f / c.d < 0.0))) {
        throw Error(ErrorCode::InvariantViolation, "sign of f/d disagrees with R0 - 1");
    }

    out.roots = solve_quadratic(c.d, c.e, c.f);
    if (out.roots[0].imag() != 0.0) {
        out.root_class = RootClass::ComplexPair;
        return out;
    }
    const double lo = out.roots[0].real(), hi = out.roots[1].real();
    if (lo == 0.0 || hi == 0.0) {
        out.root_class = RootClass::ZeroRoot;
    }
    else if (hi < 0.0) {
        out.root_class = RootClass::TwoNegative;
    }
    else if (lo > 0.0) {
        out.root_class = RootClass::TwoPositive;
    }
    else {
        out.root_class = RootClass::OppositeSigns;
    }

    if (out.root_class == RootClass::TwoPositive) {
        out.needs_review = out.r0 < 1.0;
        return out;
    }
    if (out.root_class != RootClass::OppositeSigns) {
        return out;
    }

    const State candidate = endemic_state_from_infected(p, hi);
    const Vector7 x       = candidate.to_vector();
    if ((x.array() > 0.0).all()) {
        out.positive_equilibrium = candidate;
        out.residual             = relative_residual(x, p);
        if (!(out.residual <= equilibrium_residual_tolerance)) {
            throw Error(ErrorCode::InvariantViolation,
                        "endemic equilibrium residual " + std::to_string(out.residual) + " exceeds tolerance");
        }
    }
    return out;
}

/// Eigen-analysis of the positive endemic equilibrium, if one exists.
inline std::optional<EquilibriumReport> endemic_stability(const ModelParameters& p)
{
    const auto solve = endemic_equilibrium(p);
    if (!solve.positive_equilibrium) {
        return std::nullopt;
    }
    EquilibriumReport r;
    r.point       = *solve.positive_equilibrium;
    r.kind        = EquilibriumKind::Endemic;
    r.r0          = solve.r0;
    r.eigenvalues = eigenvalues_of(jacobian(r.point, p));
    r.verdict     = classify(r.eigenvalues);
    r.residual    = solve.residual;
    return r;
}

struct ConsistencyResidual {
    double s_from_infection_balance = 0.0; ///< S from equating the two E relations
    double s_from_recruitment       = 0.0; ///< S from the S equation after back-substitution
    double mismatch                 = 0.0; ///< |difference| relative to the larger of the two
    double rhs_residual             = 0.0; ///< relative rhs residual of the back-substituted state
};

/**
 * Evaluates the two independent expressions of S at an endemic equilibrium with infected
 * level I. At a true root both agree and the back-substituted state is an equilibrium, so
 * this checks the quadratic's coefficients without using them.
 */
inline ConsistencyResidual endemic_consistency_check(const ModelParameters& p, double I)
{
    if (!(I > 0.0)) {
        throw ValidationError("I", "(0,inf)", "infected level must be strictly positive");
    }
    const auto k       = derive_constants(p);
    const double denom = p.beta() * p.theta() *
                         (p.beta() * (1.0 - p.delta()) * (1.0 - p.u2()) * I + (1.0 - p.delta()) * p.u1() +
                          p.mu() * (1.0 - p.u2()));
    if (std::abs(denom) < 1e-300) {
        throw Error(ErrorCode::SingularDenominator, "denominator of S(I) from the infection balance vanishes");
    }
    ConsistencyResidual r;
    r.s_from_infection_balance = k.k1 * k.k2 * (p.mu() + p.beta() * (1.0 - p.delta()) * I) / denom;
    const State s              = endemic_state_from_infected(p, I);
    r.s_from_recruitment       = s.S;
    r.mismatch = std::abs(r.s_from_infection_balance - r.s_from_recruitment) /
                 std::max(std::abs(r.s_from_infection_balance), std::abs(r.s_from_recruitment));
    r.rhs_residual = relative_residual(s.to_vector(), p);
    return r;
}

} // namespace sveiqhr

#endif // SVEIQHR_EQUILIBRIUM_HPP
