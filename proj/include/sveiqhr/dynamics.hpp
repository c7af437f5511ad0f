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
#ifndef SVEIQHR_DYNAMICS_HPP
#define SVEIQHR_DYNAMICS_HPP

#include "sveiqhr/errors.hpp"
#include "sveiqhr/model.hpp"
#include "sveiqhr/parameters.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace sveiqhr
{

enum class IntegrationMethod { Rk4, Rk45 };

inline constexpr std::string_view to_string(IntegrationMethod m)
{
    return m == IntegrationMethod::Rk4 ? "rk4" : "rk45";
}

/**
 * Time stepping setup. rk4 uses a fixed step no larger than `step`, adjusted so that
 * every sample instant is hit exactly; rk45 is Dormand-Prince 5(4) with mixed
 * absolute/relative error control. An unset abs_tol means 1e-8 * (lambda + lambda') / mu.
 */
struct IntegratorConfig {
    IntegrationMethod method = IntegrationMethod::Rk45;
    double step              = 0.01;
    std::optional<double> abs_tol;
    double rel_tol         = 1e-8;
    double horizon         = 365.0;
    double sample_interval = 1.0;

    bool operator==(const IntegratorConfig&) const = default;
};

inline void validate(const IntegratorConfig& c)
{
    auto positive = [](const char* name, double x) {
        if (!(std::isfinite(x) && x > 0.0)) {
            throw ValidationError(name, "(0,inf)", std::string(name) + " must be finite and strictly positive");
        }
    };
    positive("step", c.step);
    if (c.abs_tol) {
        positive("abs_tol", *c.abs_tol);
    }
    positive("rel_tol", c.rel_tol);
    positive("horizon", c.horizon);
    positive("sample_interval", c.sample_interval);
}

/// Dense samples of one integration. non_healthy is E + I + Q + H, total is N.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<double> non_healthy;
    std::vector<double> total;

    std::size_t size() const noexcept
    {
        return times.size();
    }
    bool empty() const noexcept
    {
        return times.empty();
    }
};

/// Unvaccinated population of 273523621 with 1000 infected individuals.
inline State default_initial_state()
{
    State s;
    s.I = 1000.0;
    s.S = table1::initial_population - s.I;
    return s;
}

/// Sample instants 0, dt, 2 dt, ..., with the horizon always included as the last one.
inline std::vector<double> sample_times(double horizon, double interval)
{
    std::vector<double> t{0.0};
    for (std::size_t i = 1;; ++i) {
        const double ti = static_cast<double>(i) * interval;
        if (ti >= horizon * (1.0 - 1e-12)) {
            break;
        }
        t.push_back(ti);
    }
    t.push_back(horizon);
    return t;
}

namespace detail
{

inline Vector7 rk4_step(const Vector7& y, double h, const ModelParameters& p)
{
    const Vector7 a = rhs(y, p);
    const Vector7 b = rhs(y + 0.5 * h * a, p);
    const Vector7 c = rhs(y + 0.5 * h * b, p);
    const Vector7 d = rhs(y + h * c, p);
    return y + h / 6.0 * (a + 2.0 * b + 2.0 * c + d);
}

/// Dormand-Prince tableau.
struct DormandPrince {
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                            a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0,
                            b6 = 11.0 / 84.0;
    // fifth- minus fourth-order weights
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
};

class AdaptiveStepper
{
public:
    /// Steps whose result has a component below `floor` are rejected and retried at half size;
    /// accepted negatives above it are set to 0.
    AdaptiveStepper(const ModelParameters& p, double abs_tol, double rel_tol, double initial_step, double floor)
        : m_params(p)
        , m_abs_tol(abs_tol)
        , m_rel_tol(rel_tol)
        , m_step(initial_step)
        , m_floor(floor)
    {
    }

    /// Advances y from t to t_end exactly.
    void advance(Vector7& y, double t, double t_end)
    {
        using T = DormandPrince;
        while (t < t_end) {
            if (m_step < 1e-12) {
                throw Error(ErrorCode::StepFailure,
                            fmt::format("adaptive step {:.3g} days underflowed at t = {:.6g}", m_step, t));
            }
            const double remaining = t_end - t;
            // absorb a sliver left over by rounding into the current step
            const bool last = m_step >= remaining * (1.0 - 1e-9);
            const double h  = last ? remaining : m_step;
            const Vector7 k1 = m_fsal ? m_k7 : rhs(y, m_params);
            const Vector7 k2 = rhs(y + h * (T::a21 * k1), m_params);
            const Vector7 k3 = rhs(y + h * (T::a31 * k1 + T::a32 * k2), m_params);
            const Vector7 k4 = rhs(y + h * (T::a41 * k1 + T::a42 * k2 + T::a43 * k3), m_params);
            const Vector7 k5 = rhs(y + h * (T::a51 * k1 + T::a52 * k2 + T::a53 * k3 + T::a54 * k4), m_params);
            const Vector7 k6 =
                rhs(y + h * (T::a61 * k1 + T::a62 * k2 + T::a63 * k3 + T::a64 * k4 + T::a65 * k5), m_params);
            const Vector7 y_new = y + h * (T::b1 * k1 + T::b3 * k3 + T::b4 * k4 + T::b5 * k5 + T::b6 * k6);
            const Vector7 k7    = rhs(y_new, m_params);
            const Vector7 err =
                h * (T::e1 * k1 + T::e3 * k3 + T::e4 * k4 + T::e5 * k5 + T::e6 * k6 + T::e7 * k7);

            const Vector7 scale = (m_abs_tol + m_rel_tol * y.cwiseAbs().cwiseMax(y_new.cwiseAbs()).array()).matrix();
            const double norm   = (err.cwiseAbs().array() / scale.array()).maxCoeff();

            const double factor =
                norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
            if (norm <= 1.0 && y_new.minCoeff() < m_floor) {
                m_step = 0.5 * h;
            }
            else if (norm <= 1.0) {
                // project roundoff negatives onto the orthant, where the field points inward
                y      = y_new.cwiseMax(0.0);
                t      = last ? t_end : t + h;
                m_k7   = k7;
                m_fsal = (y == y_new);
                // a step shortened to land on t_end says nothing about the admissible size
                if (!last || h == m_step) {
                    m_step = h * factor;
                }
            }
            else {
                m_step = h * std::max(factor, 0.1);
            }
        }
    }

private:
    const ModelParameters& m_params;
    double m_abs_tol;
    double m_rel_tol;
    double m_step;
    double m_floor;
    Vector7 m_k7 = Vector7::Zero();
    bool m_fsal  = false;
};

} // namespace detail

/**
 * Integrates the model from `initial` and samples it at config.sample_interval.
 *
 * Every sample is checked against the invariant region: components that went negative
 * by no more than 1e-9 * n_cap through roundoff are stored as 0, larger negativity is an
 * InvariantViolation, as is a total population above
 * n_cap + (N(0) - n_cap) exp(-mu t) beyond the same slack. The adaptive method never
 * accepts a step below the negativity floor; with the fixed step a violation means the
 * step is too large.
 */
inline Trajectory simulate(const ModelParameters& p, const State& initial, const IntegratorConfig& config)
{
    validate(initial);
    validate(config);

    const auto k          = derive_constants(p);
    const double n0       = initial.total();
    const double neg_tol  = 1e-9 * k.n_cap;
    const double cap_tol  = 1e-9 * std::max(k.n_cap, n0);
    const auto times      = sample_times(config.horizon, config.sample_interval);
    const double abs_tol  = config.abs_tol.value_or(1e-8 * k.n_cap);

    Trajectory traj;
    traj.times.reserve(times.size());
    traj.states.reserve(times.size());
    traj.non_healthy.reserve(times.size());
    traj.total.reserve(times.size());

    auto record = [&](double t, const Vector7& y) {
        Vector7 x = y;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            if (x[i] < 0.0) {
                if (x[i] < -neg_tol) {
                    throw Error(ErrorCode::InvariantViolation,
                                fmt::format("compartment {} = {:.6g} at t = {:.6g} is below -1e-9 n_cap",
                                            compartment_names[static_cast<std::size_t>(i)], x[i], t));
                }
                x[i] = 0.0;
            }
        }
        const State s   = State::from_vector(x);
        const double n  = s.total();
        const double ub = k.n_cap + (n0 - k.n_cap) * std::exp(-p.mu() * t);
        if (n > ub + cap_tol) {
            throw Error(ErrorCode::InvariantViolation,
                        fmt::format("total population {:.17g} at t = {:.6g} exceeds bound {:.17g}", n, t, ub));
        }
        traj.times.push_back(t);
        traj.states.push_back(s);
        traj.non_healthy.push_back(s.non_healthy());
        traj.total.push_back(n);
    };

    Vector7 y = initial.to_vector();
    traj.times.push_back(0.0);
    traj.states.push_back(initial);
    traj.non_healthy.push_back(initial.non_healthy());
    traj.total.push_back(n0);

    if (config.method == IntegrationMethod::Rk4) {
        for (std::size_t i = 1; i < times.size(); ++i) {
            const double len = times[i] - times[i - 1];
            const auto n     = static_cast<std::size_t>(std::max(1.0, std::ceil(len / config.step - 1e-9)));
            const double h   = len / static_cast<double>(n);
            for (std::size_t j = 0; j < n; ++j) {
                y = detail::rk4_step(y, h, p);
            }
            record(times[i], y);
        }
    }
    else {
        detail::AdaptiveStepper stepper(p, abs_tol, config.rel_tol, std::min(config.sample_interval, 0.1),
                                        -neg_tol);
        for (std::size_t i = 1; i < times.size(); ++i) {
            stepper.advance(y, times[i - 1], times[i]);
            record(times[i], y);
        }
    }
    return traj;
}

struct PeakSummary {
    double peak          = 0.0;
    double peak_time     = 0.0;
    double terminal      = 0.0;
    double terminal_time = 0.0;
};

/// Maximum and last sample of the non-healthy series; the earliest maximum wins ties.
inline PeakSummary peak_and_limit(const Trajectory& traj)
{
    if (traj.empty()) {
        throw Error(ErrorCode::EmptyTrajectory, "trajectory has no samples");
    }
    const auto it = std::max_element(traj.non_healthy.begin(), traj.non_healthy.end());
    const auto i  = static_cast<std::size_t>(std::distance(traj.non_healthy.begin(), it));
    return {*it, traj.times[i], traj.non_healthy.back(), traj.times.back()};
}

/// 17 significant digits, as used by every CSV writer.
inline std::string format_number(double x)
{
    return fmt::format("{:.17g}", x);
}

/// CSV with header t,S,V,E,I,Q,H,R,N,non_healthy, one row per sample.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj)
{
    os << "t,S,V,E,I,Q,H,R,N,non_healthy\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& s = traj.states[i];
        os << format_number(traj.times[i]) << ',' << format_number(s.S) << ',' << format_number(s.V) << ','
           << format_number(s.E) << ',' << format_number(s.I) << ',' << format_number(s.Q) << ','
           << format_number(s.H) << ',' << format_number(s.R) << ',' << format_number(traj.total[i]) << ','
           << format_number(traj.non_healthy[i]) << '\n';
    }
}

} // namespace sveiqhr

#endif // SVEIQHR_DYNAMICS_HPP
