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
#ifndef SVEIQHR_STRATEGY_HPP
#define SVEIQHR_STRATEGY_HPP

#include "sveiqhr/dynamics.hpp"
#include "sveiqhr/equilibrium.hpp"
#include "sveiqhr/errors.hpp"
#include "sveiqhr/model.hpp"
#include "sveiqhr/parameters.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sveiqhr
{

//----------------------------------------------------------------------------------------------
// social restrictions

/// Operating capacities of the nine regulated sectors, each a fraction in [0,1].
struct RestrictionProfile {
    std::array<double, 9> capacities{};
    std::optional<int> level;
};

/// Level-1 capacities: offices (non-essential, essential), daily-need shops, other shops,
/// malls, street vendors, restaurants, schools onsite, places of worship.
inline RestrictionProfile level1_profile()
{
    return {{0.75, 1.00, 0.75, 0.75, 0.75, 0.75, 0.75, 0.50, 0.50}, 1};
}

/// u2 = 1 - mean capacity.
inline double u2_from_profile(const RestrictionProfile& profile)
{
    for (std::size_t i = 0; i < profile.capacities.size(); ++i) {
        const double c = profile.capacities[i];
        if (!(c >= 0.0 && c <= 1.0)) {
            const auto field = "p" + std::to_string(i + 1);
            throw ValidationError(field, "[0,1]", field + " capacity must lie in [0,1]");
        }
    }
    const double sum = std::accumulate(profile.capacities.begin(), profile.capacities.end(), 0.0);
    return 1.0 - sum / 9.0;
}

/// Published u2 values of the four restriction levels.
inline constexpr std::array<double, 4> ppkm_levels = {0.278, 0.389, 0.694, 0.861};

inline double ppkm_level_u2(int level)
{
    if (level < 1 || level > 4) {
        throw Error(ErrorCode::UnknownLevel, "restriction level must be 1, 2, 3 or 4, got " + std::to_string(level));
    }
    return ppkm_levels[static_cast<std::size_t>(level - 1)];
}

//----------------------------------------------------------------------------------------------
// threshold geometry on the (u1, u2) plane

struct Point2 {
    double u1 = 0.0;
    double u2 = 0.0;
};

/**
 * R0 < 1 on the (u1,u2) plane is the open half-plane a_u1 * u1 + a_u2 * u2 + offset < 0,
 * obtained from R0 < 1 by multiplying out the positive denominators k1 k2 k3 k4 k5 mu (u1 + mu).
 */
struct ThresholdLine {
    double a_u1   = 0.0;
    double a_u2   = 0.0;
    double offset = 0.0;

    double operator()(double u1, double u2) const
    {
        return a_u1 * u1 + a_u2 * u2 + offset;
    }
};

struct RegionGeometry {
    double delta = 0.0;
    double l1    = 0.0; ///< u1 at which the line meets u2 = 0
    double l2    = 0.0; ///< u2 at which the line meets u1 = 0; independent of delta
    double l3    = 0.0; ///< u1 at which the line meets u2 = 1
    int slope_sign = 0; ///< sign of du2/du1 along R0 = 1
    ThresholdLine line;
    /// {(u1,u2) in [0,1]^2 : R0 <= 1}, counter-clockwise, empty if infeasible.
    std::vector<Point2> feasible_polygon;
};

/// |delta - l2| below which l1 and l3 are reported as undefined. l2 is quoted to ten decimals.
inline constexpr double singular_l1_tolerance = 1e-9;

namespace detail
{

/// A = beta theta (alpha lambda' (kappa k4 + tau phi) + lambda k3 k4 k5), K = k1 k2 k3 k4 k5.
struct ThresholdTerms {
    double A = 0.0;
    double K = 0.0;
};

inline ThresholdTerms threshold_terms(const ModelParameters& p)
{
    const auto k = derive_constants(p);
    ThresholdTerms t;
    t.A = p.alpha() * p.beta() * k.k4 * p.kappa() * p.theta() * p.lambda_prime() +
          p.alpha() * p.beta() * p.tau() * p.theta() * p.phi() * p.lambda_prime() +
          p.beta() * k.k3 * k.k4 * k.k5 * p.lambda() * p.theta();
    t.K = k.k1 * k.k2 * k.k3 * k.k4 * k.k5;
    return t;
}

/// Clips a convex polygon to {g <= 0}.
inline std::vector<Point2> clip(const std::vector<Point2>& poly, const ThresholdLine& g)
{
    std::vector<Point2> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 a = poly[i], b = poly[(i + 1) % n];
        const double ga = g(a.u1, a.u2), gb = g(b.u1, b.u2);
        if (ga <= 0.0) {
            out.push_back(a);
        }
        if ((ga < 0.0 && gb > 0.0) || (ga > 0.0 && gb < 0.0)) {
            const double s = ga / (ga - gb);
            out.push_back({a.u1 + s * (b.u1 - a.u1), a.u2 + s * (b.u2 - a.u2)});
        }
    }
    std::vector<Point2> dedup;
    for (const auto& v : out) {
        if (dedup.empty() || v.u1 != dedup.back().u1 || v.u2 != dedup.back().u2) {
            dedup.push_back(v);
        }
    }
    if (dedup.size() > 1 && dedup.front().u1 == dedup.back().u1 && dedup.front().u2 == dedup.back().u2) {
        dedup.pop_back();
    }
    return dedup;
}

} // namespace detail

/**
 * Intercepts of the R0 = 1 line and the feasible disease-free part of the unit square for
 * vaccine efficacy `delta`. The u1 and u2 values of `params` are ignored.
 * Throws SingularL1 when delta equals l2, where the line runs parallel to the u1 axis.
 */
inline RegionGeometry region_geometry(const ModelParameters& params, double delta)
{
    const ModelParameters p = params.with(Parameter::Delta, delta);
    const auto k            = derive_constants(p);
    const auto [A, K]       = detail::threshold_terms(p);
    const double mu         = p.mu();

    RegionGeometry g;
    g.delta = delta;
    g.l2    = ((p.kappa() * p.theta() * p.beta() * p.alpha() * p.lambda_prime() +
             k.k3 * k.k5 * (p.beta() * p.lambda() * p.theta() - k.k1 * k.k2 * mu)) *
                k.k4 +
            p.alpha() * p.beta() * p.tau() * p.theta() * p.phi() * p.lambda_prime()) /
           A;
    if (std::abs(delta - g.l2) < singular_l1_tolerance) {
        throw Error(ErrorCode::SingularL1,
                    fmt::format("delta = {:.17g} coincides with l2 = {:.17g}; l1 and l3 are undefined", delta, g.l2));
    }
    g.l1 = mu * (A - K * mu) / (delta * A - A + K * mu);
    g.l3 = K * mu * mu / (A - K * mu - delta * A);

    g.line.a_u1   = A * (1.0 - delta) - K * mu;
    g.line.a_u2   = -A * mu;
    g.line.offset = A * mu - K * mu * mu;
    // du2/du1 = -a_u1 / a_u2 and a_u2 < 0
    g.slope_sign = g.line.a_u1 > 0.0 ? 1 : (g.line.a_u1 < 0.0 ? -1 : 0);

    const std::vector<Point2> square = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    g.feasible_polygon               = detail::clip(square, g.line);
    return g;
}

//----------------------------------------------------------------------------------------------
// R0 along one parameter

/// Parameters an R0 slice may vary.
inline bool is_sliceable(Parameter p)
{
    return p == Parameter::U1 || p == Parameter::U2 || p == Parameter::Delta;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    if (n > 1) {
        v.back() = hi;
    }
    return v;
}

inline std::vector<std::pair<double, double>> r0_slice(const ModelParameters& p, Parameter vary,
                                                       const std::vector<double>& grid)
{
    if (!is_sliceable(vary)) {
        throw ValidationError("vary", "u1|u2|delta", std::string(name_of(vary)) + " cannot be sliced");
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (double x : grid) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw ValidationError("grid", "[0,1]", "slice grid values must lie in [0,1]");
        }
        out.emplace_back(x, compute_r0(p.with(vary, x)));
    }
    return out;
}

//----------------------------------------------------------------------------------------------
// sensitivity

namespace detail
{

/// d ln R0 / d p in closed form.
inline double log_derivative(const ModelParameters& p, Parameter which)
{
    const auto k   = derive_constants(p);
    const double m = p.kappa() * k.k4 + p.phi() * p.tau();
    // k6 (u1 + mu) = lambda + t
    const double t = p.alpha() * p.lambda_prime() * m / (k.k3 * k.k4 * k.k5);
    const double w = p.lambda() + t;
    const double g = p.mu() * (1.0 - p.u2()) + (1.0 - p.delta()) * p.u1();
    const double a = p.u1() + p.mu();

    switch (which) {
    case Parameter::Lambda:
        return 1.0 / w;
    case Parameter::LambdaPrime:
        return t / p.lambda_prime() / w;
    case Parameter::Mu:
        return t * (p.kappa() / m - 1.0 / k.k3 - 1.0 / k.k4 - 1.0 / k.k5) / w - 1.0 / a + (1.0 - p.u2()) / g -
               1.0 / k.k1 - 1.0 / k.k2 - 1.0 / p.mu();
    case Parameter::MuPrime:
        return t * (p.kappa() / m - 1.0 / k.k4) / w - 1.0 / k.k2;
    case Parameter::Beta:
        return 1.0 / p.beta();
    case Parameter::Delta:
        return -p.u1() / g;
    case Parameter::Alpha:
        return t * (1.0 / p.alpha() - 1.0 / k.k5) / w;
    case Parameter::Theta:
        return 1.0 / p.theta() - 1.0 / k.k1;
    case Parameter::Gamma:
        return -1.0 / k.k2;
    case Parameter::Phi:
        return t * ((p.kappa() + p.tau()) / m - 1.0 / k.k4) / w;
    case Parameter::Kappa:
        return t * (k.k4 / m - 1.0 / k.k3) / w;
    case Parameter::Tau:
        return t * (p.phi() / m - 1.0 / k.k3) / w;
    case Parameter::U1:
        return -1.0 / a + (1.0 - p.delta()) / g;
    case Parameter::U2:
        return -p.mu() / g;
    case Parameter::U3:
        return -1.0 / k.k1;
    case Parameter::U4:
    case Parameter::U5:
        return -1.0 / k.k2;
    }
    return 0.0;
}

} // namespace detail

/**
 * Normalised sensitivity (dR0/dp) * p / R0. A parameter at zero has index 0.
 * Throws ZeroR0 when R0 vanishes (u2 = 1 and no effective vaccinated transmission).
 */
inline double sensitivity_index(const ModelParameters& p, Parameter which)
{
    if (compute_r0(p) == 0.0) {
        throw Error(ErrorCode::ZeroR0, "sensitivity index is undefined when R0 = 0");
    }
    const double value = p[which];
    if (value == 0.0) {
        return 0.0;
    }
    return value * detail::log_derivative(p, which);
}

struct SensitivityEntry {
    Parameter parameter = Parameter::Lambda;
    double upsilon      = 0.0;
    int sign            = 0;
    double magnitude    = 0.0;
    std::size_t rank    = 0; ///< 1 = most significant
    bool degenerate     = false; ///< parameter value is zero
};

struct SensitivityTable {
    /// In parameter declaration order.
    std::vector<SensitivityEntry> entries;

    const SensitivityEntry& at(Parameter p) const
    {
        return entries[static_cast<std::size_t>(p)];
    }

    /// Parameters from rank 1 to rank 17.
    std::vector<Parameter> ordering() const
    {
        std::vector<Parameter> out(entries.size());
        for (const auto& e : entries) {
            out[e.rank - 1] = e.parameter;
        }
        return out;
    }
};

/// Ranks all parameters by decreasing |index|; ties keep declaration order.
inline SensitivityTable significance_ranking(const ModelParameters& p)
{
    SensitivityTable table;
    table.entries.reserve(num_parameters);
    for (auto which : all_parameters) {
        SensitivityEntry e;
        e.parameter  = which;
        e.upsilon    = sensitivity_index(p, which);
        e.sign       = (e.upsilon > 0.0) - (e.upsilon < 0.0);
        e.magnitude  = std::abs(e.upsilon);
        e.degenerate = p[which] == 0.0;
        table.entries.push_back(e);
    }
    std::vector<std::size_t> order(num_parameters);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return table.entries[a].magnitude > table.entries[b].magnitude;
    });
    for (std::size_t r = 0; r < order.size(); ++r) {
        table.entries[order[r]].rank = r + 1;
    }
    return table;
}

inline void write_sensitivity_csv(std::ostream& os, const SensitivityTable& table)
{
    os << "parameter,upsilon,abs,rank\n";
    for (const auto& e : table.entries) {
        os << name_of(e.parameter) << ',' << format_number(e.upsilon) << ',' << format_number(e.magnitude) << ','
           << e.rank << '\n';
    }
}

//----------------------------------------------------------------------------------------------
// intervention sweeps

/// Targets a sweep may boost: the five intervention rates and the vaccine efficacy.
inline bool is_sweep_target(Parameter p)
{
    return is_intervention(p) || p == Parameter::Delta;
}

struct SweepEntry {
    Parameter target     = Parameter::U1;
    double boost         = 0.0;
    double base_value    = 0.0;
    double boosted_value = 0.0;
    PeakSummary summary;
    double peak_reduction     = 0.0; ///< baseline peak - boosted peak
    double terminal_reduction = 0.0; ///< baseline terminal - boosted terminal
};

struct SweepResult {
    PeakSummary baseline;
    std::vector<SweepEntry> entries; ///< target-major, boost-minor order
};

/**
 * Re-runs the simulation with each target scaled by (1 + boost), clamped to [0,1], and
 * compares the non-healthy peak and terminal value against the unmodified run. Runs are
 * independent and execute concurrently; the entry order does not depend on scheduling.
 */
inline SweepResult intervention_sweep(const ModelParameters& p, const State& initial, const IntegratorConfig& config,
                                      const std::vector<Parameter>& targets, const std::vector<double>& boosts)
{
    for (auto t : targets) {
        if (!is_sweep_target(t)) {
            throw ValidationError("targets", "u1..u5|delta", std::string(name_of(t)) + " is not a sweep target");
        }
    }
    for (double b : boosts) {
        if (!(std::isfinite(b) && b >= -1.0)) {
            throw ValidationError("boosts", "[-1,inf)", "boost fractions must be finite and at least -1");
        }
    }

    auto run = [&](const ModelParameters& q) { return peak_and_limit(simulate(q, initial, config)); };

    std::vector<std::future<PeakSummary>> jobs;
    std::vector<SweepEntry> entries;
    for (auto t : targets) {
        for (double b : boosts) {
            SweepEntry e;
            e.target        = t;
            e.boost         = b;
            e.base_value    = p[t];
            e.boosted_value = std::clamp(p[t] * (1.0 + b), 0.0, 1.0);
            entries.push_back(e);
        }
    }
    auto baseline_job = std::async(std::launch::async, run, p);
    for (const auto& e : entries) {
        jobs.push_back(std::async(std::launch::async, run, p.with(e.target, e.boosted_value)));
    }

    SweepResult out;
    out.baseline = baseline_job.get();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        entries[i].summary            = jobs[i].get();
        entries[i].peak_reduction     = out.baseline.peak - entries[i].summary.peak;
        entries[i].terminal_reduction = out.baseline.terminal - entries[i].summary.terminal;
    }
    out.entries = std::move(entries);
    return out;
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& r)
{
    os << "target,boost,base_value,boosted_value,peak,peak_time,terminal,peak_reduction,terminal_reduction\n";
    os << "baseline,0,,," << format_number(r.baseline.peak) << ',' << format_number(r.baseline.peak_time) << ','
       << format_number(r.baseline.terminal) << ",0,0\n";
    for (const auto& e : r.entries) {
        os << name_of(e.target) << ',' << format_number(e.boost) << ',' << format_number(e.base_value) << ','
           << format_number(e.boosted_value) << ',' << format_number(e.summary.peak) << ','
           << format_number(e.summary.peak_time) << ',' << format_number(e.summary.terminal) << ','
           << format_number(e.peak_reduction) << ',' << format_number(e.terminal_reduction) << '\n';
    }
}

} // namespace sveiqhr

#endif // SVEIQHR_STRATEGY_HPP
