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
#ifndef SVEIQHR_FIGURES_HPP
#define SVEIQHR_FIGURES_HPP

#include "sveiqhr/dynamics.hpp"
#include "sveiqhr/equilibrium.hpp"
#include "sveiqhr/parameters.hpp"
#include "sveiqhr/strategy.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace sveiqhr
{

/// Points per axis of every R0 curve.
inline constexpr std::size_t figure_grid_points = 1001;

/// Horizon in days of the time-evolution figures; the source does not state one.
inline constexpr double figure_horizon = 1000.0;

/// One efficacy scenario of the threshold figures and the two slice values of each panel.
struct ThresholdFigure {
    int number;
    double delta;
    std::array<double, 2> u2_values; ///< curves of R0 against u1
    std::array<double, 2> u1_values; ///< curves of R0 against u2
};

inline constexpr std::array<ThresholdFigure, 3> threshold_figures = {{
    {2, 0.653, {0.861, 0.999995}, {0.4, 0.000005}},
    {3, 0.9, {0.861, 0.999995}, {0.4, 0.9}},
    {4, 0.93, {0.861, 0.0}, {0.4, 0.064}},
}};

namespace detail
{

inline std::ofstream open_csv(const std::filesystem::path& path)
{
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw ValidationError("out", "writable directory", "cannot write " + path.string());
    }
    return os;
}

/// Shortest round-trip spelling, used in column names.
inline std::string label(double x)
{
    return fmt::format("{}", x);
}

inline void write_slices(const std::filesystem::path& path, const ModelParameters& base, Parameter vary,
                         Parameter fixed, const std::array<double, 2>& fixed_values)
{
    const auto grid = linspace(0.0, 1.0, figure_grid_points);
    const auto a    = r0_slice(base.with(fixed, fixed_values[0]), vary, grid);
    const auto b    = r0_slice(base.with(fixed, fixed_values[1]), vary, grid);
    auto os         = open_csv(path);
    os << name_of(vary) << ",r0_" << name_of(fixed) << '_' << label(fixed_values[0]) << ",r0_" << name_of(fixed)
       << '_' << label(fixed_values[1]) << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i) {
        os << format_number(grid[i]) << ',' << format_number(a[i].second) << ',' << format_number(b[i].second)
           << '\n';
    }
}

inline void write_non_healthy_columns(const std::filesystem::path& path, const std::vector<std::string>& names,
                                      const std::vector<Trajectory>& runs)
{
    auto os = open_csv(path);
    os << 't';
    for (const auto& n : names) {
        os << ',' << n;
    }
    os << '\n';
    for (std::size_t i = 0; i < runs.front().size(); ++i) {
        os << format_number(runs.front().times[i]);
        for (const auto& r : runs) {
            os << ',' << format_number(r.non_healthy[i]);
        }
        os << '\n';
    }
}

} // namespace detail

/**
 * Writes the data behind the threshold, sensitivity and time-evolution figures into dir,
 * one CSV per panel, and returns the written paths in a fixed order. Output is a pure
 * function of the built-in scenarios.
 */
inline std::vector<std::filesystem::path> write_figures(const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto path = [&](const std::string& name) {
        written.push_back(dir / name);
        return written.back();
    };

    for (const auto& fig : threshold_figures) {
        const auto p      = table1_parameters(fig.delta);
        const auto g      = region_geometry(p, fig.delta);
        const auto prefix = fmt::format("fig{}_", fig.number);
        {
            // R0 = 1 between its intercepts with u2 = 0 and u2 = 1
            auto os = detail::open_csv(path(prefix + "1_threshold_line.csv"));
            os << "u1,u2\n";
            for (double u2 : linspace(0.0, 1.0, figure_grid_points)) {
                const double u1 = -(g.line.a_u2 * u2 + g.line.offset) / g.line.a_u1;
                os << format_number(u1) << ',' << format_number(u2) << '\n';
            }
        }
        {
            auto os = detail::open_csv(path(prefix + "1_feasible_region.csv"));
            os << "u1,u2\n";
            for (const auto& v : g.feasible_polygon) {
                os << format_number(v.u1) << ',' << format_number(v.u2) << '\n';
            }
        }
        detail::write_slices(path(prefix + "2_r0_vs_u1.csv"), p, Parameter::U1, Parameter::U2, fig.u2_values);
        detail::write_slices(path(prefix + "3_r0_vs_u2.csv"), p, Parameter::U2, Parameter::U1, fig.u1_values);
    }

    {
        const auto grid = linspace(0.0, 1.0, figure_grid_points);
        const auto r    = r0_slice(table1_parameters(0.653).with(Parameter::U1, 0.0), Parameter::U2, grid);
        auto os         = detail::open_csv(path("fig5_r0_vs_u2_without_vaccination.csv"));
        os << "u2,r0\n";
        for (const auto& [x, y] : r) {
            os << format_number(x) << ',' << format_number(y) << '\n';
        }
    }

    {
        auto os = detail::open_csv(path("fig6_sensitivity_disease_free.csv"));
        write_sensitivity_csv(os, significance_ranking(disease_free_reference()));
    }
    {
        auto os = detail::open_csv(path("fig6_sensitivity_endemic.csv"));
        write_sensitivity_csv(os, significance_ranking(endemic_reference()));
    }

    IntegratorConfig cfg;
    cfg.horizon         = figure_horizon;
    cfg.sample_interval = 1.0;
    const State x0      = default_initial_state();

    {
        std::vector<std::string> names;
        std::vector<Trajectory> runs;
        for (double delta : {0.653, 0.9, 0.93}) {
            names.push_back("non_healthy_delta_" + detail::label(delta));
            runs.push_back(simulate(table1_parameters(delta), x0, cfg));
        }
        detail::write_non_healthy_columns(path("fig7_delta_comparison.csv"), names, runs);
    }

    const auto base = endemic_reference();
    const Trajectory baseline = simulate(base, x0, cfg);
    for (auto u : {Parameter::U1, Parameter::U2, Parameter::U3, Parameter::U4, Parameter::U5}) {
        std::vector<Trajectory> runs{baseline};
        for (double boost : {0.3, 0.6}) {
            runs.push_back(simulate(base.with(u, std::clamp(base[u] * (1.0 + boost), 0.0, 1.0)), x0, cfg));
        }
        const std::string n(name_of(u));
        detail::write_non_healthy_columns(path(fmt::format("fig8_{}_boost.csv", n)),
                                          {"baseline", n + "_plus_30pct", n + "_plus_60pct"}, runs);
    }
    return written;
}

} // namespace sveiqhr

#endif // SVEIQHR_FIGURES_HPP
