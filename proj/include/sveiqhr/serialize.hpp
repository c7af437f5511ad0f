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
#ifndef SVEIQHR_SERIALIZE_HPP
#define SVEIQHR_SERIALIZE_HPP

#include "sveiqhr/dynamics.hpp"
#include "sveiqhr/equilibrium.hpp"
#include "sveiqhr/errors.hpp"
#include "sveiqhr/parameters.hpp"
#include "sveiqhr/strategy.hpp"

#include <json.hpp>

#include <complex>
#include <string>

namespace sveiqhr
{

inline void to_json(nlohmann::json& j, const ParameterValues& v)
{
    j = nlohmann::json::object();
    for (auto p : all_parameters) {
        j[std::string(name_of(p))] = v[p];
    }
}

inline void to_json(nlohmann::json& j, const ModelParameters& p)
{
    to_json(j, p.values());
}

inline void to_json(nlohmann::json& j, const State& s)
{
    j = {{"S", s.S}, {"V", s.V}, {"E", s.E}, {"I", s.I}, {"Q", s.Q}, {"H", s.H}, {"R", s.R}};
}

inline nlohmann::json complex_to_json(const std::complex<double>& z)
{
    return {{"re", z.real()}, {"im", z.imag()}};
}

inline void to_json(nlohmann::json& j, const EquilibriumReport& r)
{
    j = {{"kind", to_string(r.kind)}, {"point", r.point},      {"r0", r.r0},
         {"verdict", to_string(r.verdict)}, {"residual", r.residual}};
    j["eigenvalues"] = nlohmann::json::array();
    for (const auto& z : r.eigenvalues) {
        j["eigenvalues"].push_back(complex_to_json(z));
    }
}

inline void to_json(nlohmann::json& j, const DfeStability& s)
{
    j                         = s.report;
    j["characteristic_factor"] = {{"b", s.factor.b}, {"c", s.factor.c}};
}

inline void to_json(nlohmann::json& j, const EndemicSolveReport& r)
{
    j = {{"d", r.d}, {"e", r.e}, {"f", r.f}, {"r0", r.r0}, {"root_class", to_string(r.root_class)},
         {"residual", r.residual}, {"needs_review", r.needs_review}};
    j["roots"] = nlohmann::json::array();
    for (const auto& z : r.roots) {
        j["roots"].push_back(complex_to_json(z));
    }
    j["positive_equilibrium"] = r.positive_equilibrium ? nlohmann::json(*r.positive_equilibrium) : nlohmann::json();
}

inline void to_json(nlohmann::json& j, const Point2& p)
{
    j = {{"u1", p.u1}, {"u2", p.u2}};
}

inline void to_json(nlohmann::json& j, const RegionGeometry& g)
{
    j = {{"delta", g.delta},
         {"l1", g.l1},
         {"l2", g.l2},
         {"l3", g.l3},
         {"slope_sign", g.slope_sign},
         {"line", {{"a_u1", g.line.a_u1}, {"a_u2", g.line.a_u2}, {"offset", g.line.offset}}},
         {"feasible_polygon", g.feasible_polygon}};
}

inline void to_json(nlohmann::json& j, const SensitivityEntry& e)
{
    j = {{"parameter", name_of(e.parameter)}, {"upsilon", e.upsilon}, {"abs", e.magnitude},
         {"sign", e.sign},                    {"rank", e.rank},       {"degenerate", e.degenerate}};
}

inline void to_json(nlohmann::json& j, const SensitivityTable& t)
{
    j["entries"]  = t.entries;
    j["ordering"] = nlohmann::json::array();
    for (auto p : t.ordering()) {
        j["ordering"].push_back(name_of(p));
    }
}

inline void to_json(nlohmann::json& j, const PeakSummary& s)
{
    j = {{"peak", s.peak}, {"peak_time", s.peak_time}, {"terminal", s.terminal}, {"terminal_time", s.terminal_time}};
}

/// Column-oriented, one array per CSV column.
inline void to_json(nlohmann::json& j, const Trajectory& traj)
{
    j      = nlohmann::json::object();
    j["t"] = traj.times;
    for (std::size_t c = 0; c < num_compartments; ++c) {
        auto& col = j[std::string(compartment_names[c])] = nlohmann::json::array();
        for (const auto& s : traj.states) {
            col.push_back(s.to_vector()[static_cast<Eigen::Index>(c)]);
        }
    }
    j["N"]           = traj.total;
    j["non_healthy"] = traj.non_healthy;
}

inline void to_json(nlohmann::json& j, const SweepEntry& e)
{
    j = {{"target", name_of(e.target)},
         {"boost", e.boost},
         {"base_value", e.base_value},
         {"boosted_value", e.boosted_value},
         {"summary", e.summary},
         {"peak_reduction", e.peak_reduction},
         {"terminal_reduction", e.terminal_reduction}};
}

inline void to_json(nlohmann::json& j, const SweepResult& r)
{
    j = {{"baseline", r.baseline}, {"entries", r.entries}};
}

/// Error body shared by the CLI and the service.
inline nlohmann::json error_to_json(const Error& e)
{
    nlohmann::json j = {{"error", to_string(e.code())}, {"message", e.what()}};
    if (const auto* v = dynamic_cast<const ValidationError*>(&e)) {
        j["field"] = v->field();
        j["bound"] = v->bound();
    }
    else if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
        j["line"]   = pe->line();
        j["column"] = pe->column();
    }
    else if (const auto* dq = dynamic_cast<const DegenerateQuadraticError*>(&e)) {
        j["linear_root"] = dq->linear_root();
    }
    return j;
}

} // namespace sveiqhr

#endif // SVEIQHR_SERIALIZE_HPP
