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
#ifndef SVEIQHR_CONFIG_HPP
#define SVEIQHR_CONFIG_HPP

#include "sveiqhr/dynamics.hpp"
#include "sveiqhr/equilibrium.hpp"
#include "sveiqhr/errors.hpp"
#include "sveiqhr/parameters.hpp"
#include "sveiqhr/strategy.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace sveiqhr
{

enum class OutputKind { Trajectory, R0, Equilibria, Sensitivity, Region, Sweep };

inline constexpr std::array<std::string_view, 6> output_names = {"trajectory", "r0",     "equilibria",
                                                                  "sensitivity", "region", "sweep"};

inline std::string_view to_string(OutputKind k)
{
    return output_names[static_cast<std::size_t>(k)];
}

/// Named initial conditions.
enum class InitialPreset {
    Default,     ///< default_initial_state()
    DiseaseFree, ///< the disease-free equilibrium of the scenario's parameters
};

inline std::string_view to_string(InitialPreset p)
{
    return p == InitialPreset::Default ? "default" : "dfe";
}

struct SweepSpec {
    std::vector<Parameter> targets = {Parameter::U1, Parameter::U2, Parameter::U3, Parameter::U4, Parameter::U5};
    std::vector<double> boosts     = {0.3, 0.6};

    bool operator==(const SweepSpec&) const = default;
};

/// A fully resolved scenario: table defaults applied, every value validated.
struct ScenarioConfig {
    ModelParameters parameters = table1_parameters(0.653);
    std::variant<InitialPreset, State> initial = InitialPreset::Default;
    IntegratorConfig integrator;
    std::vector<OutputKind> outputs;
    SweepSpec sweep;

    bool operator==(const ScenarioConfig&) const = default;
};

inline State initial_state(const ScenarioConfig& c)
{
    if (const auto* s = std::get_if<State>(&c.initial)) {
        return *s;
    }
    return std::get<InitialPreset>(c.initial) == InitialPreset::Default ? default_initial_state()
                                                                        : disease_free_equilibrium(c.parameters);
}

namespace detail
{

inline void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& known, const std::string& where)
{
    for (const auto& [key, value] : obj.items()) {
        if (!known.count(key)) {
            throw ValidationError(where.empty() ? key : where + "." + key, "known key",
                                  "unknown configuration key '" + (where.empty() ? key : where + "." + key) + "'");
        }
    }
}

inline double number_at(const nlohmann::json& v, const std::string& field)
{
    if (!v.is_number()) {
        throw ValidationError(field, "number", field + " must be a number");
    }
    return v.get<double>();
}

inline nlohmann::json object_at(const nlohmann::json& v, const std::string& field)
{
    if (!v.is_object()) {
        throw ValidationError(field, "object", field + " must be an object");
    }
    return v;
}

inline std::set<std::string> parameter_keys()
{
    std::set<std::string> keys;
    for (auto n : parameter_names) {
        keys.emplace(n);
    }
    keys.emplace("ppkm_level");
    return keys;
}

/// Table defaults, then overrides. delta has no default and must be present.
inline ModelParameters resolve_parameters(const nlohmann::json& block)
{
    reject_unknown_keys(block, parameter_keys(), "parameters");
    if (!block.contains("delta") || block.at("delta").is_null()) {
        throw ValidationError("delta", "required",
                              "delta (vaccine efficacy) has no default and must be set explicitly");
    }
    ParameterValues v = table1_values(number_at(block.at("delta"), "delta"));
    for (auto p : all_parameters) {
        const std::string name(name_of(p));
        if (block.contains(name)) {
            v[p] = number_at(block.at(name), name);
        }
    }
    if (block.contains("ppkm_level")) {
        if (block.contains("u2")) {
            throw ValidationError("ppkm_level", "exclusive with u2", "set either u2 or ppkm_level, not both");
        }
        const auto& lv = block.at("ppkm_level");
        if (!lv.is_number_integer()) {
            throw ValidationError("ppkm_level", "{1,2,3,4}", "ppkm_level must be an integer level");
        }
        try {
            v.u2 = ppkm_level_u2(lv.get<int>());
        }
        catch (const Error& e) {
            throw ValidationError("ppkm_level", "{1,2,3,4}", e.what());
        }
    }
    return ModelParameters(v);
}

inline IntegratorConfig parse_integrator(const nlohmann::json& block)
{
    object_at(block, "integrator");
    reject_unknown_keys(block, {"method", "step", "abs_tol", "rel_tol", "horizon", "sample_interval"}, "integrator");
    IntegratorConfig c;
    if (block.contains("method")) {
        const auto& m = block.at("method");
        if (m == "rk4") {
            c.method = IntegrationMethod::Rk4;
        }
        else if (m == "rk45") {
            c.method = IntegrationMethod::Rk45;
        }
        else {
            throw ValidationError("integrator.method", "rk4|rk45", "integrator.method must be \"rk4\" or \"rk45\"");
        }
    }
    if (block.contains("step")) {
        c.step = number_at(block.at("step"), "integrator.step");
    }
    if (block.contains("abs_tol") && !block.at("abs_tol").is_null()) {
        c.abs_tol = number_at(block.at("abs_tol"), "integrator.abs_tol");
    }
    if (block.contains("rel_tol")) {
        c.rel_tol = number_at(block.at("rel_tol"), "integrator.rel_tol");
    }
    if (block.contains("horizon")) {
        c.horizon = number_at(block.at("horizon"), "integrator.horizon");
    }
    if (block.contains("sample_interval")) {
        c.sample_interval = number_at(block.at("sample_interval"), "integrator.sample_interval");
    }
    try {
        validate(c);
    }
    catch (const ValidationError& e) {
        throw ValidationError("integrator." + e.field(), e.bound(), e.what());
    }
    return c;
}

inline std::variant<InitialPreset, State> parse_initial(const nlohmann::json& v)
{
    if (v.is_string()) {
        if (v == "default") {
            return InitialPreset::Default;
        }
        if (v == "dfe") {
            return InitialPreset::DiseaseFree;
        }
        throw ValidationError("initial", "default|dfe|state", "unknown initial preset " + v.dump());
    }
    object_at(v, "initial");
    reject_unknown_keys(v, {"S", "V", "E", "I", "Q", "H", "R"}, "initial");
    State s;
    Vector7 x = Vector7::Zero();
    for (std::size_t i = 0; i < num_compartments; ++i) {
        const std::string name(compartment_names[i]);
        if (v.contains(name)) {
            x[static_cast<Eigen::Index>(i)] = number_at(v.at(name), "initial." + name);
        }
    }
    s = State::from_vector(x);
    try {
        validate(s);
    }
    catch (const ValidationError& e) {
        throw ValidationError("initial." + e.field(), e.bound(), e.what());
    }
    return s;
}

inline SweepSpec parse_sweep(const nlohmann::json& v)
{
    object_at(v, "sweep");
    reject_unknown_keys(v, {"targets", "boosts"}, "sweep");
    SweepSpec spec;
    if (v.contains("targets")) {
        if (!v.at("targets").is_array()) {
            throw ValidationError("sweep.targets", "array", "sweep.targets must be an array of parameter names");
        }
        spec.targets.clear();
        for (const auto& t : v.at("targets")) {
            const auto p = t.is_string() ? parameter_from_name(t.get<std::string>()) : std::nullopt;
            if (!p || !is_sweep_target(*p)) {
                throw ValidationError("sweep.targets", "u1..u5|delta", "invalid sweep target " + t.dump());
            }
            spec.targets.push_back(*p);
        }
    }
    if (v.contains("boosts")) {
        if (!v.at("boosts").is_array()) {
            throw ValidationError("sweep.boosts", "array", "sweep.boosts must be an array of fractions");
        }
        spec.boosts.clear();
        for (const auto& b : v.at("boosts")) {
            const double x = number_at(b, "sweep.boosts");
            if (!(x >= -1.0)) {
                throw ValidationError("sweep.boosts", "[-1,inf)", "boost fractions must be at least -1");
            }
            spec.boosts.push_back(x);
        }
    }
    return spec;
}

} // namespace detail

/**
 * Builds a scenario from a parsed document. With allow_flat, parameter keys may also sit
 * at the top level (the form used by service request bodies); mixing both forms is an error.
 */
inline ScenarioConfig scenario_from_json(const nlohmann::json& doc, bool allow_flat = false)
{
    if (!doc.is_object()) {
        throw ValidationError("<root>", "object", "configuration must be a JSON object");
    }
    std::set<std::string> known = {"parameters", "initial", "integrator", "outputs", "sweep"};
    nlohmann::json params       = nlohmann::json::object();
    if (doc.contains("parameters")) {
        params = detail::object_at(doc.at("parameters"), "parameters");
    }
    if (allow_flat) {
        for (const auto& key : detail::parameter_keys()) {
            known.insert(key);
            if (doc.contains(key)) {
                if (params.contains(key)) {
                    throw ValidationError(key, "set once", key + " is set both flat and under parameters");
                }
                params[key] = doc.at(key);
            }
        }
    }
    detail::reject_unknown_keys(doc, known, "");

    ScenarioConfig c;
    c.parameters = detail::resolve_parameters(params);
    if (doc.contains("initial")) {
        c.initial = detail::parse_initial(doc.at("initial"));
    }
    if (doc.contains("integrator")) {
        c.integrator = detail::parse_integrator(doc.at("integrator"));
    }
    if (doc.contains("outputs")) {
        const auto& outs = doc.at("outputs");
        if (!outs.is_array()) {
            throw ValidationError("outputs", "array", "outputs must be an array");
        }
        for (const auto& o : outs) {
            const auto it = o.is_string() ? std::find(output_names.begin(), output_names.end(), o.get<std::string>())
                                          : output_names.end();
            if (it == output_names.end()) {
                throw ValidationError("outputs", "trajectory|r0|equilibria|sensitivity|region|sweep",
                                      "unknown output " + o.dump());
            }
            c.outputs.push_back(static_cast<OutputKind>(std::distance(output_names.begin(), it)));
        }
    }
    if (doc.contains("sweep")) {
        c.sweep = detail::parse_sweep(doc.at("sweep"));
    }
    return c;
}

/// Parses configuration text, reporting syntax errors with 1-based line and column.
inline nlohmann::json parse_document(const std::string& text)
{
    try {
        return nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, column = 1;
        const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < end; ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            }
            else {
                ++column;
            }
        }
        throw ParseError(line, column, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                           e.what());
    }
}

inline ScenarioConfig parse_config(const std::string& text)
{
    const auto doc = parse_document(text);
    return scenario_from_json(doc);
}

inline ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("path", "readable file", "cannot open configuration file " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

/// Inverse of scenario_from_json: every parameter is written explicitly.
inline nlohmann::json to_document(const ScenarioConfig& c)
{
    nlohmann::json doc;
    for (auto p : all_parameters) {
        doc["parameters"][std::string(name_of(p))] = c.parameters[p];
    }
    if (const auto* s = std::get_if<State>(&c.initial)) {
        const Vector7 x = s->to_vector();
        for (std::size_t i = 0; i < num_compartments; ++i) {
            doc["initial"][std::string(compartment_names[i])] = x[static_cast<Eigen::Index>(i)];
        }
    }
    else {
        doc["initial"] = std::string(to_string(std::get<InitialPreset>(c.initial)));
    }
    auto& integ              = doc["integrator"];
    integ["method"]          = std::string(to_string(c.integrator.method));
    integ["step"]            = c.integrator.step;
    integ["rel_tol"]         = c.integrator.rel_tol;
    integ["horizon"]         = c.integrator.horizon;
    integ["sample_interval"] = c.integrator.sample_interval;
    if (c.integrator.abs_tol) {
        integ["abs_tol"] = *c.integrator.abs_tol;
    }
    doc["outputs"] = nlohmann::json::array();
    for (auto o : c.outputs) {
        doc["outputs"].push_back(std::string(to_string(o)));
    }
    doc["sweep"]["targets"] = nlohmann::json::array();
    for (auto t : c.sweep.targets) {
        doc["sweep"]["targets"].push_back(std::string(name_of(t)));
    }
    doc["sweep"]["boosts"] = c.sweep.boosts;
    return doc;
}

inline std::string emit(const ScenarioConfig& c)
{
    return to_document(c).dump(2) + "\n";
}

} // namespace sveiqhr

#endif // SVEIQHR_CONFIG_HPP
