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
#include "sveiqhr.hpp"
#include "sveiqhr/service.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

namespace
{

using namespace sveiqhr;

/// Scenario inputs shared by every subcommand that evaluates the model.
struct ScenarioOptions {
    std::string config_path;
    std::map<Parameter, std::optional<double>> parameters;
    std::optional<int> ppkm_level;

    std::optional<std::string> method;
    std::optional<double> step, abs_tol, rel_tol, horizon, sample_interval;
    std::optional<std::string> initial;

    std::vector<std::string> targets;
    std::vector<double> boosts;
};

std::string flag_of(Parameter p)
{
    std::string name(name_of(p));
    std::replace(name.begin(), name.end(), '_', '-');
    return "--" + name;
}

void add_parameter_options(CLI::App* cmd, ScenarioOptions& o)
{
    cmd->add_option("-c,--config", o.config_path, "JSON scenario file")->check(CLI::ExistingFile);
    for (auto p : all_parameters) {
        cmd->add_option(flag_of(p), o.parameters[p], std::string(name_of(p)) + " (overrides the config file)");
    }
    cmd->add_option("--ppkm-level", o.ppkm_level, "set u2 from restriction level 1-4");
}

void add_integrator_options(CLI::App* cmd, ScenarioOptions& o)
{
    cmd->add_option("--method", o.method, "rk45 (adaptive) or rk4 (fixed step)");
    cmd->add_option("--step", o.step, "RK4 step in days");
    cmd->add_option("--abs-tol", o.abs_tol, "RK45 absolute tolerance");
    cmd->add_option("--rel-tol", o.rel_tol, "RK45 relative tolerance");
    cmd->add_option("--horizon", o.horizon, "final time in days");
    cmd->add_option("--sample-interval", o.sample_interval, "days between samples");
    cmd->add_option("--initial", o.initial, "initial state preset: default or dfe");
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Config file first, command-line flags on top.
ScenarioConfig resolve(const ScenarioOptions& o)
{
    nlohmann::json doc = o.config_path.empty() ? nlohmann::json::object() : parse_document(read_file(o.config_path));
    if (!doc.is_object()) {
        throw ValidationError("<root>", "object", "configuration must be a JSON object");
    }
    auto& params = doc["parameters"];
    if (params.is_null()) {
        params = nlohmann::json::object();
    }
    for (const auto& [p, v] : o.parameters) {
        if (v) {
            params[std::string(name_of(p))] = *v;
            if (p == Parameter::U2 && params.is_object()) {
                params.erase("ppkm_level");
            }
        }
    }
    if (o.ppkm_level) {
        if (params.is_object() && !o.parameters.at(Parameter::U2)) {
            params.erase("u2");
        }
        params["ppkm_level"] = *o.ppkm_level;
    }

    auto set_integrator = [&](const char* key, const auto& v) {
        if (v) {
            doc["integrator"][key] = *v;
        }
    };
    set_integrator("method", o.method);
    set_integrator("step", o.step);
    set_integrator("abs_tol", o.abs_tol);
    set_integrator("rel_tol", o.rel_tol);
    set_integrator("horizon", o.horizon);
    set_integrator("sample_interval", o.sample_interval);
    if (o.initial) {
        doc["initial"] = *o.initial;
    }
    if (!o.targets.empty()) {
        doc["sweep"]["targets"] = o.targets;
    }
    if (!o.boosts.empty()) {
        doc["sweep"]["boosts"] = o.boosts;
    }
    return scenario_from_json(doc);
}

/// Runs write(stream) against a file, or stdout when path is empty.
template <class F>
void emit_to(const std::string& path, F&& write)
{
    if (path.empty()) {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw ValidationError("out", "writable path", "cannot write " + path);
    }
    write(os);
}

void maybe_write_manifest(const std::string& manifest_path, const std::string& out_path, const nlohmann::json& config,
                          std::chrono::steady_clock::time_point start)
{
    if (manifest_path.empty()) {
        return;
    }
    RunManifest m;
    m.config    = config;
    m.timestamp = utc_timestamp();
    if (!out_path.empty()) {
        m.outputs.emplace_back(out_path);
    }
    m.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(manifest_path, m);
}

int exit_code(ErrorCode code)
{
    const int status = http_status(code);
    return status == 400 ? 2 : status == 422 ? 3 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"SVEIQHR epidemic intervention model"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version));

    ScenarioOptions opts;
    std::string out, manifest, format = "csv", host = "127.0.0.1", origin = "*";
    int port = 8080;

    auto* simulate_cmd = app.add_subcommand("simulate", "integrate the model and write the trajectory CSV");
    add_parameter_options(simulate_cmd, opts);
    add_integrator_options(simulate_cmd, opts);
    simulate_cmd->add_option("-o,--out", out, "CSV path (default stdout)");
    simulate_cmd->add_option("--manifest", manifest, "write a run manifest JSON");

    auto* r0_cmd = app.add_subcommand("r0", "basic reproduction number");
    add_parameter_options(r0_cmd, opts);

    auto* eq_cmd = app.add_subcommand("equilibria", "equilibria and their local stability");
    add_parameter_options(eq_cmd, opts);

    auto* sens_cmd = app.add_subcommand("sensitivity", "normalised sensitivity indices of R0 and their ranking");
    add_parameter_options(sens_cmd, opts);
    sens_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sens_cmd->add_option("-o,--out", out, "output path (default stdout)");

    auto* region_cmd = app.add_subcommand("region", "R0 = 1 intercepts and the feasible disease-free polygon");
    add_parameter_options(region_cmd, opts);

    auto* sweep_cmd = app.add_subcommand("sweep", "boost intervention rates and compare peak and terminal burden");
    add_parameter_options(sweep_cmd, opts);
    add_integrator_options(sweep_cmd, opts);
    sweep_cmd->add_option("--targets", opts.targets, "parameters to boost (u1..u5, delta)");
    sweep_cmd->add_option("--boosts", opts.boosts, "relative boosts, e.g. 0.3 0.6");
    sweep_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("-o,--out", out, "output path (default stdout)");
    sweep_cmd->add_option("--manifest", manifest, "write a run manifest JSON");

    auto* fig_cmd = app.add_subcommand("figures", "regenerate the data behind every figure panel");
    fig_cmd->add_option("-o,--out", out, "output directory")->required();

    auto* serve_cmd = app.add_subcommand("serve", "run the HTTP JSON service");
    serve_cmd->add_option("--host", host, "bind address");
    serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
    serve_cmd->add_option("--origin", origin, "allowed CORS origin");

    CLI11_PARSE(app, argc, argv);

    const auto start = std::chrono::steady_clock::now();
    try {
        if (*simulate_cmd) {
            const auto c    = resolve(opts);
            const auto traj = simulate(c.parameters, initial_state(c), c.integrator);
            emit_to(out, [&](std::ostream& os) { write_trajectory_csv(os, traj); });
            maybe_write_manifest(manifest, out, to_document(c), start);
        }
        else if (*r0_cmd) {
            // same body as POST /api/r0
            const auto c = resolve(opts);
            std::cout << nlohmann::json{{"r0", compute_r0(c.parameters)}}.dump() << '\n';
        }
        else if (*eq_cmd) {
            const auto c       = resolve(opts);
            nlohmann::json j   = {{"r0", compute_r0(c.parameters)}, {"disease_free", dfe_stability(c.parameters)}};
            j["endemic"]       = endemic_equilibrium(c.parameters);
            const auto stab    = endemic_stability(c.parameters);
            j["endemic_stability"] = stab ? nlohmann::json(*stab) : nlohmann::json();
            std::cout << j.dump(2) << '\n';
        }
        else if (*sens_cmd) {
            const auto c     = resolve(opts);
            const auto table = significance_ranking(c.parameters);
            emit_to(out, [&](std::ostream& os) {
                if (format == "json") {
                    nlohmann::json j = table;
                    j["r0"]          = compute_r0(c.parameters);
                    os << j.dump(2) << '\n';
                }
                else {
                    write_sensitivity_csv(os, table);
                }
            });
        }
        else if (*region_cmd) {
            const auto c = resolve(opts);
            std::cout << nlohmann::json(region_geometry(c.parameters, c.parameters.delta())).dump(2) << '\n';
        }
        else if (*sweep_cmd) {
            const auto c = resolve(opts);
            const auto r = intervention_sweep(c.parameters, initial_state(c), c.integrator, c.sweep.targets,
                                              c.sweep.boosts);
            emit_to(out, [&](std::ostream& os) {
                if (format == "json") {
                    os << nlohmann::json(r).dump(2) << '\n';
                }
                else {
                    write_sweep_csv(os, r);
                }
            });
            maybe_write_manifest(manifest, out, to_document(c), start);
        }
        else if (*fig_cmd) {
            RunManifest m;
            m.config             = {{"figures", "built-in scenarios"}, {"horizon", figure_horizon}};
            m.timestamp          = utc_timestamp();
            m.outputs            = write_figures(out);
            m.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            write_manifest(std::filesystem::path(out) / "manifest.json", m);
            for (const auto& p : m.outputs) {
                std::cout << p.generic_string() << '\n';
            }
        }
        else if (*serve_cmd) {
            std::cerr << fmt::format("listening on http://{}:{}\n", host, port);
            if (!serve(host, port, origin)) {
                std::cerr << fmt::format("error: cannot bind {}:{}\n", host, port);
                return 1;
            }
        }
    }
    catch (const Error& e) {
        std::cerr << "error: " << error_to_json(e).dump() << '\n';
        return exit_code(e.code());
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
