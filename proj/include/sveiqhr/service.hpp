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
#ifndef SVEIQHR_SERVICE_HPP
#define SVEIQHR_SERVICE_HPP

#include "sveiqhr/config.hpp"
#include "sveiqhr/dynamics.hpp"
#include "sveiqhr/equilibrium.hpp"
#include "sveiqhr/errors.hpp"
#include "sveiqhr/serialize.hpp"
#include "sveiqhr/strategy.hpp"
#include "sveiqhr/version.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cmath>
#include <memory>
#include <string>

namespace sveiqhr
{

/// Largest number of sampled points (summed over runs) a single request may ask for.
inline constexpr double max_points_per_request = 1e6;

struct ServiceResponse {
    int status = 200;
    std::string body;
};

/// ParseError and ValidationError are client mistakes; any other library error is a domain failure.
inline int http_status(ErrorCode code)
{
    switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::UnknownLevel:
        return 400;
    case ErrorCode::InvariantViolation:
        return 500;
    default:
        return 422;
    }
}

/// Table 1 as published. delta and u2 have no single value there and are null.
inline nlohmann::json defaults_document()
{
    nlohmann::json params;
    to_json(params, table1_values(0.0));
    params["delta"] = nullptr;
    params["u2"]    = nullptr;
    nlohmann::json levels = nlohmann::json::object();
    for (int level = 1; level <= 4; ++level) {
        levels[std::to_string(level)] = ppkm_level_u2(level);
    }
    return {{"parameters", params},
            {"u2_default", table1::u2_fallback},
            {"ppkm_levels", levels},
            {"initial_state", default_initial_state()}};
}

namespace detail
{

inline std::size_t sample_count(const IntegratorConfig& c)
{
    return static_cast<std::size_t>(std::ceil(c.horizon / c.sample_interval)) + 1;
}

inline void check_budget(double points, const std::string& field)
{
    if (points > max_points_per_request) {
        throw ValidationError(field, "<= 1e6 points", "request exceeds 1e6 points; run larger jobs from the CLI");
    }
}

inline void check_integration_budget(const ScenarioConfig& c, double runs)
{
    check_budget(runs * static_cast<double>(sample_count(c.integrator)), "integrator.sample_interval");
    if (c.integrator.method == IntegrationMethod::Rk4) {
        check_budget(runs * c.integrator.horizon / c.integrator.step, "integrator.step");
    }
}

inline nlohmann::json dispatch_post(const std::string& path, const ScenarioConfig& c)
{
    if (path == "/api/r0") {
        return {{"r0", compute_r0(c.parameters)}};
    }
    if (path == "/api/simulate") {
        check_integration_budget(c, 1.0);
        const auto traj = simulate(c.parameters, initial_state(c), c.integrator);
        return {{"trajectory", traj}, {"summary", peak_and_limit(traj)}};
    }
    if (path == "/api/sensitivity") {
        nlohmann::json j = significance_ranking(c.parameters);
        j["r0"]          = compute_r0(c.parameters);
        return j;
    }
    if (path == "/api/region") {
        return region_geometry(c.parameters, c.parameters.delta());
    }
    if (path == "/api/sweep") {
        check_integration_budget(c, static_cast<double>(c.sweep.targets.size() * c.sweep.boosts.size() + 1));
        return intervention_sweep(c.parameters, initial_state(c), c.integrator, c.sweep.targets, c.sweep.boosts);
    }
    throw std::out_of_range(path);
}

inline bool is_post_endpoint(const std::string& path)
{
    return path == "/api/r0" || path == "/api/simulate" || path == "/api/sensitivity" || path == "/api/region" ||
           path == "/api/sweep";
}

} // namespace detail

/**
 * Stateless request handler behind the HTTP server. Bodies of POST requests are scenario
 * fragments whose parameter keys may sit at the top level. A 500 body carries only the error.
 */
inline ServiceResponse handle_request(const std::string& method, const std::string& path, const std::string& body)
{
    auto json_response = [](int status, const nlohmann::json& j) { return ServiceResponse{status, j.dump()}; };
    try {
        if (method == "GET" && path == "/api/health") {
            return json_response(200, {{"status", "ok"}, {"version", version}});
        }
        if (method == "GET" && path == "/api/defaults") {
            return json_response(200, defaults_document());
        }
        if (method == "POST" && detail::is_post_endpoint(path)) {
            const auto doc = parse_document(body.empty() ? "{}" : body);
            return json_response(200, detail::dispatch_post(path, scenario_from_json(doc, true)));
        }
        if (path == "/api/health" || path == "/api/defaults" || detail::is_post_endpoint(path)) {
            return json_response(405, {{"error", "MethodNotAllowed"}, {"message", method + " " + path}});
        }
        return json_response(404, {{"error", "NotFound"}, {"message", path}});
    }
    catch (const Error& e) {
        return json_response(http_status(e.code()), error_to_json(e));
    }
    catch (const std::exception& e) {
        return json_response(500, {{"error", "InternalError"}, {"message", e.what()}});
    }
}

/// HTTP server over handle_request with permissive CORS for the explorer UI.
inline std::unique_ptr<httplib::Server> make_server(const std::string& allowed_origin = "*")
{
    auto server = std::make_unique<httplib::Server>();
    server->set_default_headers({{"Access-Control-Allow-Origin", allowed_origin},
                                 {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                 {"Access-Control-Allow-Headers", "Content-Type"}});
    auto forward = [](const httplib::Request& req, httplib::Response& res) {
        const auto r = handle_request(req.method, req.path, req.body);
        res.status   = r.status;
        res.set_content(r.body, "application/json");
    };
    server->Get(R"(/api/.*)", forward);
    server->Post(R"(/api/.*)", forward);
    server->Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
    });
    return server;
}

/// Blocks until the server stops. Returns false if the address cannot be bound.
inline bool serve(const std::string& host, int port, const std::string& allowed_origin = "*")
{
    auto server = make_server(allowed_origin);
    return server->listen(host, port);
}

} // namespace sveiqhr

#endif // SVEIQHR_SERVICE_HPP
