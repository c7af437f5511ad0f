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
#ifndef SVEIQHR_MANIFEST_HPP
#define SVEIQHR_MANIFEST_HPP

#include "sveiqhr/config.hpp"
#include "sveiqhr/version.hpp"

#include <fmt/chrono.h>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace sveiqhr
{

/// Record of one CLI run written next to its outputs.
struct RunManifest {
    nlohmann::json config;
    std::string software_version = std::string(version);
    std::string timestamp; ///< UTC, ISO 8601
    std::vector<std::filesystem::path> outputs;
    double wall_clock_seconds = 0.0;
};

inline std::string utc_timestamp(std::chrono::system_clock::time_point t = std::chrono::system_clock::now())
{
    return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", std::chrono::time_point_cast<std::chrono::seconds>(t));
}

inline void to_json(nlohmann::json& j, const RunManifest& m)
{
    j = {{"config", m.config},
         {"software_version", m.software_version},
         {"timestamp", m.timestamp},
         {"wall_clock_seconds", m.wall_clock_seconds}};
    j["outputs"] = nlohmann::json::array();
    for (const auto& p : m.outputs) {
        j["outputs"].push_back(p.generic_string());
    }
}

/// Throws InvariantViolation if a listed output is missing, so a manifest never lies.
inline void write_manifest(const std::filesystem::path& path, const RunManifest& m)
{
    for (const auto& p : m.outputs) {
        if (!std::filesystem::exists(p)) {
            throw Error(ErrorCode::InvariantViolation, "manifest lists missing output " + p.string());
        }
    }
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) {
        throw ValidationError("manifest", "writable path", "cannot write " + path.string());
    }
    os << nlohmann::json(m).dump(2) << '\n';
}

} // namespace sveiqhr

#endif // SVEIQHR_MANIFEST_HPP
