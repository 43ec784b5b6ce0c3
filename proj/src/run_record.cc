// Copyright 2026 The gibbskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gibbskit/run_record.h"

#include <cstdlib>
#include <fstream>

#include "gibbskit/errors.h"

namespace gibbskit {

std::string library_version() {
    return GIBBSKIT_VERSION;
}

uint64_t resolve_seed(std::optional<uint64_t> flag) {
    if (flag) {
        return *flag;
    }
    const char *env = std::getenv("GIBBSKIT_SEED");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    const std::string text(env);
    if (text.find_first_not_of("0123456789") != std::string::npos) {
        throw ValidationError("GIBBSKIT_SEED must be an unsigned integer, got '" + text + "'");
    }
    try {
        return std::stoull(text);
    } catch (const std::exception &) {
        throw ValidationError("GIBBSKIT_SEED out of range: '" + text + "'");
    }
}

nlohmann::json RunRecord::to_json() const {
    return {{"command", command}, {"seed", seed},       {"workers", workers}, {"config", config},
            {"result", result},   {"matvecs", matvecs}, {"wall_ms", wall_ms}, {"version", version}};
}

RunRecord RunRecord::from_json(const nlohmann::json &j) {
    RunRecord r;
    try {
        r.command = j.at("command").get<std::vector<std::string>>();
        r.seed = j.at("seed").get<uint64_t>();
        r.workers = j.at("workers").get<int>();
        r.config = j.at("config");
        r.result = j.at("result");
        r.matvecs = j.value("matvecs", nlohmann::json::object());
        r.wall_ms = j.value("wall_ms", 0.0);
        r.version = j.value("version", std::string());
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed run record: ") + e.what());
    }
    return r;
}

void write_run_record(const RunRecord &record, const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write run record to '" + path + "'");
    }
    out << record.to_json().dump(2) << '\n';
}

}  // namespace gibbskit
