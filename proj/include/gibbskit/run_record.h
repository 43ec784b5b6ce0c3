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

#ifndef GIBBSKIT_RUN_RECORD_H
#define GIBBSKIT_RUN_RECORD_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gibbskit {

/// Library version string baked in at build time.
std::string library_version();

/// Explicit seed if given, else GIBBSKIT_SEED from the environment, else 0.
/// Throws ValidationError if the environment value is not an unsigned integer.
uint64_t resolve_seed(std::optional<uint64_t> flag);

/// Everything needed to reproduce a command-line run.
///
/// `result` holds only deterministic output; timing lives in `wall_ms` so
/// that replays with the same command, seed and workers = 1 can be compared
/// payload for payload.
struct RunRecord {
    std::vector<std::string> command;
    uint64_t seed = 0;
    int workers = 1;
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json result = nlohmann::json::object();
    /// Operator-application counts by kind.
    nlohmann::json matvecs = nlohmann::json::object();
    double wall_ms = 0;
    std::string version;

    nlohmann::json to_json() const;
    static RunRecord from_json(const nlohmann::json &j);
};

/// Writes the record as indented JSON; throws ValidationError on I/O failure.
void write_run_record(const RunRecord &record, const std::string &path);

}  // namespace gibbskit

#endif
