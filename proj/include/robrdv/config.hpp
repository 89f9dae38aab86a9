/*
 Copyright 2026 The robrdv Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#pragma once

// JSON run configuration. Sections: mission and failure_law (required),
// schedules, solver and run (optional, defaults filled in).

#include <cstdint>
#include <string>
#include <vector>

#include "robrdv/det_solver.hpp"
#include "robrdv/smoothing.hpp"

namespace robrdv {

struct RunSettings {
    std::size_t steps = 512;
    std::uint64_t seed = 1;
    std::uint64_t iters = 5000;
    double mu0 = 0.325;
    std::size_t samples = 2000;
    std::uint64_t checkpoint_every = 500;  // 0 disables checkpoints
    std::vector<double> sweep_p{0.55, 0.75, 0.925, 0.95};
};

struct Config {
    MissionSpec mission;
    Schedules schedules;
    AugLagParams solver;
    RunSettings run;

    TimeGrid grid() const { return {mission.t_i, mission.t_f, run.steps}; }
    void validate() const;
};

/// Parses a JSON document. Throws ConfigError naming the offending key.
Config parse_config(const std::string& json_text);

/// Reads and parses a file. Throws IoError if it cannot be read.
Config load_config(const std::string& path);

/// Fully resolved configuration as pretty-printed JSON; parse_config of the
/// result reproduces the same Config exactly.
std::string config_to_json(const Config& cfg);

/// Every key resolved to its default; the mission is the reference one.
Config default_config();

}  // namespace robrdv
