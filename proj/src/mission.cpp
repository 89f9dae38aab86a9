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
#include "robrdv/mission.hpp"

namespace robrdv {

void FailureLaw::validate() const {
    if (!(t_p_min > 0.0 && scale_p > 0.0 && t_d_min > 0.0 && scale_d > 0.0)) {
        throw ConfigError("failure_law: all parameters must be positive");
    }
}

void MissionSpec::validate() const {
    if (!(thrust > 0.0)) throw ConfigError("mission.thrust must be positive");
    if (!(g0_isp > 0.0)) throw ConfigError("mission.g0_isp must be positive");
    if (!(mu_grav > 0.0)) throw ConfigError("mission.mu_grav must be positive");
    if (!(t_i < t_f)) throw ConfigError("mission: t_i must be < t_f");
    if (!(x_i.p() > 0.0) || !(x_i.mass() > 0.0)) {
        throw ConfigError("mission.x_i: p and m must be positive");
    }
    if (!(p_level > 0.0 && p_level < 1.0)) {
        throw ConfigError("mission.p must lie in (0, 1)");
    }
    failure.validate();
    if (failure.t_p_min > t_f) {
        throw ConfigError("failure_law.t_p_min must not exceed t_f");
    }
}

MissionSpec reference_mission() { return MissionSpec{}; }

}  // namespace robrdv
