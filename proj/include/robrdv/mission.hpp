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

#include "robrdv/types.hpp"

namespace robrdv {

/// Shifted-exponential engine failure model.
///
/// Onset T_p = t_p_min + Exp(mean scale_p), duration T_d = t_d_min + Exp(mean scale_d).
/// Both scales are means, not rates.
struct FailureLaw {
    double t_p_min = 0.68887;
    double scale_p = 15.1711;
    double t_d_min = 0.03444;
    double scale_d = 0.05350;

    void validate() const;
};

/// Physical constants, horizon, boundary conditions and chance-constraint level.
struct MissionSpec {
    double thrust = 0.0336750;
    double g0_isp = 0.4936891;
    double mu_grav = 1.0;
    double t_i = 0.6888699;
    double t_f = 8.7830909;
    SatState x_i{{0.999702, -0.003359, 0.016942, -0.000011, 0.000007, 36.52939, 1.0}};
    Vec6 x_f{1.511514, 0.085367, -0.037923, 0.010474, 0.012275, 42.17610};
    FailureLaw failure{};
    double p_level = 0.75;

    /// Mass flow at full thrust, T / (g0 Isp).
    double mass_flow() const { return thrust / g0_isp; }

    void validate() const;
};

/// The interplanetary rendezvous used throughout the examples and tests.
MissionSpec reference_mission();

}  // namespace robrdv
