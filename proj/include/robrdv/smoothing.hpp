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

#include <cstdint>

namespace robrdv {

/// Step-length and smoothing-radius schedule parameters.
///
/// Defaults are desk-scale tuning values, not published ones.
struct Schedules {
    double alpha_u = 0.05;
    double beta_u = 100.0;
    double alpha_mu = 3.0;
    double beta_mu = 100.0;
    double a_r = 0.1;
    double b_r = 1.0;

    void validate() const;
};

/// 1 if y == 0, else 0. Throws std::domain_error for y < 0.
double indicator(double y);

/// max(0, 1 - y / r) for y >= 0, r > 0.
double indicator_smooth(double y, double r);

/// Asymmetric ramp: 0 for y <= -r, 1 + y / r on (-r, 0), 1 for y >= 0.
double heaviside_smooth(double y, double r);

/// alpha / (beta + k).
double step_length(std::uint64_t k, double alpha, double beta);

/// a / (b + k^(1/3)).
double smoothing_radius(std::uint64_t k, double a, double b);

}  // namespace robrdv
