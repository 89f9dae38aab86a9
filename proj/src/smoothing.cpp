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
#include "robrdv/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "robrdv/types.hpp"

namespace robrdv {

void Schedules::validate() const {
    // alpha may be zero: a frozen run is a valid (if useless) configuration
    if (alpha_u < 0.0 || alpha_mu < 0.0 || !(beta_u > 0.0) || !(beta_mu > 0.0) ||
        !(a_r > 0.0) || !(b_r > 0.0)) {
        throw ConfigError("schedules: alphas must be >= 0, all other parameters > 0");
    }
}

double indicator(double y) {
    if (y < 0.0) throw std::domain_error("indicator: negative argument");
    return y == 0.0 ? 1.0 : 0.0;
}

double indicator_smooth(double y, double r) {
    if (y < 0.0) throw std::domain_error("indicator_smooth: negative argument");
    if (!(r > 0.0)) throw std::domain_error("indicator_smooth: radius must be positive");
    return std::max(0.0, 1.0 - y / r);
}

double heaviside_smooth(double y, double r) {
    if (!(r > 0.0)) throw std::domain_error("heaviside_smooth: radius must be positive");
    if (y <= -r) return 0.0;
    if (y >= 0.0) return 1.0;
    return 1.0 + y / r;
}

double step_length(std::uint64_t k, double alpha, double beta) {
    return alpha / (beta + static_cast<double>(k));
}

double smoothing_radius(std::uint64_t k, double a, double b) {
    return a / (b + std::cbrt(static_cast<double>(k)));
}

}  // namespace robrdv
