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
#include <random>
#include <string>

#include "robrdv/mission.hpp"
#include "robrdv/propagation.hpp"

namespace robrdv {

/// Probability of the no-failure event {T_p >= t_f}.
double pi_f(const FailureLaw& law, double t_f);

/// Unconditional P(T_p < t_cut).
double p_recoverable_bound(const FailureLaw& law, double t_cut, double t_f);

/// Mean of T_p - t_p_min conditioned on T_p < t_f.
double conditional_onset_mean(const FailureLaw& law, double t_f);

/// CDF of T_p conditioned on T_p < t_f.
double conditional_onset_cdf(const FailureLaw& law, double t_f, double t);

/// Seeded failure sampler. Draws come from std::mt19937_64 and are mapped to
/// [0, 1) with the top 53 bits, so streams are identical across platforms.
class FailureSampler {
public:
    FailureSampler(const FailureLaw& law, double t_f, std::uint64_t seed);

    /// Inverse-CDF draw of (T_p, T_d) given T_p < t_f. Exactly two uniforms per call.
    FailureScenario sample_conditional();

    double uniform();

    const FailureLaw& law() const { return law_; }

    /// Textual engine state, for checkpoints.
    std::string save_state() const;
    void load_state(const std::string& state);

private:
    FailureLaw law_;
    double t_f_;
    double pi_f_;
    std::mt19937_64 engine_;
};

}  // namespace robrdv
