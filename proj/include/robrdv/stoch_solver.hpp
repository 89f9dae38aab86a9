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

// Stochastic Arrow-Hurwicz loop for the chance-constrained mission: one
// sampled failure per iteration, projected primal step on the nominal
// control, projected ascent on the multiplier mu of the probability constraint.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "robrdv/inner_value.hpp"
#include "robrdv/smoothing.hpp"

namespace robrdv {

/// Everything needed to continue a run exactly where it stopped.
struct StochCheckpoint {
    std::uint64_t k = 0;          // next iteration index
    ControlTrajectory u;
    double mu = 0.0;
    Vec6 upsilon_projection{};    // warm start of the projection multiplier
    std::string rng_state;
};

struct StochRunConfig {
    MissionSpec spec;
    Schedules schedules;
    AugLagParams inner;           // recourse and projection solves
    std::uint64_t n_iters = 5000;
    double mu0 = 0.325;
    std::uint64_t seed = 1;

    // Warm start: usually the deterministic optimum and its multiplier.
    ControlTrajectory u0;
    Vec6 upsilon0{};

    void validate() const;
};

struct IterationLog {
    std::uint64_t k = 0;
    FailureScenario scenario;
    InnerStatus status = InnerStatus::DoNothing;
    double mu = 0.0;              // mu^{k+1}
    double consumption = 0.0;     // no-failure consumption of u^{k+1}
    double r = 0.0;
    double eps_u = 0.0;
    double eps_mu = 0.0;
};

struct StochRunResult {
    ControlTrajectory u_star;
    StateTrajectory x_star;
    std::vector<double> mu_trace;           // mu^0 .. mu^n
    std::vector<double> consumption_trace;  // K(u^0) .. K(u^n)
    std::vector<IterationLog> log;
    std::uint64_t do_nothing = 0;
    std::uint64_t hit_exact = 0;
    std::uint64_t near_miss = 0;
    std::uint64_t diverged = 0;             // recourse solves treated as do-nothing
    std::uint64_t projection_failures = 0;  // iterations that kept the previous control
    StochCheckpoint checkpoint;             // state after the last iteration

    double mu() const { return mu_trace.back(); }
    double consumption() const { return consumption_trace.back(); }
};

/// Called after every iteration with the log entry and the state to resume from.
using IterationObserver = std::function<void(const IterationLog&, const StochCheckpoint&)>;

/// Runs iterations [0, n_iters), or [resume->k, n_iters) when resuming.
/// A resumed run reproduces the uninterrupted one bit for bit.
/// Throws DynamicsError if the nominal trajectory leaves the dynamics domain.
StochRunResult run_stochastic(const StochRunConfig& config,
                              const StochCheckpoint* resume = nullptr,
                              const IterationObserver& observer = {});

}  // namespace robrdv
