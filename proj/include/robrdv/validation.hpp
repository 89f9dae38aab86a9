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

// Monte Carlo success probability of a nominal control with recourse, the
// analytic decomposition for a bang-off-bang control, and the ratio-problem
// multiplier check.

#include <cstdint>
#include <array>
#include <functional>
#include <vector>

#include "robrdv/det_solver.hpp"

namespace robrdv {

struct SampleRecord {
    std::size_t index = 0;
    FailureScenario scenario;
    DetStatus status = DetStatus::Diverged;
    double consumption = 0.0;  // recourse consumption, meaningful for hits
};

struct ProbabilityEstimate {
    double p_hat = 0.0;
    double std_err = 0.0;  // binomial, scaled by 1 - pi_f
    double pi_f = 0.0;
    std::size_t n_samples = 0;
    std::size_t hits = 0;
    std::size_t misses = 0;    // includes diverged samples
    std::size_t diverged = 0;
    // Not part of the chance-constrained model: mean consumption over the hit samples.
    double mean_recourse_consumption = 0.0;
    std::vector<SampleRecord> samples;
};

/// Recourse solver used by estimate_probability; replaceable for testing.
using RecourseOracle =
    std::function<DetSolution(const SatState& x_tp, const FailureScenario& scen)>;

/// p_hat = pi_f + (1 - pi_f) * (fraction of conditional failure samples whose
/// recourse hits the target). Scenarios are drawn up front from `seed`, so the
/// hit set does not depend on evaluation order. The default oracle warm-starts
/// solve_recourse from u and upsilon0.
ProbabilityEstimate estimate_probability(const ControlTrajectory& u, const MissionSpec& spec,
                                         const AugLagParams& params, std::size_t n_samples,
                                         std::uint64_t seed, const Vec6& upsilon0 = {},
                                         const RecourseOracle& oracle = {});

/// pi_f + P(T_p < t_b): success probability when every failure before the
/// last switch-off time t_b is recoverable and every later one is not.
double p_det_analytic(const MissionSpec& spec, double t_b);

/// mu_star >= J / Theta. Throws ConfigError unless Theta > 0.
bool check_lemma_condition(double J_val, double Theta_val, double mu_star);

// Two-variable toy for the ratio transformation:
//   (R) min J(u) / Theta(u)   s.t. Theta(u) >= p, u in [0, 2]^2
//   (P) min J(u)              s.t. Theta(u) >= p, u in [0, 2]^2
// with J(u) = ||u - c||^2 + j0 and Theta(u) = t0 + g . u.
struct RatioToy {
    std::array<double, 2> c{0.2, 0.3};
    double j0 = 0.1;
    double t0 = 0.2;
    std::array<double, 2> g{0.3, 0.2};
    double p = 0.8;
};

RatioToy active_ratio_toy();
RatioToy inactive_ratio_toy();

struct RatioToyReport {
    std::size_t grid_points = 0;             // per axis
    std::array<std::size_t, 2> argmin_ratio{};
    std::array<std::size_t, 2> argmin_plain{};
    bool applicable = false;                 // Theta at the (R) grid solution equals p
    bool argmin_match = false;
    // Closed-form solution of (P) and its multiplier, then lambda from the
    // stationarity of (R) at the same point.
    std::array<double, 2> u_star{};
    double mu_star = 0.0;
    double lambda_star = 0.0;
    double relation_residual = 0.0;          // |mu - (J/Theta + lambda Theta)|
    double ratio_stationarity = 0.0;         // tangential part of grad (J/Theta)
    bool condition_holds = false;            // check_lemma_condition at u_star
};

/// Dense grid search of both problems plus the multiplier relation.
RatioToyReport lemma_b1_toy_equivalence(const RatioToy& toy = active_ratio_toy(),
                                        std::size_t grid_points = 2001);

}  // namespace robrdv
