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

// Value of the recourse subproblem W_r(x(t_p), mu) and its partial gradients.

#include <string>

#include "robrdv/det_solver.hpp"

namespace robrdv {

enum class InnerStatus { DoNothing, HitExact, NearMiss, Diverged };

std::string to_string(InnerStatus s);

struct InnerSolution {
    double value = 0.0;
    Vec7 grad_x{};         // with respect to the state at the onset node
    double grad_mu = 0.0;  // in [-1, 0]
    InnerStatus status = InnerStatus::DoNothing;
    DetSolution recourse;
};

/// Solves the recourse problem for `scen` from x_tp and classifies it:
///   hit and K < mu                   -> HitExact, value K - mu
///   missed by 0 < d <= r and K < mu  -> NearMiss, value (K - mu)(1 - d / r)
///   recourse solver diverged         -> Diverged, all outputs zero
///   anything else                    -> DoNothing, all outputs zero
/// A deviation within params.tol_target always counts as a hit.
/// v0 and upsilon0 warm-start the recourse solve. The recourse is not
/// solved (and `recourse` left empty) when the fuel spent before t_p
/// already reaches mu.
InnerSolution eval_W(const SatState& x_tp, const FailureScenario& scen, double mu, double r,
                     const MissionSpec& spec, const AugLagParams& params,
                     const ControlTrajectory& v0, const Vec6& upsilon0 = {});

}  // namespace robrdv
