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

// Deterministic Arrow-Hurwicz solver: primal proximal-gradient steps on the
// control, dual ascent on the multiplier of the terminal rendezvous
// constraint, with an augmented Lagrangian terminal cost
//     Phi(x_f) = J + upsilon . C(x_f) + c/2 ||C(x_f)||^2.
// Every entry point takes upsilon0 to seed the multiplier.

#include <cstddef>
#include <string>
#include <vector>

#include "robrdv/propagation.hpp"

namespace robrdv {

struct AugLagParams {
    double c = 10.0;              // augmentation weight
    double dual_step = 1.0;       // multiplier ascent step
    std::size_t max_iters = 4000;
    double tol_target = 1e-5;     // ||C|| threshold for "hit"
    double tol_stall = 1e-6;      // variation of ||C|| over the stall window
    std::size_t stall_window = 200;
    double tol_kkt = 1e-3;        // L2 norm of the projected gradient for early exit
    double step_init = 0.1;       // initial primal step (pointwise gradient units)
    double step_max = 1e3;
    bool record_history = false;

    void validate() const;
};

enum class DetStatus { ConvergedHit, ConvergedMissed, Diverged };

std::string to_string(DetStatus s);

struct IterationRecord {
    std::size_t iter = 0;
    double delta_norm = 0.0;
    double consumption = 0.0;
    double aug_lagrangian = 0.0;
    double step = 0.0;
    double kkt = 0.0;
    Vec6 upsilon{};
};

struct DetSolution {
    ControlTrajectory u_star;
    StateTrajectory x_star;  // from the first controlled (or coasting) node to t_f
    double consumption = 0.0;
    Vec6 upsilon{};
    Vec6 delta{};
    DetStatus status = DetStatus::Diverged;
    std::size_t iterations = 0;
    double kkt = 0.0;
    std::vector<IterationRecord> history;

    double delta_norm() const { return norm2(delta); }
};

/// Minimum-fuel transfer from spec.x_i at t_i to the target at t_f.
DetSolution solve_deterministic(const MissionSpec& spec, const AugLagParams& params,
                                const ControlTrajectory& u0, const Vec6& upsilon0 = {});

/// Recourse after an outage starting at x_tp (the state at t_p): coast
/// through the outage, then minimum-fuel control on [t_p + t_d, t_f].
/// v0 warm-starts the control; entries before recovery are ignored.
/// The returned u_star is zero on the outage, x_star starts at the onset node.
DetSolution solve_recourse(const SatState& x_tp, const FailureScenario& scen,
                           const MissionSpec& spec, const AugLagParams& params,
                           const ControlTrajectory& v0, const Vec6& upsilon0 = {});

/// Closest control (in L2) to u_half that respects the unit ball and hits
/// the target from spec.x_i.
DetSolution project_control(const ControlTrajectory& u_half, const MissionSpec& spec,
                            const AugLagParams& params, const Vec6& upsilon0 = {});

/// Initial guess used for the deterministic mission: full tangential thrust.
ControlTrajectory tangential_thrust(const TimeGrid& grid);

/// Radial scaling onto the unit ball, interval by interval.
void clip_to_unit_ball(ControlTrajectory& u);

/// Times where ||u|| crosses `level`, located at interval boundaries.
std::vector<double> switch_times(const ControlTrajectory& u, double level = 0.5);

}  // namespace robrdv
