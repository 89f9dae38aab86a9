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

// Fixed-step RK4 flows of the state, the failure flow, and the backward
// adjoint (the exact reverse-mode derivative of the RK4 scheme).

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "robrdv/dynamics.hpp"

namespace robrdv {

/// Uniform grid of n_steps intervals over [t_i, t_f].
class TimeGrid {
public:
    TimeGrid() = default;
    TimeGrid(double t_i, double t_f, std::size_t n_steps);

    double t_i() const { return t_i_; }
    double t_f() const { return t_f_; }
    std::size_t n_steps() const { return n_; }
    double step() const { return h_; }
    double node(std::size_t k) const;

    /// Index of the grid node closest to t, clamped to [0, n_steps].
    std::size_t snap(double t) const;

    friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

private:
    double t_i_ = 0.0;
    double t_f_ = 1.0;
    std::size_t n_ = 2;
    double h_ = 0.5;
};

/// One control vector per grid interval, held constant on the interval.
struct ControlTrajectory {
    TimeGrid grid;
    std::vector<ControlVec> values;

    ControlTrajectory() = default;
    ControlTrajectory(const TimeGrid& g, ControlVec fill = {});

    std::size_t size() const { return values.size(); }
    const ControlVec& operator[](std::size_t k) const { return values[k]; }
    ControlVec& operator[](std::size_t k) { return values[k]; }

    /// Largest pointwise ||u||.
    double max_norm() const;
};

/// L2 distance sqrt(int ||a - b||^2 dt) between two controls on the same grid.
double l2_distance(const ControlTrajectory& a, const ControlTrajectory& b);

/// States at grid nodes first_node .. first_node + states.size() - 1.
struct StateTrajectory {
    TimeGrid grid;
    std::size_t first_node = 0;
    std::vector<SatState> states;

    std::size_t last_node() const { return first_node + states.size() - 1; }
    const SatState& at_node(std::size_t k) const { return states.at(k - first_node); }
    const SatState& front() const { return states.front(); }
    const SatState& back() const { return states.back(); }
};

/// Onset time and duration of an engine outage.
struct FailureScenario {
    double t_p = 0.0;
    double t_d = 0.0;
};

/// Grid nodes of a failure scenario: outage over intervals [onset, recovery).
struct FailureNodes {
    std::size_t onset = 0;
    std::size_t recovery = 0;
    double snap_error = 0.0;  // largest |snapped - exact| of the two times
};
FailureNodes snap_failure(const TimeGrid& grid, const FailureScenario& scen);

/// Single classical RK4 step with constant control.
SatState rk4_step(const SatState& x, const ControlVec& u, double h, const MissionSpec& spec);

/// Flow over nodes [k_begin, k_end] under u. k_begin == k_end returns {x0}.
StateTrajectory flow_nodes(const SatState& x0, const ControlTrajectory& u,
                           std::size_t k_begin, std::size_t k_end, const MissionSpec& spec);

/// Flow over [s, s2]; both times are snapped to the nearest grid node.
StateTrajectory flow(const SatState& x0, const ControlTrajectory& u, double s, double s2,
                     const MissionSpec& spec);

/// State at t_f under nominal control u, outage on [t_p, t_p + t_d), then recourse v.
SatState failure_flow(const SatState& x0, const ControlTrajectory& u,
                      const ControlTrajectory& v, const FailureScenario& scen,
                      const MissionSpec& spec);

/// Backward pass result. lambda[k - first_node] is the costate at node k,
/// taken after any jump at that node has been added (lambda_minus).
///
/// For each interval j in [first_node, last_node), control_grad[j - first_node]
/// holds the derivative of the terminal cost with respect to u_j through the
/// element rows, and mass_sens[j - first_node] the derivative with respect to
/// ||u_j|| through the mass row. For u_j != 0 the full derivative is
/// control_grad + mass_sens * u_j / ||u_j||. Both are integrals over the
/// interval; divide by the step to get pointwise Hamiltonian gradients.
struct AdjointTrajectory {
    TimeGrid grid;
    std::size_t first_node = 0;
    std::vector<Vec7> lambda;
    std::vector<Vec3> control_grad;
    std::vector<double> mass_sens;

    const Vec7& at_node(std::size_t k) const { return lambda.at(k - first_node); }
    const Vec7& front() const { return lambda.front(); }
};

struct CostateJump {
    std::size_t node = 0;
    Vec7 value{};
};

/// Integrates the adjoint backward along xtraj from lambda_f at the last node,
/// adding each jump at its node. Jumps outside the trajectory are rejected.
AdjointTrajectory adjoint_flow(const StateTrajectory& xtraj, const ControlTrajectory& u,
                               const Vec7& lambda_f, std::span<const CostateJump> jumps,
                               const MissionSpec& spec);

}  // namespace robrdv
