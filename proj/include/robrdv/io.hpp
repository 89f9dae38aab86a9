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

// CSV artifacts and checkpoints. Report values are printed with 9
// significant digits; checkpoints keep full precision. All writers throw
// IoError on failure.

#include <string>
#include <vector>

#include "robrdv/stoch_solver.hpp"
#include "robrdv/validation.hpp"

namespace robrdv {

/// "%.9g"
std::string format_number(double v);

/// t, p, e_x, e_y, h_x, h_y, l, m, q, s, w at every node of x (which must
/// start at node 0). The control of the last node repeats the final interval.
void write_trajectory_csv(const std::string& path, const StateTrajectory& x,
                          const ControlTrajectory& u);

/// Controls back from a trajectory CSV; the time column must match `grid`.
ControlTrajectory read_control_csv(const std::string& path, const TimeGrid& grid);

/// iteration, delta_norm, consumption, upsilon_1 .. upsilon_6
void write_det_convergence_csv(const std::string& path,
                               const std::vector<IterationRecord>& history);

/// k, t_p, t_d, inner_status, mu, consumption, r_k, eps_u_k, eps_mu_k
void write_stoch_convergence_csv(const std::string& path, const std::vector<IterationLog>& log);

/// index, t_p, t_d, status, recourse_consumption
void write_validation_report(const std::string& path, const ProbabilityEstimate& est);

/// index, t_p, t_d
void write_failure_samples(const std::string& path, const std::vector<FailureScenario>& s);

/// Appends "p, mu, consumption", writing the header first if the file is new.
void append_sweep_row(const std::string& path, double p, double mu, double consumption);

/// Written to a temporary file and renamed into place.
void write_checkpoint(const std::string& path, const StochCheckpoint& cp);
StochCheckpoint read_checkpoint(const std::string& path);

void write_text(const std::string& path, const std::string& text);

}  // namespace robrdv
