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
#include "robrdv/det_solver.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace robrdv {
namespace {

enum class Objective { Fuel, Distance };

struct Problem {
    Objective objective = Objective::Fuel;
    SatState x_start;
    std::size_t first_node = 0;            // controls live on [first_node, N)
    const ControlTrajectory* reference = nullptr;  // Distance objective only
};

struct Evaluation {
    StateTrajectory traj;
    Vec6 delta{};
    double objective = 0.0;
    double lagrangian = 0.0;
};

double distance_term(const Problem& pb, const ControlTrajectory& u) {
    if (pb.objective != Objective::Distance) return 0.0;
    const auto& ref = *pb.reference;
    double acc = 0.0;
    for (std::size_t k = pb.first_node; k < u.size(); ++k) {
        const double dq = u[k].q - ref[k].q, ds = u[k].s - ref[k].s, dw = u[k].w - ref[k].w;
        acc += dq * dq + ds * ds + dw * dw;
    }
    return 0.5 * acc * u.grid.step();
}

double lagrangian_value(const Problem& pb, const Evaluation& ev, const Vec6& upsilon,
                        const AugLagParams& prm, const MissionSpec& spec) {
    const double base = pb.objective == Objective::Fuel ? consumption(ev.traj.back(), spec)
                                                        : ev.objective;
    const double dn = norm2(ev.delta);
    return base + dot(upsilon, ev.delta) + 0.5 * prm.c * dn * dn;
}

Evaluation evaluate(const Problem& pb, const ControlTrajectory& u, const Vec6& upsilon,
                    const AugLagParams& prm, const MissionSpec& spec) {
    Evaluation ev;
    ev.traj = flow_nodes(pb.x_start, u, pb.first_node, u.grid.n_steps(), spec);
    ev.delta = target_deviation(ev.traj.back(), spec);
    ev.objective = pb.objective == Objective::Fuel ? consumption(ev.traj.back(), spec)
                                                   : distance_term(pb, u);
    ev.lagrangian = lagrangian_value(pb, ev, upsilon, prm, spec);
    return ev;
}

// argmin_u  1/(2 eps) ||u - v||^2 + q/2 ||u - center||^2 + kappa ||u||  over ||u|| <= 1.
// Every term is radial around the same direction, so the minimizer is the
// combined center w rescaled to clamp(||w|| - kappa / alpha, 0, 1).
ControlVec radial_prox(const Vec3& v, const Vec3& center, double q, double eps, double kappa,
                       const ControlVec& previous) {
    const double alpha = 1.0 / eps + q;
    Vec3 w{};
    for (std::size_t i = 0; i < 3; ++i) w[i] = (v[i] / eps + q * center[i]) / alpha;
    const double nw = norm2(w);
    const double radius = std::clamp(nw - kappa / alpha, 0.0, 1.0);
    if (radius == 0.0) return {};
    if (nw > 0.0) return {w[0] * radius / nw, w[1] * radius / nw, w[2] * radius / nw};
    const double np = previous.norm();
    if (np > 0.0) {
        return {previous.q * radius / np, previous.s * radius / np, previous.w * radius / np};
    }
    return {0.0, radius, 0.0};
}

ControlTrajectory prox_step(const Problem& pb, const ControlTrajectory& u,
                            const AdjointTrajectory& adj, double eps) {
    ControlTrajectory next = u;
    const double h = u.grid.step();
    const double q = pb.objective == Objective::Distance ? 1.0 : 0.0;
    for (std::size_t k = pb.first_node; k < u.size(); ++k) {
        const Vec3& g = adj.control_grad[k - pb.first_node];
        const Vec3 uk = u[k].as_array();
        const Vec3 v{uk[0] - eps * g[0] / h, uk[1] - eps * g[1] / h, uk[2] - eps * g[2] / h};
        const Vec3 center = q > 0.0 ? (*pb.reference)[k].as_array() : Vec3{};
        next[k] = radial_prox(v, center, q, eps, adj.mass_sens[k - pb.first_node] / h, u[k]);
    }
    return next;
}

double squared_l2(const ControlTrajectory& a, const ControlTrajectory& b, std::size_t from) {
    double acc = 0.0;
    for (std::size_t k = from; k < a.size(); ++k) {
        const double dq = a[k].q - b[k].q, ds = a[k].s - b[k].s, dw = a[k].w - b[k].w;
        acc += dq * dq + ds * ds + dw * dw;
    }
    return acc * a.grid.step();
}

DetSolution run_solver(const Problem& pb, const ControlTrajectory& u0, const Vec6& upsilon0,
                       const AugLagParams& prm, const MissionSpec& spec) {
    prm.validate();
    constexpr double kArmijo = 1e-4;

    ControlTrajectory u = u0;
    for (std::size_t k = 0; k < pb.first_node; ++k) u[k] = ControlVec{};
    clip_to_unit_ball(u);

    Vec6 upsilon = upsilon0;
    Evaluation ev = evaluate(pb, u, upsilon, prm, spec);
    double eps = prm.step_init;
    double kkt = 0.0;

    std::deque<double> delta_window;
    std::deque<double> upsilon_window;

    DetSolution sol;
    sol.status = DetStatus::Diverged;
    std::size_t it = 0;
    for (; it < prm.max_iters; ++it) {
        const double dn = norm2(ev.delta);
        delta_window.push_back(dn);
        upsilon_window.push_back(norm2(upsilon));
        if (delta_window.size() > prm.stall_window) {
            delta_window.pop_front();
            upsilon_window.pop_front();
        }
        if (prm.record_history) {
            sol.history.push_back({it, dn, consumption(ev.traj.back(), spec), ev.lagrangian, eps,
                                   kkt, upsilon});
        }
        if (it > 0 && dn <= prm.tol_target && kkt <= prm.tol_kkt) {
            sol.status = DetStatus::ConvergedHit;
            break;
        }
        if (delta_window.size() == prm.stall_window) {
            const auto [lo, hi] = std::minmax_element(delta_window.begin(), delta_window.end());
            if (*hi - *lo < prm.tol_stall) {
                if (dn <= prm.tol_target) {
                    sol.status = DetStatus::ConvergedHit;
                    break;
                }
                if (upsilon_window.back() > upsilon_window.front()) {
                    sol.status = DetStatus::ConvergedMissed;
                    break;
                }
            }
        }

        Vec7 lambda_f{};
        for (std::size_t i = 0; i < kElemDim; ++i) lambda_f[i] = upsilon[i] + prm.c * ev.delta[i];
        lambda_f[kMass] = pb.objective == Objective::Fuel ? -1.0 : 0.0;
        const AdjointTrajectory adj = adjoint_flow(ev.traj, u, lambda_f, {}, spec);

        bool accepted = false;
        const double eps_start = eps;
        for (int trial = 0; trial < 40; ++trial) {
            ControlTrajectory cand = prox_step(pb, u, adj, eps);
            const double move = squared_l2(cand, u, pb.first_node);
            if (move == 0.0) break;
            try {
                Evaluation cev = evaluate(pb, cand, upsilon, prm, spec);
                // decreases below rounding of L still count, or weakly controllable
                // directions would stall the step at the noise floor
                const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                                     (std::abs(ev.lagrangian) + 1.0);
                if (cev.lagrangian <= ev.lagrangian - kArmijo / eps * move + noise) {
                    kkt = std::sqrt(move) / eps;
                    u = std::move(cand);
                    ev = std::move(cev);
                    eps = std::min(eps * 1.5, prm.step_max);
                    accepted = true;
                    break;
                }
            } catch (const DynamicsError&) {
                // step left the dynamics domain; shrink and retry
            }
            eps *= 0.5;
        }
        if (!accepted) {
            // no descent at any tested step: the primal iterate is stationary up to
            // rounding. Keep the step, a collapsed one would freeze every later iteration.
            kkt = 0.0;
            eps = eps_start;
        }
        for (std::size_t i = 0; i < kElemDim; ++i) upsilon[i] += prm.dual_step * ev.delta[i];
        ev.lagrangian = lagrangian_value(pb, ev, upsilon, prm, spec);
    }

    sol.iterations = it;
    sol.u_star = std::move(u);
    sol.x_star = std::move(ev.traj);
    sol.consumption = consumption(sol.x_star.back(), spec);
    sol.delta = ev.delta;
    sol.upsilon = upsilon;
    sol.kkt = kkt;
    if (sol.status == DetStatus::ConvergedHit && sol.delta_norm() > prm.tol_target) {
        sol.status = DetStatus::Diverged;
    }
    return sol;
}

}  // namespace

void AugLagParams::validate() const {
    if (!(c > 0.0) || !(dual_step >= 0.0) || !(tol_target > 0.0) || !(tol_stall > 0.0) ||
        !(tol_kkt > 0.0) || !(step_init > 0.0) || !(step_max >= step_init) ||
        stall_window < 2 || max_iters < 1) {
        throw ConfigError("solver parameters out of range");
    }
}

std::string to_string(DetStatus s) {
    switch (s) {
        case DetStatus::ConvergedHit: return "converged-hit";
        case DetStatus::ConvergedMissed: return "converged-missed";
        case DetStatus::Diverged: return "diverged";
    }
    return "unknown";
}

void clip_to_unit_ball(ControlTrajectory& u) {
    for (auto& v : u.values) {
        const double n = v.norm();
        if (n > 1.0) v = {v.q / n, v.s / n, v.w / n};
    }
}

ControlTrajectory tangential_thrust(const TimeGrid& grid) {
    return ControlTrajectory(grid, ControlVec{0.0, 1.0, 0.0});
}

std::vector<double> switch_times(const ControlTrajectory& u, double level) {
    std::vector<double> out;
    for (std::size_t k = 1; k < u.size(); ++k) {
        const bool before = u[k - 1].norm() >= level;
        const bool after = u[k].norm() >= level;
        if (before != after) out.push_back(u.grid.node(k));
    }
    return out;
}

DetSolution solve_deterministic(const MissionSpec& spec, const AugLagParams& params,
                                const ControlTrajectory& u0, const Vec6& upsilon0) {
    Problem pb;
    pb.x_start = spec.x_i;
    return run_solver(pb, u0, upsilon0, params, spec);
}

DetSolution solve_recourse(const SatState& x_tp, const FailureScenario& scen,
                           const MissionSpec& spec, const AugLagParams& params,
                           const ControlTrajectory& v0, const Vec6& upsilon0) {
    const TimeGrid& g = v0.grid;
    if (!(scen.t_p < g.t_f())) throw ConfigError("solve_recourse: failure after t_f");
    const FailureNodes fn = snap_failure(g, scen);

    ControlTrajectory zero(g);
    StateTrajectory coast = flow_nodes(x_tp, zero, fn.onset, fn.recovery, spec);

    DetSolution sol;
    if (fn.recovery >= g.n_steps()) {
        sol.u_star = zero;
        sol.x_star = std::move(coast);
        sol.delta = target_deviation(sol.x_star.back(), spec);
        sol.consumption = consumption(sol.x_star.back(), spec);
        sol.status = sol.delta_norm() <= params.tol_target ? DetStatus::ConvergedHit
                                                           : DetStatus::ConvergedMissed;
        return sol;
    }

    Problem pb;
    pb.x_start = coast.back();
    pb.first_node = fn.recovery;
    sol = run_solver(pb, v0, upsilon0, params, spec);
    for (std::size_t k = 0; k < fn.recovery; ++k) sol.u_star[k] = ControlVec{};
    // prepend the coast arc so x_star starts at the onset node
    coast.states.pop_back();
    coast.states.insert(coast.states.end(), sol.x_star.states.begin(), sol.x_star.states.end());
    sol.x_star = std::move(coast);
    return sol;
}

DetSolution project_control(const ControlTrajectory& u_half, const MissionSpec& spec,
                            const AugLagParams& params, const Vec6& upsilon0) {
    Problem pb;
    pb.objective = Objective::Distance;
    pb.x_start = spec.x_i;
    pb.reference = &u_half;
    if (u_half.max_norm() <= 1.0) {
        // a member of the feasible set is its own projection
        StateTrajectory traj = flow_nodes(spec.x_i, u_half, 0, u_half.grid.n_steps(), spec);
        const Vec6 delta = target_deviation(traj.back(), spec);
        if (norm2(delta) <= params.tol_target) {
            DetSolution sol;
            sol.u_star = u_half;
            sol.consumption = consumption(traj.back(), spec);
            sol.x_star = std::move(traj);
            sol.delta = delta;
            sol.upsilon = upsilon0;
            sol.status = DetStatus::ConvergedHit;
            return sol;
        }
    }
    return run_solver(pb, u_half, upsilon0, params, spec);
}

}  // namespace robrdv
