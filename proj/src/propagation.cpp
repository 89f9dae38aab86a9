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
#include "robrdv/propagation.hpp"

#include <algorithm>

namespace robrdv {
namespace {

SatState axpy(const SatState& x, double a, const Vec7& k) {
    SatState y = x;
    for (std::size_t i = 0; i < kStateDim; ++i) y[i] += a * k[i];
    return y;
}

void add_scaled(Vec7& acc, double a, const Vec7& v) {
    for (std::size_t i = 0; i < kStateDim; ++i) acc[i] += a * v[i];
}

// acc += J^T v
void add_transpose_product(Vec7& acc, const Mat7& J, const Vec7& v) {
    for (std::size_t i = 0; i < kStateDim; ++i) {
        if (v[i] == 0.0) continue;
        for (std::size_t j = 0; j < kStateDim; ++j) acc[j] += J[i][j] * v[i];
    }
}

void check_finite(const Vec7& v, const char* what) {
    for (double e : v) {
        if (!std::isfinite(e)) throw DynamicsError(std::string("non-finite ") + what);
    }
}

}  // namespace

TimeGrid::TimeGrid(double t_i, double t_f, std::size_t n_steps)
    : t_i_(t_i), t_f_(t_f), n_(n_steps), h_((t_f - t_i) / static_cast<double>(n_steps)) {
    if (!(t_i < t_f)) throw ConfigError("time grid: t_i must be < t_f");
    if (n_steps < 2) throw ConfigError("time grid: need at least 2 steps");
}

double TimeGrid::node(std::size_t k) const {
    return k >= n_ ? t_f_ : t_i_ + h_ * static_cast<double>(k);
}

std::size_t TimeGrid::snap(double t) const {
    if (t <= t_i_) return 0;
    if (t >= t_f_) return n_;
    const double r = std::round((t - t_i_) / h_);
    return std::min(n_, static_cast<std::size_t>(r));
}

ControlTrajectory::ControlTrajectory(const TimeGrid& g, ControlVec fill)
    : grid(g), values(g.n_steps(), fill) {}

double ControlTrajectory::max_norm() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, v.norm());
    return m;
}

double l2_distance(const ControlTrajectory& a, const ControlTrajectory& b) {
    if (a.size() != b.size()) throw ConfigError("l2_distance: grid mismatch");
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double dq = a[k].q - b[k].q, ds = a[k].s - b[k].s, dw = a[k].w - b[k].w;
        acc += dq * dq + ds * ds + dw * dw;
    }
    return std::sqrt(acc * a.grid.step());
}

FailureNodes snap_failure(const TimeGrid& grid, const FailureScenario& scen) {
    FailureNodes n;
    n.onset = grid.snap(scen.t_p);
    n.recovery = std::max(n.onset, grid.snap(scen.t_p + scen.t_d));
    const double e1 = std::abs(grid.node(n.onset) - std::min(scen.t_p, grid.t_f()));
    const double e2 =
        std::abs(grid.node(n.recovery) - std::min(scen.t_p + scen.t_d, grid.t_f()));
    n.snap_error = std::max(e1, e2);
    return n;
}

SatState rk4_step(const SatState& x, const ControlVec& u, double h, const MissionSpec& spec) {
    const Vec7 k1 = gauss_rhs(x, u, spec);
    const Vec7 k2 = gauss_rhs(axpy(x, 0.5 * h, k1), u, spec);
    const Vec7 k3 = gauss_rhs(axpy(x, 0.5 * h, k2), u, spec);
    const Vec7 k4 = gauss_rhs(axpy(x, h, k3), u, spec);
    SatState y = x;
    for (std::size_t i = 0; i < kStateDim; ++i) {
        y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    check_finite(y.x, "state");
    return y;
}

StateTrajectory flow_nodes(const SatState& x0, const ControlTrajectory& u,
                           std::size_t k_begin, std::size_t k_end, const MissionSpec& spec) {
    if (k_begin > k_end || k_end > u.grid.n_steps()) {
        throw ConfigError("flow: node range outside the grid");
    }
    StateTrajectory traj{u.grid, k_begin, {}};
    traj.states.reserve(k_end - k_begin + 1);
    traj.states.push_back(x0);
    const double h = u.grid.step();
    for (std::size_t k = k_begin; k < k_end; ++k) {
        traj.states.push_back(rk4_step(traj.states.back(), u[k], h, spec));
    }
    return traj;
}

StateTrajectory flow(const SatState& x0, const ControlTrajectory& u, double s, double s2,
                     const MissionSpec& spec) {
    if (s > s2) throw ConfigError("flow: s must be <= s2");
    return flow_nodes(x0, u, u.grid.snap(s), u.grid.snap(s2), spec);
}

SatState failure_flow(const SatState& x0, const ControlTrajectory& u,
                      const ControlTrajectory& v, const FailureScenario& scen,
                      const MissionSpec& spec) {
    const TimeGrid& g = u.grid;
    if (scen.t_p >= g.t_f()) return flow_nodes(x0, u, 0, g.n_steps(), spec).back();
    const FailureNodes fn = snap_failure(g, scen);
    SatState x = flow_nodes(x0, u, 0, fn.onset, spec).back();
    const double h = g.step();
    for (std::size_t k = fn.onset; k < fn.recovery; ++k) x = rk4_step(x, ControlVec{}, h, spec);
    for (std::size_t k = fn.recovery; k < g.n_steps(); ++k) x = rk4_step(x, v[k], h, spec);
    return x;
}

AdjointTrajectory adjoint_flow(const StateTrajectory& xtraj, const ControlTrajectory& u,
                               const Vec7& lambda_f, std::span<const CostateJump> jumps,
                               const MissionSpec& spec) {
    const std::size_t k0 = xtraj.first_node;
    const std::size_t kN = xtraj.last_node();
    for (const auto& j : jumps) {
        if (j.node < k0 || j.node > kN) throw ConfigError("adjoint_flow: jump outside range");
    }
    const double h = u.grid.step();
    const std::size_t n = kN - k0;

    AdjointTrajectory adj{u.grid, k0, std::vector<Vec7>(n + 1),
                          std::vector<Vec3>(n), std::vector<double>(n, 0.0)};
    auto apply_jumps = [&](std::size_t node, Vec7& lam) {
        for (const auto& j : jumps) {
            if (j.node == node) add_scaled(lam, 1.0, j.value);
        }
    };

    Vec7 lam = lambda_f;
    apply_jumps(kN, lam);
    adj.lambda[n] = lam;
    const double gamma = -spec.mass_flow();

    for (std::size_t k = kN; k-- > k0;) {
        const SatState& x = xtraj.at_node(k);
        const ControlVec& uk = u[k];
        // recompute the four stages
        const RhsJacobians s1 = rhs_with_jacobians(x, uk, spec);
        const RhsJacobians s2 = rhs_with_jacobians(axpy(x, 0.5 * h, s1.f), uk, spec);
        const RhsJacobians s3 = rhs_with_jacobians(axpy(x, 0.5 * h, s2.f), uk, spec);
        const RhsJacobians s4 = rhs_with_jacobians(axpy(x, h, s3.f), uk, spec);

        // reverse sweep through x' = x + h/6 (k1 + 2k2 + 2k3 + k4)
        Vec7 kb4{}, kb3{}, kb2{}, kb1{};
        Vec7 yb4{}, yb3{}, yb2{}, yb1{};
        for (std::size_t i = 0; i < kStateDim; ++i) kb4[i] = h / 6.0 * lam[i];
        add_transpose_product(yb4, s4.fx, kb4);
        for (std::size_t i = 0; i < kStateDim; ++i) kb3[i] = h / 3.0 * lam[i] + h * yb4[i];
        add_transpose_product(yb3, s3.fx, kb3);
        for (std::size_t i = 0; i < kStateDim; ++i) kb2[i] = h / 3.0 * lam[i] + 0.5 * h * yb3[i];
        add_transpose_product(yb2, s2.fx, kb2);
        for (std::size_t i = 0; i < kStateDim; ++i) kb1[i] = h / 6.0 * lam[i] + 0.5 * h * yb2[i];
        add_transpose_product(yb1, s1.fx, kb1);

        Vec3 g{};
        double msens = 0.0;
        const std::array<const RhsJacobians*, 4> stages{&s1, &s2, &s3, &s4};
        const std::array<const Vec7*, 4> kbars{&kb1, &kb2, &kb3, &kb4};
        for (std::size_t s = 0; s < 4; ++s) {
            const auto& fu = stages[s]->fu;
            const Vec7& kb = *kbars[s];
            for (std::size_t i = 0; i < kElemDim; ++i) {
                for (std::size_t c = 0; c < kControlDim; ++c) g[c] += fu[i][c] * kb[i];
            }
            msens += gamma * kb[kMass];
        }

        for (std::size_t i = 0; i < kStateDim; ++i) lam[i] += yb1[i] + yb2[i] + yb3[i] + yb4[i];
        check_finite(lam, "adjoint");
        apply_jumps(k, lam);
        adj.lambda[k - k0] = lam;
        adj.control_grad[k - k0] = g;
        adj.mass_sens[k - k0] = msens;
    }
    return adj;
}

}  // namespace robrdv
