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
#include "robrdv/stoch_solver.hpp"

#include <algorithm>
#include <array>

#include "robrdv/failures.hpp"

namespace robrdv {
namespace {

// Pointwise step u - eps * grad_u H with the nonsmooth ||u|| term of the
// mass row handled in closed form, landing inside the unit ball.
ControlTrajectory primal_step(const ControlTrajectory& u, const AdjointTrajectory& adj,
                              double eps) {
    ControlTrajectory out = u;
    const double h = u.grid.step();
    for (std::size_t k = 0; k < u.size(); ++k) {
        const Vec3& g = adj.control_grad[k];
        Vec3 w{u[k].q - eps * g[0] / h, u[k].s - eps * g[1] / h, u[k].w - eps * g[2] / h};
        const double nw = norm2(w);
        const double radius = std::clamp(nw - eps * adj.mass_sens[k] / h, 0.0, 1.0);
        if (radius == 0.0) {
            out[k] = ControlVec{};
        } else if (nw > 0.0) {
            out[k] = {w[0] * radius / nw, w[1] * radius / nw, w[2] * radius / nw};
        } else {
            const double nu = u[k].norm();
            out[k] = nu > 0.0 ? ControlVec{u[k].q * radius / nu, u[k].s * radius / nu,
                                           u[k].w * radius / nu}
                              : ControlVec{0.0, radius, 0.0};
        }
    }
    return out;
}

}  // namespace

void StochRunConfig::validate() const {
    spec.validate();
    schedules.validate();
    inner.validate();
    if (n_iters < 1) throw ConfigError("run: n_iters must be >= 1");
    if (!(mu0 >= 0.0)) throw ConfigError("run: mu0 must be >= 0");
    if (u0.size() == 0) throw ConfigError("run: missing warm-start control");
    if (u0.grid.t_i() != spec.t_i || u0.grid.t_f() != spec.t_f) {
        throw ConfigError("run: warm-start control does not span [t_i, t_f]");
    }
}

StochRunResult run_stochastic(const StochRunConfig& cfg, const StochCheckpoint* resume,
                              const IterationObserver& observer) {
    cfg.validate();
    const MissionSpec& spec = cfg.spec;
    const Schedules& sch = cfg.schedules;
    const double pf = pi_f(spec.failure, spec.t_f);
    const std::size_t n = cfg.u0.grid.n_steps();

    FailureSampler sampler(spec.failure, spec.t_f, cfg.seed);
    StochCheckpoint st;
    if (resume) {
        st = *resume;
        if (st.u.grid != cfg.u0.grid) throw ConfigError("resume: checkpoint grid mismatch");
        sampler.load_state(st.rng_state);
    } else {
        // the nominal control must hit the target from the first iterate on
        const DetSolution proj = project_control(cfg.u0, spec, cfg.inner);
        if (proj.status != DetStatus::ConvergedHit) {
            throw DynamicsError("warm-start control cannot be projected onto the target");
        }
        st.u = proj.u_star;
        st.mu = cfg.mu0;
        st.upsilon_projection = proj.upsilon;
        st.rng_state = sampler.save_state();
    }

    StochRunResult res;
    StateTrajectory x = flow_nodes(spec.x_i, st.u, 0, n, spec);
    res.mu_trace.push_back(st.mu);
    res.consumption_trace.push_back(consumption(x.back(), spec));

    for (std::uint64_t k = st.k; k < cfg.n_iters; ++k) {
        const double r = smoothing_radius(k, sch.a_r, sch.b_r);
        const double eps_u = step_length(k, sch.alpha_u, sch.beta_u);
        const double eps_mu = step_length(k, sch.alpha_mu, sch.beta_mu);

        // (1)-(2) scenario and recourse value at the onset state
        const FailureScenario scen = sampler.sample_conditional();
        const std::size_t onset = snap_failure(x.grid, scen).onset;
        InnerSolution w =
            eval_W(x.at_node(onset), scen, st.mu, r, spec, cfg.inner, st.u, cfg.upsilon0);
        switch (w.status) {
            case InnerStatus::DoNothing: ++res.do_nothing; break;
            case InnerStatus::HitExact: ++res.hit_exact; break;
            case InnerStatus::NearMiss: ++res.near_miss; break;
            case InnerStatus::Diverged: ++res.diverged; break;
        }

        // (3)-(5) adjoint of pi_f K with the recourse jump at the onset node
        Vec7 lambda_f{};
        lambda_f[kMass] = -pf;
        std::array<CostateJump, 1> jump{};
        std::size_t n_jumps = 0;
        if (w.status == InnerStatus::HitExact || w.status == InnerStatus::NearMiss) {
            jump[0].node = onset;
            for (std::size_t i = 0; i < kStateDim; ++i) jump[0].value[i] = (1.0 - pf) * w.grad_x[i];
            n_jumps = 1;
        }
        const AdjointTrajectory adj =
            adjoint_flow(x, st.u, lambda_f, std::span(jump.data(), n_jumps), spec);

        // (6) primal step and projection onto the target-hitting set
        if (eps_u > 0.0) {
            const ControlTrajectory u_half = primal_step(st.u, adj, eps_u);
            const DetSolution proj = project_control(u_half, spec, cfg.inner,
                                                     st.upsilon_projection);
            if (proj.status == DetStatus::ConvergedHit) {
                st.u = proj.u_star;
                st.upsilon_projection = proj.upsilon;
                x = proj.x_star;
            } else {
                ++res.projection_failures;
            }
        }

        // (7) multiplier ascent
        st.mu = std::max(0.0, st.mu + eps_mu * (spec.p_level - pf + (1.0 - pf) * w.grad_mu));

        st.k = k + 1;
        st.rng_state = sampler.save_state();
        res.mu_trace.push_back(st.mu);
        res.consumption_trace.push_back(consumption(x.back(), spec));

        IterationLog entry{k, scen, w.status, st.mu, res.consumption_trace.back(), r, eps_u, eps_mu};
        res.log.push_back(entry);
        if (observer) observer(entry, st);
    }

    res.u_star = st.u;
    res.x_star = std::move(x);
    res.checkpoint = std::move(st);
    return res;
}

}  // namespace robrdv
