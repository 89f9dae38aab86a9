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
#include "robrdv/inner_value.hpp"

#include "robrdv/smoothing.hpp"

namespace robrdv {

std::string to_string(InnerStatus s) {
    switch (s) {
        case InnerStatus::DoNothing: return "do-nothing";
        case InnerStatus::HitExact: return "hit-exact";
        case InnerStatus::NearMiss: return "near-miss";
        case InnerStatus::Diverged: return "diverged";
    }
    return "unknown";
}

InnerSolution eval_W(const SatState& x_tp, const FailureScenario& scen, double mu, double r,
                     const MissionSpec& spec, const AugLagParams& params,
                     const ControlTrajectory& v0, const Vec6& upsilon0) {
    if (!(mu >= 0.0)) throw ConfigError("eval_W: mu must be >= 0");
    if (!(r > 0.0)) throw ConfigError("eval_W: r must be > 0");

    InnerSolution out;
    // mass is nonincreasing, so the fuel already spent at t_p bounds K from below
    if (consumption(x_tp, spec) >= mu) return out;
    out.recourse = solve_recourse(x_tp, scen, spec, params, v0, upsilon0);
    const DetSolution& rec = out.recourse;
    if (rec.status == DetStatus::Diverged) {
        out.status = InnerStatus::Diverged;
        return out;
    }

    const double gap = rec.consumption - mu;
    if (!(gap < 0.0)) return out;

    const double d = rec.delta_norm();
    Vec7 lambda_f{};
    if (d <= params.tol_target) {
        out.status = InnerStatus::HitExact;
        out.value = gap;
        out.grad_mu = -1.0;
        for (std::size_t j = 0; j < kElemDim; ++j) lambda_f[j] = rec.upsilon[j];
        lambda_f[kMass] = -1.0;
    } else if (d <= r) {
        const double ir = indicator_smooth(d, r);
        out.status = InnerStatus::NearMiss;
        out.value = gap * ir;
        out.grad_mu = -ir;
        for (std::size_t j = 0; j < kElemDim; ++j) lambda_f[j] = -gap / r * rec.delta[j] / d;
        lambda_f[kMass] = -ir;
    } else {
        return out;
    }

    const AdjointTrajectory adj = adjoint_flow(rec.x_star, rec.u_star, lambda_f, {}, spec);
    out.grad_x = adj.front();
    return out;
}

}  // namespace robrdv
