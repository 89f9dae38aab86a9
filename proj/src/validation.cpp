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
#include "robrdv/validation.hpp"

#include <cmath>
#include <limits>

#include "robrdv/failures.hpp"

namespace robrdv {

ProbabilityEstimate estimate_probability(const ControlTrajectory& u, const MissionSpec& spec,
                                         const AugLagParams& params, std::size_t n_samples,
                                         std::uint64_t seed, const Vec6& upsilon0,
                                         const RecourseOracle& oracle) {
    if (n_samples < 1) throw ConfigError("estimate_probability: n_samples must be >= 1");
    const TimeGrid& g = u.grid;
    const StateTrajectory nominal = flow_nodes(spec.x_i, u, 0, g.n_steps(), spec);

    FailureSampler sampler(spec.failure, spec.t_f, seed);
    std::vector<FailureScenario> scenarios(n_samples);
    for (auto& s : scenarios) s = sampler.sample_conditional();

    RecourseOracle solve = oracle;
    if (!solve) {
        solve = [&](const SatState& x_tp, const FailureScenario& scen) {
            return solve_recourse(x_tp, scen, spec, params, u, upsilon0);
        };
    }

    ProbabilityEstimate est;
    est.pi_f = pi_f(spec.failure, spec.t_f);
    est.n_samples = n_samples;
    est.samples.reserve(n_samples);
    double consumption_sum = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        SampleRecord rec{i, scenarios[i]};
        const std::size_t onset = snap_failure(g, scenarios[i]).onset;
        try {
            const DetSolution sol = solve(nominal.at_node(onset), scenarios[i]);
            rec.status = sol.status;
            rec.consumption = sol.consumption;
        } catch (const DynamicsError&) {
            rec.status = DetStatus::Diverged;
        }
        if (rec.status == DetStatus::ConvergedHit) {
            ++est.hits;
            consumption_sum += rec.consumption;
        } else {
            ++est.misses;
            if (rec.status == DetStatus::Diverged) ++est.diverged;
        }
        est.samples.push_back(rec);
    }

    const double n = static_cast<double>(n_samples);
    const double frac = static_cast<double>(est.hits) / n;
    est.p_hat = est.pi_f + (1.0 - est.pi_f) * frac;
    est.std_err = (1.0 - est.pi_f) * std::sqrt(frac * (1.0 - frac) / n);
    est.mean_recourse_consumption =
        est.hits > 0 ? consumption_sum / static_cast<double>(est.hits)
                     : std::numeric_limits<double>::quiet_NaN();
    return est;
}

double p_det_analytic(const MissionSpec& spec, double t_b) {
    return pi_f(spec.failure, spec.t_f) + p_recoverable_bound(spec.failure, t_b, spec.t_f);
}

bool check_lemma_condition(double J_val, double Theta_val, double mu_star) {
    if (!(Theta_val > 0.0)) throw ConfigError("check_lemma_condition: Theta must be > 0");
    return mu_star >= J_val / Theta_val;
}

RatioToy active_ratio_toy() { return RatioToy{}; }

RatioToy inactive_ratio_toy() {
    RatioToy t;
    t.c = {1.5, 1.5};
    t.j0 = 0.5;
    t.p = 0.5;
    return t;
}

RatioToyReport lemma_b1_toy_equivalence(const RatioToy& toy, std::size_t grid_points) {
    if (grid_points < 2) throw ConfigError("lemma toy: need at least 2 grid points");
    constexpr double kUpper = 2.0;
    const double step = kUpper / static_cast<double>(grid_points - 1);
    auto J = [&](double a, double b) {
        return (a - toy.c[0]) * (a - toy.c[0]) + (b - toy.c[1]) * (b - toy.c[1]) + toy.j0;
    };
    auto Theta = [&](double a, double b) { return toy.t0 + toy.g[0] * a + toy.g[1] * b; };

    RatioToyReport rep;
    rep.grid_points = grid_points;
    double best_ratio = std::numeric_limits<double>::infinity();
    double best_plain = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double a = static_cast<double>(i) * step;
        for (std::size_t j = 0; j < grid_points; ++j) {
            const double b = static_cast<double>(j) * step;
            const double th = Theta(a, b);
            if (th < toy.p) continue;
            const double jv = J(a, b);
            if (jv < best_plain) {
                best_plain = jv;
                rep.argmin_plain = {i, j};
            }
            if (jv / th < best_ratio) {
                best_ratio = jv / th;
                rep.argmin_ratio = {i, j};
            }
        }
    }
    rep.argmin_match = rep.argmin_ratio == rep.argmin_plain;
    const double a_r = static_cast<double>(rep.argmin_ratio[0]) * step;
    const double b_r = static_cast<double>(rep.argmin_ratio[1]) * step;
    // active means within one grid cell of the constraint boundary
    const double cell = (std::abs(toy.g[0]) + std::abs(toy.g[1])) * step;
    rep.applicable = Theta(a_r, b_r) - toy.p <= cell;
    if (!rep.applicable) return rep;

    // (P) in closed form: projection of c onto {Theta >= p}, multiplier from grad J = mu grad Theta
    const double gg = toy.g[0] * toy.g[0] + toy.g[1] * toy.g[1];
    const double s = (toy.p - Theta(toy.c[0], toy.c[1])) / gg;
    rep.u_star = {toy.c[0] + s * toy.g[0], toy.c[1] + s * toy.g[1]};
    rep.mu_star = 2.0 * s;

    // stationarity of (R): grad(J / Theta) = lambda grad Theta
    const double jv = J(rep.u_star[0], rep.u_star[1]);
    const double th = Theta(rep.u_star[0], rep.u_star[1]);
    std::array<double, 2> grad{};
    for (std::size_t k = 0; k < 2; ++k) {
        const double dj = 2.0 * (rep.u_star[k] - toy.c[k]);
        grad[k] = dj / th - jv * toy.g[k] / (th * th);
    }
    rep.lambda_star = (grad[0] * toy.g[0] + grad[1] * toy.g[1]) / gg;
    rep.ratio_stationarity = std::abs(grad[0] * toy.g[1] - grad[1] * toy.g[0]) / std::sqrt(gg);
    rep.relation_residual = std::abs(rep.mu_star - (jv / th + rep.lambda_star * th));
    rep.condition_holds = check_lemma_condition(jv, th, rep.mu_star);
    return rep;
}

}  // namespace robrdv
