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
#include "robrdv/robrdv.h"

#include <filesystem>
#include <new>
#include <string>

#include "robrdv/config.hpp"
#include "robrdv/failures.hpp"
#include "robrdv/io.hpp"
#include "robrdv/stoch_solver.hpp"
#include "robrdv/validation.hpp"

struct robrdv_config {
    robrdv::Config cfg;
};

struct robrdv_det_result {
    robrdv::DetSolution sol;
};

struct robrdv_stoch_result {
    robrdv::StochRunResult res;
    double p = 0.0;
};

struct robrdv_estimate {
    robrdv::ProbabilityEstimate est;
};

namespace {

thread_local std::string g_last_error;

robrdv_status fail(robrdv_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

// Runs f, translating exceptions into status codes.
template <typename F>
robrdv_status guarded(F&& f) {
    g_last_error.clear();
    try {
        return f();
    } catch (const robrdv::ConfigError& e) {
        return fail(ROBRDV_ERR_CONFIG, e.what());
    } catch (const robrdv::IoError& e) {
        return fail(ROBRDV_ERR_IO, e.what());
    } catch (const robrdv::DynamicsError& e) {
        return fail(ROBRDV_ERR_DYNAMICS, e.what());
    } catch (const std::bad_alloc&) {
        return fail(ROBRDV_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(ROBRDV_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(ROBRDV_ERR_INTERNAL, "unknown error");
    }
}

#define ROBRDV_REQUIRE(cond)                                                 \
    do {                                                                     \
        if (!(cond)) return fail(ROBRDV_ERR_INVALID_ARGUMENT, #cond);         \
    } while (0)

robrdv::DetSolution solve_det(const robrdv::Config& c) {
    robrdv::AugLagParams prm = c.solver;
    prm.record_history = true;
    return robrdv::solve_deterministic(c.mission, prm, robrdv::tangential_thrust(c.grid()));
}

}  // namespace

extern "C" {

const char* robrdv_last_error(void) { return g_last_error.c_str(); }

const char* robrdv_version(void) { return "1.0.0"; }

robrdv_status robrdv_config_default(robrdv_config** out) {
    ROBRDV_REQUIRE(out);
    return guarded([&] {
        *out = new robrdv_config{robrdv::default_config()};
        return ROBRDV_OK;
    });
}

robrdv_status robrdv_config_load(const char* path, robrdv_config** out) {
    ROBRDV_REQUIRE(path && out);
    return guarded([&] {
        *out = new robrdv_config{robrdv::load_config(path)};
        return ROBRDV_OK;
    });
}

robrdv_status robrdv_config_parse(const char* json_text, robrdv_config** out) {
    ROBRDV_REQUIRE(json_text && out);
    return guarded([&] {
        *out = new robrdv_config{robrdv::parse_config(json_text)};
        return ROBRDV_OK;
    });
}

void robrdv_config_free(robrdv_config* cfg) { delete cfg; }

robrdv_status robrdv_config_set_steps(robrdv_config* cfg, size_t steps) {
    ROBRDV_REQUIRE(cfg);
    if (steps < 2) return fail(ROBRDV_ERR_CONFIG, "steps must be >= 2");
    cfg->cfg.run.steps = steps;
    return ROBRDV_OK;
}

robrdv_status robrdv_config_set_seed(robrdv_config* cfg, uint64_t seed) {
    ROBRDV_REQUIRE(cfg);
    cfg->cfg.run.seed = seed;
    return ROBRDV_OK;
}

robrdv_status robrdv_config_set_iters(robrdv_config* cfg, uint64_t iters) {
    ROBRDV_REQUIRE(cfg);
    if (iters < 1) return fail(ROBRDV_ERR_CONFIG, "iters must be >= 1");
    cfg->cfg.run.iters = iters;
    return ROBRDV_OK;
}

robrdv_status robrdv_config_set_p(robrdv_config* cfg, double p) {
    ROBRDV_REQUIRE(cfg);
    if (!(p > 0.0 && p < 1.0)) return fail(ROBRDV_ERR_CONFIG, "p must lie in (0, 1)");
    cfg->cfg.mission.p_level = p;
    return ROBRDV_OK;
}

robrdv_status robrdv_config_set_samples(robrdv_config* cfg, size_t n) {
    ROBRDV_REQUIRE(cfg);
    if (n < 1) return fail(ROBRDV_ERR_CONFIG, "number of samples must be >= 1");
    cfg->cfg.run.samples = n;
    return ROBRDV_OK;
}

robrdv_status robrdv_config_get_p(const robrdv_config* cfg, double* out) {
    ROBRDV_REQUIRE(cfg && out);
    *out = cfg->cfg.mission.p_level;
    return ROBRDV_OK;
}

robrdv_status robrdv_config_get_seed(const robrdv_config* cfg, uint64_t* out) {
    ROBRDV_REQUIRE(cfg && out);
    *out = cfg->cfg.run.seed;
    return ROBRDV_OK;
}

robrdv_status robrdv_config_get_samples(const robrdv_config* cfg, size_t* out) {
    ROBRDV_REQUIRE(cfg && out);
    *out = cfg->cfg.run.samples;
    return ROBRDV_OK;
}

robrdv_status robrdv_config_sweep_count(const robrdv_config* cfg, size_t* out) {
    ROBRDV_REQUIRE(cfg && out);
    *out = cfg->cfg.run.sweep_p.size();
    return ROBRDV_OK;
}

robrdv_status robrdv_config_sweep_level(const robrdv_config* cfg, size_t i, double* out) {
    ROBRDV_REQUIRE(cfg && out);
    ROBRDV_REQUIRE(i < cfg->cfg.run.sweep_p.size());
    *out = cfg->cfg.run.sweep_p[i];
    return ROBRDV_OK;
}

robrdv_status robrdv_config_write(const robrdv_config* cfg, const char* path) {
    ROBRDV_REQUIRE(cfg && path);
    return guarded([&] {
        cfg->cfg.validate();
        robrdv::write_text(path, robrdv::config_to_json(cfg->cfg));
        return ROBRDV_OK;
    });
}

robrdv_status robrdv_pi_f(const robrdv_config* cfg, double* out) {
    ROBRDV_REQUIRE(cfg && out);
    return guarded([&] {
        *out = robrdv::pi_f(cfg->cfg.mission.failure, cfg->cfg.mission.t_f);
        return ROBRDV_OK;
    });
}

robrdv_status robrdv_p_det_analytic(const robrdv_config* cfg, double t_b, double* out) {
    ROBRDV_REQUIRE(cfg && out);
    return guarded([&] {
        *out = robrdv::p_det_analytic(cfg->cfg.mission, t_b);
        return ROBRDV_OK;
    });
}

robrdv_status robrdv_solve_det(const robrdv_config* cfg, robrdv_det_result** out) {
    ROBRDV_REQUIRE(cfg && out);
    return guarded([&] {
        cfg->cfg.validate();
        *out = new robrdv_det_result{solve_det(cfg->cfg)};
        return ROBRDV_OK;
    });
}

void robrdv_det_free(robrdv_det_result* r) { delete r; }

robrdv_status robrdv_det_get_status(const robrdv_det_result* r, robrdv_det_status* out) {
    ROBRDV_REQUIRE(r && out);
    switch (r->sol.status) {
        case robrdv::DetStatus::ConvergedHit: *out = ROBRDV_DET_HIT; break;
        case robrdv::DetStatus::ConvergedMissed: *out = ROBRDV_DET_MISSED; break;
        case robrdv::DetStatus::Diverged: *out = ROBRDV_DET_DIVERGED; break;
    }
    return ROBRDV_OK;
}

robrdv_status robrdv_det_get_consumption(const robrdv_det_result* r, double* out) {
    ROBRDV_REQUIRE(r && out);
    *out = r->sol.consumption;
    return ROBRDV_OK;
}

robrdv_status robrdv_det_get_delta_norm(const robrdv_det_result* r, double* out) {
    ROBRDV_REQUIRE(r && out);
    *out = r->sol.delta_norm();
    return ROBRDV_OK;
}

robrdv_status robrdv_det_get_iterations(const robrdv_det_result* r, size_t* out) {
    ROBRDV_REQUIRE(r && out);
    *out = r->sol.iterations;
    return ROBRDV_OK;
}

robrdv_status robrdv_det_get_switch_times(const robrdv_det_result* r, double* times,
                                          size_t capacity, size_t* count) {
    ROBRDV_REQUIRE(r && count);
    ROBRDV_REQUIRE(times || capacity == 0);
    return guarded([&] {
        const auto sw = robrdv::switch_times(r->sol.u_star);
        for (size_t i = 0; i < sw.size() && i < capacity; ++i) times[i] = sw[i];
        *count = sw.size();
        return ROBRDV_OK;
    });
}

robrdv_status robrdv_det_write_trajectory(const robrdv_det_result* r, const char* path) {
    ROBRDV_REQUIRE(r && path);
    return guarded([&] {
        robrdv::write_trajectory_csv(path, r->sol.x_star, r->sol.u_star);
        return ROBRDV_OK;
    });
}

robrdv_status robrdv_det_write_convergence(const robrdv_det_result* r, const char* path) {
    ROBRDV_REQUIRE(r && path);
    return guarded([&] {
        robrdv::write_det_convergence_csv(path, r->sol.history);
        return ROBRDV_OK;
    });
}

robrdv_status robrdv_solve_stoch(const robrdv_config* cfg, const robrdv_det_result* warm_start,
                                 const char* checkpoint_path, int resume,
                                 robrdv_stoch_result** out) {
    ROBRDV_REQUIRE(cfg && out);
    return guarded([&] {
        const robrdv::Config& c = cfg->cfg;
        c.validate();
        robrdv::DetSolution det;
        if (warm_start) {
            det = warm_start->sol;
        } else {
            det = solve_det(c);
        }
        if (det.status != robrdv::DetStatus::ConvergedHit) {
            return fail(ROBRDV_ERR_DIVERGED, "deterministic warm start did not converge");
        }
        if (det.u_star.grid != c.grid()) {
            return fail(ROBRDV_ERR_CONFIG, "warm start was solved on a different grid");
        }

        robrdv::StochRunConfig run;
        run.spec = c.mission;
        run.schedules = c.schedules;
        run.inner = c.solver;
        run.n_iters = c.run.iters;
        run.mu0 = c.run.mu0;
        run.seed = c.run.seed;
        run.u0 = det.u_star;
        run.upsilon0 = det.upsilon;

        robrdv::StochCheckpoint cp;
        const robrdv::StochCheckpoint* from = nullptr;
        if (checkpoint_path && resume && std::filesystem::exists(checkpoint_path)) {
            cp = robrdv::read_checkpoint(checkpoint_path);
            from = &cp;
        }
        robrdv::IterationObserver observer;
        if (checkpoint_path && c.run.checkpoint_every > 0) {
            const std::string path = checkpoint_path;
            const std::uint64_t every = c.run.checkpoint_every;
            observer = [path, every](const robrdv::IterationLog&,
                                     const robrdv::StochCheckpoint& st) {
                if (st.k % every == 0) robrdv::write_checkpoint(path, st);
            };
        }
        auto* r = new robrdv_stoch_result{robrdv::run_stochastic(run, from, observer),
                                          c.mission.p_level};
        *out = r;
        return ROBRDV_OK;
    });
}

void robrdv_stoch_free(robrdv_stoch_result* r) { delete r; }

robrdv_status robrdv_stoch_get_mu(const robrdv_stoch_result* r, double* out) {
    ROBRDV_REQUIRE(r && out);
    *out = r->res.mu();
    return ROBRDV_OK;
}

robrdv_status robrdv_stoch_get_consumption(const robrdv_stoch_result* r, double* out) {
    ROBRDV_REQUIRE(r && out);
    *out = r->res.consumption();
    return ROBRDV_OK;
}

robrdv_status robrdv_stoch_get_counters(const robrdv_stoch_result* r, uint64_t* out) {
    ROBRDV_REQUIRE(r && out);
    out[0] = r->res.do_nothing;
    out[1] = r->res.hit_exact;
    out[2] = r->res.near_miss;
    out[3] = r->res.diverged;
    out[4] = r->res.projection_failures;
    return ROBRDV_OK;
}

robrdv_status robrdv_stoch_write_trajectory(const robrdv_stoch_result* r, const char* path) {
    ROBRDV_REQUIRE(r && path);
    return guarded([&] {
        robrdv::write_trajectory_csv(path, r->res.x_star, r->res.u_star);
        return ROBRDV_OK;
    });
}

robrdv_status robrdv_stoch_write_convergence(const robrdv_stoch_result* r, const char* path) {
    ROBRDV_REQUIRE(r && path);
    return guarded([&] {
        robrdv::write_stoch_convergence_csv(path, r->res.log);
        return ROBRDV_OK;
    });
}

robrdv_status robrdv_stoch_append_sweep(const robrdv_stoch_result* r, const char* path) {
    ROBRDV_REQUIRE(r && path);
    return guarded([&] {
        robrdv::append_sweep_row(path, r->p, r->res.mu(), r->res.consumption());
        return ROBRDV_OK;
    });
}

robrdv_status robrdv_validate(const robrdv_config* cfg, const char* control_path,
                              robrdv_estimate** out) {
    ROBRDV_REQUIRE(cfg && control_path && out);
    return guarded([&] {
        const robrdv::Config& c = cfg->cfg;
        c.validate();
        const robrdv::ControlTrajectory u = robrdv::read_control_csv(control_path, c.grid());
        // The fuel multiplier near u only seeds the recourse solves; a failed
        // estimate falls back to a cold start.
        robrdv::Vec6 upsilon{};
        const robrdv::DetSolution near = robrdv::solve_deterministic(c.mission, c.solver, u);
        if (near.status == robrdv::DetStatus::ConvergedHit) upsilon = near.upsilon;
        *out = new robrdv_estimate{robrdv::estimate_probability(u, c.mission, c.solver,
                                                                c.run.samples, c.run.seed,
                                                                upsilon)};
        return ROBRDV_OK;
    });
}

void robrdv_estimate_free(robrdv_estimate* e) { delete e; }

robrdv_status robrdv_estimate_get(const robrdv_estimate* e, double* p_hat, double* std_err,
                                  size_t* hits, size_t* n, size_t* diverged) {
    ROBRDV_REQUIRE(e);
    if (p_hat) *p_hat = e->est.p_hat;
    if (std_err) *std_err = e->est.std_err;
    if (hits) *hits = e->est.hits;
    if (n) *n = e->est.n_samples;
    if (diverged) *diverged = e->est.diverged;
    return ROBRDV_OK;
}

robrdv_status robrdv_estimate_get_mean_recourse_consumption(const robrdv_estimate* e,
                                                            double* out) {
    ROBRDV_REQUIRE(e && out);
    *out = e->est.mean_recourse_consumption;
    return ROBRDV_OK;
}

robrdv_status robrdv_estimate_write_report(const robrdv_estimate* e, const char* path) {
    ROBRDV_REQUIRE(e && path);
    return guarded([&] {
        robrdv::write_validation_report(path, e->est);
        return ROBRDV_OK;
    });
}

robrdv_status robrdv_sample_failures(const robrdv_config* cfg, size_t n, uint64_t seed,
                                     const char* path) {
    ROBRDV_REQUIRE(cfg && path);
    if (n < 1) return fail(ROBRDV_ERR_CONFIG, "number of samples must be >= 1");
    return guarded([&] {
        const robrdv::MissionSpec& m = cfg->cfg.mission;
        robrdv::FailureSampler sampler(m.failure, m.t_f, seed);
        std::vector<robrdv::FailureScenario> draws(n);
        for (auto& d : draws) d = sampler.sample_conditional();
        robrdv::write_failure_samples(path, draws);
        return ROBRDV_OK;
    });
}

}  // extern "C"
