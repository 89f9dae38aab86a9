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
#ifndef ROBRDV_ROBRDV_H_
#define ROBRDV_ROBRDV_H_

/* C interface of the robust low-thrust rendezvous solver.
 *
 * Every function returns a robrdv_status. On failure the message is
 * available from robrdv_last_error() on the same thread until the next call.
 * Handles are opaque; each *_free accepts NULL. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ROBRDV_API __declspec(dllexport)
#else
#define ROBRDV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum robrdv_status {
    ROBRDV_OK = 0,
    ROBRDV_ERR_INVALID_ARGUMENT = 1,
    ROBRDV_ERR_CONFIG = 2,
    ROBRDV_ERR_DIVERGED = 3,
    ROBRDV_ERR_IO = 4,
    ROBRDV_ERR_DYNAMICS = 5,
    ROBRDV_ERR_INTERNAL = 6
} robrdv_status;

typedef enum robrdv_det_status {
    ROBRDV_DET_HIT = 0,
    ROBRDV_DET_MISSED = 1,
    ROBRDV_DET_DIVERGED = 2
} robrdv_det_status;

typedef struct robrdv_config robrdv_config;
typedef struct robrdv_det_result robrdv_det_result;
typedef struct robrdv_stoch_result robrdv_stoch_result;
typedef struct robrdv_estimate robrdv_estimate;

ROBRDV_API const char* robrdv_last_error(void);
ROBRDV_API const char* robrdv_version(void);

/* ---- configuration ---- */

ROBRDV_API robrdv_status robrdv_config_default(robrdv_config** out);
ROBRDV_API robrdv_status robrdv_config_load(const char* path, robrdv_config** out);
ROBRDV_API robrdv_status robrdv_config_parse(const char* json_text, robrdv_config** out);
ROBRDV_API void robrdv_config_free(robrdv_config* cfg);

ROBRDV_API robrdv_status robrdv_config_set_steps(robrdv_config* cfg, size_t steps);
ROBRDV_API robrdv_status robrdv_config_set_seed(robrdv_config* cfg, uint64_t seed);
ROBRDV_API robrdv_status robrdv_config_set_iters(robrdv_config* cfg, uint64_t iters);
ROBRDV_API robrdv_status robrdv_config_set_p(robrdv_config* cfg, double p);
ROBRDV_API robrdv_status robrdv_config_set_samples(robrdv_config* cfg, size_t n);

ROBRDV_API robrdv_status robrdv_config_get_p(const robrdv_config* cfg, double* out);
ROBRDV_API robrdv_status robrdv_config_get_seed(const robrdv_config* cfg, uint64_t* out);
ROBRDV_API robrdv_status robrdv_config_get_samples(const robrdv_config* cfg, size_t* out);
ROBRDV_API robrdv_status robrdv_config_sweep_count(const robrdv_config* cfg, size_t* out);
ROBRDV_API robrdv_status robrdv_config_sweep_level(const robrdv_config* cfg, size_t i,
                                                   double* out);

/* Writes the fully resolved configuration as JSON. */
ROBRDV_API robrdv_status robrdv_config_write(const robrdv_config* cfg, const char* path);

/* ---- analytic quantities ---- */

ROBRDV_API robrdv_status robrdv_pi_f(const robrdv_config* cfg, double* out);
ROBRDV_API robrdv_status robrdv_p_det_analytic(const robrdv_config* cfg, double t_b,
                                               double* out);

/* ---- deterministic mission ---- */

/* A diverged solve still returns ROBRDV_OK with a result; query its status. */
ROBRDV_API robrdv_status robrdv_solve_det(const robrdv_config* cfg, robrdv_det_result** out);
ROBRDV_API void robrdv_det_free(robrdv_det_result* r);

ROBRDV_API robrdv_status robrdv_det_get_status(const robrdv_det_result* r,
                                               robrdv_det_status* out);
ROBRDV_API robrdv_status robrdv_det_get_consumption(const robrdv_det_result* r, double* out);
ROBRDV_API robrdv_status robrdv_det_get_delta_norm(const robrdv_det_result* r, double* out);
ROBRDV_API robrdv_status robrdv_det_get_iterations(const robrdv_det_result* r, size_t* out);
/* Thrust-magnitude crossings of 0.5. Writes up to `capacity` times and the total in *count. */
ROBRDV_API robrdv_status robrdv_det_get_switch_times(const robrdv_det_result* r, double* times,
                                                     size_t capacity, size_t* count);
ROBRDV_API robrdv_status robrdv_det_write_trajectory(const robrdv_det_result* r,
                                                     const char* path);
ROBRDV_API robrdv_status robrdv_det_write_convergence(const robrdv_det_result* r,
                                                      const char* path);

/* ---- stochastic Arrow-Hurwicz ---- */

/* warm_start may be NULL, in which case the deterministic problem is solved
 * first. checkpoint_path may be NULL; otherwise a checkpoint is written every
 * run.checkpoint_every iterations, and if `resume` is nonzero and the file
 * exists the run continues from it. */
ROBRDV_API robrdv_status robrdv_solve_stoch(const robrdv_config* cfg,
                                            const robrdv_det_result* warm_start,
                                            const char* checkpoint_path, int resume,
                                            robrdv_stoch_result** out);
ROBRDV_API void robrdv_stoch_free(robrdv_stoch_result* r);

ROBRDV_API robrdv_status robrdv_stoch_get_mu(const robrdv_stoch_result* r, double* out);
ROBRDV_API robrdv_status robrdv_stoch_get_consumption(const robrdv_stoch_result* r,
                                                      double* out);
/* Counts of do-nothing, hit-exact, near-miss and diverged inner evaluations,
 * then projection failures; `out` must hold 5 values. */
ROBRDV_API robrdv_status robrdv_stoch_get_counters(const robrdv_stoch_result* r, uint64_t* out);
ROBRDV_API robrdv_status robrdv_stoch_write_trajectory(const robrdv_stoch_result* r,
                                                       const char* path);
ROBRDV_API robrdv_status robrdv_stoch_write_convergence(const robrdv_stoch_result* r,
                                                        const char* path);
/* Appends (p, final mu, final consumption) to a sweep table. */
ROBRDV_API robrdv_status robrdv_stoch_append_sweep(const robrdv_stoch_result* r,
                                                   const char* path);

/* ---- Monte Carlo validation ---- */

/* Success probability of the control stored in a trajectory CSV, with
 * run.samples failure draws from run.seed. */
ROBRDV_API robrdv_status robrdv_validate(const robrdv_config* cfg, const char* control_path,
                                         robrdv_estimate** out);
ROBRDV_API void robrdv_estimate_free(robrdv_estimate* e);

ROBRDV_API robrdv_status robrdv_estimate_get(const robrdv_estimate* e, double* p_hat,
                                             double* std_err, size_t* hits, size_t* n,
                                             size_t* diverged);
/* Mean recourse consumption over hit samples (NaN without hits). */
ROBRDV_API robrdv_status robrdv_estimate_get_mean_recourse_consumption(
    const robrdv_estimate* e, double* out);
ROBRDV_API robrdv_status robrdv_estimate_write_report(const robrdv_estimate* e,
                                                     const char* path);

/* Writes n conditional failure draws from `seed` as CSV. */
ROBRDV_API robrdv_status robrdv_sample_failures(const robrdv_config* cfg, size_t n,
                                                uint64_t seed, const char* path);

#ifdef __cplusplus
}
#endif

#endif  // ROBRDV_ROBRDV_H_
