// Shared helpers for the unit tests: seeded random draws, finite
// differences and a small toy mission.
#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "robrdv/det_solver.hpp"
#include "robrdv/mission.hpp"

namespace robrdv::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// A mildly eccentric, mildly inclined orbit well inside the dynamics domain.
inline SatState random_state(Rng& rng) {
    return SatState{{rng.uniform(0.8, 1.6), rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2),
                     rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1), rng.uniform(0.0, 50.0),
                     rng.uniform(0.6, 1.0)}};
}

// Uniform in the unit ball, bounded away from 0.
inline ControlVec random_control(Rng& rng) {
    for (;;) {
        ControlVec u{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const double n = u.norm();
        if (n > 0.1 && n <= 1.0) return u;
    }
}

// Relative agreement with an absolute floor for entries near zero.
inline bool close(double a, double b, double rel, double floor = 1e-9) {
    return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), floor});
}

// Central difference of a scalar function of one coordinate.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Richardson-extrapolated central difference: error O(h^4).
inline double richardson_diff(const std::function<double(double)>& f, double x, double h) {
    const double d1 = central_diff(f, x, h);
    const double d2 = central_diff(f, x, h / 2.0);
    return (4.0 * d2 - d1) / 3.0;
}

// One time unit, 32 intervals, starting from the reference departure state.
// The target is the end point of thrust on the first and last `arc` intervals.
inline constexpr std::size_t kToySteps = 32;

inline ControlTrajectory toy_generating_control(const TimeGrid& g, std::size_t on_until,
                                                std::size_t on_from) {
    ControlTrajectory u(g);
    for (std::size_t k = 0; k < g.n_steps(); ++k) {
        if (k < on_until || k >= on_from) u[k] = ControlVec{0.0, 1.0, 0.0};
    }
    return u;
}

inline MissionSpec toy_mission(std::size_t on_until = 10, std::size_t on_from = 22) {
    MissionSpec spec = reference_mission();
    spec.t_i = 0.0;
    spec.t_f = 1.0;
    // planar: tangential thrust never leaves the equatorial plane, so the
    // weakly controllable inclination rows stay exactly on target
    spec.x_i[kHx] = 0.0;
    spec.x_i[kHy] = 0.0;
    const TimeGrid g(spec.t_i, spec.t_f, kToySteps);
    const auto u = toy_generating_control(g, on_until, on_from);
    const auto traj = flow_nodes(spec.x_i, u, 0, g.n_steps(), spec);
    spec.x_f = traj.back().elements();
    spec.failure.t_p_min = 0.01;
    spec.failure.scale_p = 1.0;
    return spec;
}

inline TimeGrid toy_grid(const MissionSpec& spec) { return {spec.t_i, spec.t_f, kToySteps}; }

// Over one time unit the terminal constraint barely responds to the control,
// so the dual needs a much stiffer augmentation than the reference mission.
inline AugLagParams toy_params() {
    AugLagParams p;
    p.c = 1e3;
    p.dual_step = 100.0;
    return p;
}

}  // namespace robrdv::testing
