#include <doctest.h>

#include <cmath>
#include <limits>

#include "robrdv/det_solver.hpp"
#include "support.hpp"

using namespace robrdv;
using namespace robrdv::testing;

namespace {

// Asserted on every Hit the tests see: the status is earned, not trusted.
void check_hit_invariants(const DetSolution& s, const MissionSpec& spec, const AugLagParams& prm) {
    REQUIRE(s.status == DetStatus::ConvergedHit);
    const auto traj = flow_nodes(spec.x_i, s.u_star, 0, s.u_star.grid.n_steps(), spec);
    CHECK(norm2(target_deviation(traj.back(), spec)) <= prm.tol_target);
    CHECK(s.u_star.max_norm() <= 1.0);
}

// L2 norm of the Hamiltonian gradient on arcs strictly inside the unit ball.
double interior_kkt(const DetSolution& s, const MissionSpec& spec, const AugLagParams& prm) {
    const auto& u = s.u_star;
    const auto traj = flow_nodes(spec.x_i, u, 0, u.grid.n_steps(), spec);
    const Vec6 d = target_deviation(traj.back(), spec);
    Vec7 lf{};
    for (std::size_t i = 0; i < kElemDim; ++i) lf[i] = s.upsilon[i] + prm.c * d[i];
    lf[kMass] = -1.0;
    const auto adj = adjoint_flow(traj, u, lf, {}, spec);
    const double h = u.grid.step();
    double acc = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double n = u[k].norm();
        if (n < 1e-9 || n > 1.0 - 1e-9) continue;
        for (std::size_t c = 0; c < kControlDim; ++c) {
            const double g = (adj.control_grad[k][c] + adj.mass_sens[k] * u[k].as_array()[c] / n) / h;
            acc += h * g * g;
        }
    }
    return std::sqrt(acc);
}

struct Toy {
    MissionSpec spec = toy_mission();
    TimeGrid grid = toy_grid(spec);
    AugLagParams prm = toy_params();
};

}  // namespace

TEST_CASE("toy mission matches a brute-force bang-off-bang search") {
    Toy t;
    // exhaustive search over tangential thrust on [0, a) and [b, 32)
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a <= kToySteps; ++a) {
        for (std::size_t b = a; b <= kToySteps; ++b) {
            const auto u = toy_generating_control(t.grid, a, b);
            const auto x = flow_nodes(t.spec.x_i, u, 0, kToySteps, t.spec).back();
            if (norm2(target_deviation(x, t.spec)) <= t.prm.tol_target) {
                best = std::min(best, consumption(x, t.spec));
            }
        }
    }
    REQUIRE(std::isfinite(best));

    const DetSolution s = solve_deterministic(t.spec, t.prm, tangential_thrust(t.grid));
    MESSAGE("solver ", s.consumption, " brute force ", best, " after ", s.iterations, " iterations");
    check_hit_invariants(s, t.spec, t.prm);
    CHECK(std::abs(s.consumption - best) <= 1e-3);
    CHECK(interior_kkt(s, t.spec, t.prm) <= 1e-3);
}

TEST_CASE("drift target is reached without thrust") {
    const MissionSpec spec = toy_mission(0, kToySteps);
    const AugLagParams prm = toy_params();
    const DetSolution s = solve_deterministic(spec, prm, tangential_thrust(toy_grid(spec)));
    check_hit_invariants(s, spec, prm);
    CHECK(s.consumption <= 1e-6);
    CHECK(s.u_star.max_norm() <= 1e-3);
}

TEST_CASE("history records the mass row and a descending Lagrangian") {
    Toy t;
    t.prm.record_history = true;
    const DetSolution s = solve_deterministic(t.spec, t.prm, tangential_thrust(t.grid));
    REQUIRE(s.history.size() >= 20);
    // smoothed windows of the augmented Lagrangian past the first tenth
    const std::size_t w = std::max<std::size_t>(5, s.history.size() / 20);
    const std::size_t start = s.history.size() / 10;
    const auto window_mean = [&](std::size_t from) {
        double acc = 0.0;
        for (std::size_t i = from; i < from + w; ++i) acc += s.history[i].aug_lagrangian;
        return acc / static_cast<double>(w);
    };
    CHECK(window_mean(s.history.size() - w) <= window_mean(start) + 1e-9);
}

TEST_CASE("solver parameters are validated") {
    AugLagParams p;
    p.c = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = {};
    p.tol_target = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = {};
    p.stall_window = 1;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    CHECK_NOTHROW(AugLagParams{}.validate());
}

TEST_CASE("unit ball clipping and switch detection") {
    const TimeGrid g(0.0, 1.0, 4);
    ControlTrajectory u(g);
    u[0] = {3.0, 4.0, 0.0};
    u[1] = {0.3, 0.3, 0.0};
    clip_to_unit_ball(u);
    CHECK(u[0].norm() == doctest::Approx(1.0));
    CHECK(u[0].q == doctest::Approx(0.6));
    CHECK(u[1].q == 0.3);
    const auto sw = switch_times(u, 0.5);
    REQUIRE(sw.size() == 1);
    CHECK(sw[0] == 0.25);
}

TEST_CASE("projection") {
    Toy t;
    const DetSolution opt = solve_deterministic(t.spec, t.prm, tangential_thrust(t.grid));
    REQUIRE(opt.status == DetStatus::ConvergedHit);

    SUBCASE("a feasible hitting control is its own projection") {
        const DetSolution p = project_control(opt.u_star, t.spec, t.prm);
        CHECK(p.status == DetStatus::ConvergedHit);
        CHECK(l2_distance(p.u_star, opt.u_star) <= 1e-8);
    }

    Rng rng(17);
    ControlTrajectory half = opt.u_star;
    for (auto& v : half.values) {
        v = {v.q + rng.uniform(-0.05, 0.05), v.s + rng.uniform(-0.05, 0.05),
             v.w + rng.uniform(-0.05, 0.05)};
    }

    SUBCASE("perturbed optimum projects no farther than the optimum itself") {
        const DetSolution p = project_control(half, t.spec, t.prm);
        check_hit_invariants(p, t.spec, t.prm);
        MESSAGE("projection ", l2_distance(p.u_star, half), " optimum ", l2_distance(opt.u_star, half));
        CHECK(l2_distance(p.u_star, half) <= l2_distance(opt.u_star, half));
    }

    SUBCASE("idempotence") {
        const DetSolution p1 = project_control(half, t.spec, t.prm);
        REQUIRE(p1.status == DetStatus::ConvergedHit);
        const DetSolution p2 = project_control(p1.u_star, t.spec, t.prm, p1.upsilon);
        CHECK(l2_distance(p1.u_star, p2.u_star) <= 1e-6);
    }
}

TEST_CASE("recourse on the reference mission") {
    const MissionSpec spec = reference_mission();
    const TimeGrid g(spec.t_i, spec.t_f, 128);
    const AugLagParams prm;
    const DetSolution nom = solve_deterministic(spec, prm, tangential_thrust(g));
    check_hit_invariants(nom, spec, prm);

    SUBCASE("failure early in the first thrust arc is recovered") {
        const FailureScenario scen{2.0, 0.1};
        const std::size_t onset = g.snap(scen.t_p);
        const DetSolution r = solve_recourse(nom.x_star.at_node(onset), scen, spec, prm, nom.u_star);
        CHECK(r.status == DetStatus::ConvergedHit);
        CHECK(r.delta_norm() <= prm.tol_target);
        CHECK(r.x_star.first_node == onset);
        for (std::size_t k = onset; k < g.snap(scen.t_p + scen.t_d); ++k) {
            CHECK(r.u_star[k] == ControlVec{});
        }
    }

    SUBCASE("outage to the end of the mission needs no iterations") {
        const FailureScenario scen{7.5, 2.0};
        const std::size_t onset = g.snap(scen.t_p);
        const DetSolution r = solve_recourse(nom.x_star.at_node(onset), scen, spec, prm, nom.u_star);
        CHECK(r.status == DetStatus::ConvergedMissed);
        CHECK(r.iterations == 0);
        const ControlTrajectory zero(g);
        const auto drift = flow_nodes(nom.x_star.at_node(onset), zero, onset, g.n_steps(), spec);
        CHECK(r.delta_norm() == doctest::Approx(norm2(target_deviation(drift.back(), spec))));
    }

    SUBCASE("zero-length outage costs no more than the nominal remainder") {
        const FailureScenario scen{g.node(40), 0.0};
        const SatState x = nom.x_star.at_node(40);
        const DetSolution r = solve_recourse(x, scen, spec, prm, nom.u_star);
        CHECK(r.status == DetStatus::ConvergedHit);
        // both consumptions are measured from the same initial mass
        CHECK(r.consumption <= nom.consumption + 1e-3);
    }

    CHECK_THROWS_AS(solve_recourse(spec.x_i, {spec.t_f, 0.1}, spec, prm, nom.u_star), ConfigError);
}
