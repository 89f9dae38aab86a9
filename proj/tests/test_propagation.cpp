#include <doctest.h>

#include <array>
#include <cmath>

#include "robrdv/propagation.hpp"
#include "support.hpp"

using namespace robrdv;
using robrdv::testing::Rng;

namespace {

const MissionSpec kSpec = reference_mission();

// Tangential bang-off-bang with switches near the published ones.
ControlTrajectory bang_off_bang(const TimeGrid& g) {
    ControlTrajectory u(g);
    for (std::size_t k = 0; k < g.n_steps(); ++k) {
        const double mid = g.node(k) + 0.5 * g.step();
        if (mid < 3.8983 || mid > 7.2980) u[k] = ControlVec{0.05, 0.99, -0.05};
    }
    return u;
}

// Same piecewise-constant function on a grid `factor` times finer.
ControlTrajectory refine(const ControlTrajectory& u, std::size_t factor) {
    const TimeGrid g(u.grid.t_i(), u.grid.t_f(), u.grid.n_steps() * factor);
    ControlTrajectory out(g);
    for (std::size_t k = 0; k < g.n_steps(); ++k) out[k] = u[k / factor];
    return out;
}

double state_gap(const SatState& a, const SatState& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < kStateDim; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// phi(x) = w . x + 1/2 ||C(x)||^2
double terminal_cost(const SatState& x, const Vec7& w) {
    const Vec6 d = target_deviation(x, kSpec);
    return dot(x.x, w) + 0.5 * dot(d, d);
}

Vec7 terminal_cost_grad(const SatState& x, const Vec7& w) {
    const Vec6 d = target_deviation(x, kSpec);
    Vec7 g = w;
    for (std::size_t i = 0; i < kElemDim; ++i) g[i] += d[i];
    return g;
}

}  // namespace

TEST_CASE("time grid") {
    const TimeGrid g(1.0, 3.0, 8);
    CHECK(g.step() == 0.25);
    CHECK(g.node(0) == 1.0);
    CHECK(g.node(8) == 3.0);
    CHECK(g.snap(1.12) == 0);
    CHECK(g.snap(1.13) == 1);
    CHECK(g.snap(-5.0) == 0);
    CHECK(g.snap(99.0) == 8);
    CHECK_THROWS_AS(TimeGrid(1.0, 1.0, 8), ConfigError);
    CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 1), ConfigError);
}

TEST_CASE("zero-length flow returns the initial state") {
    const TimeGrid g(kSpec.t_i, kSpec.t_f, 64);
    const ControlTrajectory u = bang_off_bang(g);
    const StateTrajectory t = flow(kSpec.x_i, u, g.node(5), g.node(5), kSpec);
    REQUIRE(t.states.size() == 1);
    CHECK(t.back() == kSpec.x_i);
}

TEST_CASE("flows compose exactly on grid nodes") {
    const TimeGrid g(kSpec.t_i, kSpec.t_f, 64);
    const ControlTrajectory u = bang_off_bang(g);
    const SatState whole = flow(kSpec.x_i, u, g.t_i(), g.t_f(), kSpec).back();
    const SatState mid = flow(kSpec.x_i, u, g.t_i(), g.node(23), kSpec).back();
    const SatState split = flow(mid, u, g.node(23), g.t_f(), kSpec).back();
    CHECK(whole == split);
}

TEST_CASE("coasting conserves the Kepler invariants") {
    const TimeGrid g(kSpec.t_i, kSpec.t_f, 512);
    const ControlTrajectory zero(g);
    const SatState end = flow(kSpec.x_i, zero, g.t_i(), g.t_f(), kSpec).back();
    for (std::size_t i : {kP, kEx, kEy, kHx, kHy, kMass}) {
        CHECK(std::abs(end[i] - kSpec.x_i[i]) <= 1e-9);
    }
    // longitude against a ten times finer reference
    const ControlTrajectory fine(TimeGrid(kSpec.t_i, kSpec.t_f, 5120));
    const SatState ref = flow(kSpec.x_i, fine, fine.grid.t_i(), fine.grid.t_f(), kSpec).back();
    CHECK(std::abs(end.l() - ref.l()) <= 1e-9);
    CHECK(end.l() > kSpec.x_i.l());
}

TEST_CASE("RK4 converges with order four on the reference mission") {
    const ControlTrajectory coarse = bang_off_bang(TimeGrid(kSpec.t_i, kSpec.t_f, 64));
    const auto end = [&](const ControlTrajectory& u) {
        return flow_nodes(kSpec.x_i, u, 0, u.grid.n_steps(), kSpec).back();
    };
    const SatState ref = end(refine(coarse, 20));
    const double e1 = state_gap(end(coarse), ref);
    const double e2 = state_gap(end(refine(coarse, 2)), ref);
    const double order = std::log2(e1 / e2);
    MESSAGE("measured order ", order);
    CHECK(order >= 3.7);
    CHECK(order <= 4.3);
}

TEST_CASE("failure flow cases") {
    const TimeGrid g(kSpec.t_i, kSpec.t_f, 128);
    const ControlTrajectory u = bang_off_bang(g);
    const SatState nominal = flow(kSpec.x_i, u, g.t_i(), g.t_f(), kSpec).back();

    SUBCASE("no failure before t_f") {
        CHECK(failure_flow(kSpec.x_i, u, u, {g.t_f() + 1.0, 0.1}, kSpec) == nominal);
    }
    SUBCASE("outage reaching t_f keeps the mass of the onset") {
        const FailureScenario scen{g.node(100), 5.0};
        const SatState at_onset = flow(kSpec.x_i, u, g.t_i(), g.node(100), kSpec).back();
        const SatState end = failure_flow(kSpec.x_i, u, u, scen, kSpec);
        CHECK(end.mass() == at_onset.mass());
    }
    SUBCASE("recourse equal to the nominal control is a masked integration") {
        const FailureScenario scen{g.node(10) + 0.2 * g.step(), 7.4 * g.step()};
        ControlTrajectory masked = u;
        for (std::size_t k = 10; k < 18; ++k) masked[k] = ControlVec{};
        const SatState direct = flow(kSpec.x_i, masked, g.t_i(), g.t_f(), kSpec).back();
        CHECK(failure_flow(kSpec.x_i, u, u, scen, kSpec) == direct);
    }
    SUBCASE("zero-length outage reproduces the nominal flow") {
        const SatState end = failure_flow(kSpec.x_i, u, u, {g.node(40), 0.0}, kSpec);
        CHECK(state_gap(end, nominal) <= 1e-10);
    }
}

TEST_CASE("failure snapping") {
    const TimeGrid g(0.0, 1.0, 10);
    const FailureNodes n = snap_failure(g, {0.33, 0.31});
    CHECK(n.onset == 3);
    CHECK(n.recovery == 6);
    CHECK(n.snap_error == doctest::Approx(0.04));
    CHECK(snap_failure(g, {0.96, 1.0}).recovery == 10);
}

TEST_CASE("adjoint of a zero terminal costate is zero") {
    const TimeGrid g(kSpec.t_i, kSpec.t_f, 32);
    const ControlTrajectory u = bang_off_bang(g);
    const StateTrajectory x = flow_nodes(kSpec.x_i, u, 0, 32, kSpec);
    const AdjointTrajectory adj = adjoint_flow(x, u, Vec7{}, {}, kSpec);
    for (const auto& l : adj.lambda) CHECK(l == Vec7{});
}

TEST_CASE("adjoint superposition") {
    Rng rng(4);
    const TimeGrid g(kSpec.t_i, kSpec.t_f, 48);
    const ControlTrajectory u = bang_off_bang(g);
    const StateTrajectory x = flow_nodes(kSpec.x_i, u, 0, 48, kSpec);
    Vec7 a{}, b{}, ab{};
    for (std::size_t i = 0; i < kStateDim; ++i) {
        a[i] = rng.uniform(-1, 1);
        b[i] = rng.uniform(-1, 1);
        ab[i] = a[i] + b[i];
    }
    const auto la = adjoint_flow(x, u, a, {}, kSpec);
    const auto lb = adjoint_flow(x, u, b, {}, kSpec);
    const auto lab = adjoint_flow(x, u, ab, {}, kSpec);
    for (std::size_t k = 0; k < lab.lambda.size(); ++k) {
        for (std::size_t i = 0; i < kStateDim; ++i) {
            CHECK(std::abs(lab.lambda[k][i] - la.lambda[k][i] - lb.lambda[k][i]) <=
                  1e-10 * std::max(1.0, std::abs(lab.lambda[k][i])));
        }
    }
}

TEST_CASE("adjoint gradient matches finite differences of the terminal cost") {
    const TimeGrid g(kSpec.t_i, kSpec.t_f, 32);
    const ControlTrajectory u = bang_off_bang(g);
    const StateTrajectory x = flow_nodes(kSpec.x_i, u, 0, 32, kSpec);
    const Vec7 w{0.3, -0.2, 0.5, 0.1, -0.4, 0.05, -1.0};
    const auto adj = adjoint_flow(x, u, terminal_cost_grad(x.back(), w), {}, kSpec);

    for (std::size_t j = 0; j < kStateDim; ++j) {
        auto phi = [&](double v) {
            SatState x0 = kSpec.x_i;
            x0[j] = v;
            return terminal_cost(flow_nodes(x0, u, 0, 32, kSpec).back(), w);
        };
        const double fd = robrdv::testing::richardson_diff(phi, kSpec.x_i[j], 1e-4);
        CHECK_MESSAGE(robrdv::testing::close(adj.front()[j], fd, 1e-4, 1e-8),
                      "component ", j, ": ", adj.front()[j], " vs ", fd);
    }
}

TEST_CASE("adjoint control gradient matches finite differences, mass row included") {
    const TimeGrid g(kSpec.t_i, kSpec.t_f, 32);
    const ControlTrajectory u = bang_off_bang(g);
    const StateTrajectory x = flow_nodes(kSpec.x_i, u, 0, 32, kSpec);
    const Vec7 w{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -1.0};  // consumption K
    const auto adj = adjoint_flow(x, u, terminal_cost_grad(x.back(), w), {}, kSpec);

    for (std::size_t k : {0u, 7u, 27u, 31u}) {
        const Vec3 uk = u[k].as_array();
        const double n = u[k].norm();
        for (std::size_t c = 0; c < kControlDim; ++c) {
            auto phi = [&](double v) {
                ControlTrajectory up = u;
                Vec3 a = uk;
                a[c] = v;
                up[k] = ControlVec::from(a);
                return terminal_cost(flow_nodes(kSpec.x_i, up, 0, 32, kSpec).back(), w);
            };
            const double fd = robrdv::testing::richardson_diff(phi, uk[c], 1e-4);
            const double an = adj.control_grad[k][c] + adj.mass_sens[k] * uk[c] / n;
            CHECK_MESSAGE(robrdv::testing::close(an, fd, 1e-4, 1e-8),
                          "interval ", k, " component ", c, ": ", an, " vs ", fd);
        }
    }
}

TEST_CASE("a costate jump equals the gradient of an intermediate cost") {
    const TimeGrid g(kSpec.t_i, kSpec.t_f, 32);
    const ControlTrajectory u = bang_off_bang(g);
    const StateTrajectory x = flow_nodes(kSpec.x_i, u, 0, 32, kSpec);
    const std::size_t node = 12;
    const Vec7 w_end{0.1, 0.2, -0.3, 0.0, 0.4, 0.01, -1.0};
    const Vec7 w_mid{-0.5, 0.3, 0.2, 0.7, 0.0, 0.02, 0.5};
    const std::array<CostateJump, 1> jump{{{node, w_mid}}};
    const auto adj = adjoint_flow(x, u, w_end, jump, kSpec);

    for (std::size_t j = 0; j < kStateDim; ++j) {
        auto phi = [&](double v) {
            SatState x0 = kSpec.x_i;
            x0[j] = v;
            const auto t = flow_nodes(x0, u, 0, 32, kSpec);
            return dot(t.back().x, w_end) + dot(t.at_node(node).x, w_mid);
        };
        const double fd = robrdv::testing::richardson_diff(phi, kSpec.x_i[j], 1e-4);
        CHECK(robrdv::testing::close(adj.front()[j], fd, 1e-4, 1e-8));
    }
    CHECK_THROWS_AS(adjoint_flow(flow_nodes(kSpec.x_i, u, 20, 32, kSpec), u, w_end, jump, kSpec),
                    ConfigError);
}
