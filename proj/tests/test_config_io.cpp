#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "robrdv/config.hpp"
#include "robrdv/failures.hpp"
#include "robrdv/io.hpp"
#include "support.hpp"

using namespace robrdv;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"({
  "mission": {"thrust": 0.033675, "g0_isp": 0.4936891, "mu_grav": 1.0,
              "t_i": 0.6888699, "t_f": 8.7830909,
              "x_i": [0.999702, -0.003359, 0.016942, -0.000011, 0.000007, 36.52939, 1.0],
              "x_f": [1.511514, 0.085367, -0.037923, 0.010474, 0.012275, 42.17610]},
  "failure_law": {"t_p_min": 0.68887, "scale_p": 15.1711, "t_d_min": 0.03444, "scale_d": 0.05350}
})";

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("robrdv_test_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string without(std::string text, const std::string& piece) {
    const auto pos = text.find(piece);
    REQUIRE(pos != std::string::npos);
    return text.erase(pos, piece.size());
}

}  // namespace

TEST_CASE("minimal config fills defaults") {
    const Config c = parse_config(kMinimal);
    CHECK(c.mission.thrust == 0.033675);
    CHECK(c.mission.x_f[5] == 42.17610);
    CHECK(c.mission.failure.scale_p == 15.1711);
    CHECK(c.run.steps == 512);
    CHECK(c.solver.c == 10.0);
    CHECK(c.schedules.a_r == 0.1);
    CHECK(c.grid().n_steps() == 512);
}

TEST_CASE("shipped config loads") {
    const Config c = load_config(ROBRDV_SOURCE_DIR "/configs/mission.json");
    CHECK(c.mission.p_level == 0.75);
    CHECK(c.run.sweep_p.size() == 4);
    CHECK(c.schedules.alpha_mu == 3.0);
}

TEST_CASE("round trip through JSON is exact") {
    Config c = parse_config(kMinimal);
    c.run.steps = 96;
    c.run.seed = 1234567890123ULL;
    c.mission.p_level = 0.925;
    c.schedules.alpha_u = 0.1 + 0.2;  // not representable in short decimal
    c.run.sweep_p = {0.6, 0.7};
    const Config back = parse_config(config_to_json(c));
    CHECK(config_to_json(back) == config_to_json(c));
    CHECK(back.schedules.alpha_u == c.schedules.alpha_u);
    CHECK(back.run.seed == c.run.seed);
    CHECK(back.mission.x_i == c.mission.x_i);
    CHECK(back.run.sweep_p == c.run.sweep_p);
    CHECK(config_to_json(default_config()) == config_to_json(parse_config(config_to_json(default_config()))));
}

TEST_CASE("errors name the offending key") {
    SUBCASE("missing mission value") {
        const std::string text = without(kMinimal, R"("thrust": 0.033675, )");
        try {
            parse_config(text);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("mission.thrust") != std::string::npos);
        }
    }
    SUBCASE("missing section") {
        CHECK_THROWS_WITH_AS(parse_config(R"({"mission": {}})"), doctest::Contains("mission."),
                             ConfigError);
    }
    SUBCASE("unknown key") {
        std::string text = kMinimal;
        text.insert(text.rfind('}'), R"(, "sovler": {})");
        CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("sovler"), ConfigError);
    }
    SUBCASE("wrong vector length") {
        std::string text = kMinimal;
        const auto pos = text.find("36.52939, 1.0]");
        text.replace(pos, 14, "36.52939]");
        CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("x_i"), ConfigError);
    }
    SUBCASE("out of range") {
        std::string text = kMinimal;
        text.insert(text.rfind('}'), R"(, "run": {"p": 1.5})");
        CHECK_THROWS_AS(parse_config(text), ConfigError);
    }
    SUBCASE("malformed JSON") { CHECK_THROWS_AS(parse_config("{ not json"), ConfigError); }
    SUBCASE("unreadable file") { CHECK_THROWS_AS(load_config("/nonexistent/x.json"), IoError); }
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(0.320229977123) == "0.320229977");
    CHECK(format_number(1e-12) == "1e-12");
}

TEST_CASE("trajectory CSV round trip") {
    TempDir dir;
    const MissionSpec spec = testing::toy_mission();
    const TimeGrid g = testing::toy_grid(spec);
    const ControlTrajectory u = testing::toy_generating_control(g, 10, 22);
    const StateTrajectory x = flow_nodes(spec.x_i, u, 0, g.n_steps(), spec);
    write_trajectory_csv(dir.file("t.csv"), x, u);

    const std::string text = slurp(dir.file("t.csv"));
    CHECK(text.rfind("t,p,e_x,e_y,h_x,h_y,l,m,q,s,w\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(g.n_steps()) + 2);

    const ControlTrajectory back = read_control_csv(dir.file("t.csv"), g);
    CHECK(back.values == u.values);
    CHECK_THROWS_AS(read_control_csv(dir.file("t.csv"), TimeGrid(0.0, 1.0, 16)), ConfigError);
    CHECK_THROWS_AS(read_control_csv(dir.file("missing.csv"), g), IoError);

    const StateTrajectory tail = flow_nodes(spec.x_i, u, 4, g.n_steps(), spec);
    CHECK_THROWS_AS(write_trajectory_csv(dir.file("bad.csv"), tail, u), ConfigError);
}

TEST_CASE("report CSVs have their headers") {
    TempDir dir;
    std::vector<IterationRecord> hist(3);
    write_det_convergence_csv(dir.file("d.csv"), hist);
    CHECK(slurp(dir.file("d.csv")).rfind(
              "iteration,delta_norm,consumption,upsilon_1,upsilon_2,upsilon_3,upsilon_4,upsilon_5,upsilon_6\n",
              0) == 0);

    std::vector<IterationLog> log(2);
    log[1].status = InnerStatus::HitExact;
    write_stoch_convergence_csv(dir.file("s.csv"), log);
    const std::string s = slurp(dir.file("s.csv"));
    CHECK(s.rfind("k,t_p,t_d,inner_status,mu,consumption,r_k,eps_u_k,eps_mu_k\n", 0) == 0);
    CHECK(s.find("hit-exact") != std::string::npos);

    ProbabilityEstimate est;
    est.samples.push_back({0, {1.5, 0.05}, DetStatus::ConvergedHit, 0.3});
    write_validation_report(dir.file("v.csv"), est);
    CHECK(slurp(dir.file("v.csv")) ==
          "index,t_p,t_d,status,recourse_consumption\n0,1.5,0.05,converged-hit,0.3\n");

    write_failure_samples(dir.file("f.csv"), {{1.0, 0.1}, {2.0, 0.2}});
    CHECK(slurp(dir.file("f.csv")) == "index,t_p,t_d\n0,1,0.1\n1,2,0.2\n");

    append_sweep_row(dir.file("w.csv"), 0.55, 0.0, 0.32);
    append_sweep_row(dir.file("w.csv"), 0.75, 0.3, 0.321);
    CHECK(slurp(dir.file("w.csv")) == "p,mu,consumption\n0.55,0,0.32\n0.75,0.3,0.321\n");

    CHECK_THROWS_AS(write_text((dir.path / "no" / "such" / "dir.txt").string(), "x"), IoError);
}

TEST_CASE("checkpoint round trip keeps every bit") {
    TempDir dir;
    FailureSampler sampler(reference_mission().failure, reference_mission().t_f, 9);
    sampler.sample_conditional();

    StochCheckpoint cp;
    cp.k = 41;
    cp.mu = 0.1 + 0.2;
    cp.upsilon_projection = {1.0 / 3.0, -2.5e-7, 0.0, 1e300, -0.0, 7.0};
    cp.u = ControlTrajectory(TimeGrid(0.6888699, 8.7830909, 16));
    testing::Rng rng(1);
    for (auto& v : cp.u.values) v = testing::random_control(rng);
    cp.rng_state = sampler.save_state();

    write_checkpoint(dir.file("cp.txt"), cp);
    const StochCheckpoint back = read_checkpoint(dir.file("cp.txt"));
    CHECK(back.k == cp.k);
    CHECK(back.mu == cp.mu);
    CHECK(back.upsilon_projection == cp.upsilon_projection);
    CHECK(back.u.grid == cp.u.grid);
    CHECK(back.u.values == cp.u.values);
    CHECK(back.rng_state == cp.rng_state);
    CHECK_FALSE(fs::exists(dir.file("cp.txt.tmp")));

    write_text(dir.file("junk.txt"), "hello\n");
    CHECK_THROWS_AS(read_checkpoint(dir.file("junk.txt")), ConfigError);
    CHECK_THROWS_AS(read_checkpoint(dir.file("none.txt")), IoError);
}
