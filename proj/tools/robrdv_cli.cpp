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
// robrdv command line: deterministic and chance-constrained rendezvous
// solves, Monte Carlo validation, failure sampling and p sweeps.

#include <cstdio>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "robrdv/robrdv.h"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kDiverged = 3, kIo = 4 };

struct Failure {
    int code;
};

int exit_code_for(robrdv_status s) {
    switch (s) {
        case ROBRDV_OK: return kOk;
        case ROBRDV_ERR_CONFIG:
        case ROBRDV_ERR_INVALID_ARGUMENT: return kConfig;
        case ROBRDV_ERR_DIVERGED: return kDiverged;
        case ROBRDV_ERR_IO: return kIo;
        default: return kOther;
    }
}

void check(robrdv_status s) {
    if (s == ROBRDV_OK) return;
    std::fprintf(stderr, "robrdv: %s\n", robrdv_last_error());
    throw Failure{exit_code_for(s)};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using ConfigPtr = std::unique_ptr<robrdv_config, Deleter<robrdv_config, robrdv_config_free>>;
using DetPtr = std::unique_ptr<robrdv_det_result, Deleter<robrdv_det_result, robrdv_det_free>>;
using StochPtr =
    std::unique_ptr<robrdv_stoch_result, Deleter<robrdv_stoch_result, robrdv_stoch_free>>;
using EstimatePtr =
    std::unique_ptr<robrdv_estimate, Deleter<robrdv_estimate, robrdv_estimate_free>>;

struct Options {
    std::string config;
    std::string out_dir = "out";
    std::string control;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> iters;
    std::optional<std::size_t> steps;
    std::optional<double> p;
    std::optional<std::size_t> n;
    bool resume = false;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

fs::path prepare_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        std::fprintf(stderr, "robrdv: cannot create %s: %s\n", dir.c_str(), ec.message().c_str());
        throw Failure{kIo};
    }
    return fs::path(dir);
}

ConfigPtr load(const Options& o) {
    robrdv_config* raw = nullptr;
    check(robrdv_config_load(o.config.c_str(), &raw));
    ConfigPtr cfg(raw);
    if (o.steps) check(robrdv_config_set_steps(cfg.get(), *o.steps));
    if (o.seed) check(robrdv_config_set_seed(cfg.get(), *o.seed));
    if (o.iters) check(robrdv_config_set_iters(cfg.get(), *o.iters));
    if (o.p) check(robrdv_config_set_p(cfg.get(), *o.p));
    if (o.n) check(robrdv_config_set_samples(cfg.get(), *o.n));
    return cfg;
}

void write_effective_config(const robrdv_config* cfg, const fs::path& dir) {
    check(robrdv_config_write(cfg, (dir / "effective_config.json").string().c_str()));
}

void write_summary(const fs::path& path, const std::vector<std::pair<std::string, std::string>>& kv) {
    FILE* f = std::fopen(path.string().c_str(), "w");
    if (!f) {
        std::fprintf(stderr, "robrdv: cannot write %s\n", path.string().c_str());
        throw Failure{kIo};
    }
    for (const auto& [k, v] : kv) {
        std::fprintf(f, "%s=%s\n", k.c_str(), v.c_str());
        std::printf("%s=%s\n", k.c_str(), v.c_str());
    }
    if (std::fclose(f) != 0) throw Failure{kIo};
}

DetPtr solve_det(const robrdv_config* cfg) {
    robrdv_det_result* raw = nullptr;
    check(robrdv_solve_det(cfg, &raw));
    return DetPtr(raw);
}

int cmd_solve_det(const Options& o) {
    ConfigPtr cfg = load(o);
    const fs::path dir = prepare_out_dir(o.out_dir);
    write_effective_config(cfg.get(), dir);
    DetPtr det = solve_det(cfg.get());

    robrdv_det_status status{};
    double consumption = 0.0, delta = 0.0;
    std::size_t iters = 0, n_switch = 0;
    check(robrdv_det_get_status(det.get(), &status));
    check(robrdv_det_get_consumption(det.get(), &consumption));
    check(robrdv_det_get_delta_norm(det.get(), &delta));
    check(robrdv_det_get_iterations(det.get(), &iters));
    check(robrdv_det_get_switch_times(det.get(), nullptr, 0, &n_switch));
    std::vector<double> sw(n_switch);
    check(robrdv_det_get_switch_times(det.get(), sw.data(), sw.size(), &n_switch));

    check(robrdv_det_write_trajectory(det.get(), (dir / "trajectory.csv").string().c_str()));
    check(robrdv_det_write_convergence(det.get(), (dir / "convergence.csv").string().c_str()));

    static const char* names[] = {"converged-hit", "converged-missed", "diverged"};
    std::vector<std::pair<std::string, std::string>> kv{
        {"status", names[status]},
        {"consumption", fmt(consumption)},
        {"delta_norm", fmt(delta)},
        {"iterations", std::to_string(iters)}};
    std::string all;
    for (std::size_t i = 0; i < sw.size(); ++i) all += (i ? ";" : "") + fmt(sw[i]);
    kv.emplace_back("switch_times", all);
    // a bang-off-bang profile has exactly two crossings: off at t_a, on at t_b
    if (sw.size() == 2) {
        kv.emplace_back("t_a", fmt(sw[0]));
        kv.emplace_back("t_b", fmt(sw[1]));
    }
    write_summary(dir / "summary.txt", kv);
    return status == ROBRDV_DET_DIVERGED ? kDiverged : kOk;
}

StochPtr run_stoch(const robrdv_config* cfg, const robrdv_det_result* warm, const fs::path& dir,
                   bool resume) {
    robrdv_stoch_result* raw = nullptr;
    const std::string cp = (dir / "checkpoint.txt").string();
    check(robrdv_solve_stoch(cfg, warm, cp.c_str(), resume ? 1 : 0, &raw));
    StochPtr res(raw);
    check(robrdv_stoch_write_trajectory(res.get(), (dir / "trajectory.csv").string().c_str()));
    check(robrdv_stoch_write_convergence(res.get(), (dir / "convergence.csv").string().c_str()));

    double p = 0.0, mu = 0.0, consumption = 0.0;
    std::uint64_t counters[5] = {};
    check(robrdv_config_get_p(cfg, &p));
    check(robrdv_stoch_get_mu(res.get(), &mu));
    check(robrdv_stoch_get_consumption(res.get(), &consumption));
    check(robrdv_stoch_get_counters(res.get(), counters));
    write_summary(dir / "summary.txt", {{"p", fmt(p)},
                                        {"mu", fmt(mu)},
                                        {"consumption", fmt(consumption)},
                                        {"do_nothing", std::to_string(counters[0])},
                                        {"hit_exact", std::to_string(counters[1])},
                                        {"near_miss", std::to_string(counters[2])},
                                        {"diverged", std::to_string(counters[3])},
                                        {"projection_failures", std::to_string(counters[4])}});
    return res;
}

int cmd_solve_stoch(const Options& o) {
    ConfigPtr cfg = load(o);
    const fs::path dir = prepare_out_dir(o.out_dir);
    write_effective_config(cfg.get(), dir);
    StochPtr res = run_stoch(cfg.get(), nullptr, dir, o.resume);
    check(robrdv_stoch_append_sweep(res.get(), (dir / "sweep.csv").string().c_str()));
    return kOk;
}

int cmd_sweep(const Options& o) {
    ConfigPtr cfg = load(o);
    const fs::path dir = prepare_out_dir(o.out_dir);
    write_effective_config(cfg.get(), dir);
    DetPtr det = solve_det(cfg.get());
    robrdv_det_status status{};
    check(robrdv_det_get_status(det.get(), &status));
    if (status != ROBRDV_DET_HIT) {
        std::fprintf(stderr, "robrdv: deterministic warm start did not converge\n");
        return kDiverged;
    }
    const fs::path table = dir / "sweep.csv";
    std::error_code ec;
    fs::remove(table, ec);

    std::size_t count = 0;
    check(robrdv_config_sweep_count(cfg.get(), &count));
    for (std::size_t i = 0; i < count; ++i) {
        double p = 0.0;
        check(robrdv_config_sweep_level(cfg.get(), i, &p));
        check(robrdv_config_set_p(cfg.get(), p));
        const fs::path sub = prepare_out_dir((dir / ("p_" + fmt(p))).string());
        write_effective_config(cfg.get(), sub);
        StochPtr res = run_stoch(cfg.get(), det.get(), sub, o.resume);
        check(robrdv_stoch_append_sweep(res.get(), table.string().c_str()));
    }
    return kOk;
}

int cmd_validate(const Options& o) {
    ConfigPtr cfg = load(o);
    const fs::path dir = prepare_out_dir(o.out_dir);
    write_effective_config(cfg.get(), dir);
    robrdv_estimate* raw = nullptr;
    check(robrdv_validate(cfg.get(), o.control.c_str(), &raw));
    EstimatePtr est(raw);
    double p_hat = 0.0, se = 0.0, mean_k = 0.0, pf = 0.0;
    std::size_t hits = 0, n = 0, diverged = 0;
    check(robrdv_estimate_get(est.get(), &p_hat, &se, &hits, &n, &diverged));
    check(robrdv_estimate_get_mean_recourse_consumption(est.get(), &mean_k));
    check(robrdv_pi_f(cfg.get(), &pf));
    check(robrdv_estimate_write_report(est.get(), (dir / "validation.csv").string().c_str()));
    write_summary(dir / "summary.txt", {{"p_hat", fmt(p_hat)},
                                        {"std_err", fmt(se)},
                                        {"pi_f", fmt(pf)},
                                        {"samples", std::to_string(n)},
                                        {"hits", std::to_string(hits)},
                                        {"diverged", std::to_string(diverged)},
                                        {"mean_recourse_consumption_beyond_model", fmt(mean_k)}});
    return kOk;
}

int cmd_sample_failures(const Options& o) {
    ConfigPtr cfg = load(o);
    const fs::path dir = prepare_out_dir(o.out_dir);
    write_effective_config(cfg.get(), dir);
    std::size_t n = 0;
    std::uint64_t seed = 0;
    check(robrdv_config_get_samples(cfg.get(), &n));
    check(robrdv_config_get_seed(cfg.get(), &seed));
    check(robrdv_sample_failures(cfg.get(), n, seed, (dir / "failures.csv").string().c_str()));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chance-constrained low-thrust rendezvous with engine failures"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "JSON configuration")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out-dir", o.out_dir, "Directory for artifacts");
        sub->add_option("--steps", o.steps, "Grid intervals")->check(CLI::Range(2, 1 << 24));
    };
    auto* det = app.add_subcommand("solve-det", "Minimum-fuel deterministic transfer");
    common(det);

    auto* stoch = app.add_subcommand("solve-stoch", "Chance-constrained stochastic solve");
    common(stoch);
    stoch->add_option("--p", o.p, "Probability level")->check(CLI::Range(0.0, 1.0));
    stoch->add_option("--seed", o.seed, "Failure sampler seed");
    stoch->add_option("--iters", o.iters, "Stochastic iterations")->check(CLI::PositiveNumber);
    stoch->add_flag("--resume", o.resume, "Continue from out-dir/checkpoint.txt if present");

    auto* sweep = app.add_subcommand("sweep", "Stochastic solves over run.sweep_p");
    common(sweep);
    sweep->add_option("--seed", o.seed, "Failure sampler seed");
    sweep->add_option("--iters", o.iters, "Stochastic iterations")->check(CLI::PositiveNumber);
    sweep->add_flag("--resume", o.resume, "Continue each level from its checkpoint");

    auto* val = app.add_subcommand("validate", "Monte Carlo success probability of a control");
    common(val);
    val->add_option("--control", o.control, "Trajectory CSV holding the control")
        ->required()
        ->check(CLI::ExistingFile);
    val->add_option("--n", o.n, "Failure samples")->check(CLI::PositiveNumber);
    val->add_option("--seed", o.seed, "Failure sampler seed");

    auto* smp = app.add_subcommand("sample-failures", "Draw conditional failure scenarios");
    common(smp);
    smp->add_option("--n", o.n, "Number of draws")->check(CLI::PositiveNumber);
    smp->add_option("--seed", o.seed, "Sampler seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (det->parsed()) return cmd_solve_det(o);
        if (stoch->parsed()) return cmd_solve_stoch(o);
        if (sweep->parsed()) return cmd_sweep(o);
        if (val->parsed()) return cmd_validate(o);
        if (smp->parsed()) return cmd_sample_failures(o);
    } catch (const Failure& f) {
        return f.code;
    }
    return kOther;
}
