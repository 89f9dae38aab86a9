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
#include "robrdv/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace robrdv {
namespace {

using nlohmann::json;

const json& section(const json& root, const char* name, bool required) {
    static const json empty = json::object();
    if (!root.contains(name)) {
        if (required) throw ConfigError(std::string("missing required key: ") + name);
        return empty;
    }
    const json& s = root.at(name);
    if (!s.is_object()) throw ConfigError(std::string(name) + ": expected an object");
    return s;
}

double number(const json& sec, const char* sec_name, const char* key, bool required,
              double fallback) {
    const std::string full = std::string(sec_name) + "." + key;
    if (!sec.contains(key)) {
        if (required) throw ConfigError("missing required key: " + full);
        return fallback;
    }
    const json& v = sec.at(key);
    if (!v.is_number()) throw ConfigError(full + ": expected a number");
    return v.get<double>();
}

std::uint64_t count(const json& sec, const char* sec_name, const char* key,
                    std::uint64_t fallback) {
    const std::string full = std::string(sec_name) + "." + key;
    if (!sec.contains(key)) return fallback;
    const json& v = sec.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw ConfigError(full + ": expected a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

template <std::size_t N>
std::array<double, N> vector_of(const json& sec, const char* sec_name, const char* key) {
    const std::string full = std::string(sec_name) + "." + key;
    if (!sec.contains(key)) throw ConfigError("missing required key: " + full);
    const json& v = sec.at(key);
    if (!v.is_array() || v.size() != N) {
        throw ConfigError(full + ": expected an array of " + std::to_string(N) + " numbers");
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        if (!v[i].is_number()) throw ConfigError(full + ": expected numbers");
        out[i] = v[i].get<double>();
    }
    return out;
}

void reject_unknown(const json& sec, const char* sec_name,
                    std::initializer_list<const char*> known) {
    for (const auto& item : sec.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) throw ConfigError(std::string("unknown key: ") + sec_name + "." + item.key());
    }
}

}  // namespace

void Config::validate() const {
    mission.validate();
    schedules.validate();
    solver.validate();
    if (run.steps < 2) throw ConfigError("run.steps must be >= 2");
    if (run.iters < 1) throw ConfigError("run.iters must be >= 1");
    if (!(run.mu0 >= 0.0)) throw ConfigError("run.mu0 must be >= 0");
    if (run.samples < 1) throw ConfigError("run.samples must be >= 1");
    for (double p : run.sweep_p) {
        if (!(p > 0.0 && p < 1.0)) throw ConfigError("run.sweep_p entries must lie in (0, 1)");
    }
}

Config default_config() { return Config{}; }

Config parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config root must be an object");
    reject_unknown(root, "config", {"mission", "failure_law", "schedules", "solver", "run"});

    Config cfg;
    const json& m = section(root, "mission", true);
    reject_unknown(m, "mission", {"thrust", "g0_isp", "mu_grav", "t_i", "t_f", "x_i", "x_f"});
    cfg.mission.thrust = number(m, "mission", "thrust", true, 0.0);
    cfg.mission.g0_isp = number(m, "mission", "g0_isp", true, 0.0);
    cfg.mission.mu_grav = number(m, "mission", "mu_grav", false, cfg.mission.mu_grav);
    cfg.mission.t_i = number(m, "mission", "t_i", true, 0.0);
    cfg.mission.t_f = number(m, "mission", "t_f", true, 0.0);
    cfg.mission.x_i.x = vector_of<kStateDim>(m, "mission", "x_i");
    cfg.mission.x_f = vector_of<kElemDim>(m, "mission", "x_f");

    const json& f = section(root, "failure_law", true);
    reject_unknown(f, "failure_law", {"t_p_min", "scale_p", "t_d_min", "scale_d"});
    cfg.mission.failure.t_p_min = number(f, "failure_law", "t_p_min", true, 0.0);
    cfg.mission.failure.scale_p = number(f, "failure_law", "scale_p", true, 0.0);
    cfg.mission.failure.t_d_min = number(f, "failure_law", "t_d_min", true, 0.0);
    cfg.mission.failure.scale_d = number(f, "failure_law", "scale_d", true, 0.0);

    const json& s = section(root, "schedules", false);
    reject_unknown(s, "schedules", {"alpha_u", "beta_u", "alpha_mu", "beta_mu", "a_r", "b_r"});
    Schedules& sc = cfg.schedules;
    sc.alpha_u = number(s, "schedules", "alpha_u", false, sc.alpha_u);
    sc.beta_u = number(s, "schedules", "beta_u", false, sc.beta_u);
    sc.alpha_mu = number(s, "schedules", "alpha_mu", false, sc.alpha_mu);
    sc.beta_mu = number(s, "schedules", "beta_mu", false, sc.beta_mu);
    sc.a_r = number(s, "schedules", "a_r", false, sc.a_r);
    sc.b_r = number(s, "schedules", "b_r", false, sc.b_r);

    const json& so = section(root, "solver", false);
    reject_unknown(so, "solver", {"c", "dual_step", "max_iters", "tol_target", "tol_stall",
                                  "stall_window", "tol_kkt", "step_init", "step_max"});
    AugLagParams& al = cfg.solver;
    al.c = number(so, "solver", "c", false, al.c);
    al.dual_step = number(so, "solver", "dual_step", false, al.dual_step);
    al.max_iters = count(so, "solver", "max_iters", al.max_iters);
    al.tol_target = number(so, "solver", "tol_target", false, al.tol_target);
    al.tol_stall = number(so, "solver", "tol_stall", false, al.tol_stall);
    al.stall_window = count(so, "solver", "stall_window", al.stall_window);
    al.tol_kkt = number(so, "solver", "tol_kkt", false, al.tol_kkt);
    al.step_init = number(so, "solver", "step_init", false, al.step_init);
    al.step_max = number(so, "solver", "step_max", false, al.step_max);

    const json& r = section(root, "run", false);
    reject_unknown(r, "run", {"p", "steps", "seed", "iters", "mu0", "samples",
                              "checkpoint_every", "sweep_p"});
    cfg.mission.p_level = number(r, "run", "p", false, cfg.mission.p_level);
    cfg.run.steps = count(r, "run", "steps", cfg.run.steps);
    cfg.run.seed = count(r, "run", "seed", cfg.run.seed);
    cfg.run.iters = count(r, "run", "iters", cfg.run.iters);
    cfg.run.mu0 = number(r, "run", "mu0", false, cfg.run.mu0);
    cfg.run.samples = count(r, "run", "samples", cfg.run.samples);
    cfg.run.checkpoint_every = count(r, "run", "checkpoint_every", cfg.run.checkpoint_every);
    if (r.contains("sweep_p")) {
        const json& v = r.at("sweep_p");
        if (!v.is_array() || v.empty()) {
            throw ConfigError("run.sweep_p: expected a nonempty array of numbers");
        }
        cfg.run.sweep_p.clear();
        for (const auto& e : v) {
            if (!e.is_number()) throw ConfigError("run.sweep_p: expected numbers");
            cfg.run.sweep_p.push_back(e.get<double>());
        }
    }

    cfg.validate();
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const Config& cfg) {
    const MissionSpec& m = cfg.mission;
    json root;
    root["mission"] = {{"thrust", m.thrust}, {"g0_isp", m.g0_isp}, {"mu_grav", m.mu_grav},
                       {"t_i", m.t_i},       {"t_f", m.t_f},       {"x_i", m.x_i.x},
                       {"x_f", m.x_f}};
    root["failure_law"] = {{"t_p_min", m.failure.t_p_min},
                           {"scale_p", m.failure.scale_p},
                           {"t_d_min", m.failure.t_d_min},
                           {"scale_d", m.failure.scale_d}};
    const Schedules& s = cfg.schedules;
    root["schedules"] = {{"alpha_u", s.alpha_u},   {"beta_u", s.beta_u}, {"alpha_mu", s.alpha_mu},
                         {"beta_mu", s.beta_mu}, {"a_r", s.a_r},       {"b_r", s.b_r}};
    const AugLagParams& a = cfg.solver;
    root["solver"] = {{"c", a.c},
                      {"dual_step", a.dual_step},
                      {"max_iters", a.max_iters},
                      {"tol_target", a.tol_target},
                      {"tol_stall", a.tol_stall},
                      {"stall_window", a.stall_window},
                      {"tol_kkt", a.tol_kkt},
                      {"step_init", a.step_init},
                      {"step_max", a.step_max}};
    const RunSettings& r = cfg.run;
    root["run"] = {{"p", m.p_level},
                   {"steps", r.steps},
                   {"seed", r.seed},
                   {"iters", r.iters},
                   {"mu0", r.mu0},
                   {"samples", r.samples},
                   {"checkpoint_every", r.checkpoint_every},
                   {"sweep_p", r.sweep_p}};
    // nlohmann prints doubles with round-trip precision, so re-parsing is exact
    return root.dump(2) + "\n";
}

}  // namespace robrdv
