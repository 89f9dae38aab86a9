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
#include "robrdv/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace robrdv {
namespace {

constexpr const char* kCheckpointMagic = "robrdv-checkpoint";
constexpr int kCheckpointVersion = 1;

std::string exact(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::trunc) {
    std::ofstream out(path, std::ios::out | mode);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": not a number: '" + s + "'");
    }
}

}  // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    auto out = open_out(path);
    out << text;
    finish(out, path);
}

void write_trajectory_csv(const std::string& path, const StateTrajectory& x,
                          const ControlTrajectory& u) {
    if (x.first_node != 0 || x.states.size() != u.size() + 1) {
        throw ConfigError("write_trajectory_csv: state and control do not cover the grid");
    }
    auto out = open_out(path);
    out << "t,p,e_x,e_y,h_x,h_y,l,m,q,s,w\n";
    for (std::size_t k = 0; k < x.states.size(); ++k) {
        const ControlVec& c = u[std::min(k, u.size() - 1)];
        out << format_number(u.grid.node(k));
        for (double e : x.states[k].x) out << ',' << format_number(e);
        out << ',' << format_number(c.q) << ',' << format_number(c.s) << ','
            << format_number(c.w) << '\n';
    }
    finish(out, path);
}

ControlTrajectory read_control_csv(const std::string& path, const TimeGrid& grid) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read control file: " + path);
    std::string line;
    if (!std::getline(in, line) || split(line).size() != 11 || split(line)[0] != "t") {
        throw ConfigError(path + ": expected a trajectory CSV header");
    }
    ControlTrajectory u(grid);
    std::size_t row = 0;
    const double tol = 1e-6 * std::max(1.0, std::abs(grid.t_f()));
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        const std::string where = path + ":" + std::to_string(row + 2);
        if (cells.size() != 11) throw ConfigError(where + ": expected 11 columns");
        if (row > grid.n_steps()) throw ConfigError(path + ": more rows than grid nodes");
        const double t = parse_double(cells[0], where);
        if (std::abs(t - grid.node(row)) > tol) {
            throw ConfigError(where + ": time does not match the configured grid");
        }
        if (row < grid.n_steps()) {
            u[row] = {parse_double(cells[8], where), parse_double(cells[9], where),
                      parse_double(cells[10], where)};
        }
        ++row;
    }
    if (row != grid.n_steps() + 1) {
        throw ConfigError(path + ": " + std::to_string(row) + " rows, grid has " +
                          std::to_string(grid.n_steps() + 1) + " nodes");
    }
    return u;
}

void write_det_convergence_csv(const std::string& path,
                               const std::vector<IterationRecord>& history) {
    auto out = open_out(path);
    out << "iteration,delta_norm,consumption";
    for (int j = 1; j <= 6; ++j) out << ",upsilon_" << j;
    out << '\n';
    for (const auto& r : history) {
        out << r.iter << ',' << format_number(r.delta_norm) << ',' << format_number(r.consumption);
        for (double v : r.upsilon) out << ',' << format_number(v);
        out << '\n';
    }
    finish(out, path);
}

void write_stoch_convergence_csv(const std::string& path, const std::vector<IterationLog>& log) {
    auto out = open_out(path);
    out << "k,t_p,t_d,inner_status,mu,consumption,r_k,eps_u_k,eps_mu_k\n";
    for (const auto& e : log) {
        out << e.k << ',' << format_number(e.scenario.t_p) << ',' << format_number(e.scenario.t_d)
            << ',' << to_string(e.status) << ',' << format_number(e.mu) << ','
            << format_number(e.consumption) << ',' << format_number(e.r) << ','
            << format_number(e.eps_u) << ',' << format_number(e.eps_mu) << '\n';
    }
    finish(out, path);
}

void write_validation_report(const std::string& path, const ProbabilityEstimate& est) {
    auto out = open_out(path);
    out << "index,t_p,t_d,status,recourse_consumption\n";
    for (const auto& s : est.samples) {
        out << s.index << ',' << format_number(s.scenario.t_p) << ','
            << format_number(s.scenario.t_d) << ',' << to_string(s.status) << ','
            << format_number(s.consumption) << '\n';
    }
    finish(out, path);
}

void write_failure_samples(const std::string& path, const std::vector<FailureScenario>& s) {
    auto out = open_out(path);
    out << "index,t_p,t_d\n";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out << i << ',' << format_number(s[i].t_p) << ',' << format_number(s[i].t_d) << '\n';
    }
    finish(out, path);
}

void append_sweep_row(const std::string& path, double p, double mu, double consumption) {
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    auto out = open_out(path, std::ios::app);
    if (fresh) out << "p,mu,consumption\n";
    out << format_number(p) << ',' << format_number(mu) << ',' << format_number(consumption)
        << '\n';
    finish(out, path);
}

void write_checkpoint(const std::string& path, const StochCheckpoint& cp) {
    const std::string tmp = path + ".tmp";
    {
        auto out = open_out(tmp);
        const TimeGrid& g = cp.u.grid;
        out << kCheckpointMagic << ' ' << kCheckpointVersion << '\n';
        out << "k " << cp.k << '\n';
        out << "mu " << exact(cp.mu) << '\n';
        out << "grid " << exact(g.t_i()) << ' ' << exact(g.t_f()) << ' ' << g.n_steps() << '\n';
        out << "upsilon";
        for (double v : cp.upsilon_projection) out << ' ' << exact(v);
        out << '\n';
        out << "rng " << cp.rng_state << '\n';
        out << "control\n";
        for (const auto& c : cp.u.values) {
            out << exact(c.q) << ' ' << exact(c.s) << ' ' << exact(c.w) << '\n';
        }
        finish(out, tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move checkpoint into place: " + path);
}

StochCheckpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read checkpoint: " + path);
    auto expect = [&](const char* word) {
        std::string w;
        if (!(in >> w) || w != word) {
            throw ConfigError(path + ": malformed checkpoint, expected '" + word + "'");
        }
    };
    StochCheckpoint cp;
    int version = 0;
    expect(kCheckpointMagic);
    if (!(in >> version) || version != kCheckpointVersion) {
        throw ConfigError(path + ": unsupported checkpoint version");
    }
    double t_i = 0.0, t_f = 0.0;
    std::size_t n = 0;
    expect("k");
    in >> cp.k;
    expect("mu");
    in >> cp.mu;
    expect("grid");
    in >> t_i >> t_f >> n;
    expect("upsilon");
    for (double& v : cp.upsilon_projection) in >> v;
    expect("rng");
    in >> std::ws;
    std::getline(in, cp.rng_state);
    expect("control");
    if (!in) throw ConfigError(path + ": malformed checkpoint header");
    cp.u = ControlTrajectory(TimeGrid(t_i, t_f, n));
    for (auto& c : cp.u.values) in >> c.q >> c.s >> c.w;
    if (!in) throw ConfigError(path + ": truncated checkpoint");
    return cp;
}

}  // namespace robrdv
