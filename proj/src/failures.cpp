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
#include "robrdv/failures.hpp"

#include <cmath>
#include <sstream>

namespace robrdv {

double pi_f(const FailureLaw& law, double t_f) {
    if (t_f <= law.t_p_min) return 1.0;
    return std::exp(-(t_f - law.t_p_min) / law.scale_p);
}

double p_recoverable_bound(const FailureLaw& law, double t_cut, double t_f) {
    if (t_cut < law.t_p_min || t_cut > t_f) {
        throw ConfigError("p_recoverable_bound: t_cut outside [t_p_min, t_f]");
    }
    return -std::expm1(-(t_cut - law.t_p_min) / law.scale_p);
}

double conditional_onset_mean(const FailureLaw& law, double t_f) {
    // E[Y | Y < L] for Y ~ Exp(mean s): s - L e^{-L/s} / (1 - e^{-L/s})
    const double L = t_f - law.t_p_min;
    const double s = law.scale_p;
    const double tail = std::exp(-L / s);
    return s - L * tail / (1.0 - tail);
}

double conditional_onset_cdf(const FailureLaw& law, double t_f, double t) {
    if (t <= law.t_p_min) return 0.0;
    if (t >= t_f) return 1.0;
    const double num = -std::expm1(-(t - law.t_p_min) / law.scale_p);
    const double den = -std::expm1(-(t_f - law.t_p_min) / law.scale_p);
    return num / den;
}

FailureSampler::FailureSampler(const FailureLaw& law, double t_f, std::uint64_t seed)
    : law_(law), t_f_(t_f), pi_f_(pi_f(law, t_f)), engine_(seed) {
    law_.validate();
    if (!(pi_f_ < 1.0)) throw ConfigError("failure sampler: no failure can occur before t_f");
}

double FailureSampler::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

FailureScenario FailureSampler::sample_conditional() {
    const double u1 = uniform();
    const double u2 = uniform();
    FailureScenario s;
    s.t_p = law_.t_p_min - law_.scale_p * std::log1p(-u1 * (1.0 - pi_f_));
    if (s.t_p >= t_f_) s.t_p = std::nextafter(t_f_, law_.t_p_min);
    s.t_d = law_.t_d_min - law_.scale_d * std::log1p(-u2);
    return s;
}

std::string FailureSampler::save_state() const {
    std::ostringstream os;
    os << engine_;
    return os.str();
}

void FailureSampler::load_state(const std::string& state) {
    std::istringstream is(state);
    is >> engine_;
    if (!is) throw ConfigError("failure sampler: malformed RNG state");
}

}  // namespace robrdv
