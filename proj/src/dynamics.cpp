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
#include "robrdv/dynamics.hpp"

#include <numbers>
#include <sstream>

namespace robrdv {
namespace {

// Auxiliary quantities of the Gauss equations. The control-multiplied rows
// are f_i = Ka * G_i(x, u); the longitude row adds the Keplerian drift.
struct Aux {
    double sl, cl;
    double Z, A, B, F, X;
    double Ka;
    double kepler;  // sqrt(nu / p^3) Z^2
};

void check_domain(const SatState& x) {
    if (!(x.p() > 0.0) || !(x.mass() > 0.0)) {
        std::ostringstream os;
        os << "state outside dynamics domain: p=" << x.p() << " m=" << x.mass();
        throw DynamicsError(os.str());
    }
}

Aux make_aux(const SatState& x, const MissionSpec& spec) {
    check_domain(x);
    Aux a{};
    a.sl = std::sin(x.l());
    a.cl = std::cos(x.l());
    a.Z = 1.0 + x.ex() * a.cl + x.ey() * a.sl;
    if (!(a.Z > 0.0)) {
        throw DynamicsError("state outside dynamics domain: Z <= 0");
    }
    a.A = x.ex() + (1.0 + a.Z) * a.cl;
    a.B = x.ey() + (1.0 + a.Z) * a.sl;
    a.F = x.hx() * a.sl - x.hy() * a.cl;
    a.X = 1.0 + x.hx() * x.hx() + x.hy() * x.hy();
    const double sp = std::sqrt(x.p() / spec.mu_grav);
    a.Ka = sp * spec.thrust / (x.mass() * a.Z);
    a.kepler = std::sqrt(spec.mu_grav / (x.p() * x.p() * x.p())) * a.Z * a.Z;
    return a;
}

std::array<double, 6> thrust_terms(const SatState& x, const ControlVec& u, const Aux& a) {
    return {
        2.0 * x.p() * u.s,
        a.Z * a.sl * u.q + a.A * u.s - x.ey() * a.F * u.w,
        -a.Z * a.cl * u.q + a.B * u.s + x.ex() * a.F * u.w,
        0.5 * a.X * a.cl * u.w,
        0.5 * a.X * a.sl * u.w,
        a.F * u.w,
    };
}

Vec7 rhs_from_aux(const SatState& x, const ControlVec& u, const MissionSpec& spec,
                  const Aux& a) {
    const auto G = thrust_terms(x, u, a);
    Vec7 f{};
    for (std::size_t i = 0; i < 6; ++i) f[i] = a.Ka * G[i];
    f[kL] += a.kepler;
    f[kMass] = -spec.mass_flow() * u.norm();
    for (double v : f) {
        if (!std::isfinite(v)) throw DynamicsError("non-finite state derivative");
    }
    return f;
}

Mat7x3 dfdu_from_aux(const SatState& x, const ControlVec& u, const MissionSpec& spec,
                     const Aux& a) {
    const double K = a.Ka;
    Mat7x3 J{};
    J[kP] = {0.0, 2.0 * K * x.p(), 0.0};
    J[kEx] = {K * a.Z * a.sl, K * a.A, -K * x.ey() * a.F};
    J[kEy] = {-K * a.Z * a.cl, K * a.B, K * x.ex() * a.F};
    J[kHx] = {0.0, 0.0, 0.5 * K * a.X * a.cl};
    J[kHy] = {0.0, 0.0, 0.5 * K * a.X * a.sl};
    J[kL] = {0.0, 0.0, K * a.F};
    const double n = u.norm();
    if (n > 0.0) {
        const double g = -spec.mass_flow() / n;
        J[kMass] = {g * u.q, g * u.s, g * u.w};
    }
    return J;
}

Mat7 dfdx_from_aux(const SatState& x, const ControlVec& u, const MissionSpec& spec,
                   const Aux& a) {
    const double ex = x.ex(), ey = x.ey(), hx = x.hx(), hy = x.hy();
    const double p = x.p(), m = x.mass();
    const double q = u.q, s = u.s, w = u.w;
    const double sl = a.sl, cl = a.cl;

    Vec7 dZ{}, dA{}, dB{}, dF{}, dX{}, dKa{};
    dZ[kEx] = cl;
    dZ[kEy] = sl;
    dZ[kL] = -ex * sl + ey * cl;

    dA[kEx] = 1.0 + cl * cl;
    dA[kEy] = sl * cl;
    dA[kL] = dZ[kL] * cl - (1.0 + a.Z) * sl;

    dB[kEx] = cl * sl;
    dB[kEy] = 1.0 + sl * sl;
    dB[kL] = dZ[kL] * sl + (1.0 + a.Z) * cl;

    dF[kHx] = sl;
    dF[kHy] = -cl;
    dF[kL] = hx * cl + hy * sl;

    dX[kHx] = 2.0 * hx;
    dX[kHy] = 2.0 * hy;

    for (std::size_t j = 0; j < kStateDim; ++j) dKa[j] = -a.Ka / a.Z * dZ[j];
    dKa[kP] = a.Ka / (2.0 * p);
    dKa[kMass] = -a.Ka / m;

    const auto G = thrust_terms(x, u, a);
    std::array<Vec7, 6> dG{};
    dG[0][kP] = 2.0 * s;
    for (std::size_t j = 0; j < kStateDim; ++j) {
        dG[1][j] = dZ[j] * sl * q + dA[j] * s - ey * dF[j] * w;
        dG[2][j] = -dZ[j] * cl * q + dB[j] * s + ex * dF[j] * w;
        dG[3][j] = 0.5 * dX[j] * cl * w;
        dG[4][j] = 0.5 * dX[j] * sl * w;
        dG[5][j] = dF[j] * w;
    }
    // explicit dependence on l through sin/cos, and on e_x, e_y as factors
    dG[1][kL] += a.Z * cl * q;
    dG[1][kEy] -= a.F * w;
    dG[2][kL] += a.Z * sl * q;
    dG[2][kEx] += a.F * w;
    dG[3][kL] -= 0.5 * a.X * sl * w;
    dG[4][kL] += 0.5 * a.X * cl * w;

    Mat7 J{};
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < kStateDim; ++j) {
            J[i][j] = dKa[j] * G[i] + a.Ka * dG[i][j];
        }
    }
    const double root = std::sqrt(spec.mu_grav / (p * p * p));
    J[kL][kP] += -1.5 * a.kepler / p;
    for (std::size_t j : {std::size_t{kEx}, std::size_t{kEy}, std::size_t{kL}}) {
        J[kL][j] += 2.0 * root * a.Z * dZ[j];
    }
    return J;
}

double wrap_2pi(double a) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    a = std::fmod(a, two_pi);
    return a < 0.0 ? a + two_pi : a;
}

}  // namespace

Vec7 gauss_rhs(const SatState& x, const ControlVec& u, const MissionSpec& spec) {
    return rhs_from_aux(x, u, spec, make_aux(x, spec));
}

Mat7x3 dfdu(const SatState& x, const ControlVec& u, const MissionSpec& spec) {
    return dfdu_from_aux(x, u, spec, make_aux(x, spec));
}

Mat7 dfdx(const SatState& x, const ControlVec& u, const MissionSpec& spec) {
    return dfdx_from_aux(x, u, spec, make_aux(x, spec));
}

RhsJacobians rhs_with_jacobians(const SatState& x, const ControlVec& u,
                                const MissionSpec& spec) {
    const Aux a = make_aux(x, spec);
    return {rhs_from_aux(x, u, spec, a), dfdx_from_aux(x, u, spec, a),
            dfdu_from_aux(x, u, spec, a)};
}

double hamiltonian(const SatState& x, const ControlVec& u, const Vec7& lambda,
                   const MissionSpec& spec) {
    return dot(lambda, gauss_rhs(x, u, spec));
}

Vec6 keplerian_to_equinoctial(const KeplerianElements& k) {
    if (!(k.a > 0.0) || !(k.e >= 0.0)) {
        throw ConfigError("keplerian_to_equinoctial: need a > 0 and e >= 0");
    }
    if (std::abs(std::cos(k.i / 2.0)) < 1e-12) {
        throw ConfigError("keplerian_to_equinoctial: inclination i = pi is singular");
    }
    const double t = std::tan(k.i / 2.0);
    const double lon_peri = k.omega + k.raan;
    return {
        k.a * std::abs(1.0 - k.e * k.e),
        k.e * std::cos(lon_peri),
        k.e * std::sin(lon_peri),
        t * std::cos(k.raan),
        t * std::sin(k.raan),
        lon_peri + k.nu,
    };
}

KeplerianElements equinoctial_to_keplerian(const Vec6& el) {
    KeplerianElements k;
    k.e = std::hypot(el[kEx], el[kEy]);
    k.a = el[kP] / std::abs(1.0 - k.e * k.e);
    const double t = std::hypot(el[kHx], el[kHy]);
    k.i = 2.0 * std::atan(t);
    k.raan = t > 0.0 ? wrap_2pi(std::atan2(el[kHy], el[kHx])) : 0.0;
    const double lon_peri = k.e > 0.0 ? std::atan2(el[kEy], el[kEx]) : k.raan;
    k.omega = wrap_2pi(lon_peri - k.raan);
    k.nu = wrap_2pi(el[kL] - lon_peri);
    return k;
}

Vec6 target_deviation(const SatState& x, const MissionSpec& spec) {
    Vec6 d{};
    for (std::size_t i = 0; i < kElemDim; ++i) d[i] = x[i] - spec.x_f[i];
    return d;
}

}  // namespace robrdv
