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
#pragma once

// Gauss variational equations in equinoctial elements with mass, and their
// analytic Jacobians.

#include "robrdv/mission.hpp"
#include "robrdv/types.hpp"

namespace robrdv {

struct KeplerianElements {
    double a = 1.0;       // semi-major axis
    double e = 0.0;       // eccentricity
    double i = 0.0;       // inclination [rad]
    double omega = 0.0;   // argument of periapsis [rad]
    double raan = 0.0;    // longitude of the ascending node [rad]
    double nu = 0.0;      // true anomaly [rad]
};

/// Time derivative of the state under control u.
///
/// Throws DynamicsError if p <= 0, m <= 0, Z <= 0 or the result is non-finite.
Vec7 gauss_rhs(const SatState& x, const ControlVec& u, const MissionSpec& spec);

/// d f / d u. The mass row is gamma * u / ||u||, and 0 at u = 0.
Mat7x3 dfdu(const SatState& x, const ControlVec& u, const MissionSpec& spec);

/// d f / d x.
Mat7 dfdx(const SatState& x, const ControlVec& u, const MissionSpec& spec);

/// lambda^T f(x, u).
double hamiltonian(const SatState& x, const ControlVec& u, const Vec7& lambda,
                   const MissionSpec& spec);

/// f, d f / d x and d f / d u evaluated together (shares the trigonometry).
struct RhsJacobians {
    Vec7 f{};
    Mat7 fx{};
    Mat7x3 fu{};
};
RhsJacobians rhs_with_jacobians(const SatState& x, const ControlVec& u,
                                const MissionSpec& spec);

/// Element part (p, e_x, e_y, h_x, h_y, l). Throws ConfigError for i = pi,
/// a <= 0 or e < 0.
Vec6 keplerian_to_equinoctial(const KeplerianElements& k);

/// Inverse of keplerian_to_equinoctial for 0 <= e < 1 and 0 <= i < pi.
/// Angles are returned in [0, 2 pi); nu is recovered modulo 2 pi.
KeplerianElements equinoctial_to_keplerian(const Vec6& elems);

/// C(x): element-wise deviation from the rendezvous target (mass excluded).
Vec6 target_deviation(const SatState& x, const MissionSpec& spec);

/// Consumed mass K(x) = m(t_i) - m.
inline double consumption(const SatState& x, const MissionSpec& spec) {
    return spec.x_i.mass() - x.mass();
}

}  // namespace robrdv
