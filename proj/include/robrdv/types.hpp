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

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace robrdv {

inline constexpr std::size_t kStateDim = 7;
inline constexpr std::size_t kElemDim = 6;
inline constexpr std::size_t kControlDim = 3;

using Vec7 = std::array<double, kStateDim>;
using Vec6 = std::array<double, kElemDim>;
using Vec3 = std::array<double, kControlDim>;
using Mat7 = std::array<std::array<double, kStateDim>, kStateDim>;
using Mat7x3 = std::array<std::array<double, kControlDim>, kStateDim>;

// Component indices of a satellite state.
enum StateIndex : std::size_t { kP = 0, kEx, kEy, kHx, kHy, kL, kMass };

/// Equinoctial elements plus mass: (p, e_x, e_y, h_x, h_y, l, m).
///
/// The longitude l is kept unwrapped so that it grows monotonically along
/// a trajectory.
struct SatState {
    Vec7 x{};

    double& operator[](std::size_t i) { return x[i]; }
    double operator[](std::size_t i) const { return x[i]; }

    double p() const { return x[kP]; }
    double ex() const { return x[kEx]; }
    double ey() const { return x[kEy]; }
    double hx() const { return x[kHx]; }
    double hy() const { return x[kHy]; }
    double l() const { return x[kL]; }
    double mass() const { return x[kMass]; }

    Vec6 elements() const { return {x[0], x[1], x[2], x[3], x[4], x[5]}; }

    friend bool operator==(const SatState&, const SatState&) = default;
};

/// Radial, tangential and normal thrust components, ||u|| <= 1.
struct ControlVec {
    double q = 0.0;
    double s = 0.0;
    double w = 0.0;

    double norm() const { return std::sqrt(q * q + s * s + w * w); }
    Vec3 as_array() const { return {q, s, w}; }
    static ControlVec from(const Vec3& v) { return {v[0], v[1], v[2]}; }

    friend bool operator==(const ControlVec&, const ControlVec&) = default;
};

/// Thrown when the Gauss dynamics leave their domain of validity
/// (p <= 0, m <= 0, Z <= 0 or a non-finite value).
class DynamicsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown for malformed or inconsistent configuration input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an input or output file cannot be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <std::size_t N>
double norm2(const std::array<double, N>& v) {
    double acc = 0.0;
    for (double e : v) acc += e * e;
    return std::sqrt(acc);
}

template <std::size_t N>
double dot(const std::array<double, N>& a, const std::array<double, N>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) acc += a[i] * b[i];
    return acc;
}

}  // namespace robrdv
