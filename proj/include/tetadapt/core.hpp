// Copyright 2026 The tetadapt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tetadapt {

using VertId = std::int32_t;
using TetId = std::int32_t;
inline constexpr std::int32_t kNone = -1;

/// Error categories surfaced by the library. Kept in one exception type so
/// callers (and the CLI) can report a single machine-parsable line.
enum class Errc {
  Parse,
  Parameter,
  Alignment,
  InvalidMetric,
  NonManifold,
  Decomposition,
  Assignment,
  Repair,
  Protocol,
  PayloadCorruption,
  Capacity,
  FrozenInterface,
  Pipeline,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::Parse: return "parse";
    case Errc::Parameter: return "parameter";
    case Errc::Alignment: return "alignment";
    case Errc::InvalidMetric: return "invalid-metric";
    case Errc::NonManifold: return "non-manifold";
    case Errc::Decomposition: return "decomposition";
    case Errc::Assignment: return "assignment";
    case Errc::Repair: return "repair";
    case Errc::Protocol: return "protocol";
    case Errc::PayloadCorruption: return "payload-corruption";
    case Errc::Capacity: return "capacity";
    case Errc::FrozenInterface: return "frozen-interface";
    case Errc::Pipeline: return "pipeline";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x; y += o.y; z += o.z;
    return *this;
  }
  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// One sixth of the triple product; sign encodes orientation, zero signals a
/// degenerate tetrahedron.
inline double signed_tet_volume(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3) {
  return dot(p1 - p0, cross(p2 - p0, p3 - p0)) / 6.0;
}

}  // namespace tetadapt
