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

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "tetadapt/core.hpp"

namespace tetadapt {

struct GlobalId {
  std::int32_t subdomain = kNone;
  std::int32_t local = kNone;

  bool assigned() const { return subdomain >= 0 && local >= 0; }
  std::int64_t key() const {
    return (static_cast<std::int64_t>(subdomain) << 32) | static_cast<std::uint32_t>(local);
  }
  bool operator==(const GlobalId& o) const { return subdomain == o.subdomain && local == o.local; }
  bool operator<(const GlobalId& o) const { return key() < o.key(); }
};

struct Vertex {
  Vec3 pos;
  GlobalId gid;
  std::int32_t layer_checked = 0;  // hop level + 1 during layer traversal, 0 = unvisited
  bool is_interface = false;
  bool alive = true;
  std::vector<TetId> attached;  // alive tetrahedra containing this vertex
};

enum class TetStatus : std::uint8_t { Active, Inactive };
enum class PseudoClass : std::uint8_t { PseudoActive, PseudoInactive };

struct Tetrahedron {
  std::array<VertId, 4> v{kNone, kNone, kNone, kNone};
  std::int32_t owner = kNone;  // owning subdomain, kNone = unassigned
  TetStatus status = TetStatus::Active;
  PseudoClass pseudo = PseudoClass::PseudoActive;
  bool alive = true;
  bool traversal_checked = false;  // scratch flag for face traversals
  std::array<TetId, 4> nbr{kNone, kNone, kNone, kNone};  // face i opposite v[i]; valid after build_adjacency

  bool has_vertex(VertId a) const { return v[0] == a || v[1] == a || v[2] == a || v[3] == a; }
};

struct BoundaryFace {
  std::array<VertId, 3> v{kNone, kNone, kNone};
  std::int32_t tag = 0;
};

/// Tetrahedral mesh with free-lists for deleted entities. Deleted slots stay in
/// the arrays (alive = false) so indices held elsewhere remain stable; the
/// invariant live-count + free-count = capacity holds at all times.
class Mesh {
 public:
  std::vector<Vertex> verts;
  std::vector<Tetrahedron> tets;
  std::vector<BoundaryFace> bfaces;
  std::vector<VertId> free_verts;
  std::vector<TetId> free_tets;

  VertId add_vertex(const Vec3& p) {
    VertId id;
    if (!free_verts.empty()) {
      id = free_verts.back();
      free_verts.pop_back();
      verts[id] = Vertex{};
    } else {
      id = static_cast<VertId>(verts.size());
      verts.emplace_back();
    }
    verts[id].pos = p;
    verts[id].alive = true;
    return id;
  }

  TetId add_tet(VertId a, VertId b, VertId c, VertId d, std::int32_t owner = kNone) {
    TetId id;
    if (!free_tets.empty()) {
      id = free_tets.back();
      free_tets.pop_back();
      tets[id] = Tetrahedron{};
    } else {
      id = static_cast<TetId>(tets.size());
      tets.emplace_back();
    }
    tets[id].v = {a, b, c, d};
    tets[id].owner = owner;
    tets[id].alive = true;
    return id;
  }

  void retire_tet(TetId t) {
    tets[t].alive = false;
    free_tets.push_back(t);
  }

  void retire_vertex(VertId v) {
    verts[v].alive = false;
    verts[v].attached.clear();
    free_verts.push_back(v);
  }

  std::int64_t live_vertex_count() const {
    return static_cast<std::int64_t>(verts.size()) - static_cast<std::int64_t>(free_verts.size());
  }
  std::int64_t live_tet_count() const {
    return static_cast<std::int64_t>(tets.size()) - static_cast<std::int64_t>(free_tets.size());
  }

  Vec3 position(VertId v) const { return verts[v].pos; }

  Vec3 tet_centroid(TetId t) const {
    const auto& c = tets[t].v;
    return (verts[c[0]].pos + verts[c[1]].pos + verts[c[2]].pos + verts[c[3]].pos) * 0.25;
  }

  double tet_volume(TetId t) const {
    const auto& c = tets[t].v;
    return signed_tet_volume(verts[c[0]].pos, verts[c[1]].pos, verts[c[2]].pos, verts[c[3]].pos);
  }

  double total_volume() const {
    double s = 0.0;
    for (const auto& t : tets)
      if (t.alive) s += signed_tet_volume(verts[t.v[0]].pos, verts[t.v[1]].pos, verts[t.v[2]].pos, verts[t.v[3]].pos);
    return s;
  }
};

namespace detail {

struct FaceKey {
  std::array<VertId, 3> v;

  static FaceKey make(VertId a, VertId b, VertId c) {
    FaceKey k{{a, b, c}};
    std::sort(k.v.begin(), k.v.end());
    return k;
  }
  bool operator==(const FaceKey& o) const { return v == o.v; }
};

struct FaceKeyHash {
  std::size_t operator()(const FaceKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (VertId x : k.v) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x));
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Face i of a tet is the face opposite vertex v[i].
inline std::array<VertId, 3> tet_face(const Tetrahedron& t, int i) {
  switch (i) {
    case 0: return {t.v[1], t.v[2], t.v[3]};
    case 1: return {t.v[0], t.v[2], t.v[3]};
    case 2: return {t.v[0], t.v[1], t.v[3]};
    default: return {t.v[0], t.v[1], t.v[2]};
  }
}

inline std::uint64_t edge_key(VertId a, VertId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

inline constexpr std::array<std::array<int, 2>, 6> kTetEdges = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

}  // namespace detail

/// Fills per-vertex attached-tet lists and the per-tet face-neighbor table.
/// The neighbor table is only guaranteed current on a quiescent mesh; the
/// adaptation kernels look neighbors up through the attached lists instead.
inline void build_adjacency(Mesh& m) {
  for (auto& v : m.verts) v.attached.clear();
  for (TetId t = 0; t < static_cast<TetId>(m.tets.size()); ++t) {
    if (!m.tets[t].alive) continue;
    for (VertId w : m.tets[t].v) m.verts[w].attached.push_back(t);
  }
  std::unordered_map<detail::FaceKey, std::pair<TetId, TetId>, detail::FaceKeyHash> faces;
  faces.reserve(m.tets.size() * 2);
  for (TetId t = 0; t < static_cast<TetId>(m.tets.size()); ++t) {
    auto& tet = m.tets[t];
    tet.nbr = {kNone, kNone, kNone, kNone};
    if (!tet.alive) continue;
    for (int f = 0; f < 4; ++f) {
      auto fv = detail::tet_face(tet, f);
      auto key = detail::FaceKey::make(fv[0], fv[1], fv[2]);
      auto it = faces.find(key);
      if (it == faces.end()) {
        faces.emplace(key, std::make_pair(t, kNone));
      } else if (it->second.second == kNone) {
        it->second.second = t;
      } else {
        throw Error(Errc::NonManifold, "face shared by more than two tetrahedra");
      }
    }
  }
  for (auto& [key, pair] : faces) {
    if (pair.second == kNone) continue;
    for (TetId t : {pair.first, pair.second}) {
      TetId other = (t == pair.first) ? pair.second : pair.first;
      auto& tet = m.tets[t];
      for (int f = 0; f < 4; ++f) {
        auto fv = detail::tet_face(tet, f);
        if (detail::FaceKey::make(fv[0], fv[1], fv[2]) == key) {
          tet.nbr[f] = other;
          break;
        }
      }
    }
  }
}

/// Neighbor lookup that stays correct while kernels mutate the mesh: scans the
/// attached list of a face vertex for the one other live tet sharing the face.
inline TetId find_face_neighbor(const Mesh& m, TetId t, int face) {
  auto fv = detail::tet_face(m.tets[t], face);
  for (TetId cand : m.verts[fv[0]].attached) {
    if (cand == t || !m.tets[cand].alive) continue;
    const auto& c = m.tets[cand];
    if (c.has_vertex(fv[1]) && c.has_vertex(fv[2])) return cand;
  }
  return kNone;
}

/// Unit cube [0,1]^3 split into n^3 hex cells of 6 tets each (Kuhn
/// subdivision around the main diagonal, conforming across cells).
inline Mesh generate_cube_mesh(int n) {
  if (n < 1) throw Error(Errc::Parameter, "cube subdivisions must be >= 1");
  Mesh m;
  const int s = n + 1;
  auto vid = [s](int i, int j, int k) { return static_cast<VertId>(i + j * s + k * s * s); };
  m.verts.reserve(static_cast<std::size_t>(s) * s * s);
  for (int k = 0; k < s; ++k)
    for (int j = 0; j < s; ++j)
      for (int i = 0; i < s; ++i)
        m.add_vertex({static_cast<double>(i) / n, static_cast<double>(j) / n,
                      static_cast<double>(k) / n});

  static constexpr int kPerm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                      {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  m.tets.reserve(static_cast<std::size_t>(n) * n * n * 6);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        for (const auto& p : kPerm) {
          int c[3] = {i, j, k};
          std::array<VertId, 4> vv;
          vv[0] = vid(c[0], c[1], c[2]);
          for (int step = 0; step < 3; ++step) {
            c[p[step]] += 1;
            vv[step + 1] = vid(c[0], c[1], c[2]);
          }
          TetId t = m.add_tet(vv[0], vv[1], vv[2], vv[3]);
          if (m.tet_volume(t) < 0.0) std::swap(m.tets[t].v[2], m.tets[t].v[3]);
        }
      }

  // Boundary faces = tet faces without a neighbor; tag 1..6 by cube side.
  std::unordered_map<detail::FaceKey, int, detail::FaceKeyHash> count;
  for (const auto& t : m.tets)
    for (int f = 0; f < 4; ++f) {
      auto fv = detail::tet_face(t, f);
      count[detail::FaceKey::make(fv[0], fv[1], fv[2])]++;
    }
  for (const auto& t : m.tets)
    for (int f = 0; f < 4; ++f) {
      auto fv = detail::tet_face(t, f);
      if (count[detail::FaceKey::make(fv[0], fv[1], fv[2])] != 1) continue;
      Vec3 c = (m.verts[fv[0]].pos + m.verts[fv[1]].pos + m.verts[fv[2]].pos) * (1.0 / 3.0);
      int tag = 0;
      if (c.x == 0.0) tag = 1;
      else if (c.x == 1.0) tag = 2;
      else if (c.y == 0.0) tag = 3;
      else if (c.y == 1.0) tag = 4;
      else if (c.z == 0.0) tag = 5;
      else if (c.z == 1.0) tag = 6;
      m.bfaces.push_back({fv, tag});
    }
  return m;
}

struct ValidationReport {
  std::vector<TetId> nonpositive_volume;
  std::vector<std::array<VertId, 3>> overshared_faces;   // shared by > 2 tets
  std::vector<std::array<VertId, 3>> unmatched_tet_faces;  // single faces absent from bfaces
  std::vector<std::size_t> orphan_boundary_faces;          // bface index not matching one tet face
  std::vector<VertId> duplicate_global_ids;

  bool empty() const {
    return nonpositive_volume.empty() && overshared_faces.empty() &&
           unmatched_tet_faces.empty() && orphan_boundary_faces.empty() &&
           duplicate_global_ids.empty();
  }
  std::string summary() const {
    std::ostringstream os;
    os << "nonpositive_volume=" << nonpositive_volume.size()
       << " overshared_faces=" << overshared_faces.size()
       << " unmatched_tet_faces=" << unmatched_tet_faces.size()
       << " orphan_boundary_faces=" << orphan_boundary_faces.size()
       << " duplicate_global_ids=" << duplicate_global_ids.size();
    return os.str();
  }
};

/// Structural audit; findings are data, an empty report means valid. With
/// exempt_interface_faces set, single faces whose three vertices are all
/// interface vertices are accepted without a boundary-face entry (the case for
/// an unpacked subdomain).
inline ValidationReport validate_conformity(const Mesh& m, bool exempt_interface_faces = false) {
  ValidationReport rep;
  using detail::FaceKey;
  std::unordered_map<FaceKey, int, detail::FaceKeyHash> count;
  for (TetId t = 0; t < static_cast<TetId>(m.tets.size()); ++t) {
    if (!m.tets[t].alive) continue;
    if (m.tet_volume(t) <= 0.0) rep.nonpositive_volume.push_back(t);
    for (int f = 0; f < 4; ++f) {
      auto fv = detail::tet_face(m.tets[t], f);
      count[FaceKey::make(fv[0], fv[1], fv[2])]++;
    }
  }
  std::unordered_map<FaceKey, int, detail::FaceKeyHash> boundary;
  for (std::size_t i = 0; i < m.bfaces.size(); ++i)
    boundary[FaceKey::make(m.bfaces[i].v[0], m.bfaces[i].v[1], m.bfaces[i].v[2])]++;

  for (const auto& [key, c] : count) {
    if (c > 2) {
      rep.overshared_faces.push_back(key.v);
    } else if (c == 1 && boundary.find(key) == boundary.end()) {
      bool interface_face = m.verts[key.v[0]].is_interface && m.verts[key.v[1]].is_interface &&
                            m.verts[key.v[2]].is_interface;
      if (!(exempt_interface_faces && interface_face)) rep.unmatched_tet_faces.push_back(key.v);
    }
  }
  for (std::size_t i = 0; i < m.bfaces.size(); ++i) {
    auto key = FaceKey::make(m.bfaces[i].v[0], m.bfaces[i].v[1], m.bfaces[i].v[2]);
    auto it = count.find(key);
    if (it == count.end() || it->second != 1) rep.orphan_boundary_faces.push_back(i);
  }
  std::unordered_map<std::int64_t, VertId> seen;
  for (VertId v = 0; v < static_cast<VertId>(m.verts.size()); ++v) {
    if (!m.verts[v].alive || !m.verts[v].gid.assigned()) continue;
    auto [it, inserted] = seen.emplace(m.verts[v].gid.key(), v);
    if (!inserted) rep.duplicate_global_ids.push_back(v);
  }
  return rep;
}

/// Marks vertices referenced by any boundary face. Boundary faces are stable
/// through adaptation, so kernels compute this once per pass.
inline std::vector<char> boundary_vertex_mask(const Mesh& m) {
  std::vector<char> mask(m.verts.size(), 0);
  for (const auto& f : m.bfaces)
    for (VertId v : f.v) mask[v] = 1;
  return mask;
}

}  // namespace tetadapt
