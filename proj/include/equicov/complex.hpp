// Finite abstract simplicial complexes, stored fully closed under faces.
// Simplices are sorted vertex-index lists; each dimension's list is kept
// sorted lexicographically so every operation is reproducible bit-exactly.
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "equicov/errors.hpp"

namespace equicov {

using Simplex = std::vector<int>;  // sorted, distinct vertex ids

struct FVector {
  std::vector<long long> counts;  // counts[d] = number of d-simplices

  bool operator==(const FVector&) const = default;
};

class SComplex {
 public:
  SComplex() = default;

  // Downward closure of the given simplices. Input lists need not be
  // maximal or sorted; repeated vertices inside a list are malformed.
  static SComplex from_maximal(int num_vertices,
                               const std::vector<Simplex>& maximal) {
    if (num_vertices < 0) {
      fail(ErrorKind::IndexOutOfRange, "negative vertex count");
    }
    std::set<Simplex> closed;
    for (Simplex s : maximal) {
      if (s.empty()) {
        fail(ErrorKind::EmptySimplex, "empty simplex in input");
      }
      std::sort(s.begin(), s.end());
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 0 || s[i] >= num_vertices) {
          fail(ErrorKind::IndexOutOfRange,
               "vertex " + std::to_string(s[i]) + " out of range for " +
                   std::to_string(num_vertices) + " vertices");
        }
        if (i > 0 && s[i] == s[i - 1]) {
          fail(ErrorKind::ParseError,
               "repeated vertex " + std::to_string(s[i]) + " in simplex");
        }
      }
      // All non-empty subsets, by bitmask over the vertex list.
      const std::size_t n = s.size();
      for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        Simplex face;
        for (std::size_t i = 0; i < n; ++i) {
          if (mask & (std::size_t{1} << i)) face.push_back(s[i]);
        }
        closed.insert(std::move(face));
      }
    }
    SComplex k;
    k.num_vertices_ = num_vertices;
    for (const Simplex& s : closed) {
      const std::size_t d = s.size() - 1;
      if (k.by_dim_.size() <= d) k.by_dim_.resize(d + 1);
      k.by_dim_[d].push_back(s);
    }
    // std::set iterates sorted lexicographically, but grouping by dimension
    // interleaves; restore per-dimension lexicographic order.
    for (auto& dim_list : k.by_dim_) std::sort(dim_list.begin(), dim_list.end());
    return k;
  }

  int num_vertices() const { return num_vertices_; }

  // Dimension of the complex; -1 when there are no simplices at all.
  int dim() const { return static_cast<int>(by_dim_.size()) - 1; }

  const std::vector<Simplex>& simplices(int d) const {
    static const std::vector<Simplex> empty;
    if (d < 0 || d > dim()) return empty;
    return by_dim_[static_cast<std::size_t>(d)];
  }

  bool contains(const Simplex& s) const {
    if (s.empty()) return false;
    const int d = static_cast<int>(s.size()) - 1;
    const auto& list = simplices(d);
    return std::binary_search(list.begin(), list.end(), s);
  }

  // All simplices ordered by (dimension, lexicographic).
  std::vector<Simplex> all_simplices() const {
    std::vector<Simplex> out;
    for (const auto& dim_list : by_dim_) {
      out.insert(out.end(), dim_list.begin(), dim_list.end());
    }
    return out;
  }

  std::size_t simplex_count() const {
    std::size_t n = 0;
    for (const auto& dim_list : by_dim_) n += dim_list.size();
    return n;
  }

  FVector f_vector() const {
    FVector f;
    for (const auto& dim_list : by_dim_) {
      f.counts.push_back(static_cast<long long>(dim_list.size()));
    }
    return f;
  }

  long long euler_characteristic() const {
    long long chi = 0;
    long long sign = 1;
    for (const auto& dim_list : by_dim_) {
      chi += sign * static_cast<long long>(dim_list.size());
      sign = -sign;
    }
    return chi;
  }

  // Vertices that actually appear (the 0-simplices), ascending.
  std::vector<int> used_vertices() const {
    std::vector<int> out;
    for (const Simplex& s : simplices(0)) out.push_back(s[0]);
    return out;
  }

  bool operator==(const SComplex&) const = default;

 private:
  int num_vertices_ = 0;
  std::vector<std::vector<Simplex>> by_dim_;
};

// True iff every simplex of a lies in k (same ambient vertex indexing).
inline bool is_subcomplex(const SComplex& k, const SComplex& a) {
  if (a.num_vertices() > k.num_vertices()) return false;
  for (int d = 0; d <= a.dim(); ++d) {
    for (const Simplex& s : a.simplices(d)) {
      if (!k.contains(s)) return false;
    }
  }
  return true;
}

// Subcomplex induced on a vertex subset: all simplices of k whose vertices
// lie in the set. Keeps the ambient vertex indexing.
inline SComplex full_subcomplex(const SComplex& k, const std::vector<int>& vertices) {
  std::set<int> keep(vertices.begin(), vertices.end());
  std::vector<Simplex> kept;
  for (int d = 0; d <= k.dim(); ++d) {
    for (const Simplex& s : k.simplices(d)) {
      bool inside = true;
      for (int v : s) {
        if (!keep.count(v)) {
          inside = false;
          break;
        }
      }
      if (inside) kept.push_back(s);
    }
  }
  return SComplex::from_maximal(k.num_vertices(), kept);
}

// Barycentric subdivision together with the face-to-vertex dictionary.
// New vertex ids follow the (dimension, lexicographic) order of parent
// faces, so subdividing is deterministic.
struct Subdivision {
  SComplex complex;
  std::vector<Simplex> vertex_to_face;   // sd vertex id -> parent face
  std::map<Simplex, int> face_to_vertex; // parent face -> sd vertex id
};

inline Subdivision barycentric_subdivision(const SComplex& k) {
  Subdivision sd;
  sd.vertex_to_face = k.all_simplices();
  for (std::size_t i = 0; i < sd.vertex_to_face.size(); ++i) {
    sd.face_to_vertex[sd.vertex_to_face[i]] = static_cast<int>(i);
  }
  // Maximal simplices of k: not a facet of any simplex one dimension up.
  std::set<Simplex> non_maximal;
  for (int d = 1; d <= k.dim(); ++d) {
    for (const Simplex& s : k.simplices(d)) {
      for (std::size_t omit = 0; omit < s.size(); ++omit) {
        Simplex facet;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (i != omit) facet.push_back(s[i]);
        }
        non_maximal.insert(std::move(facet));
      }
    }
  }
  // Full flags of each maximal simplex: one per vertex ordering; the chain
  // of prefixes gives a top-dimensional simplex of the subdivision.
  std::vector<Simplex> flags;
  for (int d = 0; d <= k.dim(); ++d) {
    for (const Simplex& s : k.simplices(d)) {
      if (non_maximal.count(s)) continue;
      Simplex vertices = s;
      std::sort(vertices.begin(), vertices.end());
      do {
        Simplex flag;
        Simplex prefix;
        for (int v : vertices) {
          prefix.push_back(v);
          Simplex face = prefix;
          std::sort(face.begin(), face.end());
          flag.push_back(sd.face_to_vertex.at(face));
        }
        flags.push_back(std::move(flag));
      } while (std::next_permutation(vertices.begin(), vertices.end()));
    }
  }
  sd.complex = SComplex::from_maximal(static_cast<int>(sd.vertex_to_face.size()), flags);
  return sd;
}

struct GraphBetti {
  long long components = 0;
  long long loops = 0;  // b1 = E - V + C, summed over components

  bool operator==(const GraphBetti&) const = default;
};

namespace detail {

// Plain union-find over 0..n-1.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent_[static_cast<std::size_t>(find(a))] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

// Simplices not contained in any higher simplex, in (dimension, lex) order.
// Together with num_vertices this reconstructs the complex exactly.
inline std::vector<Simplex> maximal_simplices(const SComplex& k) {
  std::vector<Simplex> out;
  for (int d = 0; d <= k.dim(); ++d) {
    std::set<Simplex> covered;
    for (const Simplex& s : k.simplices(d + 1)) {
      for (std::size_t omit = 0; omit < s.size(); ++omit) {
        Simplex face;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (i != omit) face.push_back(s[i]);
        }
        covered.insert(std::move(face));
      }
    }
    for (const Simplex& s : k.simplices(d)) {
      if (!covered.count(s)) out.push_back(s);
    }
  }
  return out;
}

inline GraphBetti graph_betti(const SComplex& k) {
  if (k.dim() > 1) {
    fail(ErrorKind::NotAGraph,
         "expected a complex of dimension at most 1, got dimension " +
             std::to_string(k.dim()));
  }
  detail::UnionFind uf(static_cast<std::size_t>(k.num_vertices()));
  for (const Simplex& e : k.simplices(1)) uf.unite(e[0], e[1]);
  std::set<int> roots;
  for (int v : k.used_vertices()) roots.insert(uf.find(v));
  GraphBetti b;
  b.components = static_cast<long long>(roots.size());
  const long long vertices = static_cast<long long>(k.simplices(0).size());
  const long long edges = static_cast<long long>(k.simplices(1).size());
  b.loops = edges - vertices + b.components;
  return b;
}

struct SurfaceInfo {
  bool orientable = false;
  long long genus = 0;  // crosscap number when non-orientable

  bool operator==(const SurfaceInfo&) const = default;
};

namespace detail {

struct SurfaceAnalysis {
  SurfaceInfo info;
  // Edge -> the two incident triangle ids (indices into simplices(2)).
  std::map<Simplex, std::vector<int>> edge_triangles;
  // Per-triangle orientation bit relative to sorted vertex order; filled
  // consistently over the whole surface when orientable.
  std::vector<int> parity;
};

// For triangle (a<b<c) with parity 0 the boundary runs a->b->c->a; parity 1
// reverses it. Returns +1 when the oriented boundary traverses edge e as
// (e[0] -> e[1]), else -1.
inline int oriented_edge_direction(const Simplex& tri, int parity, const Simplex& e) {
  const int a = tri[0], b = tri[1], c = tri[2];
  int forward;
  if (e[0] == a && e[1] == b) forward = 1;        // a->b
  else if (e[0] == b && e[1] == c) forward = 1;   // b->c
  else forward = -1;                              // edge {a,c} runs c->a
  (void)c;
  return parity == 0 ? forward : -forward;
}

// The boundary cycle of a triangle under its parity bit.
inline std::array<int, 3> oriented_cycle(const Simplex& tri, int parity) {
  if (parity == 0) return {tri[0], tri[1], tri[2]};
  return {tri[0], tri[2], tri[1]};
}

// Closed-surface recognition: every edge in exactly two triangles, every
// vertex link a single cycle, connected; orientability by propagating
// triangle orientations across shared edges. Absent when any check fails.
inline std::optional<SurfaceAnalysis> analyze_closed_surface(const SComplex& k) {
  if (k.dim() != 2) return std::nullopt;
  const auto& triangles = k.simplices(2);
  const auto& edges = k.simplices(1);
  const auto& vertices = k.simplices(0);
  if (triangles.empty()) return std::nullopt;

  // Edge -> incident triangle ids; every edge must lie in exactly two.
  std::map<Simplex, std::vector<int>> edge_triangles;
  for (std::size_t t = 0; t < triangles.size(); ++t) {
    const Simplex& tri = triangles[t];
    for (int omit = 0; omit < 3; ++omit) {
      Simplex e;
      for (int i = 0; i < 3; ++i) {
        if (i != omit) e.push_back(tri[static_cast<std::size_t>(i)]);
      }
      edge_triangles[e].push_back(static_cast<int>(t));
    }
  }
  if (edge_triangles.size() != edges.size()) return std::nullopt;  // dangling edge
  for (const auto& [e, ts] : edge_triangles) {
    if (ts.size() != 2) return std::nullopt;
  }

  // Vertex links: each must be a single cycle.
  for (const Simplex& vs : vertices) {
    const int v = vs[0];
    std::map<int, int> link_degree;
    std::size_t link_edges = 0;
    for (const Simplex& tri : triangles) {
      if (!std::binary_search(tri.begin(), tri.end(), v)) continue;
      Simplex opposite;
      for (int u : tri) {
        if (u != v) opposite.push_back(u);
      }
      ++link_edges;
      ++link_degree[opposite[0]];
      ++link_degree[opposite[1]];
    }
    if (link_edges < 3 || link_edges != link_degree.size()) return std::nullopt;
    for (const auto& [u, deg] : link_degree) {
      if (deg != 2) return std::nullopt;
    }
    // Degree-2 everywhere with #edges = #vertices: a disjoint union of
    // cycles; single cycle iff connected.
    std::map<int, std::vector<int>> adjacency;
    for (const Simplex& tri : triangles) {
      if (!std::binary_search(tri.begin(), tri.end(), v)) continue;
      Simplex opposite;
      for (int u : tri) {
        if (u != v) opposite.push_back(u);
      }
      adjacency[opposite[0]].push_back(opposite[1]);
      adjacency[opposite[1]].push_back(opposite[0]);
    }
    std::set<int> seen;
    std::vector<int> stack{adjacency.begin()->first};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      if (!seen.insert(u).second) continue;
      for (int w : adjacency[u]) stack.push_back(w);
    }
    if (seen.size() != adjacency.size()) return std::nullopt;
  }

  // Connectivity of the whole complex.
  detail::UnionFind uf(static_cast<std::size_t>(k.num_vertices()));
  for (const Simplex& e : edges) uf.unite(e[0], e[1]);
  std::set<int> roots;
  for (int v : k.used_vertices()) roots.insert(uf.find(v));
  if (roots.size() != 1) return std::nullopt;

  // Orientability: orientation of a triangle is a parity bit relative to
  // its sorted vertex order; adjacent triangles must induce the shared
  // edge in opposite directions.
  std::vector<int> parity(triangles.size(), -1);
  bool orientable = true;
  parity[0] = 0;
  std::vector<int> stack{0};
  while (!stack.empty() && orientable) {
    const int t = stack.back();
    stack.pop_back();
    const Simplex& tri = triangles[static_cast<std::size_t>(t)];
    for (int omit = 0; omit < 3; ++omit) {
      Simplex e;
      for (int i = 0; i < 3; ++i) {
        if (i != omit) e.push_back(tri[static_cast<std::size_t>(i)]);
      }
      const auto& pair = edge_triangles[e];
      const int other = pair[0] == t ? pair[1] : pair[0];
      const int needed_dir =
          -oriented_edge_direction(tri, parity[static_cast<std::size_t>(t)], e);
      const Simplex& other_tri = triangles[static_cast<std::size_t>(other)];
      const int dir_even = oriented_edge_direction(other_tri, 0, e);
      const int needed_parity = dir_even == needed_dir ? 0 : 1;
      if (parity[static_cast<std::size_t>(other)] == -1) {
        parity[static_cast<std::size_t>(other)] = needed_parity;
        stack.push_back(other);
      } else if (parity[static_cast<std::size_t>(other)] != needed_parity) {
        orientable = false;
        break;
      }
    }
  }

  const long long chi = k.euler_characteristic();
  SurfaceAnalysis out;
  out.info.orientable = orientable;
  if (orientable) {
    require_internal((2 - chi) % 2 == 0, "closed orientable surface has even Euler characteristic");
    out.info.genus = (2 - chi) / 2;
  } else {
    out.info.genus = 2 - chi;
  }
  out.edge_triangles = std::move(edge_triangles);
  out.parity = std::move(parity);
  return out;
}

}  // namespace detail

inline std::optional<SurfaceInfo> is_closed_surface(const SComplex& k) {
  const auto analysis = detail::analyze_closed_surface(k);
  if (!analysis) return std::nullopt;
  return analysis->info;
}

// Open star N1(A): all simplices of k meeting a vertex of A, plus the
// full subcomplex left after removing them.
struct StarNeighborhood {
  std::vector<Simplex> star;  // open cells, ordered by (dimension, lex)
  SComplex complement;        // closed complement, a subcomplex of k
};

inline StarNeighborhood open_star_neighborhood(const SComplex& k, const SComplex& a) {
  if (!is_subcomplex(k, a)) {
    fail(ErrorKind::NotASubcomplex, "neighborhood base is not a subcomplex");
  }
  const std::vector<int> core_vertices = a.used_vertices();
  const std::set<int> core(core_vertices.begin(), core_vertices.end());
  StarNeighborhood result;
  std::vector<int> outside;
  for (int v : k.used_vertices()) {
    if (!core.count(v)) outside.push_back(v);
  }
  for (int d = 0; d <= k.dim(); ++d) {
    for (const Simplex& s : k.simplices(d)) {
      bool meets = false;
      for (int v : s) {
        if (core.count(v)) {
          meets = true;
          break;
        }
      }
      if (meets) result.star.push_back(s);
    }
  }
  result.complement = full_subcomplex(k, outside);
  return result;
}

}  // namespace equicov
