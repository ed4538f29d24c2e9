// Simplicial complexes with a finite group acting by simplicial maps:
// the R1/R2/R3 regularity hierarchy, simplex orbits, equivariant
// f-vectors, quotients, fixed subcomplexes, saturations, the vertex-star
// nerve and regularization by barycentric subdivision.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "equicov/complex.hpp"
#include "equicov/errors.hpp"
#include "equicov/group.hpp"
#include "equicov/perm.hpp"

namespace equicov {

class GComplex {
 public:
  // Extends per-generator vertex permutations to a homomorphism on all of
  // G and verifies the action is simplicial.
  static GComplex build_action(SComplex complex, PermGroup group,
                               const std::vector<Perm>& generator_images) {
    if (generator_images.size() != group.generators().size()) {
      fail(ErrorKind::NotAHomomorphism,
           "expected one vertex permutation per group generator");
    }
    for (const Perm& p : generator_images) {
      if (p.degree() != complex.num_vertices()) {
        fail(ErrorKind::NotAPermutation,
             "vertex permutation degree " + std::to_string(p.degree()) +
                 " does not match vertex count " +
                 std::to_string(complex.num_vertices()));
      }
    }
    // Breadth-first extension along generator products. A conflict means
    // the generator images satisfy fewer relations than the generators.
    std::vector<Perm> action(group.order());
    std::vector<bool> assigned(group.order(), false);
    action[0] = Perm::identity(complex.num_vertices());
    assigned[0] = true;
    std::vector<int> queue{0};
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int e = queue[qi];
      for (std::size_t gi = 0; gi < group.generators().size(); ++gi) {
        const Perm target = group.generators()[gi] * group.element(e);
        const int t = group.element_index(target);
        require_internal(t >= 0, "generator product left the group");
        const Perm image =
            generator_images[gi] * action[static_cast<std::size_t>(e)];
        if (!assigned[static_cast<std::size_t>(t)]) {
          action[static_cast<std::size_t>(t)] = image;
          assigned[static_cast<std::size_t>(t)] = true;
          queue.push_back(t);
        } else if (!(action[static_cast<std::size_t>(t)] == image)) {
          fail(ErrorKind::NotAHomomorphism,
               "vertex images do not extend to a homomorphism: conflict at " +
                   target.to_cycle_string());
        }
      }
    }
    for (bool a : assigned) {
      require_internal(a, "generator closure did not reach every element");
    }
    GComplex x;
    x.complex_ = std::move(complex);
    x.group_ = std::move(group);
    x.vertex_action_ = std::move(action);
    // Simpliciality, exhaustively over elements and simplices.
    for (std::size_t e = 0; e < x.group_.order(); ++e) {
      for (int d = 0; d <= x.complex_.dim(); ++d) {
        for (const Simplex& s : x.complex_.simplices(d)) {
          Simplex image = x.act_simplex(static_cast<int>(e), s);
          if (!x.complex_.contains(image)) {
            fail(ErrorKind::NotSimplicial,
                 "element " + x.group_.element(static_cast<int>(e)).to_cycle_string() +
                     " does not map a simplex to a simplex");
          }
        }
      }
    }
    return x;
  }

  const SComplex& complex() const { return complex_; }
  const PermGroup& group() const { return group_; }
  const std::vector<Perm>& vertex_action() const { return vertex_action_; }

  const Perm& action_of(int element_index) const {
    require_internal(element_index >= 0 &&
                         element_index < static_cast<int>(vertex_action_.size()),
                     "element index out of range");
    return vertex_action_[static_cast<std::size_t>(element_index)];
  }

  int act_vertex(int element_index, int v) const { return action_of(element_index)(v); }

  Simplex act_simplex(int element_index, const Simplex& s) const {
    Simplex image;
    image.reserve(s.size());
    for (int v : s) image.push_back(act_vertex(element_index, v));
    std::sort(image.begin(), image.end());
    return image;
  }

  // Orbit of a vertex, ascending.
  std::vector<int> vertex_orbit(int v) const {
    std::set<int> seen;
    for (std::size_t e = 0; e < group_.order(); ++e) {
      seen.insert(act_vertex(static_cast<int>(e), v));
    }
    return std::vector<int>(seen.begin(), seen.end());
  }

  Subgroup vertex_stabilizer(int v) const {
    Subgroup s;
    for (std::size_t e = 0; e < group_.order(); ++e) {
      if (act_vertex(static_cast<int>(e), v) == v) s.push_back(static_cast<int>(e));
    }
    return s;
  }

  Subgroup setwise_simplex_stabilizer(const Simplex& s) const {
    Subgroup out;
    for (std::size_t e = 0; e < group_.order(); ++e) {
      if (act_simplex(static_cast<int>(e), s) == s) out.push_back(static_cast<int>(e));
    }
    return out;
  }

  Subgroup pointwise_simplex_stabilizer(const Simplex& s) const {
    Subgroup out;
    for (std::size_t e = 0; e < group_.order(); ++e) {
      bool fixes = true;
      for (int v : s) {
        if (act_vertex(static_cast<int>(e), v) != v) {
          fixes = false;
          break;
        }
      }
      if (fixes) out.push_back(static_cast<int>(e));
    }
    return out;
  }

 private:
  SComplex complex_;
  PermGroup group_;
  std::vector<Perm> vertex_action_;
};

// ---------------------------------------------------------------------------
// Regularity conditions
// ---------------------------------------------------------------------------

struct R1Witness {
  int vertex = -1;
  int element = -1;  // index into group elements
  Simplex simplex;   // contains vertex and its distinct translate
};

struct R2Witness {
  Simplex source;           // v_0..v_n, ascending
  std::vector<int> images;  // chosen translates g_i v_i, parallel to source
  Simplex target;           // the simplex spanned by images
};

struct R3Witness {
  Simplex simplex;
  int vertex_a = -1;  // stabilizers of these two are incomparable
  int vertex_b = -1;
};

// First R1 violation in (simplex by dim/lex, vertex, element) order.
inline std::optional<R1Witness> find_r1_violation(const GComplex& x) {
  for (int d = 1; d <= x.complex().dim(); ++d) {
    for (const Simplex& s : x.complex().simplices(d)) {
      for (int v : s) {
        for (std::size_t e = 1; e < x.group().order(); ++e) {
          const int image = x.act_vertex(static_cast<int>(e), v);
          if (image != v && std::binary_search(s.begin(), s.end(), image)) {
            return R1Witness{v, static_cast<int>(e), s};
          }
        }
      }
    }
  }
  return std::nullopt;
}

inline bool check_r1(const GComplex& x) { return !find_r1_violation(x).has_value(); }

// First R2 violation: a simplex whose orbitwise vertex translates span a
// simplex that no single group element realizes. Assignments are
// enumerated in lexicographic product order over sorted vertex orbits,
// including degenerate ones (repeated image vertices).
inline std::optional<R2Witness> find_r2_violation(const GComplex& x) {
  const int n_vertices = x.complex().num_vertices();
  std::vector<std::vector<int>> orbit_of(static_cast<std::size_t>(n_vertices));
  for (int v : x.complex().used_vertices()) {
    orbit_of[static_cast<std::size_t>(v)] = x.vertex_orbit(v);
  }
  for (int d = 0; d <= x.complex().dim(); ++d) {
    for (const Simplex& s : x.complex().simplices(d)) {
      const std::size_t k = s.size();
      std::vector<std::size_t> choice(k, 0);
      while (true) {
        std::vector<int> images(k);
        for (std::size_t i = 0; i < k; ++i) {
          images[i] = orbit_of[static_cast<std::size_t>(s[i])][choice[i]];
        }
        Simplex target(images.begin(), images.end());
        std::sort(target.begin(), target.end());
        target.erase(std::unique(target.begin(), target.end()), target.end());
        if (x.complex().contains(target)) {
          bool realized = false;
          for (std::size_t e = 0; e < x.group().order(); ++e) {
            bool matches = true;
            for (std::size_t i = 0; i < k; ++i) {
              if (x.act_vertex(static_cast<int>(e), s[i]) != images[i]) {
                matches = false;
                break;
              }
            }
            if (matches) {
              realized = true;
              break;
            }
          }
          if (!realized) {
            return R2Witness{s, images, target};
          }
        }
        // Advance the mixed-radix assignment counter.
        bool wrapped = false;
        std::size_t pos = k;
        while (true) {
          if (pos == 0) {
            wrapped = true;  // all assignments done
            break;
          }
          --pos;
          if (++choice[pos] < orbit_of[static_cast<std::size_t>(s[pos])].size()) break;
          choice[pos] = 0;
        }
        if (wrapped) break;
      }
    }
  }
  return std::nullopt;
}

inline bool check_r2(const GComplex& x) { return !find_r2_violation(x).has_value(); }

// First R3 violation: a simplex with two vertices whose stabilizers are
// incomparable under inclusion.
inline std::optional<R3Witness> find_r3_violation(const GComplex& x) {
  std::map<int, Subgroup> stab;
  for (int v : x.complex().used_vertices()) stab[v] = x.vertex_stabilizer(v);
  for (int d = 1; d <= x.complex().dim(); ++d) {
    for (const Simplex& s : x.complex().simplices(d)) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          const Subgroup& a = stab[s[i]];
          const Subgroup& b = stab[s[j]];
          if (!subgroup_contains(a, b) && !subgroup_contains(b, a)) {
            return R3Witness{s, s[i], s[j]};
          }
        }
      }
    }
  }
  return std::nullopt;
}

inline bool check_r3(const GComplex& x) { return !find_r3_violation(x).has_value(); }

struct RegularityReport {
  bool r1 = false;
  bool r2 = false;
  bool r3 = false;
  std::optional<R1Witness> r1_witness;
  std::optional<R2Witness> r2_witness;
  std::optional<R3Witness> r3_witness;

  bool regular() const { return r1 && r2; }
  bool strictly_regular() const { return r1 && r2 && r3; }
};

inline RegularityReport check_regularity(const GComplex& x) {
  RegularityReport r;
  r.r1_witness = find_r1_violation(x);
  r.r2_witness = find_r2_violation(x);
  r.r3_witness = find_r3_violation(x);
  r.r1 = !r.r1_witness.has_value();
  r.r2 = !r.r2_witness.has_value();
  r.r3 = !r.r3_witness.has_value();
  return r;
}

// ---------------------------------------------------------------------------
// Orbits and the equivariant f-vector
// ---------------------------------------------------------------------------

struct SimplexOrbit {
  Simplex representative;        // least member in (dim, lex) order
  std::vector<Simplex> members;  // sorted
  Subgroup setwise_stabilizer;   // of the representative
  Subgroup pointwise_stabilizer; // of the representative

  int dim() const { return static_cast<int>(representative.size()) - 1; }
};

// All simplex orbits, ordered by (dimension, lexicographic representative).
inline std::vector<SimplexOrbit> simplex_orbits(const GComplex& x) {
  std::vector<SimplexOrbit> out;
  std::set<Simplex> seen;
  for (int d = 0; d <= x.complex().dim(); ++d) {
    for (const Simplex& s : x.complex().simplices(d)) {
      if (seen.count(s)) continue;
      SimplexOrbit orbit;
      std::set<Simplex> members;
      for (std::size_t e = 0; e < x.group().order(); ++e) {
        members.insert(x.act_simplex(static_cast<int>(e), s));
      }
      orbit.members.assign(members.begin(), members.end());
      orbit.representative = orbit.members.front();
      orbit.setwise_stabilizer = x.setwise_simplex_stabilizer(orbit.representative);
      orbit.pointwise_stabilizer = x.pointwise_simplex_stabilizer(orbit.representative);
      seen.insert(members.begin(), members.end());
      out.push_back(std::move(orbit));
    }
  }
  return out;
}

struct EquivariantFVector {
  std::vector<long long> orbit_counts;            // f_{G,0}..f_{G,d}
  std::vector<std::vector<long long>> stabilizer_orders;  // per dimension, per orbit

  bool operator==(const EquivariantFVector&) const = default;
};

inline EquivariantFVector equivariant_f_vector(const GComplex& x) {
  EquivariantFVector f;
  const int dim = x.complex().dim();
  if (dim < 0) return f;
  f.orbit_counts.assign(static_cast<std::size_t>(dim) + 1, 0);
  f.stabilizer_orders.assign(static_cast<std::size_t>(dim) + 1, {});
  for (const SimplexOrbit& orbit : simplex_orbits(x)) {
    const std::size_t d = static_cast<std::size_t>(orbit.dim());
    ++f.orbit_counts[d];
    f.stabilizer_orders[d].push_back(
        static_cast<long long>(orbit.setwise_stabilizer.size()));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Quotient
// ---------------------------------------------------------------------------

struct QuotientResult {
  SComplex complex;                            // vertices are orbit ids
  std::vector<int> vertex_to_orbit;            // -1 for unused vertices of K
  std::vector<std::vector<int>> orbit_to_vertices;
};

// Quotient by the group action. Checks R1 first, then detects multigraph
// collapses (possible when R2 fails), then requires R2. With R1 and R2
// both holding the result is always a genuine simplicial complex.
inline QuotientResult quotient(const GComplex& x) {
  if (auto w = find_r1_violation(x)) {
    fail(ErrorKind::NotRegular,
         "quotient requires R1: vertex " + std::to_string(w->vertex) +
             " and its translate share a simplex");
  }
  QuotientResult q;
  q.vertex_to_orbit.assign(static_cast<std::size_t>(x.complex().num_vertices()), -1);
  for (int v : x.complex().used_vertices()) {
    if (q.vertex_to_orbit[static_cast<std::size_t>(v)] != -1) continue;
    const int orbit_id = static_cast<int>(q.orbit_to_vertices.size());
    std::vector<int> members = x.vertex_orbit(v);
    for (int u : members) q.vertex_to_orbit[static_cast<std::size_t>(u)] = orbit_id;
    q.orbit_to_vertices.push_back(std::move(members));
  }
  std::map<Simplex, Simplex> image_to_source;
  std::vector<Simplex> images;
  for (int d = 0; d <= x.complex().dim(); ++d) {
    for (const Simplex& s : x.complex().simplices(d)) {
      Simplex image;
      for (int v : s) image.push_back(q.vertex_to_orbit[static_cast<std::size_t>(v)]);
      std::sort(image.begin(), image.end());
      if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
        fail(ErrorKind::MultiEdge,
             "simplex collapses onto a repeated quotient vertex");
      }
      auto [it, inserted] = image_to_source.emplace(image, s);
      if (!inserted) {
        // Same quotient simplex from two upstairs simplices: fine inside
        // one orbit, a multigraph otherwise.
        bool same_orbit = false;
        for (std::size_t e = 0; e < x.group().order(); ++e) {
          if (x.act_simplex(static_cast<int>(e), it->second) == s) {
            same_orbit = true;
            break;
          }
        }
        if (!same_orbit) {
          fail(ErrorKind::MultiEdge,
               "distinct simplex orbits collapse to one quotient simplex");
        }
      } else {
        images.push_back(image);
      }
    }
  }
  if (auto w = find_r2_violation(x)) {
    fail(ErrorKind::NotRegular,
         "quotient requires R2: translates of a simplex span a simplex no "
         "single element realizes");
  }
  q.complex = SComplex::from_maximal(static_cast<int>(q.orbit_to_vertices.size()), images);
  return q;
}

// ---------------------------------------------------------------------------
// Fixed subcomplexes and saturations
// ---------------------------------------------------------------------------

// K^H: all simplices fixed pointwise by the subgroup (vertices fixed by
// every element of H). Keeps the ambient vertex indexing.
inline SComplex fixed_subcomplex(const GComplex& x, const Subgroup& h) {
  for (int e : h) {
    require_internal(e >= 0 && e < static_cast<int>(x.group().order()),
                     "subgroup element index out of range");
  }
  std::vector<int> fixed;
  for (int v : x.complex().used_vertices()) {
    bool ok = true;
    for (int e : h) {
      if (x.act_vertex(e, v) != v) {
        ok = false;
        break;
      }
    }
    if (ok) fixed.push_back(v);
  }
  return full_subcomplex(x.complex(), fixed);
}

// GA: union of all translates of a subcomplex.
inline SComplex saturation(const GComplex& x, const SComplex& a) {
  if (!is_subcomplex(x.complex(), a)) {
    fail(ErrorKind::NotASubcomplex, "saturation input is not a subcomplex");
  }
  std::vector<Simplex> translated;
  for (int d = 0; d <= a.dim(); ++d) {
    for (const Simplex& s : a.simplices(d)) {
      for (std::size_t e = 0; e < x.group().order(); ++e) {
        translated.push_back(x.act_simplex(static_cast<int>(e), s));
      }
    }
  }
  return SComplex::from_maximal(x.complex().num_vertices(), translated);
}

// ---------------------------------------------------------------------------
// Vertex-star nerve
// ---------------------------------------------------------------------------

struct NerveResult {
  GComplex nerve;
  // (nerve vertex, complex vertex) pairs; a G-isomorphism of complexes.
  std::vector<std::pair<int, int>> isomorphism;
};

// Nerve of the cover by open vertex stars. Stars of v_0..v_k intersect
// exactly when {v_0..v_k} spans a simplex, so the nerve is isomorphic to
// the complex itself; the intersection test below still computes honestly.
inline NerveResult star_cover_nerve(const GComplex& x) {
  if (auto w = find_r1_violation(x)) {
    fail(ErrorKind::NotRegular, "star cover nerve requires R1");
  }
  if (auto w = find_r2_violation(x)) {
    fail(ErrorKind::NotRegular, "star cover nerve requires R2");
  }
  const std::vector<int> verts = x.complex().used_vertices();
  std::map<int, int> dense;  // complex vertex -> nerve vertex
  for (std::size_t i = 0; i < verts.size(); ++i) {
    dense[verts[i]] = static_cast<int>(i);
  }
  // Star of v = ids of simplices containing v.
  const std::vector<Simplex> all = x.complex().all_simplices();
  std::map<int, std::set<int>> star;
  for (std::size_t sid = 0; sid < all.size(); ++sid) {
    for (int v : all[sid]) star[v].insert(static_cast<int>(sid));
  }
  // Candidate tuples with a common star are exactly the simplices of the
  // complex: any witness simplex contains all tuple members.
  std::vector<Simplex> nerve_simplices;
  for (const Simplex& s : all) {
    std::set<int> common = star[s[0]];
    for (std::size_t i = 1; i < s.size(); ++i) {
      std::set<int> next;
      std::set_intersection(common.begin(), common.end(), star[s[i]].begin(),
                            star[s[i]].end(), std::inserter(next, next.begin()));
      common = std::move(next);
    }
    require_internal(!common.empty(), "simplex vertices must share their star");
    Simplex nerve_simplex;
    for (int v : s) nerve_simplex.push_back(dense.at(v));
    std::sort(nerve_simplex.begin(), nerve_simplex.end());
    nerve_simplices.push_back(std::move(nerve_simplex));
  }
  SComplex nerve_complex =
      SComplex::from_maximal(static_cast<int>(verts.size()), nerve_simplices);
  std::vector<Perm> generator_images;
  for (std::size_t gi = 0; gi < x.group().generators().size(); ++gi) {
    const int e = x.group().element_index(x.group().generators()[gi]);
    std::vector<int> images(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) {
      images[i] = dense.at(x.act_vertex(e, verts[i]));
    }
    generator_images.push_back(Perm::from_images(std::move(images)));
  }
  NerveResult result{
      GComplex::build_action(std::move(nerve_complex), x.group(), generator_images),
      {}};
  for (std::size_t i = 0; i < verts.size(); ++i) {
    result.isomorphism.emplace_back(static_cast<int>(i), verts[i]);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Subdivision with induced action, and regularization
// ---------------------------------------------------------------------------

struct GSubdivision {
  GComplex complex;
  std::vector<Simplex> vertex_to_face;    // sd vertex -> parent face
  std::map<Simplex, int> face_to_vertex;  // parent face -> sd vertex
};

inline GSubdivision subdivide_action(const GComplex& x) {
  Subdivision sd = barycentric_subdivision(x.complex());
  std::vector<Perm> generator_images;
  for (std::size_t gi = 0; gi < x.group().generators().size(); ++gi) {
    const int e = x.group().element_index(x.group().generators()[gi]);
    std::vector<int> images(sd.vertex_to_face.size());
    for (std::size_t i = 0; i < sd.vertex_to_face.size(); ++i) {
      images[i] = sd.face_to_vertex.at(x.act_simplex(e, sd.vertex_to_face[i]));
    }
    generator_images.push_back(Perm::from_images(std::move(images)));
  }
  GSubdivision out{
      GComplex::build_action(std::move(sd.complex), x.group(), generator_images),
      std::move(sd.vertex_to_face), std::move(sd.face_to_vertex)};
  return out;
}

// Subdivides once if R1 already holds, twice otherwise; the result always
// passes R1, R2 and R3. A third subdivision is never needed.
inline GComplex regularize(const GComplex& x) {
  RegularityReport initial = check_regularity(x);
  if (initial.strictly_regular()) return x;
  GComplex result = subdivide_action(x).complex;
  if (!initial.r1) result = subdivide_action(result).complex;
  RegularityReport final_report = check_regularity(result);
  require_internal(final_report.strictly_regular(),
                   "subdivision did not regularize the action");
  return result;
}

}  // namespace equicov
