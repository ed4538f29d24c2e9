// Group actions on closed orientable surfaces: Riemann-Hurwitz arithmetic,
// generating vectors for branched covers, vertex-count and covering-type
// bounds, and an explicit equivariant triangulation of the total space of a
// branched cover built from voltages on the quotient triangulation.
#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "equicov/complex.hpp"
#include "equicov/errors.hpp"
#include "equicov/gcomplex.hpp"
#include "equicov/group.hpp"

namespace equicov {

using Rational = boost::rational<long long>;

// Branching data of a group action on a surface: the genus of the orbit
// surface, the order of the group, and the branch point periods.
struct BranchingData {
  long long quotient_genus = 0;
  long long group_order = 1;
  std::vector<long long> periods;  // each >= 2 and dividing group_order

  long long branch_count() const { return static_cast<long long>(periods.size()); }

  bool operator==(const BranchingData&) const = default;
};

inline void validate_branching_data(const BranchingData& d) {
  if (d.quotient_genus < 0) {
    fail(ErrorKind::ParseError, "quotient genus must be nonnegative");
  }
  if (d.group_order < 1) {
    fail(ErrorKind::ParseError, "group order must be positive");
  }
  for (long long p : d.periods) {
    if (p < 2) {
      fail(ErrorKind::ParseError,
           "branch period " + std::to_string(p) + " must be at least 2");
    }
    if (d.group_order % p != 0) {
      fail(ErrorKind::ParseError,
           "branch period " + std::to_string(p) + " does not divide the group order " +
               std::to_string(d.group_order));
    }
  }
}

// Genus of the total surface of a branched cover with the given data:
// g = 1 + m(g' - 1) + (m/2) * sum(1 - 1/m_j). Exact rational so callers can
// detect inadmissible data instead of silently rounding.
inline Rational rh_genus(const BranchingData& d) {
  validate_branching_data(d);
  Rational excess(0);
  for (long long p : d.periods) excess += Rational(1) - Rational(1, p);
  return Rational(1) + Rational(d.group_order) * (Rational(d.quotient_genus) - Rational(1)) +
         Rational(d.group_order, 2) * excess;
}

// Inverse direction: genus of the orbit surface given the total genus.
inline Rational rh_quotient_genus(long long total_genus, long long group_order,
                                  const std::vector<long long>& periods) {
  if (total_genus < 0) {
    fail(ErrorKind::ParseError, "total genus must be nonnegative");
  }
  BranchingData probe{0, group_order, periods};
  validate_branching_data(probe);
  Rational excess(0);
  for (long long p : periods) excess += Rational(1) - Rational(1, p);
  return Rational(1) + Rational(total_genus - 1, group_order) - excess / 2;
}

// A generating vector for (G, data): elements a_1,b_1,...,a_h,b_h (handles,
// interleaved) and c_1,...,c_r (one per branch point, order exactly the
// period) with prod [a_i,b_i] * prod c_j = 1 and all together generating G.
struct GeneratingVector {
  std::vector<Perm> handles;          // a_1, b_1, ..., a_h, b_h
  std::vector<Perm> branch_elements;  // c_1, ..., c_r
};

inline bool is_valid_generating_vector(const PermGroup& g, const BranchingData& d,
                                       const GeneratingVector& gv,
                                       std::string* why = nullptr) {
  auto no = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  validate_branching_data(d);
  if (static_cast<long long>(g.order()) != d.group_order) {
    return no("group order " + std::to_string(g.order()) +
              " does not match the branching data order " + std::to_string(d.group_order));
  }
  if (static_cast<long long>(gv.handles.size()) != 2 * d.quotient_genus) {
    return no("expected " + std::to_string(2 * d.quotient_genus) +
              " handle elements, got " + std::to_string(gv.handles.size()));
  }
  if (gv.branch_elements.size() != d.periods.size()) {
    return no("expected " + std::to_string(d.periods.size()) + " branch elements, got " +
              std::to_string(gv.branch_elements.size()));
  }
  std::vector<int> indices;
  for (const Perm& p : gv.handles) {
    const int i = g.element_index(p);
    if (i < 0) return no("handle element " + p.to_cycle_string() + " is not in the group");
    indices.push_back(i);
  }
  for (std::size_t j = 0; j < gv.branch_elements.size(); ++j) {
    const Perm& p = gv.branch_elements[j];
    const int i = g.element_index(p);
    if (i < 0) return no("branch element " + p.to_cycle_string() + " is not in the group");
    if (p.order() != d.periods[j]) {
      return no("branch element " + std::to_string(j) + " has order " +
                std::to_string(p.order()) + ", period requires " +
                std::to_string(d.periods[j]));
    }
    indices.push_back(i);
  }
  Perm prod = Perm::identity(g.degree());
  for (std::size_t i = 0; i + 1 < gv.handles.size(); i += 2) {
    const Perm& a = gv.handles[i];
    const Perm& b = gv.handles[i + 1];
    prod = prod * a * b * a.inverse() * b.inverse();
  }
  for (const Perm& c : gv.branch_elements) prod = prod * c;
  if (!prod.is_identity()) {
    return no("surface relation fails: product of commutators and branch elements is " +
              prod.to_cycle_string());
  }
  const GroupTable table = build_group_table(g);
  if (subgroup_closure(table, indices).size() != g.order()) {
    return no("the vector generates a proper subgroup");
  }
  return true;
}

inline constexpr long long kDefaultSearchBudget = 1'000'000;

// Deterministic backtracking search for a generating vector. Candidates are
// tried by (element order, element index); branch slots only range over
// elements of the exact period, and the final branch element is forced by
// the surface relation instead of searched. Returns the first vector found,
// or nothing when the whole space is exhausted (a certified absence).
inline std::optional<GeneratingVector> find_generating_vector(
    const PermGroup& g, long long quotient_genus, const std::vector<long long>& periods,
    long long node_budget = kDefaultSearchBudget) {
  BranchingData d{quotient_genus, static_cast<long long>(g.order()), periods};
  validate_branching_data(d);

  const int n = static_cast<int>(g.order());
  const GroupTable table = build_group_table(g);
  std::vector<long long> ord(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ord[static_cast<std::size_t>(i)] = g.element(i).order();

  std::vector<int> by_order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) by_order[static_cast<std::size_t>(i)] = i;
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](int a, int b) { return ord[static_cast<std::size_t>(a)] <
                                              ord[static_cast<std::size_t>(b)]; });

  const std::size_t r = periods.size();
  std::vector<std::vector<int>> branch_candidates(r);
  for (std::size_t j = 0; j < r; ++j) {
    for (int i = 0; i < n; ++i) {
      if (ord[static_cast<std::size_t>(i)] == periods[j]) branch_candidates[j].push_back(i);
    }
    if (branch_candidates[j].empty()) return std::nullopt;  // no element of that order
  }

  const std::size_t handle_slots = static_cast<std::size_t>(2 * quotient_genus);
  // The last branch element is determined by the relation, so it is not a
  // search slot.
  const std::size_t free_branch_slots = r == 0 ? 0 : r - 1;
  const std::size_t total_slots = handle_slots + free_branch_slots;

  std::vector<int> chosen(total_slots + (r > 0 ? 1 : 0), 0);
  long long nodes = 0;

  auto mul = [&](int a, int b) {
    return table.product[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  };
  auto inv = [&](int a) { return table.inverse[static_cast<std::size_t>(a)]; };

  auto accept = [&](int running) -> bool {
    ++nodes;
    if (nodes > node_budget) {
      fail(ErrorKind::SearchBudgetExceeded,
           "generating vector search exceeded " + std::to_string(node_budget) + " nodes");
    }
    if (r > 0) {
      const int forced = inv(running);
      if (ord[static_cast<std::size_t>(forced)] != periods[r - 1]) return false;
      chosen[total_slots] = forced;
    } else if (running != 0) {
      return false;
    }
    std::vector<int> seed(chosen.begin(), chosen.end());
    return subgroup_closure(table, seed).size() == g.order();
  };

  // DFS over slots; `running` is the partial product of completed commutator
  // blocks and branch elements.
  auto dfs = [&](auto&& self, std::size_t slot, int running) -> bool {
    if (slot == total_slots) return accept(running);
    ++nodes;
    if (nodes > node_budget) {
      fail(ErrorKind::SearchBudgetExceeded,
           "generating vector search exceeded " + std::to_string(node_budget) + " nodes");
    }
    if (slot < handle_slots) {
      for (int cand : by_order) {
        chosen[slot] = cand;
        int next = running;
        if (slot % 2 == 1) {
          const int a = chosen[slot - 1];
          const int commutator = mul(mul(a, cand), mul(inv(a), inv(cand)));
          next = mul(running, commutator);
        }
        if (self(self, slot + 1, next)) return true;
      }
      return false;
    }
    const std::size_t j = slot - handle_slots;
    for (int cand : branch_candidates[j]) {
      chosen[slot] = cand;
      if (self(self, slot + 1, mul(running, cand))) return true;
    }
    return false;
  };

  if (!dfs(dfs, 0, 0)) return std::nullopt;

  GeneratingVector gv;
  for (std::size_t i = 0; i < handle_slots; ++i) gv.handles.push_back(g.element(chosen[i]));
  for (std::size_t j = 0; j < r; ++j) {
    gv.branch_elements.push_back(g.element(chosen[handle_slots + j]));
  }
  std::string why;
  require_internal(is_valid_generating_vector(g, d, gv, &why),
                   "search returned an invalid generating vector");
  return gv;
}

// Minimal vertex count of a triangulation of the closed surface with the
// given genus (orientable) or crosscap number: the smallest n >= 4 with
// n(n - 7) >= -6 chi, bumped by one for the three exceptional surfaces
// (orientable genus 2, crosscap numbers 2 and 3).
inline long long jungerman_ringel(long long genus, bool orientable) {
  if (orientable && genus < 0) {
    fail(ErrorKind::ParseError, "genus must be nonnegative");
  }
  if (!orientable && genus < 1) {
    fail(ErrorKind::ParseError, "crosscap number must be positive");
  }
  const long long chi = orientable ? 2 - 2 * genus : 2 - genus;
  long long n = 4;
  while (n * n - 7 * n + 6 * chi < 0) ++n;
  const bool exceptional =
      (orientable && genus == 2) || (!orientable && (genus == 2 || genus == 3));
  return exceptional ? n + 1 : n;
}

// Bounds on the minimal number of vertex orbits of an invariant
// triangulation and on the equivariant covering type, from the branching
// data alone.
struct SurfaceBoundsReport {
  BranchingData data;
  long long total_genus = 0;           // genus of the covering surface
  long long quotient_vertex_floor = 0; // minimal triangulation of the orbit surface
  long long vertex_orbits_min = 0;     // max(floor, branch count)
  long long vertex_orbits_max = 0;     // min + C(r,2) + C(r,3)
  long long covering_type_min = 0;
  long long covering_type_max = 0;
  // The lower covering-type bound switches to 9 when the orbit surface has
  // genus 2, where the minimal triangulation bound is not tight.
  bool covering_min_from_genus_two = false;
};

inline SurfaceBoundsReport surface_orbit_bounds(const BranchingData& d) {
  const Rational g = rh_genus(d);
  if (g.denominator() != 1 || g.numerator() < 0) {
    fail(ErrorKind::ParseError,
         "branching data does not describe a surface action: total genus " +
             std::to_string(g.numerator()) + "/" + std::to_string(g.denominator()));
  }
  SurfaceBoundsReport report;
  report.data = d;
  report.total_genus = g.numerator();
  report.quotient_vertex_floor = jungerman_ringel(d.quotient_genus, true);
  const long long r = d.branch_count();
  report.vertex_orbits_min = std::max(report.quotient_vertex_floor, r);
  const long long pairs = r * (r - 1) / 2;
  const long long triples = r * (r - 1) * (r - 2) / 6;
  report.vertex_orbits_max = report.vertex_orbits_min + pairs + triples;
  report.covering_min_from_genus_two = d.quotient_genus == 2;
  report.covering_type_min =
      report.covering_min_from_genus_two ? 9 : report.quotient_vertex_floor;
  report.covering_type_max = report.vertex_orbits_max;
  return report;
}

// Closed-form equivariant LS-category style invariant for surface actions,
// covering the cases where the branching pattern pins it down exactly.
inline long long surface_cat_g(const BranchingData& d, bool free_action) {
  validate_branching_data(d);
  const long long r = d.branch_count();
  if (free_action && r != 0) {
    fail(ErrorKind::CaseNotCovered, "a free action admits no branch points");
  }
  if (r >= 3) return r;
  if (r == 2 && d.quotient_genus == 0) return 2;
  if (d.quotient_genus >= 1) return 3;
  fail(ErrorKind::CaseNotCovered,
       "no closed form for " + std::to_string(r) +
           " branch points over a genus-" + std::to_string(d.quotient_genus) +
           " orbit surface");
}

// Subdivides a surface triangulation just enough that no two branch
// vertices span a simplex: every edge and triangle spanned by branch
// vertices is replaced by its barycentric subdivision, and triangles with
// exactly two branch vertices are split through the shared edge midpoint.
struct ExpandResult {
  SComplex complex;
  std::vector<int> branch_vertices;  // ids carried over unchanged
  std::vector<int> added_vertices;   // subdividing vertices, appended at the end
};

inline ExpandResult expand_for_lift(const SComplex& k, const std::vector<int>& branch_vertices) {
  if (!is_closed_surface(k)) {
    fail(ErrorKind::NotASurface, "expansion requires a closed surface triangulation");
  }
  std::set<int> branch;
  for (int v : branch_vertices) {
    if (v < 0 || v >= k.num_vertices() || !k.contains(Simplex{v})) {
      fail(ErrorKind::BranchVertexMissing,
           "branch vertex " + std::to_string(v) + " is not a vertex of the complex");
    }
    if (!branch.insert(v).second) {
      fail(ErrorKind::ParseError, "repeated branch vertex " + std::to_string(v));
    }
  }

  auto all_branch = [&](const Simplex& s) {
    return std::all_of(s.begin(), s.end(), [&](int v) { return branch.count(v) > 0; });
  };
  std::map<Simplex, int> face_vertex;  // spanned edge or triangle -> new vertex
  int next_id = k.num_vertices();
  std::vector<int> added;
  for (int d = 1; d <= 2; ++d) {
    for (const Simplex& s : k.simplices(d)) {
      if (all_branch(s)) {
        face_vertex[s] = next_id;
        added.push_back(next_id);
        ++next_id;
      }
    }
  }
  if (face_vertex.empty()) return {k, branch_vertices, {}};

  std::vector<Simplex> out_triangles;
  auto sorted3 = [](int a, int b, int c) {
    Simplex s{a, b, c};
    std::sort(s.begin(), s.end());
    return s;
  };
  for (const Simplex& tri : k.simplices(2)) {
    std::vector<Simplex> spanned_edges;
    for (int omit = 0; omit < 3; ++omit) {
      Simplex e;
      for (int i = 0; i < 3; ++i) {
        if (i != omit) e.push_back(tri[static_cast<std::size_t>(i)]);
      }
      if (face_vertex.count(e)) spanned_edges.push_back(e);
    }
    if (face_vertex.count(tri)) {
      // All three vertices branch: full barycentric subdivision.
      const int center = face_vertex.at(tri);
      for (int omit = 0; omit < 3; ++omit) {
        Simplex e;
        for (int i = 0; i < 3; ++i) {
          if (i != omit) e.push_back(tri[static_cast<std::size_t>(i)]);
        }
        const int mid = face_vertex.at(e);
        out_triangles.push_back(sorted3(e[0], mid, center));
        out_triangles.push_back(sorted3(e[1], mid, center));
      }
    } else if (spanned_edges.size() == 1) {
      // Exactly two branch vertices: split through the midpoint of the edge
      // they span.
      const Simplex& e = spanned_edges.front();
      const int mid = face_vertex.at(e);
      int apex = -1;
      for (int v : tri) {
        if (v != e[0] && v != e[1]) apex = v;
      }
      out_triangles.push_back(sorted3(apex, e[0], mid));
      out_triangles.push_back(sorted3(apex, e[1], mid));
    } else {
      // Two spanned edges without a spanned triangle would force all three
      // vertices to be branch vertices.
      require_internal(spanned_edges.empty(), "inconsistent spanned-face bookkeeping");
      out_triangles.push_back(tri);
    }
  }

  ExpandResult result{SComplex::from_maximal(next_id, out_triangles), branch_vertices, added};
  require_internal(result.complex.euler_characteristic() == k.euler_characteristic(),
                   "expansion changed the Euler characteristic");
  const auto info = is_closed_surface(result.complex);
  require_internal(info.has_value() && *info == *is_closed_surface(k),
                   "expansion changed the surface type");
  for (const Simplex& e : result.complex.simplices(1)) {
    require_internal(!(branch.count(e[0]) && branch.count(e[1])),
                     "expansion left two branch vertices adjacent");
  }
  return result;
}

inline constexpr long long kDefaultLiftBudget = 200'000;

// An equivariant triangulation of the total space of a branched cover,
// together with the projection to the quotient triangulation.
struct LiftResult {
  GComplex total;
  std::vector<int> projection;                  // total vertex -> base vertex
  std::vector<std::vector<int>> branch_fibers;  // lifted vertices over each branch vertex
  BranchingData data;                           // derived from the inputs
};

// Builds the branched cover of `base` determined by a generating vector:
// voltages on the edges of `base` are solved so the holonomy around each
// branch vertex is (a conjugate of) the matching branch element and trivial
// around every other vertex, then the derived complex is assembled and every
// promised property is re-verified on the result.
//
// pre: base is a closed orientable surface, no two branch vertices span an
// edge (run expand_for_lift first), gv is a valid generating vector for the
// branching data derived from (base, branch_vertices, group, gv).
inline LiftResult lift_triangulation(const SComplex& base,
                                     const std::vector<int>& branch_vertices,
                                     const PermGroup& group, const GeneratingVector& gv,
                                     long long node_budget = kDefaultLiftBudget) {
  const auto analysis = detail::analyze_closed_surface(base);
  if (!analysis || !analysis->info.orientable) {
    fail(ErrorKind::NotASurface, "lifting requires a closed orientable surface");
  }
  const long long quotient_genus = analysis->info.genus;

  std::set<int> branch_set;
  for (int v : branch_vertices) {
    if (v < 0 || v >= base.num_vertices() || !base.contains(Simplex{v})) {
      fail(ErrorKind::BranchVertexMissing,
           "branch vertex " + std::to_string(v) + " is not a vertex of the complex");
    }
    if (!branch_set.insert(v).second) {
      fail(ErrorKind::ParseError, "repeated branch vertex " + std::to_string(v));
    }
  }
  for (std::size_t i = 0; i < branch_vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < branch_vertices.size(); ++j) {
      Simplex e{std::min(branch_vertices[i], branch_vertices[j]),
                std::max(branch_vertices[i], branch_vertices[j])};
      if (base.contains(e)) {
        fail(ErrorKind::ParseError,
             "branch vertices " + std::to_string(e[0]) + " and " + std::to_string(e[1]) +
                 " span an edge; expand the triangulation first");
      }
    }
  }
  if (gv.branch_elements.size() != branch_vertices.size()) {
    fail(ErrorKind::InvalidGeneratingVector,
         "expected one branch element per branch vertex, got " +
             std::to_string(gv.branch_elements.size()) + " for " +
             std::to_string(branch_vertices.size()));
  }
  BranchingData data;
  data.quotient_genus = quotient_genus;
  data.group_order = static_cast<long long>(group.order());
  for (const Perm& c : gv.branch_elements) {
    if (!group.contains(c)) {
      fail(ErrorKind::InvalidGeneratingVector,
           "branch element " + c.to_cycle_string() + " is not in the group");
    }
    if (c.is_identity()) {
      fail(ErrorKind::InvalidGeneratingVector, "branch elements must be nontrivial");
    }
    data.periods.push_back(c.order());
  }
  std::string why;
  if (!is_valid_generating_vector(group, data, gv, &why)) {
    fail(ErrorKind::InvalidGeneratingVector, why);
  }

  const auto& triangles = base.simplices(2);
  const auto& edges = base.simplices(1);
  const int num_triangles = static_cast<int>(triangles.size());
  const int num_edges = static_cast<int>(edges.size());
  const std::vector<int> verts = base.used_vertices();
  std::map<Simplex, int> edge_id;
  for (int e = 0; e < num_edges; ++e) edge_id[edges[static_cast<std::size_t>(e)]] = e;

  // Primal spanning tree, rooted at the last branch vertex so the one
  // residual holonomy constraint lands on a branch point.
  const int root = branch_vertices.empty() ? verts.front() : branch_vertices.back();
  std::vector<std::vector<std::pair<int, int>>> nbr(static_cast<std::size_t>(base.num_vertices()));
  for (int e = 0; e < num_edges; ++e) {
    const Simplex& edge = edges[static_cast<std::size_t>(e)];
    nbr[static_cast<std::size_t>(edge[0])].push_back({edge[1], e});
    nbr[static_cast<std::size_t>(edge[1])].push_back({edge[0], e});
  }
  for (auto& list : nbr) std::sort(list.begin(), list.end());
  std::vector<int> parent_edge(static_cast<std::size_t>(base.num_vertices()), -1);
  std::vector<int> depth(static_cast<std::size_t>(base.num_vertices()), -1);
  std::vector<char> edge_in_primal(static_cast<std::size_t>(num_edges), 0);
  {
    std::vector<int> queue{root};
    depth[static_cast<std::size_t>(root)] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int v = queue[qi];
      for (const auto& [u, e] : nbr[static_cast<std::size_t>(v)]) {
        if (depth[static_cast<std::size_t>(u)] != -1) continue;
        depth[static_cast<std::size_t>(u)] = depth[static_cast<std::size_t>(v)] + 1;
        parent_edge[static_cast<std::size_t>(u)] = e;
        edge_in_primal[static_cast<std::size_t>(e)] = 1;
        queue.push_back(u);
      }
    }
    require_internal(queue.size() == verts.size(), "surface 1-skeleton is disconnected");
  }

  // Dual spanning tree among the edges the primal tree does not use; the
  // leftover edges represent the 2 * genus handle loops.
  std::vector<char> edge_in_dual(static_cast<std::size_t>(num_edges), 0);
  {
    std::vector<char> tri_seen(static_cast<std::size_t>(num_triangles), 0);
    std::vector<int> queue{0};
    tri_seen[0] = 1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int t = queue[qi];
      const Simplex& tri = triangles[static_cast<std::size_t>(t)];
      for (int omit = 2; omit >= 0; --omit) {
        Simplex e;
        for (int i = 0; i < 3; ++i) {
          if (i != omit) e.push_back(tri[static_cast<std::size_t>(i)]);
        }
        const int eid = edge_id.at(e);
        if (edge_in_primal[static_cast<std::size_t>(eid)]) continue;
        const auto& pair = analysis->edge_triangles.at(e);
        const int other = pair[0] == t ? pair[1] : pair[0];
        if (tri_seen[static_cast<std::size_t>(other)]) continue;
        tri_seen[static_cast<std::size_t>(other)] = 1;
        edge_in_dual[static_cast<std::size_t>(eid)] = 1;
        queue.push_back(other);
      }
    }
    require_internal(queue.size() == static_cast<std::size_t>(num_triangles),
                     "dual graph disconnected after removing the primal tree");
  }
  std::vector<int> handle_edges;
  for (int e = 0; e < num_edges; ++e) {
    if (!edge_in_primal[static_cast<std::size_t>(e)] &&
        !edge_in_dual[static_cast<std::size_t>(e)]) {
      handle_edges.push_back(e);
    }
  }
  require_internal(static_cast<long long>(handle_edges.size()) == 2 * quotient_genus,
                   "tree-cotree split left the wrong number of handle edges");

  // Rotation walk around each vertex: the dual cycle through the incident
  // triangles, recording each crossed edge with its direction relative to
  // the canonical arc (lower triangle id -> higher).
  struct WalkStep {
    int edge;
    int sign;  // +1 when crossed along the canonical arc
  };
  std::vector<std::vector<WalkStep>> walk(static_cast<std::size_t>(base.num_vertices()));
  {
    std::vector<std::vector<int>> tris_at(static_cast<std::size_t>(base.num_vertices()));
    for (int t = 0; t < num_triangles; ++t) {
      for (int v : triangles[static_cast<std::size_t>(t)]) {
        tris_at[static_cast<std::size_t>(v)].push_back(t);
      }
    }
    for (int v : verts) {
      const int start = tris_at[static_cast<std::size_t>(v)].front();
      int t = start;
      const std::size_t degree = tris_at[static_cast<std::size_t>(v)].size();
      for (std::size_t step = 0; step < degree; ++step) {
        const Simplex& tri = triangles[static_cast<std::size_t>(t)];
        const std::array<int, 3> cyc =
            detail::oriented_cycle(tri, analysis->parity[static_cast<std::size_t>(t)]);
        int pos = 0;
        while (cyc[static_cast<std::size_t>(pos)] != v) ++pos;
        const int exit_partner = cyc[static_cast<std::size_t>((pos + 2) % 3)];
        Simplex e{std::min(v, exit_partner), std::max(v, exit_partner)};
        const int eid = edge_id.at(e);
        const auto& pair = analysis->edge_triangles.at(e);
        const int other = pair[0] == t ? pair[1] : pair[0];
        walk[static_cast<std::size_t>(v)].push_back({eid, t == pair[0] ? 1 : -1});
        t = other;
      }
      require_internal(t == start, "vertex rotation walk did not close");
    }
  }

  const GroupTable table = build_group_table(group);
  const int order = static_cast<int>(group.order());
  auto mul = [&](int a, int b) {
    return table.product[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  };
  auto inv = [&](int a) { return table.inverse[static_cast<std::size_t>(a)]; };
  std::vector<long long> element_order(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    element_order[static_cast<std::size_t>(i)] = group.element(i).order();
  }

  // Non-root holonomy targets: every conjugate of c_j and of its inverse,
  // in first-occurrence order so c_j itself is tried first.
  const std::size_t r = branch_vertices.size();
  std::vector<std::vector<int>> target_candidates(r == 0 ? 0 : r - 1);
  for (std::size_t j = 0; j + 1 < r; ++j) {
    const int c = group.element_index(gv.branch_elements[j]);
    std::vector<int> seen;
    auto push_class = [&](int rep) {
      for (int h = 0; h < order; ++h) {
        const int conj = mul(mul(h, rep), inv(h));
        if (std::find(seen.begin(), seen.end(), conj) == seen.end()) seen.push_back(conj);
      }
    };
    push_class(c);
    push_class(inv(c));
    target_candidates[j] = std::move(seen);
  }

  // Handle-edge candidates: the generating vector's own handle element
  // first, then every other element. For abelian groups the first leaf is
  // always accepted; the search only matters beyond that.
  std::vector<std::vector<int>> handle_candidates(handle_edges.size());
  for (std::size_t i = 0; i < handle_edges.size(); ++i) {
    const int preferred = group.element_index(gv.handles[i]);
    handle_candidates[i].push_back(preferred);
    for (int e = 0; e < order; ++e) {
      if (e != preferred) handle_candidates[i].push_back(e);
    }
  }

  std::vector<int> elimination_order;
  for (int v : verts) {
    if (v != root) elimination_order.push_back(v);
  }
  std::stable_sort(elimination_order.begin(), elimination_order.end(), [&](int a, int b) {
    return depth[static_cast<std::size_t>(a)] > depth[static_cast<std::size_t>(b)];
  });

  std::vector<int> voltage(static_cast<std::size_t>(num_edges), -1);
  std::vector<int> target(static_cast<std::size_t>(base.num_vertices()), 0);
  const long long root_period = r == 0 ? 1 : data.periods.back();

  auto solve_leaf = [&](const std::vector<int>& targets_chosen,
                        const std::vector<int>& handles_chosen) -> bool {
    std::fill(voltage.begin(), voltage.end(), -1);
    for (int e = 0; e < num_edges; ++e) {
      if (edge_in_dual[static_cast<std::size_t>(e)]) voltage[static_cast<std::size_t>(e)] = 0;
    }
    for (std::size_t i = 0; i < handle_edges.size(); ++i) {
      voltage[static_cast<std::size_t>(handle_edges[i])] = handles_chosen[i];
    }
    std::fill(target.begin(), target.end(), 0);
    for (std::size_t j = 0; j + 1 < r; ++j) {
      target[static_cast<std::size_t>(branch_vertices[j])] = targets_chosen[j];
    }
    // Bottom-up elimination: at each non-root vertex the only unknown in
    // its rotation walk is the parent edge, solved exactly.
    for (int v : elimination_order) {
      int unknown_pos = -1;
      const auto& steps = walk[static_cast<std::size_t>(v)];
      for (std::size_t i = 0; i < steps.size(); ++i) {
        if (voltage[static_cast<std::size_t>(steps[i].edge)] == -1) {
          require_internal(unknown_pos == -1, "more than one unknown in a vertex walk");
          unknown_pos = static_cast<int>(i);
        }
      }
      require_internal(unknown_pos >= 0 &&
                           steps[static_cast<std::size_t>(unknown_pos)].edge ==
                               parent_edge[static_cast<std::size_t>(v)],
                       "unknown edge in a vertex walk is not the parent edge");
      int before = 0;
      for (int i = 0; i < unknown_pos; ++i) {
        const auto& s = steps[static_cast<std::size_t>(i)];
        const int val = voltage[static_cast<std::size_t>(s.edge)];
        before = mul(before, s.sign > 0 ? val : inv(val));
      }
      int after = 0;
      for (std::size_t i = static_cast<std::size_t>(unknown_pos) + 1; i < steps.size(); ++i) {
        const auto& s = steps[i];
        const int val = voltage[static_cast<std::size_t>(s.edge)];
        after = mul(after, s.sign > 0 ? val : inv(val));
      }
      const int rhs =
          mul(mul(inv(before), target[static_cast<std::size_t>(v)]), inv(after));
      const auto& unknown = steps[static_cast<std::size_t>(unknown_pos)];
      voltage[static_cast<std::size_t>(unknown.edge)] = unknown.sign > 0 ? rhs : inv(rhs);
    }
    int residual = 0;
    for (const auto& s : walk[static_cast<std::size_t>(root)]) {
      const int val = voltage[static_cast<std::size_t>(s.edge)];
      residual = mul(residual, s.sign > 0 ? val : inv(val));
    }
    if (r == 0) {
      if (residual != 0) return false;
    } else if (element_order[static_cast<std::size_t>(residual)] != root_period) {
      return false;
    }
    // Connectivity of the cover: the voltages must generate the group.
    std::vector<int> seed(voltage.begin(), voltage.end());
    return subgroup_closure(table, seed).size() == group.order();
  };

  long long nodes = 0;
  std::vector<int> targets_chosen(r == 0 ? 0 : r - 1, 0);
  std::vector<int> handles_chosen(handle_edges.size(), 0);
  bool solved = false;
  auto dfs = [&](auto&& self, std::size_t slot) -> bool {
    ++nodes;
    if (nodes > node_budget) {
      fail(ErrorKind::SearchBudgetExceeded,
           "voltage search exceeded " + std::to_string(node_budget) + " nodes");
    }
    if (slot < targets_chosen.size()) {
      for (int cand : target_candidates[slot]) {
        targets_chosen[slot] = cand;
        if (self(self, slot + 1)) return true;
      }
      return false;
    }
    const std::size_t h = slot - targets_chosen.size();
    if (h < handles_chosen.size()) {
      for (int cand : handle_candidates[h]) {
        handles_chosen[h] = cand;
        if (self(self, slot + 1)) return true;
      }
      return false;
    }
    return solve_leaf(targets_chosen, handles_chosen);
  };
  solved = dfs(dfs, 0);
  if (!solved) {
    fail(ErrorKind::VerificationFailed,
         "no voltage assignment realizes the requested branched cover");
  }

  // Derived complex: |G| copies of every triangle, corners glued across
  // each edge by its voltage; lifted vertices are the corner classes.
  detail::UnionFind uf(static_cast<std::size_t>(3 * num_triangles * order));
  auto corner_copy = [&](int t, int pos, int g) { return (3 * t + pos) * order + g; };
  for (int eid = 0; eid < num_edges; ++eid) {
    const Simplex& e = edges[static_cast<std::size_t>(eid)];
    const auto& pair = analysis->edge_triangles.at(e);
    const int t0 = pair[0], t1 = pair[1];
    const int a = voltage[static_cast<std::size_t>(eid)];
    for (int endpoint : e) {
      const Simplex& tri0 = triangles[static_cast<std::size_t>(t0)];
      const Simplex& tri1 = triangles[static_cast<std::size_t>(t1)];
      const int p0 = static_cast<int>(std::lower_bound(tri0.begin(), tri0.end(), endpoint) -
                                      tri0.begin());
      const int p1 = static_cast<int>(std::lower_bound(tri1.begin(), tri1.end(), endpoint) -
                                      tri1.begin());
      for (int g = 0; g < order; ++g) {
        uf.unite(corner_copy(t0, p0, g), corner_copy(t1, p1, mul(g, a)));
      }
    }
  }
  std::vector<int> class_of(static_cast<std::size_t>(3 * num_triangles * order), -1);
  std::vector<int> projection;
  int lifted_vertices = 0;
  for (int t = 0; t < num_triangles; ++t) {
    for (int pos = 0; pos < 3; ++pos) {
      for (int g = 0; g < order; ++g) {
        const std::size_t rep = static_cast<std::size_t>(uf.find(corner_copy(t, pos, g)));
        if (class_of[rep] == -1) {
          class_of[rep] = lifted_vertices++;
          projection.push_back(triangles[static_cast<std::size_t>(t)][static_cast<std::size_t>(pos)]);
        }
      }
    }
  }
  auto lifted_id = [&](int t, int pos, int g) {
    return class_of[static_cast<std::size_t>(uf.find(corner_copy(t, pos, g)))];
  };
  std::vector<Simplex> lifted_triangles;
  for (int t = 0; t < num_triangles; ++t) {
    for (int g = 0; g < order; ++g) {
      Simplex s{lifted_id(t, 0, g), lifted_id(t, 1, g), lifted_id(t, 2, g)};
      std::sort(s.begin(), s.end());
      require_internal(s[0] != s[1] && s[1] != s[2],
                       "lifted triangle has identified corners");
      lifted_triangles.push_back(std::move(s));
    }
  }
  SComplex total_complex = SComplex::from_maximal(lifted_vertices, lifted_triangles);

  std::vector<Perm> generator_images;
  for (const Perm& gen : group.generators()) {
    const int gi = group.element_index(gen);
    std::vector<int> image(static_cast<std::size_t>(lifted_vertices), -1);
    for (int t = 0; t < num_triangles; ++t) {
      for (int pos = 0; pos < 3; ++pos) {
        for (int g = 0; g < order; ++g) {
          const int from = lifted_id(t, pos, g);
          const int to = lifted_id(t, pos, mul(gi, g));
          if (image[static_cast<std::size_t>(from)] == -1) {
            image[static_cast<std::size_t>(from)] = to;
          } else if (image[static_cast<std::size_t>(from)] != to) {
            fail(ErrorKind::VerificationFailed,
                 "left translation is not well defined on lifted vertices");
          }
        }
      }
    }
    generator_images.push_back(Perm::from_images(image));
  }
  GComplex total = GComplex::build_action(std::move(total_complex), group, generator_images);

  // Verification battery: every property promised by the construction is
  // recomputed on the result.
  auto verify = [](bool ok, const std::string& what) {
    if (!ok) fail(ErrorKind::VerificationFailed, "lift verification failed: " + what);
  };
  const RegularityReport reg = check_regularity(total);
  verify(reg.strictly_regular(), "the lifted action is not strictly regular");

  const QuotientResult q = quotient(total);
  {
    std::map<int, int> orbit_to_base;
    std::set<int> hit;
    for (std::size_t o = 0; o < q.orbit_to_vertices.size(); ++o) {
      const int base_vertex = projection[static_cast<std::size_t>(q.orbit_to_vertices[o][0])];
      for (int member : q.orbit_to_vertices[o]) {
        verify(projection[static_cast<std::size_t>(member)] == base_vertex,
               "a vertex orbit projects to two different base vertices");
      }
      orbit_to_base[static_cast<int>(o)] = base_vertex;
      verify(hit.insert(base_vertex).second, "two vertex orbits project to one base vertex");
    }
    verify(hit.size() == verts.size(), "vertex orbits do not cover the base vertices");
    std::vector<Simplex> relabeled;
    for (const Simplex& s : q.complex.all_simplices()) {
      Simplex image;
      for (int v : s) image.push_back(orbit_to_base.at(v));
      std::sort(image.begin(), image.end());
      relabeled.push_back(std::move(image));
    }
    std::sort(relabeled.begin(), relabeled.end());
    std::vector<Simplex> expected = base.all_simplices();
    std::sort(expected.begin(), expected.end());
    verify(relabeled == expected, "the quotient is not isomorphic to the base");
  }

  long long branching_defect = 0;
  for (long long p : data.periods) branching_defect += data.group_order - data.group_order / p;
  verify(total.complex().euler_characteristic() ==
             data.group_order * base.euler_characteristic() - branching_defect,
         "Euler characteristic does not match the branching data");

  const Rational expected_genus = rh_genus(data);
  verify(expected_genus.denominator() == 1, "branching data yields a fractional genus");
  const auto total_info = is_closed_surface(total.complex());
  verify(total_info.has_value(), "the lift is not a closed surface");
  verify(total_info->orientable, "the lift is not orientable");
  verify(total_info->genus == expected_genus.numerator(),
         "the lift has the wrong genus");

  const EquivariantFVector ef = equivariant_f_vector(total);
  verify(ef.orbit_counts[0] == static_cast<long long>(verts.size()),
         "vertex orbit count does not match the base vertex count");

  std::vector<std::vector<int>> branch_fibers(branch_vertices.size());
  {
    std::map<int, std::vector<int>> fiber;
    for (int v = 0; v < lifted_vertices; ++v) {
      fiber[projection[static_cast<std::size_t>(v)]].push_back(v);
    }
    for (int v : verts) {
      const auto it = std::find(branch_vertices.begin(), branch_vertices.end(), v);
      const long long expected_size =
          it == branch_vertices.end()
              ? data.group_order
              : data.group_order /
                    data.periods[static_cast<std::size_t>(it - branch_vertices.begin())];
      verify(static_cast<long long>(fiber[v].size()) == expected_size,
             "fiber over vertex " + std::to_string(v) + " has the wrong size");
      std::vector<int> orbit = total.vertex_orbit(fiber[v].front());
      std::sort(orbit.begin(), orbit.end());
      verify(orbit == fiber[v], "a fiber is not a single vertex orbit");
      if (it != branch_vertices.end()) {
        branch_fibers[static_cast<std::size_t>(it - branch_vertices.begin())] = fiber[v];
      }
    }
  }

  return LiftResult{std::move(total), std::move(projection), std::move(branch_fibers),
                    std::move(data)};
}

}  // namespace equicov
