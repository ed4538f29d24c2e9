// Exact equivariant covering type of finite G-graphs: stratification by
// orbit type on one barycentric subdivision, loop counts of the stratum
// quotients, and the per-stratum ceiling formula.
#pragma once

#include <set>
#include <string>
#include <vector>

#include "equicov/complex.hpp"
#include "equicov/errors.hpp"
#include "equicov/gcomplex.hpp"
#include "equicov/group.hpp"

namespace equicov {

// Covering type of a bouquet of h circles: ceil((3+sqrt(1+8h))/2), i.e.
// the smallest n >= 2 with C(n-1,2) >= h. For h >= 1 this n is the unique
// integer with C(n-2,2) < h <= C(n-1,2).
inline long long bouquet_ct(long long h) {
  require_internal(h >= 0, "loop count must be nonnegative");
  long long n = 2;
  while ((n - 1) * (n - 2) < 2 * h) ++n;
  return n;
}

struct StratumReport {
  OrbitType orbit_type;       // isotropy class (H) of the stratum
  SComplex stratum_subgraph;  // X'_(H), a subcomplex of the subdivided graph
  long long quotient_vertices = 0;
  long long quotient_edges = 0;
  long long quotient_components = 0;
  long long quotient_loops = 0;  // h_(H) = E - V + C of the stratum quotient
  long long contribution = 0;    // bouquet_ct(h_(H))
  bool zero_loops = false;       // audit flag: formula applied verbatim at h = 0
};

namespace detail {

inline void require_graph_and_regular(const GComplex& x) {
  if (x.complex().dim() > 1) {
    fail(ErrorKind::NotAGraph,
         "expected a complex of dimension at most 1, got dimension " +
             std::to_string(x.complex().dim()));
  }
  if (auto w = find_r1_violation(x)) {
    fail(ErrorKind::NotRegular,
         "stratification requires R1: vertex " + std::to_string(w->vertex) +
             " and its translate share an edge");
  }
  if (find_r2_violation(x)) {
    fail(ErrorKind::NotRegular,
         "stratification requires R2: translated vertex pairs span an edge "
         "no single element realizes");
  }
}

}  // namespace detail

// Strata of a regular G-graph, one per orbit type present. Computed on one
// barycentric subdivision so each stratum (cells of isotropy type exactly
// (H), minus the open star of cells of other types) is a subcomplex. The
// subdivision of a graph with R1 is strictly regular, so every stratum
// quotient is a simple graph. Strata are listed along the orbit-type
// linear extension (ascending stabilizer order).
inline std::vector<StratumReport> stratify(const GComplex& x) {
  detail::require_graph_and_regular(x);
  const GComplex sub = subdivide_action(x).complex;
  const OrbitTypePoset poset = orbit_type_poset(x.group());

  const std::vector<int> verts = sub.complex().used_vertices();
  std::map<int, int> type_of_vertex;
  std::set<int> types_present;
  for (int v : verts) {
    const int t = poset.type_index(sub.vertex_stabilizer(v));
    require_internal(t >= 0, "vertex stabilizer missing from subgroup lattice");
    type_of_vertex[v] = t;
    types_present.insert(t);
  }

  std::vector<StratumReport> out;
  for (int t : types_present) {
    StratumReport report;
    report.orbit_type = poset.types[static_cast<std::size_t>(t)];
    report.orbit_type.group = &x.group();
    std::vector<int> stratum_vertices;
    for (int v : verts) {
      if (type_of_vertex[v] == t) stratum_vertices.push_back(v);
    }
    // Full subcomplex on the type-(H) vertices: within one barycentric
    // subdivision an edge whose endpoints both have type (H) has isotropy
    // type (H) itself, and removing the open stars of other-type vertices
    // removes exactly the non-induced cells.
    report.stratum_subgraph = full_subcomplex(sub.complex(), stratum_vertices);

    // Quotient counts. The stratum is G-invariant; orbits of vertices and
    // edges give a simple graph because the ambient action is strictly
    // regular after one subdivision.
    std::map<int, int> vertex_orbit_id;
    int next_vertex_orbit = 0;
    for (int v : stratum_vertices) {
      if (vertex_orbit_id.count(v)) continue;
      for (int u : sub.vertex_orbit(v)) vertex_orbit_id[u] = next_vertex_orbit;
      ++next_vertex_orbit;
    }
    std::set<Simplex> edge_orbit_reps;
    std::set<Simplex> seen_edges;
    for (const Simplex& e : report.stratum_subgraph.simplices(1)) {
      if (seen_edges.count(e)) continue;
      std::set<Simplex> members;
      for (std::size_t el = 0; el < sub.group().order(); ++el) {
        members.insert(sub.act_simplex(static_cast<int>(el), e));
      }
      seen_edges.insert(members.begin(), members.end());
      edge_orbit_reps.insert(*members.begin());
    }
    detail::UnionFind uf(static_cast<std::size_t>(next_vertex_orbit));
    std::set<Simplex> quotient_edges;
    for (const Simplex& e : edge_orbit_reps) {
      const int a = vertex_orbit_id.at(e[0]);
      const int b = vertex_orbit_id.at(e[1]);
      require_internal(a != b, "stratum quotient produced a loop edge");
      Simplex image{std::min(a, b), std::max(a, b)};
      require_internal(quotient_edges.insert(image).second,
                       "stratum quotient produced a duplicate edge");
      uf.unite(a, b);
    }
    std::set<int> roots;
    for (int i = 0; i < next_vertex_orbit; ++i) roots.insert(uf.find(i));

    report.quotient_vertices = next_vertex_orbit;
    report.quotient_edges = static_cast<long long>(edge_orbit_reps.size());
    report.quotient_components = static_cast<long long>(roots.size());
    report.quotient_loops = report.quotient_edges - report.quotient_vertices +
                            report.quotient_components;
    require_internal(report.quotient_loops >= 0, "negative loop count");
    report.zero_loops = report.quotient_loops == 0;
    report.contribution = bouquet_ct(report.quotient_loops);
    out.push_back(std::move(report));
  }
  return out;
}

struct GraphCtReport {
  long long total = 0;
  std::vector<StratumReport> strata;
};

// Equivariant covering type of a connected regular G-graph: the sum of the
// per-stratum bouquet contributions.
inline GraphCtReport graph_covering_type(const GComplex& x) {
  if (x.complex().dim() > 1) {
    fail(ErrorKind::NotAGraph,
         "expected a complex of dimension at most 1, got dimension " +
             std::to_string(x.complex().dim()));
  }
  const GraphBetti betti = graph_betti(x.complex());
  if (betti.components != 1) {
    fail(ErrorKind::NotConnected,
         "covering type stratification requires a connected graph, got " +
             std::to_string(betti.components) + " components");
  }
  GraphCtReport report;
  report.strata = stratify(x);
  for (const StratumReport& s : report.strata) report.total += s.contribution;
  return report;
}

}  // namespace equicov
