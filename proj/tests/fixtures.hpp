// Shared fixtures: small complexes and group actions with known invariants.
#pragma once

#include <vector>

#include "equicov/gcomplex.hpp"

namespace fixtures {

using equicov::GComplex;
using equicov::Perm;
using equicov::PermGroup;
using equicov::SComplex;
using equicov::Simplex;

inline SComplex solid_triangle() { return SComplex::from_maximal(3, {{0, 1, 2}}); }

inline SComplex tetra_boundary() {
  return SComplex::from_maximal(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

inline SComplex cycle_graph(int n) {
  std::vector<Simplex> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return SComplex::from_maximal(n, edges);
}

inline SComplex octahedron() {
  return SComplex::from_maximal(6, {{0, 1, 2},
                                    {0, 1, 3},
                                    {0, 2, 4},
                                    {0, 3, 4},
                                    {1, 2, 5},
                                    {1, 3, 5},
                                    {2, 4, 5},
                                    {3, 4, 5}});
}

// Moebius-Kantor triangulation of the torus: 7 vertices, complete 1-skeleton.
inline SComplex torus7() {
  std::vector<Simplex> tris;
  for (int i = 0; i < 7; ++i) {
    tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
    tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return SComplex::from_maximal(7, tris);
}

// Six-vertex projective plane (antipodal quotient of the icosahedron).
inline SComplex projective_plane6() {
  return SComplex::from_maximal(6, {{0, 1, 3},
                                    {0, 1, 4},
                                    {0, 2, 3},
                                    {0, 2, 5},
                                    {0, 4, 5},
                                    {1, 2, 4},
                                    {1, 2, 5},
                                    {1, 3, 5},
                                    {2, 3, 4},
                                    {3, 4, 5}});
}

// Orientable genus-2 surface on 10 vertices, obtained by edge-contracting a
// double cover of the sphere branched over the six octahedron vertices.
inline SComplex genus2_surface10() {
  return SComplex::from_maximal(
      10, {{0, 1, 2}, {0, 1, 6}, {0, 2, 5}, {0, 3, 6}, {0, 3, 7}, {0, 4, 5},
           {0, 4, 7}, {1, 2, 7}, {1, 4, 5}, {1, 4, 8}, {1, 5, 9}, {1, 6, 8},
           {1, 7, 9}, {2, 3, 8}, {2, 3, 9}, {2, 4, 7}, {2, 4, 9}, {2, 5, 6},
           {2, 6, 8}, {3, 6, 9}, {3, 7, 8}, {4, 8, 9}, {5, 6, 9}, {7, 8, 9}});
}

// Two triangles sharing a vertex; homotopy equivalent to a wedge of circles.
inline SComplex wedge_two_circles() {
  return SComplex::from_maximal(
      5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}});
}

inline PermGroup trivial_group(int degree) {
  return PermGroup::from_generators(degree, {});
}

inline GComplex trivial_action(SComplex k) {
  const int n = k.num_vertices();
  return GComplex::build_action(std::move(k), trivial_group(n), {});
}

// Z3 rotating the solid triangle. Fails R1: a vertex and its translate
// always share the top simplex.
inline GComplex z3_triangle() {
  const Perm rot = Perm::from_images({1, 2, 0});
  return GComplex::build_action(solid_triangle(),
                                PermGroup::from_generators(3, {rot}), {rot});
}

inline GComplex s3_triangle() {
  const Perm swap = Perm::from_images({1, 0, 2});
  const Perm rot = Perm::from_images({1, 2, 0});
  return GComplex::build_action(solid_triangle(),
                                PermGroup::from_generators(3, {swap, rot}),
                                {swap, rot});
}

inline GComplex s4_tetra_boundary() {
  const Perm swap = Perm::from_images({1, 0, 2, 3});
  const Perm cycle = Perm::from_images({1, 2, 3, 0});
  return GComplex::build_action(tetra_boundary(),
                                PermGroup::from_generators(4, {swap, cycle}),
                                {swap, cycle});
}

// Free antipodal Z2 on the hexagon; strictly regular.
inline GComplex z2_antipodal_c6() {
  const Perm a = Perm::from_images({3, 4, 5, 0, 1, 2});
  return GComplex::build_action(cycle_graph(6),
                                PermGroup::from_generators(6, {a}), {a});
}

// Reflection of the hexagon fixing two opposite vertices.
inline GComplex z2_reflection_c6() {
  const Perm a = Perm::from_images({0, 5, 4, 3, 2, 1});
  return GComplex::build_action(cycle_graph(6),
                                PermGroup::from_generators(6, {a}), {a});
}

// Z3 rotating the hexagon by two steps. R1 holds, R2 fails.
inline GComplex z3_rotation_c6() {
  const Perm a = Perm::from_images({2, 3, 4, 5, 0, 1});
  return GComplex::build_action(cycle_graph(6),
                                PermGroup::from_generators(6, {a}), {a});
}

inline GComplex z6_rotation_c6() {
  const Perm a = Perm::from_images({1, 2, 3, 4, 5, 0});
  return GComplex::build_action(cycle_graph(6),
                                PermGroup::from_generators(6, {a}), {a});
}

inline GComplex d4_square() {
  const Perm rot = Perm::from_images({1, 2, 3, 0});
  const Perm flip = Perm::from_images({0, 3, 2, 1});
  return GComplex::build_action(cycle_graph(4),
                                PermGroup::from_generators(4, {rot, flip}),
                                {rot, flip});
}

// Klein four-group generated by the two diagonal reflections of the square.
// R1 and R2 hold; R3 fails because adjacent vertices have incomparable
// stabilizers (one per diagonal).
inline GComplex v4_square() {
  const Perm a = Perm::from_images({0, 3, 2, 1});
  const Perm b = Perm::from_images({2, 1, 0, 3});
  return GComplex::build_action(cycle_graph(4),
                                PermGroup::from_generators(4, {a, b}), {a, b});
}

// Z2 swapping two disjoint edges.
inline GComplex z2_edge_swap() {
  const Perm a = Perm::from_images({2, 3, 0, 1});
  return GComplex::build_action(SComplex::from_maximal(4, {{0, 1}, {2, 3}}),
                                PermGroup::from_generators(4, {a}), {a});
}

}  // namespace fixtures
