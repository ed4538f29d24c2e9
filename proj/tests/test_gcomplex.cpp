#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <vector>

#include "equicov/gcomplex.hpp"
#include "fixtures.hpp"

using namespace equicov;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("build_action validates its inputs") {
  const SComplex c6 = fixtures::cycle_graph(6);
  const PermGroup z2 = PermGroup::from_generators(6, {Perm::from_images({3, 4, 5, 0, 1, 2})});

  // Generator count must match the group's generating set.
  CHECK(kind_of([&] { GComplex::build_action(c6, z2, {}); }) ==
        ErrorKind::NotAHomomorphism);

  // Vertex images must act simplicially: rotating a path complex by one
  // step maps an end edge outside the complex.
  const SComplex path = SComplex::from_maximal(3, {{0, 1}, {1, 2}});
  const PermGroup z3 = PermGroup::from_generators(3, {Perm::from_images({1, 2, 0})});
  CHECK(kind_of([&] {
          GComplex::build_action(path, z3, {Perm::from_images({1, 2, 0})});
        }) == ErrorKind::NotSimplicial);

  // Vertex images must extend to a homomorphism: an involution cannot act
  // by a 4-cycle.
  const SComplex c4 = fixtures::cycle_graph(4);
  const PermGroup z2d4 = PermGroup::from_generators(4, {Perm::from_images({1, 0, 3, 2})});
  CHECK(kind_of([&] {
          GComplex::build_action(c4, z2d4, {Perm::from_images({1, 2, 3, 0})});
        }) == ErrorKind::NotAHomomorphism);
}

TEST_CASE("regularity conditions with witnesses") {
  const RegularityReport a = check_regularity(fixtures::z3_triangle());
  CHECK_FALSE(a.r1);
  REQUIRE(a.r1_witness.has_value());
  CHECK(a.r1_witness->vertex == 0);
  CHECK(a.r1_witness->element == 1);

  const RegularityReport b = check_regularity(fixtures::z3_rotation_c6());
  CHECK(b.r1);
  CHECK_FALSE(b.r2);
  REQUIRE(b.r2_witness.has_value());
  // The witness is honest: the image pair spans an edge of the complex but
  // no single group element maps the source edge onto it.
  {
    const GComplex x = fixtures::z3_rotation_c6();
    const auto& w = *b.r2_witness;
    CHECK(x.complex().contains(w.target));
    bool realized = false;
    for (std::size_t e = 0; e < x.group().order(); ++e) {
      realized = realized || x.act_simplex(static_cast<int>(e), w.source) == w.target;
    }
    CHECK_FALSE(realized);
  }

  const RegularityReport c = check_regularity(fixtures::v4_square());
  CHECK(c.r1);
  CHECK(c.r2);
  CHECK_FALSE(c.r3);
  REQUIRE(c.r3_witness.has_value());
  {
    const GComplex x = fixtures::v4_square();
    const auto& w = *c.r3_witness;
    const Subgroup sa = x.vertex_stabilizer(w.vertex_a);
    const Subgroup sb = x.vertex_stabilizer(w.vertex_b);
    CHECK_FALSE(subgroup_contains(sa, sb));
    CHECK_FALSE(subgroup_contains(sb, sa));
  }

  CHECK(check_regularity(fixtures::z2_antipodal_c6()).strictly_regular());
  CHECK(check_regularity(fixtures::z2_reflection_c6()).strictly_regular());
  CHECK(check_regularity(fixtures::trivial_action(fixtures::octahedron()))
            .strictly_regular());
}

TEST_CASE("setwise stabilizers collapse to pointwise under R1") {
  for (const GComplex& x : {fixtures::z2_reflection_c6(), fixtures::v4_square(),
                            fixtures::z2_antipodal_c6()}) {
    REQUIRE(check_regularity(x).r1);
    for (int d = 0; d <= x.complex().dim(); ++d) {
      for (const Simplex& s : x.complex().simplices(d)) {
        CHECK(x.setwise_simplex_stabilizer(s) == x.pointwise_simplex_stabilizer(s));
      }
    }
  }
  // Contrast: without R1 the two can differ.
  const GComplex x = fixtures::z3_triangle();
  CHECK(x.setwise_simplex_stabilizer({0, 1, 2}).size() == 3);
  CHECK(x.pointwise_simplex_stabilizer({0, 1, 2}).size() == 1);
}

TEST_CASE("simplex orbits and equivariant face counts") {
  const GComplex x = fixtures::z2_antipodal_c6();
  const EquivariantFVector ef = equivariant_f_vector(x);
  CHECK(ef.orbit_counts == std::vector<long long>{3, 3});
  CHECK(ef.stabilizer_orders ==
        std::vector<std::vector<long long>>{{1, 1, 1}, {1, 1, 1}});

  // Orbit sizes weighted by stabilizer order recover the face counts.
  for (const GComplex& y :
       {fixtures::z2_reflection_c6(), fixtures::s3_triangle(),
        fixtures::s4_tetra_boundary(), fixtures::d4_square()}) {
    const EquivariantFVector f = equivariant_f_vector(y);
    const FVector plain = y.complex().f_vector();
    const long long order = static_cast<long long>(y.group().order());
    for (std::size_t d = 0; d < f.stabilizer_orders.size(); ++d) {
      long long total = 0;
      for (long long s : f.stabilizer_orders[d]) total += order / s;
      CHECK(total == plain.counts[d]);
    }
  }
}

TEST_CASE("quotient of a strictly regular action") {
  const QuotientResult q = quotient(fixtures::z2_antipodal_c6());
  CHECK(q.complex == SComplex::from_maximal(3, {{0, 1}, {0, 2}, {1, 2}}));
  CHECK(q.vertex_to_orbit == std::vector<int>{0, 1, 2, 0, 1, 2});
  REQUIRE(q.orbit_to_vertices.size() == 3);
  CHECK(q.orbit_to_vertices[0] == std::vector<int>{0, 3});

  const QuotientResult r = quotient(fixtures::z2_reflection_c6());
  // Hexagon folded across a diameter: a path on four vertices.
  CHECK(r.complex.f_vector().counts == std::vector<long long>{4, 3});
  CHECK(graph_betti(r.complex) == GraphBetti{1, 0});
}

TEST_CASE("quotient failure precedence") {
  // R1 failure reported first.
  CHECK(kind_of([] { quotient(fixtures::z3_triangle()); }) == ErrorKind::NotRegular);
  // R1 holds but two edge orbits collapse onto the same vertex pair.
  CHECK(kind_of([] { quotient(fixtures::z3_rotation_c6()); }) == ErrorKind::MultiEdge);
}

TEST_CASE("fixed subcomplex") {
  const GComplex x = fixtures::z2_reflection_c6();
  const GroupTable t = build_group_table(x.group());
  const Subgroup whole = subgroup_closure(t, {1});
  const SComplex fixed = fixed_subcomplex(x, whole);
  CHECK(fixed.f_vector().counts == std::vector<long long>{2});
  CHECK(fixed.contains({0}));
  CHECK(fixed.contains({3}));

  CHECK(fixed_subcomplex(fixtures::z2_antipodal_c6(), whole).f_vector().counts ==
        std::vector<long long>{});

  // The trivial subgroup fixes everything.
  CHECK(fixed_subcomplex(x, {0}) == x.complex());
}

TEST_CASE("saturation") {
  const GComplex x = fixtures::z3_rotation_c6();
  const SComplex seed = SComplex::from_maximal(6, {{0, 1}});
  const SComplex sat = saturation(x, seed);
  CHECK(sat.f_vector().counts == std::vector<long long>{6, 3});
  CHECK(sat.contains({2, 3}));
  CHECK(sat.contains({4, 5}));
  CHECK_FALSE(sat.contains({1, 2}));
}

TEST_CASE("star cover nerve is isomorphic to the complex") {
  // The full symmetric action fails R1, so the nerve needs it regularized.
  for (const GComplex& x : {fixtures::z2_antipodal_c6(), fixtures::v4_square(),
                            regularize(fixtures::s4_tetra_boundary())}) {
    const NerveResult nerve = star_cover_nerve(x);
    CHECK(nerve.nerve.complex().f_vector() == x.complex().f_vector());
    // The isomorphism respects the actions generator by generator.
    std::vector<int> to_complex(nerve.isomorphism.size(), -1);
    for (const auto& [nv, kv] : nerve.isomorphism) {
      to_complex[static_cast<std::size_t>(nv)] = kv;
    }
    for (std::size_t e = 0; e < x.group().order(); ++e) {
      for (const auto& [nv, kv] : nerve.isomorphism) {
        CHECK(to_complex[static_cast<std::size_t>(
                  nerve.nerve.act_vertex(static_cast<int>(e), nv))] ==
              x.act_vertex(static_cast<int>(e), kv));
      }
    }
  }
}

TEST_CASE("equivariant subdivision and regularization") {
  const GComplex x = fixtures::z3_triangle();
  const GSubdivision sd = subdivide_action(x);
  CHECK(sd.complex.complex().f_vector().counts == std::vector<long long>{7, 12, 6});
  // The barycenter of the top face is fixed by the whole group.
  const int top = sd.face_to_vertex.at({0, 1, 2});
  CHECK(sd.complex.vertex_stabilizer(top).size() == 3);

  const GComplex fixed = regularize(x);
  CHECK(check_regularity(fixed).strictly_regular());
  CHECK(fixed.complex().f_vector().counts == std::vector<long long>{25, 60, 36});
  CHECK(fixed.complex().euler_characteristic() == x.complex().euler_characteristic());

  // One subdivision suffices when the action is already regular.
  const GComplex v4 = fixtures::v4_square();
  const GComplex v4fixed = regularize(v4);
  CHECK(check_regularity(v4fixed).strictly_regular());
  CHECK(v4fixed.complex().f_vector().counts == std::vector<long long>{8, 8});

  // Already strictly regular actions come back unchanged.
  CHECK(regularize(fixtures::z2_antipodal_c6()).complex() ==
        fixtures::z2_antipodal_c6().complex());

  // The quotient of the regularized action exists and preserves nothing
  // more than it should: Euler characteristic of the orbit space of the
  // rotation action on the disk is still 1.
  const QuotientResult q = quotient(fixed);
  CHECK(q.complex.euler_characteristic() == 1);
}
