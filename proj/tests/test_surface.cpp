#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>
#include <vector>

#include "equicov/surface.hpp"
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

PermGroup z2() { return PermGroup::from_generators(2, {Perm::from_images({1, 0})}); }
PermGroup z3() { return PermGroup::from_generators(3, {Perm::from_images({1, 2, 0})}); }
PermGroup z4() {
  return PermGroup::from_generators(4, {Perm::from_images({1, 2, 3, 0})});
}

}  // namespace

TEST_CASE("branching data validation") {
  CHECK(kind_of([] { validate_branching_data({-1, 2, {}}); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { validate_branching_data({0, 0, {}}); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { validate_branching_data({0, 4, {1}}); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { validate_branching_data({0, 4, {3}}); }) == ErrorKind::ParseError);
  CHECK_NOTHROW(validate_branching_data({0, 4, {2, 4, 4}}));
}

TEST_CASE("genus of a branched cover") {
  CHECK(rh_genus({0, 2, {2, 2, 2, 2, 2, 2}}) == Rational(2));
  CHECK(rh_genus({0, 3, {3, 3}}) == Rational(0));
  CHECK(rh_genus({2, 3, {}}) == Rational(4));
  CHECK(rh_genus({1, 5, {}}) == Rational(1));
  CHECK(rh_genus({0, 4, {2, 4, 4}}) == Rational(1));
  // Not every tuple yields an integer; the value is still exact.
  CHECK(rh_genus({1, 2, {2}}) == Rational(3, 2));
  CHECK(rh_genus({0, 2, {2}}) == Rational(-1, 2));

  CHECK(rh_quotient_genus(2, 2, {2, 2, 2, 2, 2, 2}) == Rational(0));
  CHECK(rh_quotient_genus(4, 3, {}) == Rational(2));

}

TEST_CASE("quotient genus inverts the genus formula") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    BranchingData d;
    d.quotient_genus = static_cast<long long>(rng() % 5);
    const long long orders[] = {2, 3, 4, 5, 6, 8, 10, 12};
    d.group_order = orders[rng() % 8];
    const int r = static_cast<int>(rng() % 4);
    std::vector<long long> divisors;
    for (long long q = 2; q <= d.group_order; ++q) {
      if (d.group_order % q == 0) divisors.push_back(q);
    }
    for (int i = 0; i < r && !divisors.empty(); ++i) {
      d.periods.push_back(divisors[rng() % divisors.size()]);
    }
    const Rational g = rh_genus(d);
    // The inverse is only defined on integral nonnegative total genus.
    if (g.denominator() != 1 || g.numerator() < 0) continue;
    CHECK(rh_quotient_genus(g.numerator(), d.group_order, d.periods) ==
          Rational(d.quotient_genus));
  }
}

TEST_CASE("generating vector validity") {
  const PermGroup g = z2();
  const Perm e = Perm::identity(2);
  const Perm a = Perm::from_images({1, 0});

  BranchingData hyper{0, 2, {2, 2, 2, 2, 2, 2}};
  CHECK(is_valid_generating_vector(g, hyper, {{}, {a, a, a, a, a, a}}));
  // Odd number of involutions cannot multiply to the identity.
  CHECK_FALSE(is_valid_generating_vector(g, {0, 2, {2, 2, 2}}, {{}, {a, a, a}}));
  // Branch elements must have exactly the stated order.
  CHECK_FALSE(is_valid_generating_vector(g, hyper, {{}, {a, a, a, a, a, e}}));
  // Handle count must match the quotient genus.
  CHECK_FALSE(is_valid_generating_vector(g, {1, 2, {}}, {{a}, {}}));
  CHECK(is_valid_generating_vector(g, {1, 2, {}}, {{a, e}, {}}));
  // The vector must generate the whole group.
  const PermGroup v4 = PermGroup::from_generators(
      4, {Perm::from_images({1, 0, 3, 2}), Perm::from_images({2, 3, 0, 1})});
  const Perm x = Perm::from_images({1, 0, 3, 2});
  CHECK_FALSE(is_valid_generating_vector(v4, {1, 4, {}}, {{x, x}, {}}));
  CHECK(is_valid_generating_vector(
      v4, {1, 4, {}}, {{x, Perm::from_images({2, 3, 0, 1})}, {}}));
}

TEST_CASE("generating vector search") {
  // Free Z3 over a genus-2 surface; the first vector in search order.
  const auto free3 = find_generating_vector(z3(), 2, {});
  REQUIRE(free3.has_value());
  REQUIRE(free3->handles.size() == 4);
  CHECK(free3->branch_elements.empty());
  CHECK(free3->handles[0].is_identity());
  CHECK(free3->handles[1].is_identity());
  CHECK(free3->handles[2].is_identity());
  CHECK(free3->handles[3] == Perm::from_images({1, 2, 0}));

  // The hyperelliptic vector.
  const auto hyper = find_generating_vector(z2(), 0, {2, 2, 2, 2, 2, 2});
  REQUIRE(hyper.has_value());
  CHECK(hyper->handles.empty());
  REQUIRE(hyper->branch_elements.size() == 6);
  for (const Perm& c : hyper->branch_elements) {
    CHECK(c == Perm::from_images({1, 0}));
  }

  // Z4 branched over (2, 4, 4).
  const auto quarter = find_generating_vector(z4(), 0, {2, 4, 4});
  REQUIRE(quarter.has_value());
  CHECK(is_valid_generating_vector(z4(), {0, 4, {2, 4, 4}}, *quarter));

  // Certified absences.
  CHECK_FALSE(find_generating_vector(z3(), 0, {3}).has_value());
  CHECK_FALSE(find_generating_vector(z2(), 0, {2, 2, 2}).has_value());
  CHECK_FALSE(find_generating_vector(z3(), 0, {}).has_value());

  // Periods must divide the group order.
  CHECK(kind_of([] { find_generating_vector(z3(), 0, {2}); }) ==
        ErrorKind::ParseError);
}

TEST_CASE("search budget") {
  const PermGroup s4 = PermGroup::from_generators(
      4, {Perm::from_images({1, 0, 2, 3}), Perm::from_images({1, 2, 3, 0})});
  CHECK(kind_of([&] { find_generating_vector(s4, 1, {2, 3}, 2); }) ==
        ErrorKind::SearchBudgetExceeded);
  const auto found = find_generating_vector(s4, 1, {2, 3});
  REQUIRE(found.has_value());
  CHECK(is_valid_generating_vector(s4, {1, 24, {2, 3}}, *found));
}

TEST_CASE("minimal triangulation size") {
  CHECK(jungerman_ringel(0, true) == 4);
  CHECK(jungerman_ringel(1, true) == 7);
  CHECK(jungerman_ringel(2, true) == 10);
  CHECK(jungerman_ringel(3, true) == 10);
  CHECK(jungerman_ringel(4, true) == 11);
  CHECK(jungerman_ringel(1, false) == 6);
  CHECK(jungerman_ringel(2, false) == 8);
  CHECK(jungerman_ringel(3, false) == 9);
  CHECK(jungerman_ringel(4, false) == 9);
  CHECK(kind_of([] { jungerman_ringel(-1, true); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { jungerman_ringel(0, false); }) == ErrorKind::ParseError);
}

TEST_CASE("orbit count bounds for surface actions") {
  const SurfaceBoundsReport hyper = surface_orbit_bounds({0, 2, {2, 2, 2, 2, 2, 2}});
  CHECK(hyper.total_genus == 2);
  CHECK(hyper.vertex_orbits_min == 6);
  CHECK(hyper.vertex_orbits_max == 41);
  CHECK(hyper.covering_type_min == 4);
  CHECK(hyper.covering_type_max == 41);
  CHECK_FALSE(hyper.covering_min_from_genus_two);

  const SurfaceBoundsReport two = surface_orbit_bounds({0, 3, {3, 3}});
  CHECK(two.total_genus == 0);
  CHECK(two.vertex_orbits_min == 4);
  CHECK(two.vertex_orbits_max == 5);
  CHECK(two.covering_type_min == 4);
  CHECK(two.covering_type_max == 5);

  const SurfaceBoundsReport genus2_quotient = surface_orbit_bounds({2, 2, {}});
  CHECK(genus2_quotient.total_genus == 3);
  CHECK(genus2_quotient.covering_type_min == 9);
  CHECK(genus2_quotient.covering_min_from_genus_two);

  // Fractional covering genus means no such action exists.
  CHECK(kind_of([] { surface_orbit_bounds({0, 2, {2}}); }) == ErrorKind::ParseError);
}

TEST_CASE("closed forms for the equivariant category") {
  CHECK(surface_cat_g({0, 2, {2, 2, 2, 2, 2, 2}}, false) == 6);
  CHECK(surface_cat_g({0, 4, {2, 4, 4}}, false) == 3);
  CHECK(surface_cat_g({0, 3, {3, 3}}, false) == 2);
  CHECK(surface_cat_g({1, 5, {}}, true) == 3);
  CHECK(surface_cat_g({3, 2, {}}, true) == 3);
  CHECK(kind_of([] { surface_cat_g({0, 2, {2, 2}}, true); }) ==
        ErrorKind::CaseNotCovered);
  CHECK(kind_of([] { surface_cat_g({0, 5, {}}, true); }) == ErrorKind::CaseNotCovered);
}

TEST_CASE("expansion before lifting") {
  const SComplex oct = fixtures::octahedron();

  // One branch vertex needs no work.
  const ExpandResult one = expand_for_lift(oct, {2});
  CHECK(one.complex == oct);
  CHECK(one.branch_vertices == std::vector<int>{2});
  CHECK(one.added_vertices.empty());

  // Two adjacent branch vertices: the two triangles over the shared edge
  // are split through its midpoint.
  const ExpandResult pair = expand_for_lift(oct, {0, 1});
  CHECK(pair.complex.f_vector().counts == std::vector<long long>{7, 15, 10});
  CHECK(pair.complex.euler_characteristic() == 2);
  CHECK(is_closed_surface(pair.complex).has_value());
  CHECK(pair.added_vertices == std::vector<int>{6});
  CHECK_FALSE(pair.complex.contains({0, 1}));

  // All six vertices: the expansion is exactly the barycentric subdivision.
  const ExpandResult all = expand_for_lift(oct, {0, 1, 2, 3, 4, 5});
  CHECK(all.complex == barycentric_subdivision(oct).complex);
  for (std::size_t i = 0; i < all.branch_vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < all.branch_vertices.size(); ++j) {
      CHECK_FALSE(all.complex.contains(
          {std::min(all.branch_vertices[i], all.branch_vertices[j]),
           std::max(all.branch_vertices[i], all.branch_vertices[j])}));
    }
  }

  CHECK(kind_of([&] { expand_for_lift(oct, {0, 9}); }) ==
        ErrorKind::BranchVertexMissing);
  CHECK(kind_of([&] { expand_for_lift(oct, {0, 0}); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { expand_for_lift(fixtures::cycle_graph(5), {0}); }) ==
        ErrorKind::NotASurface);
}

TEST_CASE("lift by the trivial group") {
  const PermGroup one = fixtures::trivial_group(1);
  GeneratingVector gv;
  gv.handles = {Perm::identity(1), Perm::identity(1)};
  const LiftResult lift =
      lift_triangulation(fixtures::torus7(), {}, one, gv);
  CHECK(lift.total.complex().f_vector() == fixtures::torus7().f_vector());
  CHECK(*is_closed_surface(lift.total.complex()) == SurfaceInfo{true, 1});
  CHECK(lift.data.quotient_genus == 1);
  // Each fiber is a single vertex; the projection is a relabeling.
  std::vector<int> hits(7, 0);
  for (int b : lift.projection) hits[static_cast<std::size_t>(b)]++;
  CHECK(hits == std::vector<int>{1, 1, 1, 1, 1, 1, 1});
}

TEST_CASE("hyperelliptic double cover of the sphere") {
  const ExpandResult base = expand_for_lift(fixtures::octahedron(), {0, 1, 2, 3, 4, 5});
  const Perm a = Perm::from_images({1, 0});
  GeneratingVector gv;
  gv.branch_elements = {a, a, a, a, a, a};
  const LiftResult lift = lift_triangulation(base.complex, base.branch_vertices, z2(), gv);

  CHECK(lift.total.complex().f_vector().counts == std::vector<long long>{46, 144, 96});
  CHECK(*is_closed_surface(lift.total.complex()) == SurfaceInfo{true, 2});
  CHECK(check_regularity(lift.total).strictly_regular());
  CHECK(lift.data.periods == std::vector<long long>{2, 2, 2, 2, 2, 2});

  // Branch fibers are the singleton orbits; all other fibers have size 2.
  REQUIRE(lift.branch_fibers.size() == 6);
  for (const auto& fiber : lift.branch_fibers) CHECK(fiber.size() == 1);
  std::vector<int> fiber_size(static_cast<std::size_t>(base.complex.num_vertices()), 0);
  for (int b : lift.projection) fiber_size[static_cast<std::size_t>(b)]++;
  int singles = 0;
  for (int s : fiber_size) {
    CHECK((s == 1 || s == 2));
    singles += s == 1;
  }
  CHECK(singles == 6);

  // The quotient returns the base complex up to the orbit relabeling.
  const QuotientResult q = quotient(lift.total);
  CHECK(q.complex.f_vector() == base.complex.f_vector());
}

TEST_CASE("free triple cover of the genus-2 surface") {
  const auto gv = find_generating_vector(z3(), 2, {});
  REQUIRE(gv.has_value());
  const LiftResult lift =
      lift_triangulation(fixtures::genus2_surface10(), {}, z3(), *gv);
  CHECK(lift.total.complex().f_vector().counts == std::vector<long long>{30, 108, 72});
  CHECK(*is_closed_surface(lift.total.complex()) == SurfaceInfo{true, 4});
  CHECK(check_regularity(lift.total).strictly_regular());
  const EquivariantFVector ef = equivariant_f_vector(lift.total);
  CHECK(ef.orbit_counts == std::vector<long long>{10, 36, 24});
}

TEST_CASE("lift input validation") {
  const Perm a = Perm::from_images({1, 0});
  GeneratingVector hyper;
  hyper.branch_elements = {a, a, a, a, a, a};

  // Branch vertices may not span an edge.
  CHECK(kind_of([&] {
          lift_triangulation(fixtures::octahedron(), {0, 1, 2, 3, 4, 5}, z2(), hyper);
        }) == ErrorKind::ParseError);

  // The base must be a closed orientable surface.
  CHECK(kind_of([&] {
          lift_triangulation(fixtures::cycle_graph(6), {}, z2(), {{a, a}, {}});
        }) == ErrorKind::NotASurface);
  CHECK(kind_of([&] {
          lift_triangulation(fixtures::projective_plane6(), {}, z2(), {{a, a}, {}});
        }) == ErrorKind::NotASurface);

  // Branch count must match the generating vector.
  const ExpandResult base = expand_for_lift(fixtures::octahedron(), {0, 1, 2, 3, 4, 5});
  GeneratingVector five;
  five.branch_elements = {a, a, a, a, a};
  CHECK(kind_of([&] {
          lift_triangulation(base.complex, base.branch_vertices, z2(), five);
        }) == ErrorKind::InvalidGeneratingVector);

  // Branch elements must be nontrivial.
  GeneratingVector lazy;
  lazy.branch_elements = {a, a, a, a, a, Perm::identity(2)};
  CHECK(kind_of([&] {
          lift_triangulation(base.complex, base.branch_vertices, z2(), lazy);
        }) == ErrorKind::InvalidGeneratingVector);
}
