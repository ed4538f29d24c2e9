// Finite permutation groups given by generators: full element enumeration,
// subgroup lattice, conjugacy classes of subgroups and the orbit-type
// poset. All enumeration is exhaustive by design; inputs are desk scale
// and deterministic output matters more than speed.
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "equicov/errors.hpp"
#include "equicov/perm.hpp"

namespace equicov {

inline constexpr std::size_t kDefaultGroupCap = 2048;

class PermGroup {
 public:
  // Breadth-first closure of the generators. Fails with GroupTooLarge once
  // the closure exceeds cap.
  static PermGroup from_generators(int degree, std::vector<Perm> generators,
                                   std::string name = "",
                                   std::size_t cap = kDefaultGroupCap) {
    if (degree < 1) {
      fail(ErrorKind::NotAPermutation, "group degree must be at least 1");
    }
    for (const Perm& g : generators) {
      if (g.degree() != degree) {
        fail(ErrorKind::NotAPermutation,
             "generator degree " + std::to_string(g.degree()) +
                 " does not match group degree " + std::to_string(degree));
      }
    }
    std::set<Perm> closure;
    std::vector<Perm> queue;
    closure.insert(Perm::identity(degree));
    queue.push_back(Perm::identity(degree));
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      Perm current = queue[qi];
      for (const Perm& g : generators) {
        Perm next = g * current;
        if (closure.insert(next).second) {
          if (closure.size() > cap) {
            fail(ErrorKind::GroupTooLarge,
                 "generated group exceeds cap of " + std::to_string(cap) +
                     " elements");
          }
          queue.push_back(next);
        }
      }
    }
    PermGroup result;
    result.degree_ = degree;
    result.name_ = std::move(name);
    result.generators_ = std::move(generators);
    result.elements_.assign(closure.begin(), closure.end());
    return result;
  }

  int degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Perm>& elements() const { return elements_; }
  const std::vector<Perm>& generators() const { return generators_; }
  const std::string& name() const { return name_; }

  // Elements are sorted by image array, so the identity is always first.
  int identity_index() const { return 0; }

  const Perm& element(int index) const {
    require_internal(index >= 0 && index < static_cast<int>(elements_.size()),
                     "element index out of range");
    return elements_[static_cast<std::size_t>(index)];
  }

  // Index in elements(), or -1 if the permutation is not in the group.
  int element_index(const Perm& p) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || !(*it == p)) return -1;
    return static_cast<int>(it - elements_.begin());
  }

  bool contains(const Perm& p) const { return element_index(p) >= 0; }

  int multiply(int a, int b) const {
    int idx = element_index(element(a) * element(b));
    require_internal(idx >= 0, "group elements not closed under product");
    return idx;
  }

  int invert(int a) const {
    int idx = element_index(element(a).inverse());
    require_internal(idx >= 0, "group elements not closed under inverse");
    return idx;
  }

 private:
  int degree_ = 1;
  std::string name_;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
};

inline PermGroup close_generators(int degree, std::vector<Perm> generators,
                                  std::string name = "",
                                  std::size_t cap = kDefaultGroupCap) {
  return PermGroup::from_generators(degree, std::move(generators),
                                    std::move(name), cap);
}

// Precomputed index arithmetic for the exhaustive subgroup algorithms.
struct GroupTable {
  std::vector<std::vector<int>> product;  // product[a][b] = index of a*b
  std::vector<int> inverse;

  int order() const { return static_cast<int>(inverse.size()); }
};

inline GroupTable build_group_table(const PermGroup& g) {
  const int n = static_cast<int>(g.order());
  GroupTable t;
  t.product.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  t.inverse.resize(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    t.inverse[static_cast<std::size_t>(a)] = g.invert(a);
    for (int b = 0; b < n; ++b) {
      t.product[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = g.multiply(a, b);
    }
  }
  return t;
}

// A subgroup is the sorted list of element indices into the parent group.
using Subgroup = std::vector<int>;

inline Subgroup subgroup_closure(const GroupTable& t, std::vector<int> seed) {
  std::set<int> closure;
  std::vector<int> queue;
  closure.insert(0);  // identity has index 0
  queue.push_back(0);
  for (int s : seed) {
    if (closure.insert(s).second) queue.push_back(s);
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int a = queue[qi];
    std::vector<int> members(closure.begin(), closure.end());
    for (int b : members) {
      for (int c : {t.product[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)],
                    t.product[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)]}) {
        if (closure.insert(c).second) queue.push_back(c);
      }
    }
  }
  return Subgroup(closure.begin(), closure.end());
}

// Every subgroup of g, by breadth-first closure of generated subgroups
// starting from the cyclic ones. Output sorted lexicographically.
inline std::vector<Subgroup> subgroups(const PermGroup& g,
                                       std::size_t cap = kDefaultGroupCap) {
  if (g.order() > cap) {
    fail(ErrorKind::GroupTooLarge,
         "subgroup enumeration capped at " + std::to_string(cap) + " elements");
  }
  GroupTable t = build_group_table(g);
  std::set<Subgroup> known;
  std::vector<Subgroup> queue;
  Subgroup trivial{0};
  known.insert(trivial);
  queue.push_back(trivial);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Subgroup h = queue[qi];
    std::set<int> members(h.begin(), h.end());
    for (int x = 0; x < t.order(); ++x) {
      if (members.count(x)) continue;
      Subgroup seed = h;
      seed.push_back(x);
      Subgroup extended = subgroup_closure(t, seed);
      if (known.insert(extended).second) queue.push_back(extended);
    }
  }
  return std::vector<Subgroup>(known.begin(), known.end());
}

inline Subgroup conjugate_subgroup(const GroupTable& t, const Subgroup& h, int by) {
  Subgroup image;
  image.reserve(h.size());
  int by_inv = t.inverse[static_cast<std::size_t>(by)];
  for (int x : h) {
    image.push_back(t.product[static_cast<std::size_t>(
        t.product[static_cast<std::size_t>(by)][static_cast<std::size_t>(x)])][static_cast<std::size_t>(by_inv)]);
  }
  std::sort(image.begin(), image.end());
  return image;
}

inline bool subgroup_contains(const Subgroup& outer, const Subgroup& inner) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

// True iff some conjugate of k lies inside h. Exhaustive over all elements.
inline bool is_subconjugate(const GroupTable& t, const Subgroup& k, const Subgroup& h) {
  if (k.size() > h.size()) return false;
  for (int by = 0; by < t.order(); ++by) {
    if (subgroup_contains(h, conjugate_subgroup(t, k, by))) return true;
  }
  return false;
}

// Conjugacy class of subgroups; the representative is the class minimum.
struct OrbitType {
  const PermGroup* group = nullptr;
  Subgroup representative;
  std::vector<Subgroup> conjugates;

  std::size_t subgroup_order() const { return representative.size(); }
};

// Conjugacy classes of all subgroups, partially ordered by
// (H) >= (K)  iff  some conjugate of K is contained in H.
// Types are listed by ascending subgroup order (a linear extension).
struct OrbitTypePoset {
  const PermGroup* group = nullptr;
  std::vector<OrbitType> types;
  // dominates[a][b]: types[a] >= types[b] in the order above.
  std::vector<std::vector<bool>> dominates;

  // Class containing the given subgroup, or -1.
  int type_index(const Subgroup& h) const {
    for (std::size_t i = 0; i < types.size(); ++i) {
      const auto& c = types[i].conjugates;
      if (std::binary_search(c.begin(), c.end(), h)) return static_cast<int>(i);
    }
    return -1;
  }
};

inline OrbitTypePoset orbit_type_poset(const PermGroup& g,
                                       std::size_t cap = kDefaultGroupCap) {
  std::vector<Subgroup> all = subgroups(g, cap);
  GroupTable t = build_group_table(g);
  OrbitTypePoset poset;
  poset.group = &g;
  std::set<Subgroup> assigned;
  for (const Subgroup& h : all) {
    if (assigned.count(h)) continue;
    std::set<Subgroup> cls;
    for (int by = 0; by < t.order(); ++by) {
      cls.insert(conjugate_subgroup(t, h, by));
    }
    OrbitType type;
    type.group = &g;
    type.conjugates.assign(cls.begin(), cls.end());
    type.representative = type.conjugates.front();
    assigned.insert(cls.begin(), cls.end());
    poset.types.push_back(std::move(type));
  }
  std::sort(poset.types.begin(), poset.types.end(),
            [](const OrbitType& a, const OrbitType& b) {
              if (a.subgroup_order() != b.subgroup_order()) {
                return a.subgroup_order() < b.subgroup_order();
              }
              return a.representative < b.representative;
            });
  const std::size_t n = poset.types.size();
  poset.dominates.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      poset.dominates[a][b] =
          is_subconjugate(t, poset.types[b].representative, poset.types[a].representative);
    }
  }
  return poset;
}

// True iff the restriction of the orbit-type order to the given set is a
// total order. All types must come from the same group.
inline bool is_linearly_ordered(const std::vector<OrbitType>& types) {
  if (types.empty()) return true;
  const PermGroup* parent = types.front().group;
  for (const OrbitType& t : types) {
    if (t.group != parent) {
      fail(ErrorKind::MixedGroups, "orbit types come from different groups");
    }
  }
  GroupTable table = build_group_table(*parent);
  for (std::size_t i = 0; i < types.size(); ++i) {
    for (std::size_t j = i + 1; j < types.size(); ++j) {
      if (!is_subconjugate(table, types[i].representative, types[j].representative) &&
          !is_subconjugate(table, types[j].representative, types[i].representative)) {
        return false;
      }
    }
  }
  return true;
}

// Orbit of a point under an action callable (g, x) -> x'. Sorted output.
template <typename Point, typename Action>
std::vector<Point> orbit(const PermGroup& g, const Action& action, const Point& x) {
  std::set<Point> seen;
  for (const Perm& e : g.elements()) {
    seen.insert(action(e, x));
  }
  return std::vector<Point>(seen.begin(), seen.end());
}

template <typename Point, typename Action>
Subgroup stabilizer(const PermGroup& g, const Action& action, const Point& x) {
  Subgroup result;
  for (std::size_t i = 0; i < g.order(); ++i) {
    if (action(g.elements()[i], x) == x) result.push_back(static_cast<int>(i));
  }
  return result;
}

}  // namespace equicov
