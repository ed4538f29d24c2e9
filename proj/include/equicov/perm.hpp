// Permutations of {0..n-1} with value semantics. Composition follows the
// left-action convention used throughout: (g * h)(x) = g(h(x)).
#pragma once

#include <compare>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "equicov/errors.hpp"

namespace equicov {

class Perm {
 public:
  Perm() = default;

  static Perm identity(int degree) {
    require_internal(degree >= 0, "permutation degree must be nonnegative");
    Perm p;
    p.images_.resize(static_cast<std::size_t>(degree));
    std::iota(p.images_.begin(), p.images_.end(), 0);
    return p;
  }

  // Validates that images describe a bijection of {0..n-1}.
  static Perm from_images(std::vector<int> images) {
    const int n = static_cast<int>(images.size());
    std::vector<bool> seen(images.size(), false);
    for (int img : images) {
      if (img < 0 || img >= n) {
        fail(ErrorKind::NotAPermutation,
             "image " + std::to_string(img) + " out of range for degree " +
                 std::to_string(n));
      }
      if (seen[static_cast<std::size_t>(img)]) {
        fail(ErrorKind::NotAPermutation,
             "image " + std::to_string(img) + " repeated");
      }
      seen[static_cast<std::size_t>(img)] = true;
    }
    Perm p;
    p.images_ = std::move(images);
    return p;
  }

  int degree() const { return static_cast<int>(images_.size()); }

  int operator()(int x) const {
    require_internal(x >= 0 && x < degree(), "permutation applied out of range");
    return images_[static_cast<std::size_t>(x)];
  }

  const std::vector<int>& images() const { return images_; }

  // this after other: (a.compose(b))(x) = a(b(x)).
  Perm compose(const Perm& other) const {
    require_internal(degree() == other.degree(),
                     "composed permutations must share a degree");
    Perm r;
    r.images_.resize(images_.size());
    for (int x = 0; x < degree(); ++x) {
      r.images_[static_cast<std::size_t>(x)] = (*this)(other(x));
    }
    return r;
  }

  Perm inverse() const {
    Perm r;
    r.images_.resize(images_.size());
    for (int x = 0; x < degree(); ++x) {
      r.images_[static_cast<std::size_t>(images_[static_cast<std::size_t>(x)])] = x;
    }
    return r;
  }

  bool is_identity() const {
    for (int x = 0; x < degree(); ++x) {
      if (images_[static_cast<std::size_t>(x)] != x) return false;
    }
    return true;
  }

  // Smallest k >= 1 with p^k = id; lcm of cycle lengths.
  long long order() const {
    std::vector<bool> visited(images_.size(), false);
    long long result = 1;
    for (int start = 0; start < degree(); ++start) {
      if (visited[static_cast<std::size_t>(start)]) continue;
      long long len = 0;
      int x = start;
      while (!visited[static_cast<std::size_t>(x)]) {
        visited[static_cast<std::size_t>(x)] = true;
        x = images_[static_cast<std::size_t>(x)];
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  // Cycle notation for diagnostics, e.g. "(0 1 2)(3 4)"; identity is "()".
  std::string to_cycle_string() const {
    std::ostringstream out;
    std::vector<bool> visited(images_.size(), false);
    bool any = false;
    for (int start = 0; start < degree(); ++start) {
      if (visited[static_cast<std::size_t>(start)]) continue;
      std::vector<int> cycle;
      int x = start;
      while (!visited[static_cast<std::size_t>(x)]) {
        visited[static_cast<std::size_t>(x)] = true;
        cycle.push_back(x);
        x = images_[static_cast<std::size_t>(x)];
      }
      if (cycle.size() < 2) continue;
      any = true;
      out << '(';
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        if (i > 0) out << ' ';
        out << cycle[i];
      }
      out << ')';
    }
    if (!any) return "()";
    return out.str();
  }

  auto operator<=>(const Perm&) const = default;

 private:
  std::vector<int> images_;
};

inline Perm operator*(const Perm& g, const Perm& h) { return g.compose(h); }

}  // namespace equicov
