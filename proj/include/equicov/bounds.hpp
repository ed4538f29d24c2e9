// Closed-form lower bounds for equivariant covering type. Every evaluator
// is a pure function of user-supplied invariants (genus of the orbit
// category, element degrees, fixed-set dimensions); nothing here tries to
// compute those invariants from a complex.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equicov/errors.hpp"

namespace equicov {

struct BoundReport {
  std::string quantity;  // what is bounded, e.g. "ct_G"
  long long lower = 1;
  std::optional<long long> upper;  // present only when the value is exact
  std::string method;              // which closed form produced the number
  std::map<std::string, std::string> inputs;  // echoed parameters
  std::vector<std::string> notes;

  void check() const {
    require_internal(lower >= 1, "bounds are normalized to be at least 1");
    require_internal(!upper || lower <= *upper, "crossed bounds");
  }
};

// ct_G >= gamma(gamma+1)/2 when the orbit types are linearly ordered and
// gamma orbit types occur.
inline long long genus_lower_bound(long long gamma) {
  if (gamma < 1) {
    fail(ErrorKind::ParseError, "gamma must be at least 1");
  }
  return gamma * (gamma + 1) / 2;
}

// ct_G >= sum k * i_k + (n + 1) for element degrees i_1 <= ... <= i_n.
// Degrees are sorted ascending first; that ordering maximizes the sum and
// the bound holds for the maximizing order.
inline long long arithmetic_bound(std::vector<long long> degrees) {
  if (degrees.empty()) {
    fail(ErrorKind::EmptyDegreeList, "at least one degree is required");
  }
  for (long long d : degrees) {
    if (d < 1) fail(ErrorKind::ParseError, "degrees must be at least 1");
  }
  std::sort(degrees.begin(), degrees.end());
  long long sum = 0;
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    sum += static_cast<long long>(k + 1) * degrees[k];
  }
  return sum + static_cast<long long>(degrees.size()) + 1;
}

// ct_G >= (n+1)^2 for the projectivization of an (n+1)-dimensional isotypic
// decomposition; equals (d+2)^2/4 in terms of the dimension d = 2n.
inline long long projective_bound(long long n) {
  if (n < 0) {
    fail(ErrorKind::ParseError, "n must be nonnegative");
  }
  return (n + 1) * (n + 1);
}

namespace detail {

// Returns p when x = p^k with k >= 1, 1 when x = 1, and 0 otherwise.
inline long long prime_power_base(long long x) {
  if (x < 1) return 0;
  if (x == 1) return 1;
  long long p = x;
  for (long long f = 2; f * f <= x; ++f) {
    if (x % f == 0) {
      p = f;
      break;
    }
  }
  while (x % p == 0) x /= p;
  return x == 1 ? p : 0;
}

}  // namespace detail

// ct_G >= (1+q)(2+q)/2 with q = ceil((d-1) m / n) for a d-dimensional
// sphere whose isotropy orders lie between m and n.
inline long long sphere_zpk_bound(long long d, long long m, long long n) {
  if (d < 1) {
    fail(ErrorKind::ParseError, "sphere dimension must be at least 1");
  }
  const long long pm = detail::prime_power_base(m);
  const long long pn = detail::prime_power_base(n);
  if (pm == 0 || pn == 0) {
    fail(ErrorKind::NotPrimePowers,
         std::to_string(m) + " and " + std::to_string(n) + " must be prime powers");
  }
  // A value of 1 is the zeroth power of any prime, so it is compatible with
  // everything; otherwise the bases must agree.
  if (pm != 1 && pn != 1 && pm != pn) {
    fail(ErrorKind::NotPrimePowers,
         std::to_string(m) + " and " + std::to_string(n) +
             " are powers of different primes");
  }
  if (m > n) {
    fail(ErrorKind::ParseError, "m must not exceed n");
  }
  const long long q = ((d - 1) * m + n - 1) / n;  // ceiling, all terms nonnegative
  return (1 + q) * (2 + q) / 2;
}

// For a join of invariant spheres of a cyclic group the covering type is
// exactly additive over the factors.
inline long long cyclic_join_additivity(const std::vector<long long>& parts) {
  if (parts.empty()) {
    fail(ErrorKind::EmptyDegreeList, "at least one component bound is required");
  }
  long long sum = 0;
  for (long long p : parts) {
    if (p < 1) fail(ErrorKind::ParseError, "component bounds must be at least 1");
    sum += p;
  }
  return sum;
}

// Lower bound for mod-p cohomology spheres under an elementary abelian
// p-group: free case (r = -1) and fixed-sphere case (r >= 0). Odd p carries
// parity requirements on the dimensions involved.
inline BoundReport cohomology_sphere_bound(long long n, long long p, long long r) {
  if (n < 0) fail(ErrorKind::ParseError, "sphere dimension must be nonnegative");
  if (p < 2 || detail::prime_power_base(p) != p) {
    fail(ErrorKind::ParseError, std::to_string(p) + " is not a prime");
  }
  if (r < -1 || r >= n) {
    fail(ErrorKind::ParseError,
         "fixed-sphere dimension must be -1 (free) or between 0 and n-1");
  }
  BoundReport report;
  report.quantity = "ct_G";
  report.inputs["n"] = std::to_string(n);
  report.inputs["p"] = std::to_string(p);
  report.inputs["r"] = std::to_string(r);
  if (r == -1) {
    report.method = "cohomology-sphere-free";
    if (p == 2) {
      report.lower = (n + 1) * (n + 2) / 2;
    } else {
      if (n % 2 == 0) {
        fail(ErrorKind::ParityViolation,
             "odd p requires an odd-dimensional sphere for a free action");
      }
      const long long d = (n + 1) / 2;
      report.lower = d * (d + 1) / 2;
    }
  } else {
    report.method = "cohomology-sphere-fixed";
    long long relative = 0;
    if (p == 2) {
      relative = (n - r - 1) * (n - r + 2) / 2;
    } else {
      if ((n - r) % 2 != 0) {
        fail(ErrorKind::ParityViolation,
             "odd p requires n - r to be even in the fixed-sphere case");
      }
      const long long d = (n - r) / 2;
      relative = (d - 1) * (d + 1) / 2;
    }
    report.lower = (r + 2) + relative;
    report.notes.push_back("split as ct(fixed sphere) = " + std::to_string(r + 2) +
                           " plus relative part " + std::to_string(relative));
    report.notes.push_back(
        "the relative part bounds the strict relative covering type; the sum "
        "bounds ct_G through the relative decomposition");
  }
  report.check();
  return report;
}

// ct_G >= sct_G(X, fixed set) + ct(fixed set). Equality is conjectural and
// is never asserted here.
inline long long relative_sct_decomposition(long long ct_fixed, long long sct_relative) {
  if (ct_fixed < 1 || sct_relative < 1) {
    fail(ErrorKind::ParseError, "both summands must be at least 1");
  }
  return ct_fixed + sct_relative;
}

}  // namespace equicov
