#pragma once
#include <cstdint>
#include <vector>

#include "gmalab/error.hpp"

namespace gmalab {

// Coefficient ring Z/p^e for an odd prime p, uniformizer p.  All element
// coordinates throughout the library are canonical residues in [0, p^e).
struct BaseRing {
  std::int64_t p = 0;
  int e = 0;
  std::int64_t q = 0; // p^e

  static BaseRing make(std::int64_t p, int e);

  bool operator==(const BaseRing& o) const { return p == o.p && e == o.e; }
  bool operator!=(const BaseRing& o) const { return !(*this == o); }

  std::int64_t norm(std::int64_t x) const {
    x %= q;
    return x < 0 ? x + q : x;
  }
  std::int64_t add(std::int64_t a, std::int64_t b) const { return (a + b) % q; }
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return norm(a - b); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a * b) % q; }
  std::int64_t neg(std::int64_t a) const { return norm(-a); }

  // p-adic valuation of a residue; val(0) = e by convention.
  int val(std::int64_t x) const {
    if (x == 0) return e;
    int v = 0;
    while (x % p == 0) { x /= p; ++v; }
    return v;
  }
  bool is_unit(std::int64_t x) const { return x % p != 0; }
  std::int64_t pow_p(int k) const { // p^k as a residue, k <= e
    std::int64_t r = 1;
    for (int i = 0; i < k; ++i) r *= p;
    return r % q;
  }
  std::int64_t pow(std::int64_t a, std::int64_t n) const {
    std::int64_t r = 1;
    a = norm(a);
    for (; n > 0; n >>= 1) {
      if (n & 1) r = mul(r, a);
      a = mul(a, a);
    }
    return r;
  }
  // Inverse of a unit (extended Euclid on x, q).
  std::int64_t inv(std::int64_t x) const;
  // Writes x = unit * p^val; returns the unit part (1 for x = 0).
  std::int64_t unit_part(std::int64_t x) const {
    if (x == 0) return 1;
    while (x % p == 0) x /= p;
    return x;
  }
};

using Vec = std::vector<std::int64_t>;

} // namespace gmalab
