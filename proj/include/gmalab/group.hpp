#pragma once
#include <cstddef>
#include <vector>

#include "gmalab/error.hpp"

namespace gmalab {

// Finite group as a full multiplication table over element indices 0..n-1,
// with 0 the identity.  Construction validates the axioms; associativity is
// checked exhaustively for small tables and by Light's test on a generating
// set for large ones.
struct FiniteGroup {
  std::size_t n = 0;
  std::vector<std::vector<int>> table;
  std::vector<int> inv;
  std::vector<int> gens;

  static constexpr std::size_t closure_cap = 2000;

  static FiniteGroup from_table(std::vector<std::vector<int>> table);
  static FiniteGroup cyclic(int m);
  static FiniteGroup dihedral(int k); // order 2k, k >= 2
  static FiniteGroup quaternion8();
  // Z/m ⋊ Z/k, the generator of Z/k acting by x -> t*x (t^k = 1 mod m)
  static FiniteGroup semidirect(int m, int k, int t);

  std::size_t order() const { return n; }
  int mul(int g, int h) const { return table[g][h]; }
  int invert(int g) const { return inv[g]; }
  int power(int g, long long k) const;
  int element_order(int g) const;
  bool is_abelian() const;
  // conjugate h by g: g * h * g^{-1}
  int conj(int g, int h) const { return mul(mul(g, h), inv[g]); }
};

// Subgroup generated by the given elements: the abstract group plus the list
// mapping its indices back into G (identity first).
std::pair<FiniteGroup, std::vector<int>> subgroup(const FiniteGroup& G,
                                                  const std::vector<int>& gens);

} // namespace gmalab
