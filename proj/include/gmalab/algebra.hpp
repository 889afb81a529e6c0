#pragma once
#include <optional>
#include <utility>
#include <vector>

#include "gmalab/linalg.hpp"

namespace gmalab {

// Ideal of a LocalAlgebra: an additive sublattice closed under multiplication
// by the algebra.  Always built through LocalAlgebra::ideal and friends, which
// guarantee the closure; equality is lattice equality.
struct Ideal {
  Lattice L;

  bool operator==(const Ideal& o) const { return L == o.L; }
  bool operator!=(const Ideal& o) const { return L != o.L; }
  bool contains(const Vec& x) const { return L.contains(x); }
  bool contains(const Ideal& o) const { return L.contains(o.L); }
  unsigned long long order() const { return L.size(); }
  bool is_zero() const { return L.is_zero(); }
};

// Commutative local O-algebra, finite as an O-module, given by a basis with
// per-generator additive orders and structure constants.  Element coordinates
// live in the free cover of the shape; canonical form via shape.reduce.
// Construction validates the full ring axioms and locality.
struct LocalAlgebra {
  BaseRing O;
  Shape shape;
  std::vector<Mat> mult; // mult[i].row(j) = coordinates of b_i * b_j
  Vec one;
  Ideal max_ideal;
  int residue_degree = 1; // residue field F_{p^f}

  static LocalAlgebra make(const BaseRing& O, std::vector<int> ord, std::vector<Mat> mult,
                           Vec one);
  // O itself as an algebra
  static LocalAlgebra base(const BaseRing& O);
  // O[x] / (x^2 - a*x - b, p^xord * x); basis {1, x}
  static LocalAlgebra quadratic(const BaseRing& O, std::int64_t a, std::int64_t b, int xord);
  // O[x] / (x^k); basis {1, x, ..., x^{k-1}}
  static LocalAlgebra monomial(const BaseRing& O, int k);
  // O[x, y] / (x^2, x*y, y^2); basis {1, x, y}
  static LocalAlgebra square_zero_pair(const BaseRing& O);

  std::size_t dim() const { return shape.dim(); }
  unsigned long long size() const { return shape.size(); }
  Vec zero() const { return Vec(dim(), 0); }
  Vec basis_elem(std::size_t i) const {
    Vec v(dim(), 0);
    v[i] = 1;
    return shape.reduce(v);
  }
  Vec scalar(std::int64_t c) const { return shape.reduce(vec_scale(O, c, one)); }

  Vec add(const Vec& x, const Vec& y) const { return shape.reduce(vec_add(O, x, y)); }
  Vec sub(const Vec& x, const Vec& y) const { return shape.reduce(vec_sub(O, x, y)); }
  Vec smul(std::int64_t c, const Vec& x) const { return shape.reduce(vec_scale(O, c, x)); }
  Vec mul(const Vec& x, const Vec& y) const;
  Vec pow_elem(Vec x, std::int64_t n) const;
  Mat mult_matrix(const Vec& x) const; // row i = coordinates of b_i * x
  bool is_unit_elem(const Vec& x) const { return !max_ideal.contains(x); }
  Vec inv_elem(const Vec& x) const; // throws non_invertible_image on non-units
  bool is_field() const { return max_ideal.is_zero(); }

  // smallest ideal containing the given elements
  Ideal ideal(const std::vector<Vec>& gens) const;
  Ideal zero_ideal() const { return Ideal{Lattice::zero(shape)}; }
  Ideal unit_ideal() const { return Ideal{Lattice::full(shape)}; }
  Ideal sum(const Ideal& I, const Ideal& J) const;
  Ideal product(const Ideal& I, const Ideal& J) const;
  Ideal annihilator(const Ideal& I) const;
  // dim over the residue field of I / m*I (Nakayama count)
  std::size_t minimal_generators(const Ideal& I) const;
  // a single generator when the ideal is principal
  std::optional<Vec> principal_generator(const Ideal& I) const;
  bool is_gorenstein() const; // socle has residue dimension 1
  // every ideal, for exhaustive cross-checks; guarded by the element cap
  std::vector<Ideal> all_ideals(unsigned long long elem_cap = 4096) const;

  ModuleInvariants ideal_invariants(const Ideal& I) const { return lattice_invariants(I.L); }
};

// The nilradical of a truncated algebra always swallows the uniformizer
// (p^e = 0), so at full truncation it coincides with the maximal ideal.  The
// structural part, generated by lifts of the nilpotents of A/pA, is what
// survives the truncation artifact.
struct NilradicalReport {
  Ideal nilradical;
  Ideal structural;
  bool equals_max_ideal = false;
  bool uniformizer_nilpotent = true;
};
NilradicalReport nilradical_report(const LocalAlgebra& A);

// O-algebra map between LocalAlgebras, given on basis elements; construction
// checks unit, additivity across the order relations, and multiplicativity.
struct AlgebraHom {
  LocalAlgebra dom, cod;
  Mat M; // row i = image coordinates of dom basis element i

  static AlgebraHom make(LocalAlgebra dom, LocalAlgebra cod, Mat M);
  Vec apply(const Vec& x) const { return cod.shape.reduce(vec_mat(dom.O, x, M)); }
  bool is_surjective() const;
  Lattice kernel_lattice() const;
  Ideal kernel() const { return Ideal{kernel_lattice()}; }
};

// A / I with the projection map; the quotient's basis is chosen through a
// diagonalization of I's lattice, so its shape lists the invariant factors.
std::pair<LocalAlgebra, AlgebraHom> quotient_algebra(const LocalAlgebra& A, const Ideal& I);

} // namespace gmalab
