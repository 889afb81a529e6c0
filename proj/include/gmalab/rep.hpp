#pragma once
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gmalab/algebra.hpp"
#include "gmalab/group.hpp"

namespace gmalab {

// n x n matrix over a LocalAlgebra; entries are canonical coordinate vectors.
struct AMat {
  std::size_t n = 0;
  std::vector<Vec> e; // row-major, n*n entries

  AMat() = default;
  AMat(std::size_t n, std::size_t d) : n(n), e(n * n, Vec(d, 0)) {}
  Vec& at(std::size_t i, std::size_t j) { return e[i * n + j]; }
  const Vec& at(std::size_t i, std::size_t j) const { return e[i * n + j]; }
  bool operator==(const AMat& o) const { return n == o.n && e == o.e; }
  bool operator!=(const AMat& o) const { return !(*this == o); }
};

AMat amat_identity(const LocalAlgebra& A, std::size_t n);
AMat amat_scalar(const LocalAlgebra& A, std::size_t n, const Vec& a);
AMat amat_add(const LocalAlgebra& A, const AMat& X, const AMat& Y);
AMat amat_sub(const LocalAlgebra& A, const AMat& X, const AMat& Y);
AMat amat_mul(const LocalAlgebra& A, const AMat& X, const AMat& Y);
AMat amat_smul(const LocalAlgebra& A, const Vec& a, const AMat& X);
AMat amat_transpose(const AMat& X);
Vec amat_trace(const LocalAlgebra& A, const AMat& X);
bool amat_is_zero(const AMat& X);
// Gauss-Jordan over the local algebra; a pivot must be a unit in every
// column, otherwise the matrix is singular and non_invertible_image is thrown.
AMat amat_inv(const LocalAlgebra& A, const AMat& X);
bool amat_invertible(const LocalAlgebra& A, const AMat& X);

// M_n(A) as an O-module: flat coordinates with entry (i,j) at block i*n+j.
Shape matrix_shape(const LocalAlgebra& A, std::size_t n);
Vec amat_flatten(const AMat& X);
AMat amat_unflatten(const LocalAlgebra& A, std::size_t n, const Vec& flat);

// Representation G -> GL_n(A), stored on every element and validated as a
// homomorphism with invertible images.
struct GroupRep {
  FiniteGroup G;
  LocalAlgebra A;
  std::size_t n = 0;
  std::vector<AMat> mats;

  static GroupRep from_map(FiniteGroup G, LocalAlgebra A, std::vector<AMat> mats);
  const AMat& at(int g) const { return mats[g]; }
  Vec trace(int g) const { return amat_trace(A, mats[g]); }
  std::vector<Vec> character() const;
};

// Closure of a set of invertible matrices under multiplication, giving the
// abstract group and the tautological representation.  Indices are assigned
// in BFS order from the identity; throws closure_too_large beyond the cap.
std::pair<FiniteGroup, GroupRep> matrix_group_closure(const LocalAlgebra& A,
                                                      const std::vector<AMat>& gens,
                                                      std::size_t cap = FiniteGroup::closure_cap);

// {X : X rho(g) = rho(g) X for all g}, as a lattice in matrix_shape coords.
Lattice rep_centralizer(const GroupRep& rho);
// Burnside criterion on the residual representation: the images span the
// full matrix algebra over the residue field.
bool is_absolutely_irreducible(const GroupRep& rho);
GroupRep base_change(const GroupRep& rho, const AlgebraHom& h);
std::pair<GroupRep, AlgebraHom> mod_ideal(const GroupRep& rho, const Ideal& I);

// A^x-valued character of G.
struct Character {
  FiniteGroup G;
  LocalAlgebra A;
  std::vector<Vec> val;

  static Character make(FiniteGroup G, LocalAlgebra A, std::vector<Vec> val);
  static Character trivial(const FiniteGroup& G, const LocalAlgebra& A);
  Character mul(const Character& o) const;
  Character inverse() const;
  bool operator==(const Character& o) const { return val == o.val; }
};

// Upper-triangular rep [[chi1, f], [0, chi2]]; the homomorphism check built
// into from_map is exactly the cocycle condition on f.
GroupRep assemble_extension(const Character& chi1, const Character& chi2,
                            const std::vector<Vec>& f);
// a with f(g) = chi1(g) a - a chi2(g), if the extension splits
std::optional<Vec> splitting_witness(const Character& chi1, const Character& chi2,
                                     const std::vector<Vec>& f);

// A-linear anti-automorphism of A[G] with square one, acting on group
// elements by tau(g) = coef[g] * perm[g].
struct Involution {
  FiniteGroup G;
  LocalAlgebra A;
  std::vector<int> perm;
  std::vector<Vec> coef;

  static Involution inverse(const FiniteGroup& G, const LocalAlgebra& A);
  static Involution conjugate_inverse(const FiniteGroup& G, const LocalAlgebra& A, int c);
  static Involution twisted_inverse(const Character& chi);
  static Involution make(FiniteGroup G, LocalAlgebra A, std::vector<int> perm,
                         std::vector<Vec> coef);
};

} // namespace gmalab
