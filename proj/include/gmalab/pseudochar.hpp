#pragma once
#include <array>
#include <optional>
#include <vector>

#include "gmalab/rep.hpp"

namespace gmalab {

// The group algebra A[G] as an O-module with convolution product; elements
// are flat coordinate vectors with the A-coefficient of g in block g.
struct GroupAlgebra {
  FiniteGroup G;
  LocalAlgebra A;
  Shape shape;

  static GroupAlgebra make(FiniteGroup G, LocalAlgebra A);
  std::size_t dim() const { return shape.dim(); }
  Vec coeff(const Vec& x, int g) const;
  Vec delta(int g, const Vec& a) const; // the element a * g
  Vec one() const;
  Vec convolve(const Vec& x, const Vec& y) const;
  Vec apply_involution(const Involution& tau, const Vec& x) const;
  Lattice augmentation_ideal() const; // spanned by g - 1
};

// Central A-valued function on G with T(1) = n.  Only centrality and the
// value at 1 are validated for abstract inputs; n must stay below p.
struct Pseudocharacter {
  FiniteGroup G;
  LocalAlgebra A;
  std::size_t n = 0;
  Mat values; // row g = T(g) in A-coordinates

  static Pseudocharacter make(FiniteGroup G, LocalAlgebra A, std::size_t n, Mat values);
  static Pseudocharacter of_rep(const GroupRep& rho);
  Vec at(int g) const { return values.row((std::size_t)g); }
  Vec eval(const GroupAlgebra& R, const Vec& x) const; // linear extension
};

bool check_self_dual(const Pseudocharacter& T, const Involution& tau);

struct KernelReport {
  Lattice kernel;        // {x : T(xy) = 0 for every y}, a two-sided ideal
  Lattice module_kernel; // {x : T(x) = 0}
};
KernelReport kernel_of_T(const Pseudocharacter& T);
// {x : sum_g x_g rho(g) = 0} inside A[G]
Lattice kernel_of_rho(const GroupRep& rho);

// ker rho and ker(tr rho) agree over large coefficient rings but can differ
// at finite truncation level; a witness is produced when they do.
struct KernelComparison {
  Lattice ker_rho, ker_T;
  bool equal = false;
  std::optional<Vec> witness; // element of ker T outside ker rho
};
KernelComparison compare_kernels(const GroupRep& rho);

// A[G]/K with the induced product and trace, for a two-sided K inside ker T.
struct CHQuotient {
  GroupAlgebra R;
  Pseudocharacter T;
  Lattice K;
  Shape shape;
  std::vector<Mat> mult; // mult[i]: row j = coordinates of s_i * s_j
  Vec one;
  Mat lifts;     // row i = a lift of the basis element s_i into A[G]
  Mat sel;       // projection A[G] -> S: x maps to selected entries of x * sel
  std::vector<std::size_t> keep;
  Mat group_img; // row g = image of g
  Mat embed;     // row mu = image of the A-basis element b_mu
  Mat traces;    // row i = T(s_i) in A-coordinates
  std::optional<Mat> tau; // induced anti-automorphism, when given

  std::size_t dim() const { return shape.dim(); }
  Vec project(const Vec& x) const;
  Vec lift(const Vec& s) const;
  Vec add(const Vec& x, const Vec& y) const;
  Vec sub(const Vec& x, const Vec& y) const;
  Vec mul(const Vec& x, const Vec& y) const;
  Vec amul(const Vec& a, const Vec& x) const; // action of a in A
  Vec trace_of(const Vec& s) const;           // value in A
  Vec apply_tau(const Vec& s) const;
  bool is_idempotent(const Vec& s) const;
};
CHQuotient cayley_hamilton_quotient(const Pseudocharacter& T, const Lattice& K,
                                    const std::optional<Involution>& tau = {});
// the induced surjection between quotients by nested kernels, as images of
// basis elements
Mat quotient_surjection(const CHQuotient& from, const CHQuotient& to);

// cubic Newton iteration e <- 3e^2 - 2e^3 from a residually idempotent seed
Vec newton_idempotent(const CHQuotient& S, Vec x);
// lift a residual orthogonal pair summing to one; with tau_symmetric the
// seeds are averaged with their tau-images first and the results stay fixed
std::pair<Vec, Vec> lift_idempotents(const CHQuotient& S, const Vec& e1bar, const Vec& e2bar,
                                     bool tau_symmetric = false);

struct GMADecomposition {
  CHQuotient S;
  Vec e1, e2;
  std::size_t n1 = 0, n2 = 0; // T(e_i) = n_i
  std::array<Lattice, 4> corner; // e_i S e_j in the order 11, 12, 21, 22
  std::array<ModuleInvariants, 4> corner_inv;
  bool tau_stable = false;
};
GMADecomposition gma_decompose(const CHQuotient& S, const Vec& e1, const Vec& e2);

// ideal of A generated by the traces of products A_12 * A_21
Ideal reducibility_ideal(const GMADecomposition& gma);

// T mod I is a sum of two A/I-valued characters (complete for n_i = 1)
bool splits_as_two_characters(const Pseudocharacter& T, const Ideal& I);
// the reducibility ideal splits T and no maximal proper subideal does
bool verify_minimality(const Pseudocharacter& T, const Ideal& IT);

struct PrincipalityCertificate {
  Vec generator; // element of A generating the reducibility ideal
  Ideal ideal;
  bool used_involution = false;
  bool corner_swap_is_iso = false; // tau carries A_12 onto A_21
  Vec g12, g21;                    // chosen corner generators, S coordinates
};
// via the involution when the decomposition is tau-stable, else requires
// both corners cyclic
PrincipalityCertificate principality_certificate(const GMADecomposition& gma);

// search for a conjugator Z == 1 mod m with Z rho Z^{-1} block-upper-
// triangular over A/I, lifting layer by layer along powers of the maximal
// ideal; failure reports the first obstructed layer
struct BlockTriangularization {
  bool success = false;
  int obstruction_layer = -1;
  LocalAlgebra B; // A/I
  AlgebraHom to_quotient;
  AMat conjugator;
  std::optional<GroupRep> upper;
};
BlockTriangularization block_triangularize(const GroupRep& rho, std::size_t n1, const Ideal& I);

bool nonzerodivisor_check(const LocalAlgebra& A, const Vec& t);

} // namespace gmalab
