#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gmalab/cohomology.hpp"
#include "gmalab/pseudochar.hpp"

using namespace gmalab;

namespace {

const BaseRing F3 = BaseRing::make(3, 1);
const BaseRing F5 = BaseRing::make(5, 1);
const BaseRing Z9 = BaseRing::make(3, 2);

template <typename F>
errc code_of(F&& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  REQUIRE(false);
  return errc::internal;
}

AMat m2(const LocalAlgebra& A, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  AMat X(2, A.dim());
  X.at(0, 0) = A.scalar(a);
  X.at(0, 1) = A.scalar(b);
  X.at(1, 0) = A.scalar(c);
  X.at(1, 1) = A.scalar(d);
  return X;
}

std::pair<FiniteGroup, GroupRep> s3_standard(const LocalAlgebra& A) {
  return matrix_group_closure(A, {m2(A, 0, -1, 1, -1), m2(A, 0, 1, 1, 0)});
}

int find_mat(const GroupRep& rho, const AMat& X) {
  for (std::size_t g = 0; g < rho.G.order(); ++g)
    if (rho.mats[g] == X) return (int)g;
  REQUIRE(false);
  return -1;
}

int element_of_order(const FiniteGroup& G, int k) {
  for (std::size_t g = 0; g < G.order(); ++g)
    if (G.element_order((int)g) == k) return (int)g;
  REQUIRE(false);
  return -1;
}

Character sign_character(const FiniteGroup& G, const LocalAlgebra& A) {
  std::vector<Vec> val;
  for (std::size_t g = 0; g < G.order(); ++g)
    val.push_back(A.scalar(G.element_order((int)g) == 2 ? -1 : 1));
  return Character::make(G, A, val);
}

GModule sign_module(const FiniteGroup& G, const BaseRing& O, int level) {
  std::vector<std::int64_t> val;
  for (std::size_t g = 0; g < G.order(); ++g)
    val.push_back(G.element_order((int)g) == 2 ? O.q - 1 : 1);
  return GModule::from_character_values(G, O, val, level);
}

// nonsplit [[1, f], [0, sign]] built from a cocycle class outside B^1
GroupRep nonsplit_extension(const FiniteGroup& G, const LocalAlgebra& A, int level) {
  Character triv = Character::trivial(G, A);
  Character sgn = sign_character(G, A);
  CocycleSpace cs = h1(sign_module(G, A.O, level));
  Vec c;
  for (std::size_t r = 0; r < cs.Z1.basis.rows; ++r)
    if (!cs.B1.contains(cs.Z1.basis.row(r))) {
      c = cs.Z1.basis.row(r);
      break;
    }
  REQUIRE(!c.empty());
  std::vector<Vec> f;
  for (std::size_t g = 0; g < G.order(); ++g) f.push_back(A.mul(Vec{c[g]}, sgn.val[g]));
  GroupRep rho = assemble_extension(triv, sgn, f);
  REQUIRE(!splitting_witness(triv, sgn, f).has_value());
  return rho;
}

// regular representation by permutation matrices
GroupRep regular_rep(const FiniteGroup& G, const LocalAlgebra& A) {
  std::vector<AMat> mats;
  for (std::size_t g = 0; g < G.order(); ++g) {
    AMat P(G.order(), A.dim());
    for (std::size_t h = 0; h < G.order(); ++h)
      P.at((std::size_t)G.mul((int)g, (int)h), h) = A.one;
    mats.push_back(amat_transpose(P));
  }
  return GroupRep::from_map(G, A, std::move(mats));
}

} // namespace

TEST_CASE("group algebra convolution matches the group law") {
  FiniteGroup s3 = FiniteGroup::dihedral(3);
  LocalAlgebra A = LocalAlgebra::base(F5);
  GroupAlgebra R = GroupAlgebra::make(s3, A);
  CHECK(R.dim() == 6);
  for (std::size_t g = 0; g < 6; ++g)
    for (std::size_t h = 0; h < 6; ++h)
      CHECK(R.convolve(R.delta((int)g, A.one), R.delta((int)h, A.one)) ==
            R.delta(s3.mul((int)g, (int)h), A.one));
  Vec x = R.delta(1, A.scalar(2));
  x = vec_add(F5, x, R.delta(4, A.scalar(3)));
  CHECK(R.convolve(R.one(), x) == x);
  CHECK(R.convolve(x, R.one()) == x);
  for (std::size_t g = 0; g < 6; ++g)
    for (std::size_t h = 0; h < 6; ++h)
      for (std::size_t k = 0; k < 6; ++k) {
        Vec a = R.delta((int)g, A.scalar(2)), b = R.delta((int)h, A.scalar(3));
        Vec c = R.delta((int)k, A.scalar(4));
        CHECK(R.convolve(R.convolve(a, b), c) == R.convolve(a, R.convolve(b, c)));
      }

  Lattice aug = R.augmentation_ideal();
  CHECK(aug.size() == 5 * 5 * 5 * 5 * 5);
  for (std::size_t r = 0; r < aug.basis.rows; ++r) {
    CHECK(aug.contains(R.convolve(R.delta(3, A.one), aug.basis.row(r))));
    CHECK(aug.contains(R.convolve(aug.basis.row(r), R.delta(3, A.one))));
  }

  Involution tau = Involution::inverse(s3, A);
  for (std::size_t g = 0; g < 6; ++g) {
    CHECK(R.apply_involution(tau, R.delta((int)g, A.one)) ==
          R.delta(s3.invert((int)g), A.one));
    for (std::size_t h = 0; h < 6; ++h) {
      Vec a = R.delta((int)g, A.scalar(2)), b = R.delta((int)h, A.scalar(3));
      CHECK(R.apply_involution(tau, R.convolve(a, b)) ==
            R.convolve(R.apply_involution(tau, b), R.apply_involution(tau, a)));
    }
  }
}

TEST_CASE("pseudocharacter validation") {
  LocalAlgebra A5 = LocalAlgebra::base(F5);
  auto [s3, rho] = s3_standard(A5);
  Pseudocharacter T = Pseudocharacter::of_rep(rho);
  CHECK(T.at(0) == A5.scalar(2));
  int r = find_mat(rho, m2(A5, 0, -1, 1, -1));
  CHECK(T.at(r) == A5.scalar(-1));
  int s = find_mat(rho, m2(A5, 0, 1, 1, 0));
  CHECK(T.at(s) == A5.scalar(0));

  // breaking class-constancy on one reflection breaks centrality
  Mat bad = T.values;
  bad.set_row((std::size_t)s, A5.scalar(1));
  CHECK(code_of([&] { Pseudocharacter::make(s3, A5, 2, bad); }) == errc::relation_violated);
  Mat one_off = T.values;
  one_off.set_row(0, A5.scalar(1));
  CHECK(code_of([&] { Pseudocharacter::make(s3, A5, 2, one_off); }) ==
        errc::relation_violated);

  // dimension must stay below p
  FiniteGroup c3 = FiniteGroup::cyclic(3);
  GroupRep reg3 = regular_rep(c3, LocalAlgebra::base(F3));
  CHECK(code_of([&] { Pseudocharacter::of_rep(reg3); }) == errc::bad_scenario);
}

TEST_CASE("kernels of a faithful semisimple representation are zero") {
  FiniteGroup c3 = FiniteGroup::cyclic(3);
  GroupRep reg = regular_rep(c3, LocalAlgebra::base(F5));
  KernelComparison cmp = compare_kernels(reg);
  CHECK(cmp.equal);
  CHECK(cmp.ker_rho.is_zero());
  CHECK(cmp.ker_T.is_zero());
  CHECK(!cmp.witness.has_value());
}

TEST_CASE("kernel of twice the trivial character is the augmentation ideal") {
  FiniteGroup c3 = FiniteGroup::cyclic(3);
  LocalAlgebra A = LocalAlgebra::base(F3);
  Mat values(3, 1);
  for (std::size_t g = 0; g < 3; ++g) values.set_row(g, A.scalar(2));
  Pseudocharacter T = Pseudocharacter::make(c3, A, 2, values);
  KernelReport rep = kernel_of_T(T);
  GroupAlgebra R = GroupAlgebra::make(c3, A);
  CHECK(rep.kernel == R.augmentation_ideal());
  CHECK(rep.module_kernel == rep.kernel);
}

TEST_CASE("trace kernel strictly contains the representation kernel") {
  FiniteGroup s3 = FiniteGroup::dihedral(3);
  GroupRep rho0 = nonsplit_extension(s3, LocalAlgebra::base(F3), 1);
  KernelComparison cmp = compare_kernels(rho0);
  // hand count: ker rho is cut out by three independent linear conditions on
  // six coordinates, ker T by only two (the trace is triv + sign)
  CHECK(cmp.ker_rho.size() == 27);
  CHECK(cmp.ker_T.size() == 81);
  CHECK(!cmp.equal);
  REQUIRE(cmp.witness.has_value());
  CHECK(cmp.ker_T.contains(*cmp.witness));
  CHECK(!cmp.ker_rho.contains(*cmp.witness));
}

TEST_CASE("quotients by zero and by the augmentation ideal") {
  FiniteGroup c3 = FiniteGroup::cyclic(3);
  LocalAlgebra A = LocalAlgebra::base(F3);
  Mat values(3, 1);
  for (std::size_t g = 0; g < 3; ++g) values.set_row(g, A.scalar(2));
  Pseudocharacter T = Pseudocharacter::make(c3, A, 2, values);
  GroupAlgebra R = GroupAlgebra::make(c3, A);

  CHQuotient S0 = cayley_hamilton_quotient(T, Lattice::zero(R.shape));
  CHECK(S0.dim() == 3);
  for (std::size_t g = 0; g < 3; ++g)
    for (std::size_t h = 0; h < 3; ++h)
      CHECK(S0.mul(S0.project(R.delta((int)g, A.one)), S0.project(R.delta((int)h, A.one))) ==
            S0.project(R.delta(c3.mul((int)g, (int)h), A.one)));

  CHQuotient S1 = cayley_hamilton_quotient(T, R.augmentation_ideal());
  CHECK(S1.dim() == 1);
  CHECK(S1.trace_of(S1.one) == A.scalar(2));

  Mat M = quotient_surjection(S0, S1);
  for (std::size_t i = 0; i < 3; ++i) CHECK(M.row(i) == S1.one);
  CHECK(code_of([&] { quotient_surjection(S1, S0); }) == errc::bad_scenario);

  // the full lattice contains 1, so the trace cannot descend
  CHECK(code_of([&] { cayley_hamilton_quotient(T, Lattice::full(R.shape)); }) ==
        errc::bad_scenario);
  // the span of the identity element alone is not an ideal
  Mat row(0, R.dim());
  row.push_row(R.one());
  CHECK(code_of([&] { cayley_hamilton_quotient(T, Lattice::span(R.shape, row)); }) ==
        errc::bad_scenario);
}

TEST_CASE("cubic newton iteration on scalars") {
  FiniteGroup c1 = FiniteGroup::cyclic(1);
  LocalAlgebra A = LocalAlgebra::base(Z9);
  Mat values(1, 1);
  values.set_row(0, A.scalar(1));
  Pseudocharacter T = Pseudocharacter::make(c1, A, 1, values);
  GroupAlgebra R = GroupAlgebra::make(c1, A);
  CHQuotient S = cayley_hamilton_quotient(T, Lattice::zero(R.shape));

  // 3*16 - 2*64 = -80 = 1 mod 9, one step
  CHECK(newton_idempotent(S, A.scalar(4)) == A.scalar(1));
  CHECK(newton_idempotent(S, A.scalar(3)) == A.scalar(0));
  CHECK(newton_idempotent(S, A.scalar(1)) == A.scalar(1));
  // 2 cycles at the non-idempotent 5 forever
  CHECK(code_of([&] { newton_idempotent(S, A.scalar(2)); }) == errc::no_convergence);

  // oracle: the only idempotents of the scalar ring are 0 and 1
  for (std::int64_t x = 0; x < 9; ++x)
    CHECK(S.is_idempotent(Vec{x}) == (x == 0 || x == 1));

  // a pair lifting to (1, 0) is degenerate
  CHECK(code_of([&] { lift_idempotents(S, A.scalar(1), A.scalar(3)); }) ==
        errc::not_residual_idempotent);
  // tau was never installed
  CHECK(code_of([&] { lift_idempotents(S, A.scalar(1), A.scalar(3), true); }) ==
        errc::bad_scenario);
}

TEST_CASE("split trace over the residue field") {
  FiniteGroup s3 = FiniteGroup::dihedral(3);
  LocalAlgebra A = LocalAlgebra::base(F3);
  // T = triv + sign as an abstract trace
  Mat values(6, 1);
  for (std::size_t g = 0; g < 6; ++g)
    values.set_row(g, A.scalar(s3.element_order((int)g) == 2 ? 0 : 2));
  Pseudocharacter T = Pseudocharacter::make(s3, A, 2, values);
  Involution tau = Involution::inverse(s3, A);
  CHECK(check_self_dual(T, tau));

  Lattice K = kernel_of_T(T).kernel;
  CHECK(K.size() == 81);
  CHQuotient S = cayley_hamilton_quotient(T, K, tau);
  CHECK(S.dim() == 2);

  // seed (s + 1)/2: exact idempotent because S is a product of two lines
  GroupAlgebra R = GroupAlgebra::make(s3, A);
  int s = element_of_order(s3, 2);
  Vec seed = S.project(vec_scale(F3, 2, vec_add(F3, R.delta(0, A.one), R.delta(s, A.one))));
  CHECK(S.is_idempotent(seed));
  CHECK(S.trace_of(seed) == A.scalar(1));

  auto [e1, e2] = lift_idempotents(S, seed, S.sub(S.one, seed), true);
  GMADecomposition gma = gma_decompose(S, e1, e2);
  CHECK(gma.n1 == 1);
  CHECK(gma.n2 == 1);
  CHECK(gma.tau_stable);
  CHECK(gma.corner_inv[0].order == 3);
  CHECK(gma.corner_inv[3].order == 3);
  CHECK(gma.corner[1].is_zero());
  CHECK(gma.corner[2].is_zero());

  Ideal IT = reducibility_ideal(gma);
  CHECK(IT == A.zero_ideal());
  CHECK(splits_as_two_characters(T, IT));
  CHECK(verify_minimality(T, IT));

  PrincipalityCertificate cert = principality_certificate(gma);
  CHECK(cert.used_involution);
  CHECK(cert.corner_swap_is_iso);
  CHECK(cert.ideal == IT);
  CHECK(is_zero(cert.generator));
}

TEST_CASE("standard representation at level two") {
  LocalAlgebra A = LocalAlgebra::base(Z9);
  auto [s3, rho] = s3_standard(A);
  Pseudocharacter T = Pseudocharacter::of_rep(rho);
  int r = find_mat(rho, m2(A, 0, -1, 1, -1));
  int s = find_mat(rho, m2(A, 0, 1, 1, 0));
  CHECK(T.at(0) == A.scalar(2));
  CHECK(T.at(r) == A.scalar(8));
  CHECK(T.at(s) == A.scalar(0));

  Involution tau = Involution::inverse(s3, A);
  CHECK(check_self_dual(T, tau));
  Lattice K = kernel_of_T(T).kernel;
  CHQuotient S = cayley_hamilton_quotient(T, K, tau);

  // seed (s + 1)/2 with 1/2 = 5; its trace is 5 * (2 + 0) = 1
  GroupAlgebra R = GroupAlgebra::make(s3, A);
  Vec zR = vec_scale(Z9, 5, vec_add(Z9, R.delta(0, A.one), R.delta(s, A.one)));
  Vec seed = S.project(zR);
  CHECK(S.trace_of(seed) == A.scalar(1));

  auto [e1, e2] = lift_idempotents(S, seed, S.sub(S.one, seed), true);
  GMADecomposition gma = gma_decompose(S, e1, e2);
  CHECK(gma.n1 == 1);
  CHECK(gma.n2 == 1);
  CHECK(gma.tau_stable);
  CHECK(gma.corner_inv[1].order == gma.corner_inv[2].order);

  // characters of S3 into units of Z/9 kill the rotation, so a splitting
  // forces T(r) = 2 mod I; hence I_T = (3), and it is minimal
  Ideal IT = reducibility_ideal(gma);
  CHECK(IT == A.ideal({A.scalar(3)}));
  CHECK(splits_as_two_characters(T, IT));
  CHECK(!splits_as_two_characters(T, A.zero_ideal()));
  CHECK(splits_as_two_characters(T, A.unit_ideal()));
  CHECK(verify_minimality(T, IT));

  PrincipalityCertificate cert = principality_certificate(gma);
  CHECK(cert.used_involution);
  CHECK(cert.corner_swap_is_iso);
  CHECK(cert.ideal == IT);
  CHECK(A.ideal({cert.generator}) == IT);
  // at this truncation the generator is a zero divisor
  CHECK(!nonzerodivisor_check(A, cert.generator));
  CHECK(nonzerodivisor_check(A, A.one));

  // the reducibility ideal does not depend on the chosen idempotent lift
  Vec zR2 = vec_add(Z9, zR, vec_scale(Z9, 3, R.delta(r, A.one)));
  auto [f1, f2] = lift_idempotents(S, S.project(zR2), S.sub(S.one, S.project(zR2)), true);
  GMADecomposition gma2 = gma_decompose(S, f1, f2);
  CHECK(reducibility_ideal(gma2) == IT);

  // the representation kernel sits inside the trace kernel
  CHQuotient Srho = cayley_hamilton_quotient(T, kernel_of_rho(rho));
  Mat M = quotient_surjection(Srho, S);
  CHECK(M.rows == Srho.dim());
}

TEST_CASE("full matrix algebra over the residue field") {
  LocalAlgebra A = LocalAlgebra::base(F5);
  auto [s3, rho] = s3_standard(A);
  CHECK(is_absolutely_irreducible(rho));
  CHECK(compare_kernels(rho).equal);

  Pseudocharacter T = Pseudocharacter::of_rep(rho);
  Involution tau = Involution::inverse(s3, A);
  Lattice K = kernel_of_T(T).kernel;
  CHQuotient S = cayley_hamilton_quotient(T, K, tau);
  CHECK(S.dim() == 4);
  CHECK(Lattice::full(S.shape).size() == 625);

  // seed 3(s + 1) is exactly idempotent: 9(2 + 2s) = 3(s + 1) mod 5
  GroupAlgebra R = GroupAlgebra::make(s3, A);
  int s = find_mat(rho, m2(A, 0, 1, 1, 0));
  Vec seed = S.project(vec_scale(F5, 3, vec_add(F5, R.delta(0, A.one), R.delta(s, A.one))));
  CHECK(S.is_idempotent(seed));
  CHECK(S.trace_of(seed) == A.scalar(1));

  auto [e1, e2] = lift_idempotents(S, seed, S.sub(S.one, seed), true);
  GMADecomposition gma = gma_decompose(S, e1, e2);
  CHECK(gma.n1 == 1);
  for (std::size_t c = 0; c < 4; ++c) CHECK(gma.corner_inv[c].order == 5);

  Ideal IT = reducibility_ideal(gma);
  CHECK(IT == A.unit_ideal());
  CHECK(splits_as_two_characters(T, IT));
  CHECK(!splits_as_two_characters(T, A.zero_ideal()));
  CHECK(verify_minimality(T, IT));

  PrincipalityCertificate cert = principality_certificate(gma);
  CHECK(cert.ideal == IT);
  CHECK(nonzerodivisor_check(A, cert.generator));
}

TEST_CASE("deformation with a nontrivial lower-left direction") {
  FiniteGroup d5 = FiniteGroup::dihedral(5);
  LocalAlgebra A1 = LocalAlgebra::base(F5);
  CocycleSpace cs = h1(sign_module(d5, F5, 1));
  CHECK(cs.H1.order == 5);
  GroupRep rho0 = nonsplit_extension(d5, A1, 1);

  // pick an adjoint cocycle outside the coboundaries and the triangular
  // directions: the deformed representation is then honestly irreducible
  GModule ad = GModule::adjoint(rho0);
  CocycleSpace ca = h1(ad);
  Shape cshape = cocycle_shape(ad);
  Mat utrows(0, cshape.dim());
  for (std::size_t g = 0; g < d5.order(); ++g)
    for (std::size_t k : {std::size_t(0), std::size_t(1), std::size_t(3)}) {
      Vec e(cshape.dim(), 0);
      e[g * 4 + k] = 1;
      utrows.push_row(e);
    }
  Lattice ut = Lattice::span(cshape, utrows);
  Lattice reducible = ca.B1.sum(ca.Z1.intersect(ut));
  Vec u;
  for (std::size_t r = 0; r < ca.Z1.basis.rows; ++r)
    if (!reducible.contains(ca.Z1.basis.row(r))) {
      u = ca.Z1.basis.row(r);
      break;
    }
  REQUIRE(!u.empty());

  // rho(g) = (1 + eps U(g)) rho0(g) over F5[eps]
  LocalAlgebra A2 = LocalAlgebra::quadratic(F5, 0, 0, 1);
  auto deform = [&](const Vec& cocycle) {
    std::vector<AMat> mats;
    for (std::size_t g = 0; g < d5.order(); ++g) {
      AMat M(2, A2.dim());
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          std::int64_t ur = 0;
          for (std::size_t k = 0; k < 2; ++k)
            ur = F5.add(ur, F5.mul(cocycle[g * 4 + i * 2 + k], rho0.mats[g].at(k, j)[0]));
          M.at(i, j) = Vec{rho0.mats[g].at(i, j)[0], ur};
        }
      mats.push_back(M);
    }
    return GroupRep::from_map(d5, A2, std::move(mats));
  };
  GroupRep rhod = deform(u);

  Pseudocharacter T = Pseudocharacter::of_rep(rhod);
  Lattice K = kernel_of_T(T).kernel;
  CHQuotient S = cayley_hamilton_quotient(T, K);
  GroupAlgebra R = GroupAlgebra::make(d5, A2);
  int s0 = element_of_order(d5, 2);
  Vec seed =
      S.project(vec_scale(F5, 3, vec_add(F5, R.delta(0, A2.one), R.delta(s0, A2.one))));
  auto [e1, e2] = lift_idempotents(S, seed, S.sub(S.one, seed));
  GMADecomposition gma = gma_decompose(S, e1, e2);
  CHECK(gma.n1 == 1);
  CHECK(!gma.tau_stable);

  Ideal IT = reducibility_ideal(gma);
  CHECK(IT == A2.ideal({A2.basis_elem(1)}));
  CHECK(splits_as_two_characters(T, IT));
  CHECK(!splits_as_two_characters(T, A2.zero_ideal()));
  CHECK(verify_minimality(T, IT));

  PrincipalityCertificate cert = principality_certificate(gma);
  CHECK(!cert.used_involution);
  CHECK(cert.ideal == IT);
  CHECK(!nonzerodivisor_check(A2, cert.generator));

  // triangularizable exactly over A/I_T and not below
  BlockTriangularization bt1 = block_triangularize(rhod, 1, IT);
  CHECK(bt1.success);
  BlockTriangularization bt0 = block_triangularize(rhod, 1, A2.zero_ideal());
  CHECK(!bt0.success);
  CHECK(bt0.obstruction_layer == 1);

  // a coboundary deformation is strictly equivalent to rho0, so it
  // triangularizes over A itself with a visible conjugator
  Vec w(4, 0);
  w[2] = 1;
  Vec cob(cshape.dim(), 0);
  for (std::size_t g = 0; g < d5.order(); ++g) {
    Vec diff = vec_sub(F5, ad.apply((int)g, w), w);
    for (std::size_t k = 0; k < 4; ++k) cob[g * 4 + k] = diff[k];
  }
  REQUIRE(ca.B1.contains(cob));
  GroupRep rhoc = deform(cob);
  BlockTriangularization btc = block_triangularize(rhoc, 1, A2.zero_ideal());
  CHECK(btc.success);
  CHECK(btc.conjugator != amat_identity(A2, 2));
  REQUIRE(btc.upper.has_value());
  for (std::size_t g = 0; g < d5.order(); ++g)
    CHECK(is_zero(btc.upper->mats[g].at(1, 0)));
}

TEST_CASE("layered triangularization at level two") {
  LocalAlgebra A = LocalAlgebra::base(Z9);
  auto [s3, rho] = s3_standard(A);

  // conjugate the standard rep into residually triangular position
  AMat Q = m2(A, 1, 0, 1, 1);
  AMat Qi = amat_inv(A, Q);
  std::vector<AMat> cm;
  for (std::size_t g = 0; g < s3.order(); ++g)
    cm.push_back(amat_mul(A, amat_mul(A, Q, rho.mats[g]), Qi));
  GroupRep rhoQ = GroupRep::from_map(s3, A, std::move(cm));

  // over Z/9 / (3) the lower-left vanishes identically, X = 0 works
  BlockTriangularization bt3 = block_triangularize(rhoQ, 1, A.ideal({A.scalar(3)}));
  CHECK(bt3.success);
  CHECK(bt3.obstruction_layer == -1);
  CHECK(bt3.conjugator == amat_identity(bt3.B, 2));

  // over Z/9 itself the rotation equation 3*Delta = 3 has no solution in (3)
  BlockTriangularization bt0 = block_triangularize(rhoQ, 1, A.zero_ideal());
  CHECK(!bt0.success);
  CHECK(bt0.obstruction_layer == 1);

  CHECK(code_of([&] { block_triangularize(rhoQ, 1, A.unit_ideal()); }) == errc::no_unit);
  CHECK(code_of([&] { block_triangularize(rhoQ, 0, A.zero_ideal()); }) == errc::bad_scenario);
  CHECK(code_of([&] { block_triangularize(rhoQ, 2, A.zero_ideal()); }) == errc::bad_scenario);
  // the unconjugated standard rep has a unit in the lower-left residually
  CHECK(code_of([&] { block_triangularize(rho, 1, A.ideal({A.scalar(3)})); }) ==
        errc::bad_scenario);

  // a genuinely two-layer lift: conjugate a triangular rep by 1 + 3*E21
  FiniteGroup s3a = FiniteGroup::dihedral(3);
  GroupRep rt = nonsplit_extension(s3a, A, 2);
  BlockTriangularization btt = block_triangularize(rt, 1, A.zero_ideal());
  CHECK(btt.success);
  CHECK(btt.conjugator == amat_identity(A, 2));

  AMat P = m2(A, 1, 0, 3, 1);
  AMat Pi = amat_inv(A, P);
  std::vector<AMat> pm;
  for (std::size_t g = 0; g < s3a.order(); ++g)
    pm.push_back(amat_mul(A, amat_mul(A, P, rt.mats[g]), Pi));
  GroupRep rtc = GroupRep::from_map(s3a, A, std::move(pm));
  BlockTriangularization btr = block_triangularize(rtc, 1, A.zero_ideal());
  CHECK(btr.success);
  CHECK(btr.conjugator != amat_identity(A, 2));
  REQUIRE(btr.upper.has_value());
  for (std::size_t g = 0; g < s3a.order(); ++g)
    CHECK(is_zero(btr.upper->mats[g].at(1, 0)));
}

TEST_CASE("zero divisor scan") {
  LocalAlgebra A9 = LocalAlgebra::base(Z9);
  CHECK(nonzerodivisor_check(A9, A9.scalar(1)));
  CHECK(!nonzerodivisor_check(A9, A9.scalar(3)));
  CHECK(!nonzerodivisor_check(A9, A9.scalar(0)));

  LocalAlgebra Ae = LocalAlgebra::quadratic(F3, 0, 0, 1);
  CHECK(!nonzerodivisor_check(Ae, Ae.basis_elem(1)));
  CHECK(nonzerodivisor_check(Ae, Ae.add(Ae.one, Ae.basis_elem(1))));

  // x * (x - 3) = 0 in Z/9[x]/(x^2 - 3x)
  LocalAlgebra Ax = LocalAlgebra::quadratic(Z9, 3, 0, 2);
  CHECK(!nonzerodivisor_check(Ax, Ax.basis_elem(1)));
  CHECK(!nonzerodivisor_check(Ax, Ax.sub(Ax.basis_elem(1), Ax.scalar(3))));
  CHECK(nonzerodivisor_check(Ax, Ax.add(Ax.one, Ax.basis_elem(1))));
}

TEST_CASE("size guards") {
  CHECK(code_of([&] {
          GroupAlgebra::make(FiniteGroup::cyclic(513), LocalAlgebra::base(F3));
        }) == errc::budget_exceeded);

  LocalAlgebra huge = LocalAlgebra::base(BaseRing::make(3, 8));
  CHECK(code_of([&] { nonzerodivisor_check(huge, huge.one); }) ==
        errc::too_large_for_exhaustion);
  Mat values(1, 1);
  values.set_row(0, huge.scalar(2));
  Pseudocharacter T = Pseudocharacter::make(FiniteGroup::cyclic(1), huge, 2, values);
  CHECK(code_of([&] { verify_minimality(T, huge.zero_ideal()); }) ==
        errc::too_large_for_exhaustion);

  // the splitting search only covers two-dimensional traces
  GroupRep reg = regular_rep(FiniteGroup::cyclic(3), LocalAlgebra::base(F5));
  Pseudocharacter T3 = Pseudocharacter::of_rep(reg);
  CHECK(code_of([&] {
          splits_as_two_characters(T3, LocalAlgebra::base(F5).zero_ideal());
        }) == errc::too_large_for_exhaustion);
}
