#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "gmalab/rep.hpp"

using namespace gmalab;

namespace {

const BaseRing Z9 = BaseRing::make(3, 2);
const BaseRing F3 = BaseRing::make(3, 1);
const BaseRing F5 = BaseRing::make(5, 1);

AMat m2(const LocalAlgebra& A, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  AMat X(2, A.dim());
  X.at(0, 0) = A.scalar(a);
  X.at(0, 1) = A.scalar(b);
  X.at(1, 0) = A.scalar(c);
  X.at(1, 1) = A.scalar(d);
  return X;
}

// standard 2-dimensional representation of S3: r has order 3, s order 2
std::pair<FiniteGroup, GroupRep> s3_standard(const LocalAlgebra& A) {
  return matrix_group_closure(A, {m2(A, 0, -1, 1, -1), m2(A, 0, 1, 1, 0)});
}

std::vector<int> order_profile(const FiniteGroup& G) {
  std::vector<int> out;
  for (std::size_t g = 0; g < G.order(); ++g) out.push_back(G.element_order((int)g));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

TEST_CASE("named groups have the expected structure") {
  FiniteGroup c6 = FiniteGroup::cyclic(6);
  CHECK(c6.order() == 6);
  CHECK(c6.is_abelian());
  CHECK(c6.element_order(1) == 6);
  CHECK(c6.invert(2) == 4);

  FiniteGroup s3 = FiniteGroup::dihedral(3);
  CHECK(s3.order() == 6);
  CHECK_FALSE(s3.is_abelian());
  CHECK(order_profile(s3) == std::vector<int>{1, 2, 2, 2, 3, 3});

  FiniteGroup q8 = FiniteGroup::quaternion8();
  CHECK(q8.order() == 8);
  CHECK_FALSE(q8.is_abelian());
  CHECK(order_profile(q8) == std::vector<int>{1, 2, 4, 4, 4, 4, 4, 4});
  // -1 is central
  for (std::size_t g = 0; g < 8; ++g) CHECK(q8.mul(1, (int)g) == q8.mul((int)g, 1));

  FiniteGroup f21 = FiniteGroup::semidirect(7, 3, 2);
  CHECK(f21.order() == 21);
  CHECK_FALSE(f21.is_abelian());
  CHECK_THROWS_AS(FiniteGroup::semidirect(7, 3, 3), error); // 3^3 = 27 != 1 mod 7
}

TEST_CASE("from_table rejects broken tables") {
  auto t = FiniteGroup::cyclic(3).table;
  t[1][1] = 1; // breaks associativity/latin property
  CHECK_THROWS_AS(FiniteGroup::from_table(t), error);
  CHECK_THROWS_AS(FiniteGroup::from_table({{0, 1}, {1, 1}}), error);
}

TEST_CASE("matrix arithmetic over a local algebra") {
  LocalAlgebra A = LocalAlgebra::base(Z9);
  AMat X = m2(A, 3, 1, 1, 3); // det 8, a unit found below the first pivot
  CHECK(amat_invertible(A, X));
  CHECK(amat_mul(A, X, amat_inv(A, X)) == amat_identity(A, 2));
  AMat Y = m2(A, 3, 0, 0, 3); // det 9 = 0
  CHECK_FALSE(amat_invertible(A, Y));
  CHECK_THROWS_AS(amat_inv(A, Y), error);
  CHECK(amat_trace(A, X) == A.scalar(6));
  CHECK(amat_transpose(m2(A, 1, 2, 0, 1)) == m2(A, 1, 0, 2, 1));
}

TEST_CASE("closure of SL2(F3) generators has order 24") {
  LocalAlgebra A = LocalAlgebra::base(F3);
  auto [G, rho] = matrix_group_closure(A, {m2(A, 0, -1, 1, 0), m2(A, 1, 1, 0, 1)});
  CHECK(G.order() == 24);
  CHECK(rho.n == 2);
  // every element has determinant 1: closure never left SL2
  for (std::size_t g = 0; g < 24; ++g) CHECK(amat_invertible(A, rho.mats[g]));
  CHECK_THROWS_AS(matrix_group_closure(A, {m2(A, 0, -1, 1, 0), m2(A, 1, 1, 0, 1)}, 10), error);
}

TEST_CASE("standard S3 representation: traces and irreducibility") {
  LocalAlgebra A5 = LocalAlgebra::base(F5);
  auto [G, rho] = s3_standard(A5);
  CHECK(G.order() == 6);
  CHECK(order_profile(G) == std::vector<int>{1, 2, 2, 2, 3, 3});
  // trace 2 at 1, -1 at the 3-cycles, 0 at the involutions
  for (std::size_t g = 0; g < 6; ++g) {
    int ord = G.element_order((int)g);
    Vec t = rho.trace((int)g);
    if (ord == 1) CHECK(t == A5.scalar(2));
    if (ord == 3) CHECK(t == A5.scalar(-1));
    if (ord == 2) CHECK(t == A5.scalar(0));
  }
  CHECK(is_absolutely_irreducible(rho));

  // over F3 the reduction is a nonsplit extension, not irreducible
  LocalAlgebra A3 = LocalAlgebra::base(F3);
  auto [G3, rho3] = s3_standard(A3);
  CHECK(G3.order() == 6);
  CHECK_FALSE(is_absolutely_irreducible(rho3));
}

TEST_CASE("centralizer sizes separate nonsplit, split and trivial") {
  LocalAlgebra A = LocalAlgebra::base(F3);
  auto [G, rho] = s3_standard(A); // nonsplit: only scalars commute
  CHECK(rep_centralizer(rho).size() == 3);

  // split diagonal rep sign ⊕ trivial
  std::vector<AMat> diag(G.order());
  for (std::size_t g = 0; g < G.order(); ++g) {
    int sgn = G.element_order((int)g) == 2 ? -1 : 1;
    diag[g] = m2(A, sgn, 0, 0, 1);
  }
  GroupRep split = GroupRep::from_map(G, A, diag);
  CHECK(rep_centralizer(split).size() == 9);

  // trivial 2-dimensional rep: everything commutes
  GroupRep triv = GroupRep::from_map(G, A, std::vector<AMat>(G.order(), amat_identity(A, 2)));
  CHECK(rep_centralizer(triv).size() == 81);
}

TEST_CASE("from_map validates the homomorphism property") {
  LocalAlgebra A = LocalAlgebra::base(F3);
  FiniteGroup G = FiniteGroup::cyclic(2);
  // g -> [[1,1],[0,1]] has order 3, not 2
  CHECK_THROWS_AS(GroupRep::from_map(G, A, {amat_identity(A, 2), m2(A, 1, 1, 0, 1)}), error);
}

TEST_CASE("characters over Z/9") {
  LocalAlgebra A = LocalAlgebra::base(Z9);
  FiniteGroup G = FiniteGroup::dihedral(3);
  std::vector<Vec> sgn(G.order());
  for (std::size_t g = 0; g < G.order(); ++g)
    sgn[g] = A.scalar(G.element_order((int)g) == 2 ? -1 : 1);
  Character sign = Character::make(G, A, sgn);
  Character triv = Character::trivial(G, A);
  CHECK(sign.mul(sign) == triv);
  CHECK(sign.inverse() == sign);

  auto bad = sgn;
  bad[1] = A.scalar(3); // not a unit
  CHECK_THROWS_AS(Character::make(G, A, bad), error);
  auto notmult = sgn;
  notmult[1] = A.scalar(-1);
  CHECK_THROWS_AS(Character::make(G, A, notmult), error);
}

TEST_CASE("extensions, cocycles and splitting witnesses") {
  LocalAlgebra A = LocalAlgebra::base(F3);
  auto [G, rho] = s3_standard(A);
  // conjugate into upper-triangular form by P = [[1,0],[2,1]]
  AMat P = m2(A, 1, 0, 2, 1);
  AMat Pinv = amat_inv(A, P);
  std::vector<Vec> sgn(G.order()), f(G.order());
  for (std::size_t g = 0; g < G.order(); ++g) {
    AMat ut = amat_mul(A, Pinv, amat_mul(A, rho.mats[g], P));
    CHECK(gmalab::is_zero(ut.at(1, 0)));
    sgn[g] = ut.at(0, 0);
    f[g] = ut.at(0, 1);
    CHECK(ut.at(1, 1) == A.scalar(1));
  }
  Character chi1 = Character::make(G, A, sgn);
  Character chi2 = Character::trivial(G, A);
  GroupRep ext = assemble_extension(chi1, chi2, f);
  CHECK(ext.n == 2);
  // the standard representation mod 3 does not split
  CHECK_FALSE(splitting_witness(chi1, chi2, f).has_value());
  // a coboundary does: f(g) = chi1(g) a - a chi2(g)
  Vec a = A.scalar(2);
  std::vector<Vec> cob(G.order());
  for (std::size_t g = 0; g < G.order(); ++g)
    cob[g] = A.sub(A.mul(chi1.val[g], a), A.mul(a, chi2.val[g]));
  auto w = splitting_witness(chi1, chi2, cob);
  REQUIRE(w.has_value());
  for (std::size_t g = 0; g < G.order(); ++g)
    CHECK(cob[g] == A.sub(A.mul(chi1.val[g], *w), A.mul(*w, chi2.val[g])));
  // broken cocycle data is rejected by the homomorphism check
  auto broken = f;
  broken[1] = A.add(broken[1], A.one);
  CHECK_THROWS_AS(assemble_extension(chi1, chi2, broken), error);
}

TEST_CASE("involutions of the group algebra") {
  LocalAlgebra A = LocalAlgebra::base(Z9);
  FiniteGroup G = FiniteGroup::dihedral(3);
  Involution tau = Involution::inverse(G, A);
  for (std::size_t g = 0; g < G.order(); ++g) CHECK(tau.perm[g] == G.invert((int)g));

  int s = -1, r = -1;
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (G.element_order((int)g) == 2 && s < 0) s = (int)g;
    if (G.element_order((int)g) == 3 && r < 0) r = (int)g;
  }
  CHECK_NOTHROW(Involution::conjugate_inverse(G, A, s)); // s^2 = 1
  CHECK_THROWS_AS(Involution::conjugate_inverse(G, A, r), error); // r^2 not central

  std::vector<Vec> sgn(G.order());
  for (std::size_t g = 0; g < G.order(); ++g)
    sgn[g] = A.scalar(G.element_order((int)g) == 2 ? -1 : 1);
  CHECK_NOTHROW(Involution::twisted_inverse(Character::make(G, A, sgn)));
}

TEST_CASE("base change along a quotient map") {
  LocalAlgebra A = LocalAlgebra::base(Z9);
  auto [G, rho] = s3_standard(A);
  CHECK(G.order() == 6);
  auto [rho3, pi] = mod_ideal(rho, A.ideal({A.scalar(3)}));
  CHECK(rho3.A.size() == 3);
  for (std::size_t g = 0; g < G.order(); ++g)
    CHECK(rho3.trace((int)g) == pi.apply(rho.trace((int)g)));
}
