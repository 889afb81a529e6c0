#include "gmalab/instances.hpp"

#include <algorithm>

namespace gmalab {

namespace {

std::string algebra_tag(const LocalAlgebra& A) {
  return "p" + std::to_string(A.O.p) + "e" + std::to_string(A.O.e) + "d" +
         std::to_string(A.dim());
}

Vec scale_reduced(const Shape& shape, std::int64_t c, const Vec& v) {
  return shape.reduce(vec_scale(shape.O, c, v));
}

} // namespace

FiniteGroup named_group(const std::string& name) {
  if (name == "v4") return FiniteGroup::dihedral(2);
  if (name == "s3") return FiniteGroup::dihedral(3);
  if (name == "q8") return FiniteGroup::quaternion8();
  if (name == "f20") return FiniteGroup::semidirect(5, 4, 2);
  if (name == "f21") return FiniteGroup::semidirect(7, 3, 2);
  if (name.size() >= 2 && (name[0] == 'c' || name[0] == 'd')) {
    int k = 0;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') fail(errc::bad_scenario, "unknown group " + name);
      k = 10 * k + (name[i] - '0');
    }
    if (name[0] == 'c' && k >= 1 && k <= 64) return FiniteGroup::cyclic(k);
    if (name[0] == 'd' && k >= 2 && k <= 32) return FiniteGroup::dihedral(k);
  }
  fail(errc::bad_scenario, "unknown group " + name);
}

std::vector<std::string> group_catalog() {
  return {"c2", "c3", "c4", "c6", "c9",  "c18", "v4",  "s3",
          "d4", "d5", "d6", "d7", "d9",  "q8",  "f20", "f21"};
}

std::vector<LocalAlgebra> algebra_catalog(long long p) {
  BaseRing F = BaseRing::make(p, 1);
  BaseRing W = BaseRing::make(p, 2);
  return {LocalAlgebra::base(F), LocalAlgebra::base(W), LocalAlgebra::quadratic(F, 0, 0, 1),
          LocalAlgebra::quadratic(W, 0, 0, 1)};
}

std::vector<Character> all_characters(const FiniteGroup& G, const LocalAlgebra& A) {
  require(A.size() <= 4096, errc::too_large_for_exhaustion, "character pool enumeration");
  std::vector<Vec> elems = Lattice::full(A.shape).elements(A.size());

  // per-generator pool: units whose order divides the generator's order
  std::vector<std::vector<Vec>> pool;
  for (int g : G.gens) {
    int ord = G.element_order(g);
    std::vector<Vec> p;
    for (const Vec& u : elems)
      if (A.is_unit_elem(u) && A.pow_elem(u, ord) == A.one) p.push_back(u);
    pool.push_back(std::move(p));
  }

  std::vector<Character> out;
  std::vector<std::size_t> idx(pool.size(), 0);
  std::size_t budget = 4096;
  while (budget-- > 0) {
    // propagate the assignment from the identity through right translation
    std::vector<Vec> val(G.n);
    std::vector<bool> known(G.n, false);
    val[0] = A.one;
    known[0] = true;
    std::vector<int> work{0};
    bool ok = true;
    while (!work.empty() && ok) {
      int g = work.back();
      work.pop_back();
      for (std::size_t k = 0; k < pool.size(); ++k) {
        int h = G.mul(g, G.gens[k]);
        Vec v = A.mul(val[g], pool[k][idx[k]]);
        if (!known[h]) {
          val[h] = v;
          known[h] = true;
          work.push_back(h);
        } else if (val[h] != v) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      bool fresh = true;
      for (const Character& c : out)
        if (c.val == val) fresh = false;
      if (fresh) {
        try {
          out.push_back(Character::make(G, A, val));
        } catch (const error&) {
        }
      }
    }
    // odometer over the assignment tuples
    std::size_t k = 0;
    while (k < pool.size() && ++idx[k] == pool[k].size()) idx[k++] = 0;
    if (k == pool.size()) break;
  }
  return out;
}

Mat regular_action(const LocalAlgebra& A, const Vec& a) {
  Mat M(A.dim(), A.dim());
  for (std::size_t i = 0; i < A.dim(); ++i) M.set_row(i, A.mul(A.basis_elem(i), a));
  return M;
}

GModule extension_module(const Character& chi1, const Character& chi2) {
  const LocalAlgebra& A = chi1.A;
  std::vector<Mat> act;
  for (std::size_t g = 0; g < chi1.G.n; ++g)
    act.push_back(regular_action(A, A.mul(chi1.val[g], A.inv_elem(chi2.val[g]))));
  return GModule::make(chi1.G, A.shape, act);
}

std::vector<Vec> glue_from_cocycle(const Character& chi1, const Character& chi2,
                                   const Vec& cocycle) {
  const LocalAlgebra& A = chi1.A;
  std::size_t d = A.dim();
  std::vector<Vec> f;
  for (std::size_t g = 0; g < chi1.G.n; ++g) {
    Vec block(cocycle.begin() + g * d, cocycle.begin() + (g + 1) * d);
    f.push_back(A.mul(block, chi2.val[g]));
  }
  return f;
}

namespace {

// does tau fix the character residually, i.e. chi(tau(g)) = chi(g) mod m?
bool fixes_residually(const Involution& tau, const Character& chi) {
  const LocalAlgebra& A = chi.A;
  for (std::size_t g = 0; g < chi.G.n; ++g) {
    Vec img = A.mul(tau.coef[g], chi.val[tau.perm[g]]);
    if (A.is_unit_elem(A.sub(img, chi.val[g]))) return false;
  }
  return true;
}

std::optional<Involution> attach_involution(const GroupRep& rho, const Character& chi1,
                                            const Character& chi2) {
  Pseudocharacter T = Pseudocharacter::of_rep(rho);
  std::vector<Involution> candidates;
  candidates.push_back(Involution::inverse(rho.G, rho.A));
  candidates.push_back(Involution::twisted_inverse(chi1.mul(chi1)));
  candidates.push_back(Involution::twisted_inverse(chi2.mul(chi2)));
  for (const Involution& tau : candidates)
    if (check_self_dual(T, tau) && fixes_residually(tau, chi1) && fixes_residually(tau, chi2))
      return tau;
  return std::nullopt;
}

} // namespace

std::vector<TriangularInstance> triangular_instances(const std::string& group_name,
                                                     const LocalAlgebra& A,
                                                     std::size_t max_per_pair) {
  FiniteGroup G = named_group(group_name);
  std::vector<Character> chars = all_characters(G, A);
  std::vector<TriangularInstance> out;
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (std::size_t j = 0; j < chars.size(); ++j) {
      if (i == j) continue;
      bool distinct = false;
      for (std::size_t g = 0; g < G.n; ++g)
        if (A.is_unit_elem(A.sub(chars[i].val[g], chars[j].val[g]))) distinct = true;
      if (!distinct) continue;

      GModule W = extension_module(chars[i], chars[j]);
      CocycleSpace CS = h1(W);
      Shape cs = cocycle_shape(W);
      std::string stem = group_name + "/" + algebra_tag(A) + "/x" + std::to_string(i) + "-x" +
                         std::to_string(j);

      std::vector<Vec> reps{Vec(cs.dim(), 0)}; // the split glue first
      for (std::size_t r = 0; r < CS.Z1.basis.rows && reps.size() < max_per_pair; ++r) {
        Vec c = cs.reduce(CS.Z1.basis.row(r));
        if (is_zero(c) || CS.B1.contains(c)) continue;
        bool fresh = true;
        for (const Vec& seen : reps)
          if (CS.B1.contains(cs.reduce(vec_sub(cs.O, c, seen)))) fresh = false;
        if (!fresh) continue;
        reps.push_back(c);
      }
      for (std::size_t k = 0; k < reps.size(); ++k) {
        GroupRep rho = assemble_extension(chars[i], chars[j], glue_from_cocycle(chars[i], chars[j], reps[k]));
        TriangularInstance inst{stem + (k == 0 ? "/split" : "/c" + std::to_string(k)),
                                rho, chars[i], chars[j], k == 0, std::nullopt};
        inst.tau = attach_involution(rho, chars[i], chars[j]);
        out.push_back(std::move(inst));
      }
    }
  return out;
}

std::vector<DeformationInstance> deformation_instances(const GroupRep& rho0,
                                                       const std::string& label,
                                                       std::size_t max_count) {
  require(rho0.A.dim() == 1, errc::bad_scenario,
          "deformations start from a rank-one coefficient ring");
  const BaseRing& O = rho0.A.O;
  LocalAlgebra Adef = LocalAlgebra::quadratic(O, 0, 0, 1);
  std::size_t n = rho0.n;

  GroupRep rbar = rho0;
  if (O.e > 1) rbar = mod_ideal(rho0, rho0.A.ideal({rho0.A.scalar(O.p)})).first;
  GModule ad = GModule::adjoint(rbar);
  CocycleSpace CS = h1(ad);
  Shape cs = cocycle_shape(ad);

  std::vector<DeformationInstance> out;
  std::vector<Vec> seen;
  for (std::size_t r = 0; r < CS.Z1.basis.rows && out.size() < max_count; ++r) {
    Vec c = cs.reduce(CS.Z1.basis.row(r));
    if (is_zero(c) || CS.B1.contains(c)) continue;
    bool fresh = true;
    for (const Vec& s : seen)
      if (CS.B1.contains(cs.reduce(vec_sub(cs.O, c, s)))) fresh = false;
    if (!fresh) continue;
    seen.push_back(c);

    std::size_t d = rbar.A.dim(); // 1, but keep the indexing honest
    bool lower = false;
    std::vector<AMat> mats;
    for (std::size_t g = 0; g < rho0.G.n; ++g) {
      AMat M(n, 2);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          std::int64_t base = rho0.at((int)g).at(i, j)[0];
          std::int64_t bump = 0; // coefficient of delta: (U(g) * rho0(g))_{ij} mod p
          for (std::size_t k = 0; k < n; ++k) {
            std::int64_t u = c[g * n * n * d + (i * n + k) * d];
            bump = (bump + u * rho0.at((int)g).at(k, j)[0]) % O.p;
          }
          M.at(i, j) = Adef.shape.reduce(Vec{base, bump});
          std::int64_t uij = c[g * n * n * d + (i * n + j) * d];
          if (i > j && uij % O.p != 0) lower = true;
        }
      mats.push_back(std::move(M));
    }
    DeformationInstance inst{label + "/u" + std::to_string(seen.size()),
                             GroupRep::from_map(rho0.G, Adef, std::move(mats)), lower,
                             std::nullopt};
    Involution tau = Involution::inverse(inst.rho.G, Adef);
    if (check_self_dual(Pseudocharacter::of_rep(inst.rho), tau)) inst.tau = tau;
    out.push_back(std::move(inst));
  }
  return out;
}

namespace {

AMat m2s(const LocalAlgebra& A, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  AMat M(2, A.dim());
  M.at(0, 0) = A.scalar(a);
  M.at(0, 1) = A.scalar(b);
  M.at(1, 0) = A.scalar(c);
  M.at(1, 1) = A.scalar(d);
  return M;
}

} // namespace

GroupRep s3_standard_rep(const BaseRing& O) {
  LocalAlgebra A = LocalAlgebra::base(O);
  auto [G, rho] = matrix_group_closure(A, {m2s(A, 0, -1, 1, -1), m2s(A, 0, 1, 1, 0)});
  require(G.order() == 6, errc::internal, "s3 closure has wrong order");
  return rho;
}

GroupRep q8_standard_rep(const BaseRing& O) {
  LocalAlgebra A = LocalAlgebra::base(O);
  for (std::int64_t a = 0; a < O.q; ++a)
    for (std::int64_t b = 0; b < O.q; ++b) {
      if (O.norm(a * a + b * b + 1) != 0) continue;
      auto [G, rho] = matrix_group_closure(A, {m2s(A, 0, -1, 1, 0), m2s(A, a, b, b, -a)});
      require(G.order() == 8, errc::internal, "q8 closure has wrong order");
      return rho;
    }
  fail(errc::bad_scenario, "no quaternion pair over this ring");
}

GroupRep conjugated(const GroupRep& rho, const AMat& P) {
  AMat Pinv = amat_inv(rho.A, P);
  std::vector<AMat> mats;
  for (std::size_t g = 0; g < rho.G.n; ++g)
    mats.push_back(amat_mul(rho.A, amat_mul(rho.A, Pinv, rho.at((int)g)), P));
  return GroupRep::from_map(rho.G, rho.A, std::move(mats));
}

std::optional<GroupRep> residually_triangular_form(const GroupRep& rho) {
  require(rho.n == 2, errc::bad_scenario, "residual line search is for rank two");
  const LocalAlgebra& A = rho.A;
  long long p = A.O.p;

  // projective line mod the maximal ideal: (1, t) for t in [0, p), then (0, 1)
  for (long long t = 0; t <= p; ++t) {
    std::int64_t v0 = t < p ? 1 : 0;
    std::int64_t v1 = t < p ? t : 1;
    bool stable = true;
    for (int g : rho.G.gens) {
      const AMat& M = rho.at(g);
      Vec w0 = A.add(A.smul(v0, M.at(0, 0)), A.smul(v1, M.at(0, 1)));
      Vec w1 = A.add(A.smul(v0, M.at(1, 0)), A.smul(v1, M.at(1, 1)));
      Vec cross = A.sub(A.smul(v1, w0), A.smul(v0, w1));
      if (A.is_unit_elem(cross)) stable = false;
    }
    if (!stable) continue;
    AMat P(2, A.dim());
    P.at(0, 0) = A.scalar(v0);
    P.at(1, 0) = A.scalar(v1);
    P.at(0, 1) = v0 != 0 ? A.zero() : A.one; // complete to a unit determinant
    P.at(1, 1) = v0 != 0 ? A.one : A.zero();
    return conjugated(rho, P);
  }
  return std::nullopt;
}

std::optional<std::pair<Vec, Vec>> find_idempotent_pair(const CHQuotient& S,
                                                        bool tau_symmetric) {
  const BaseRing& O = S.shape.O;
  std::int64_t inv2 = O.inv(2);

  auto attempt = [&](const Vec& e) -> std::optional<std::pair<Vec, Vec>> {
    // cheap pre-filter: e^2 - e must be nilpotent for the lifting to converge
    Vec d = S.sub(S.mul(e, e), e);
    for (int k = 0; k < 7 && !is_zero(d); ++k) d = S.mul(d, d);
    if (!is_zero(d)) return std::nullopt;
    try {
      auto [e1, e2] = lift_idempotents(S, e, S.sub(S.one, e), tau_symmetric);
      if (is_zero(e1) || e1 == S.one) return std::nullopt;
      return std::make_pair(e1, e2);
    } catch (const error& err) {
      if (err.code() == errc::no_convergence || err.code() == errc::not_residual_idempotent)
        return std::nullopt;
      throw;
    }
  };

  const FiniteGroup& G = S.R.G;
  // exact projectors (1 + g)/2 from order-two elements
  for (std::size_t g = 1; g < G.n; ++g) {
    if (G.element_order((int)g) != 2) continue;
    if (auto r = attempt(scale_reduced(S.shape, inv2, S.add(S.one, S.group_img.row(g))))) return r;
  }
  // spectral projectors (g - b)/(a - b) for scalar residual eigenvalue pairs
  for (std::size_t g = 1; g < G.n; ++g)
    for (std::int64_t a = 0; a < O.p; ++a)
      for (std::int64_t b = 0; b < O.p; ++b) {
        if (a == b) continue;
        Vec num = S.sub(S.group_img.row(g), scale_reduced(S.shape, b, S.one));
        if (auto r = attempt(scale_reduced(S.shape, O.inv(O.sub(a, b)), num))) return r;
      }
  // bounded sweep of residual coefficient vectors
  std::vector<std::int64_t> c(S.dim(), 0);
  for (std::size_t tries = 0; tries < 8192; ++tries) {
    std::size_t k = 0;
    while (k < c.size() && ++c[k] == O.p) c[k++] = 0;
    if (k == c.size()) break;
    Vec e(c.begin(), c.end());
    if (auto r = attempt(S.shape.reduce(e))) return r;
  }
  return std::nullopt;
}

GmaRun run_gma_pipeline(const GroupRep& rho, const std::optional<Involution>& tau) {
  Pseudocharacter T = Pseudocharacter::of_rep(rho);
  GmaRun out{T, tau.has_value(), false, std::nullopt, Ideal{Lattice::zero(rho.A.shape)},
             std::nullopt, std::nullopt, std::nullopt};
  if (tau) out.tau_self_dual = check_self_dual(T, *tau);

  Lattice K = kernel_of_T(T).kernel;
  std::optional<Involution> use = out.tau_self_dual ? tau : std::nullopt;
  CHQuotient S = cayley_hamilton_quotient(T, K, use);

  std::optional<std::pair<Vec, Vec>> pair;
  if (use) pair = find_idempotent_pair(S, true);
  if (!pair) pair = find_idempotent_pair(S, false);
  require(pair.has_value(), errc::not_residual_idempotent,
          "no orthogonal idempotent pair reachable from the seed sweep");

  GMADecomposition gma = gma_decompose(S, pair->first, pair->second);
  out.IT = reducibility_ideal(gma);
  try {
    out.cert = principality_certificate(gma);
  } catch (const error& err) {
    if (err.code() != errc::corners_not_cyclic) throw;
  }
  try {
    out.splits_mod_IT = splits_as_two_characters(T, out.IT);
  } catch (const error& err) {
    if (err.code() != errc::too_large_for_exhaustion) throw;
  }
  try {
    out.minimal = verify_minimality(T, out.IT);
  } catch (const error& err) {
    if (err.code() != errc::too_large_for_exhaustion) throw;
  }
  out.gma = std::move(gma);
  return out;
}

std::optional<Ideal> brute_smallest_splitting_ideal(const Pseudocharacter& T,
                                                    unsigned long long elem_cap) {
  std::vector<Ideal> splitting;
  for (const Ideal& I : T.A.all_ideals(elem_cap))
    if (splits_as_two_characters(T, I)) splitting.push_back(I);
  for (const Ideal& I : splitting) {
    bool least = true;
    for (const Ideal& J : splitting)
      if (!J.contains(I)) least = false;
    if (least) return I;
  }
  return std::nullopt;
}

namespace {

AlgebraHom identity_hom(const LocalAlgebra& A) {
  return AlgebraHom::make(A, A, Mat::identity(A.dim()));
}

AlgebraHom hom_2to1(const LocalAlgebra& R, const LocalAlgebra& S, const Vec& image) {
  Mat M(2, S.dim());
  M.set_row(0, S.one);
  M.set_row(1, image);
  return AlgebraHom::make(R, S, M);
}

} // namespace

std::vector<Cri1Fixture> cri1_positive_suite() {
  std::vector<Cri1Fixture> out;
  auto scalar_tower = [&](long long p, int e, std::int64_t pi) {
    LocalAlgebra A = LocalAlgebra::base(BaseRing::make(p, e));
    out.push_back({"id/p" + std::to_string(p) + "e" + std::to_string(e) + "/pi" +
                       std::to_string(pi),
                   identity_hom(A), A.scalar(pi), true, ""});
  };
  scalar_tower(3, 1, 0);
  scalar_tower(3, 2, 3);
  scalar_tower(3, 2, 0);
  scalar_tower(3, 3, 3);
  scalar_tower(3, 3, 9);
  scalar_tower(5, 2, 5);
  scalar_tower(5, 3, 25);
  scalar_tower(7, 1, 0);
  scalar_tower(7, 2, 7);

  // scaling automorphisms of O[x]/(x^2) with pi = x exercise the full-level
  // branch with a nontrivial map
  auto monomial_auto = [&](long long p, int e, std::int64_t u) {
    LocalAlgebra A = LocalAlgebra::monomial(BaseRing::make(p, e), 2);
    out.push_back({"aut/p" + std::to_string(p) + "e" + std::to_string(e) + "/u" +
                       std::to_string(u),
                   hom_2to1(A, A, A.smul(u, A.basis_elem(1))), A.basis_elem(1), true, ""});
  };
  monomial_auto(3, 2, 2);
  monomial_auto(5, 2, 3);
  monomial_auto(7, 1, 4);

  // x^2 = 3x over Z/27: identity with pi = x, a non-nilpotent generator
  LocalAlgebra Q = LocalAlgebra::quadratic(BaseRing::make(3, 3), 3, 0, 3);
  out.push_back({"id/x2-3x/pix", identity_hom(Q), Q.basis_elem(1), true, ""});
  return out;
}

std::vector<Cri1Fixture> cri1_negative_suite() {
  std::vector<Cri1Fixture> out;
  BaseRing Z9 = BaseRing::make(3, 2);
  BaseRing Z27 = BaseRing::make(3, 3);

  LocalAlgebra R27 = LocalAlgebra::base(Z27);
  auto [S9, proj9] = quotient_algebra(R27, R27.ideal({R27.scalar(9)}));
  out.push_back({"target-not-free", proj9, R27.scalar(3), false, "s_free"});

  LocalAlgebra Rd = LocalAlgebra::quadratic(Z9, 0, 0, 1);
  LocalAlgebra S9b = LocalAlgebra::base(Z9);
  AlgebraHom kill = hom_2to1(Rd, S9b, S9b.zero());
  out.push_back({"level-one-collapse", kill, Rd.add(Rd.scalar(3), Rd.basis_elem(1)), false,
                 "phi1_iso"});
  out.push_back({"square-map-collapse", kill, Rd.basis_elem(1), false, "pi_square_iso"});

  LocalAlgebra M = LocalAlgebra::monomial(Z9, 2);
  out.push_back({"fat-quotient", identity_hom(M), M.scalar(3), false, "quotient_cyclic"});

  LocalAlgebra B9 = LocalAlgebra::base(Z9);
  out.push_back({"unit-pi", identity_hom(B9), B9.scalar(1), false, "r_level"});
  return out;
}

std::vector<WLFixture> wiles_lenstra_suite() {
  std::vector<WLFixture> out;

  LocalAlgebra R = LocalAlgebra::quadratic(BaseRing::make(3, 3), 3, 0, 3);
  LocalAlgebra O27 = LocalAlgebra::base(BaseRing::make(3, 3));
  AlgebraHom pi = hom_2to1(R, O27, O27.zero());
  out.push_back({"x2-3x", identity_hom(R), pi, pi, 3, 3, true});

  AlgebraHom idO = identity_hom(O27);
  out.push_back({"zero-kernel", idO, idO, idO, 1, 1, true});

  LocalAlgebra P = LocalAlgebra::square_zero_pair(BaseRing::make(3, 1));
  LocalAlgebra F3 = LocalAlgebra::base(BaseRing::make(3, 1));
  Mat res(3, 1);
  res.set_row(0, F3.one);
  AlgebraHom piP = AlgebraHom::make(P, F3, res);
  out.push_back({"two-generator-kernel", identity_hom(P), piP, piP, 9, 3, false});
  return out;
}

TorsionCatalog torsion_module_catalog(long long p) {
  BaseRing O = BaseRing::make(p, 3);
  LocalAlgebra A = LocalAlgebra::base(O);
  TorsionCatalog cat;

  for (const std::string& name : group_catalog()) {
    FiniteGroup G = named_group(name);
    if (G.n > 24) continue;
    std::vector<Character> chars = all_characters(G, A);
    std::size_t used = 0;
    for (std::size_t i = 0; i < chars.size(); ++i) {
      std::vector<std::int64_t> vals;
      for (const Vec& v : chars[i].val) vals.push_back(v[0]);
      GModule W = GModule::from_character_values(G, O, vals, 3);
      auto& bucket = h0(W).is_zero() ? cat.h0_zero : cat.h0_nonzero;
      if (bucket.size() >= 48) continue;
      bucket.emplace_back(name + "/x" + std::to_string(i), W);
      if (++used >= 8) break;
    }
  }

  // two-dimensional modules from the standard s3 picture at p = 3
  if (p == 3) {
    GroupRep std3 = s3_standard_rep(O);
    GModule ad = GModule::adjoint(std3);
    cat.h0_nonzero.emplace_back("s3/adjoint", ad);
    std::vector<Character> chars = all_characters(std3.G, std3.A);
    for (std::size_t i = 0; i < chars.size(); ++i) {
      std::vector<AMat> twisted;
      for (std::size_t g = 0; g < std3.G.n; ++g)
        twisted.push_back(amat_smul(std3.A, chars[i].val[g], std3.at((int)g)));
      GroupRep rho2 = GroupRep::from_map(std3.G, std3.A, twisted);
      GModule W = GModule::hom_module(std3, rho2);
      auto& bucket = h0(W).is_zero() ? cat.h0_zero : cat.h0_nonzero;
      bucket.emplace_back("s3/hom-std-twist" + std::to_string(i), W);
    }
  }
  return cat;
}

TriangularInstance random_triangular_instance(std::mt19937_64& rng) {
  static const long long primes[3] = {3, 5, 7};
  std::vector<std::string> groups = group_catalog();
  for (int attempt = 0; attempt < 64; ++attempt) {
    long long p = primes[rng() % 3];
    std::string g = groups[rng() % groups.size()];
    if (named_group(g).n > 24) continue;
    std::vector<LocalAlgebra> algs = algebra_catalog(p);
    const LocalAlgebra& A = algs[rng() % algs.size()];
    std::vector<TriangularInstance> pool = triangular_instances(g, A, 3);
    if (!pool.empty()) return pool[rng() % pool.size()];
  }
  fail(errc::internal, "no triangular instance reachable");
}

Cri1Fixture random_cri1_instance(std::mt19937_64& rng) {
  static const long long primes[3] = {3, 5, 7};
  long long p = primes[rng() % 3];
  int e = 1 + (int)(rng() % 3);
  BaseRing O = BaseRing::make(p, e);

  LocalAlgebra R = LocalAlgebra::base(O);
  switch (rng() % 4) {
    case 0: break;
    case 1: R = LocalAlgebra::monomial(O, 2); break;
    case 2: R = LocalAlgebra::quadratic(O, 0, 0, 1 + (int)(rng() % e)); break;
    default:
      R = LocalAlgebra::quadratic(O, O.norm((std::int64_t)(rng() % e) * p), 0,
                                  1 + (int)(rng() % e));
  }

  std::vector<Ideal> ideals;
  try {
    for (Ideal& I : R.all_ideals(2048))
      if (I != R.unit_ideal()) ideals.push_back(std::move(I));
  } catch (const error&) {
    Vec v(R.dim(), 0);
    for (auto& x : v) x = (std::int64_t)(rng() % O.p); // stay inside the maximal ideal
    v[0] = 0;
    ideals = {R.ideal({R.shape.reduce(v)})};
  }
  const Ideal& I = ideals[rng() % ideals.size()];
  auto [S, phi] = quotient_algebra(R, I);

  Vec pi(R.dim(), 0);
  for (auto& x : pi) x = (std::int64_t)(rng() % O.q);
  return {"fuzz", phi, R.shape.reduce(pi), false, ""};
}

} // namespace gmalab
