#include "gmalab/pseudochar.hpp"

#include <algorithm>
#include <random>

namespace gmalab {

namespace {

int logp(const BaseRing& O, unsigned long long n) {
  int k = 0;
  while (n > 1) {
    require(n % (unsigned long long)O.p == 0, errc::internal, "size is not a power of p");
    n /= (unsigned long long)O.p;
    ++k;
  }
  return k;
}

// closure of a lattice under two-sided multiplication certifies ideal input
bool two_sided(const GroupAlgebra& R, const Lattice& K) {
  for (std::size_t r = 0; r < K.basis.rows; ++r) {
    Vec x = K.basis.row(r);
    for (int s : R.G.gens) {
      if (!K.contains(R.convolve(R.delta(s, R.A.one), x))) return false;
      if (!K.contains(R.convolve(x, R.delta(s, R.A.one)))) return false;
    }
    for (std::size_t mu = 0; mu < R.A.dim(); ++mu)
      if (!K.contains(R.convolve(R.delta(0, R.A.basis_elem(mu)), x))) return false;
  }
  return true;
}

// minimal generator count of an A-submodule of S, and one generator when
// the module is cyclic
struct CornerGenerator {
  std::size_t min_generators;
  Vec generator;
};
CornerGenerator corner_generator(const CHQuotient& S, const Lattice& C) {
  const LocalAlgebra& A = S.R.A;
  if (C.is_zero()) return {0, Vec(S.dim(), 0)};
  Mat rows(0, S.dim());
  for (std::size_t r = 0; r < C.basis.rows; ++r)
    for (std::size_t m = 0; m < A.max_ideal.L.basis.rows; ++m)
      rows.push_row(S.amul(A.max_ideal.L.basis.row(m), C.basis.row(r)));
  Lattice mC = Lattice::span(C.shape, rows);
  std::size_t gens =
      (std::size_t)(logp(A.O, C.size() / mC.size()) / A.residue_degree);
  Vec gen(S.dim(), 0);
  if (gens == 1) {
    for (std::size_t r = 0; r < C.basis.rows; ++r)
      if (!mC.contains(C.basis.row(r))) {
        gen = C.basis.row(r);
        break;
      }
    require(!gmalab::is_zero(gen), errc::internal, "cyclic corner without visible generator");
  }
  return {gens, gen};
}

} // namespace

GroupAlgebra GroupAlgebra::make(FiniteGroup G, LocalAlgebra A) {
  std::vector<int> ord;
  for (std::size_t g = 0; g < G.order(); ++g)
    ord.insert(ord.end(), A.shape.ord.begin(), A.shape.ord.end());
  require(ord.size() <= 512, errc::budget_exceeded, "group algebra too large");
  Shape shape{A.O, ord};
  return GroupAlgebra{std::move(G), std::move(A), std::move(shape)};
}

Vec GroupAlgebra::coeff(const Vec& x, int g) const {
  std::size_t d = A.dim();
  return Vec(x.begin() + (std::size_t)g * d, x.begin() + ((std::size_t)g + 1) * d);
}

Vec GroupAlgebra::delta(int g, const Vec& a) const {
  std::size_t d = A.dim();
  Vec out(dim(), 0);
  Vec v = A.shape.reduce(a);
  for (std::size_t i = 0; i < d; ++i) out[(std::size_t)g * d + i] = v[i];
  return out;
}

Vec GroupAlgebra::one() const { return delta(0, A.one); }

Vec GroupAlgebra::convolve(const Vec& x, const Vec& y) const {
  std::size_t d = A.dim();
  Vec out(dim(), 0);
  for (std::size_t g = 0; g < G.order(); ++g) {
    Vec xg = coeff(x, (int)g);
    if (gmalab::is_zero(xg)) continue;
    for (std::size_t h = 0; h < G.order(); ++h) {
      Vec yh = coeff(y, (int)h);
      if (gmalab::is_zero(yh)) continue;
      Vec prod = A.mul(xg, yh);
      std::size_t at = (std::size_t)G.mul((int)g, (int)h) * d;
      for (std::size_t i = 0; i < d; ++i) out[at + i] = A.O.add(out[at + i], prod[i]);
    }
  }
  return shape.reduce(out);
}

Vec GroupAlgebra::apply_involution(const Involution& tau, const Vec& x) const {
  std::size_t d = A.dim();
  Vec out(dim(), 0);
  for (std::size_t g = 0; g < G.order(); ++g) {
    Vec img = A.mul(coeff(x, (int)g), tau.coef[g]);
    std::size_t at = (std::size_t)tau.perm[g] * d;
    for (std::size_t i = 0; i < d; ++i) out[at + i] = A.O.add(out[at + i], img[i]);
  }
  return shape.reduce(out);
}

Lattice GroupAlgebra::augmentation_ideal() const {
  Mat rows(0, dim());
  for (std::size_t g = 1; g < G.order(); ++g)
    for (std::size_t mu = 0; mu < A.dim(); ++mu) {
      Vec b = A.basis_elem(mu);
      rows.push_row(shape.reduce(vec_sub(A.O, delta((int)g, b), delta(0, b))));
    }
  return Lattice::span(shape, rows);
}

Pseudocharacter Pseudocharacter::make(FiniteGroup G, LocalAlgebra A, std::size_t n,
                                      Mat values) {
  require(n >= 1 && (std::int64_t)n < A.O.p, errc::bad_scenario,
          "dimension must stay below p");
  require(values.rows == G.order() && values.cols == A.dim(), errc::bad_scenario,
          "one value per group element");
  for (std::size_t g = 0; g < values.rows; ++g) values.set_row(g, A.shape.reduce(values.row(g)));
  require(values.row(0) == A.scalar((std::int64_t)n), errc::relation_violated,
          "value at the identity must be n");
  for (std::size_t g = 0; g < G.order(); ++g)
    for (std::size_t h = 0; h < G.order(); ++h)
      require(values.row((std::size_t)G.mul((int)g, (int)h)) ==
                  values.row((std::size_t)G.mul((int)h, (int)g)),
              errc::relation_violated, "values are not central");
  return Pseudocharacter{std::move(G), std::move(A), n, std::move(values)};
}

Pseudocharacter Pseudocharacter::of_rep(const GroupRep& rho) {
  Mat values(rho.G.order(), rho.A.dim());
  for (std::size_t g = 0; g < rho.G.order(); ++g) values.set_row(g, rho.trace((int)g));
  return make(rho.G, rho.A, rho.n, std::move(values));
}

Vec Pseudocharacter::eval(const GroupAlgebra& R, const Vec& x) const {
  Vec out = A.zero();
  for (std::size_t g = 0; g < G.order(); ++g)
    out = A.add(out, A.mul(R.coeff(x, (int)g), at((int)g)));
  return out;
}

bool check_self_dual(const Pseudocharacter& T, const Involution& tau) {
  require(T.G.table == tau.G.table && T.A.shape == tau.A.shape && T.A.O == tau.A.O,
          errc::mismatched_parent, "involution lives on a different group algebra");
  for (std::size_t g = 0; g < T.G.order(); ++g)
    if (T.A.mul(tau.coef[g], T.at(tau.perm[g])) != T.at((int)g)) return false;
  return true;
}

KernelReport kernel_of_T(const Pseudocharacter& T) {
  GroupAlgebra R = GroupAlgebra::make(T.G, T.A);
  std::size_t d = T.A.dim(), n = T.G.order();
  Mat sys(R.dim(), n * d);
  std::vector<int> tord;
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t g = 0; g < n; ++g) {
      for (std::size_t mu = 0; mu < d; ++mu) {
        Vec v = T.A.mul(T.A.basis_elem(mu), T.at(T.G.mul((int)g, (int)y)));
        for (std::size_t j = 0; j < d; ++j) sys.at(g * d + mu, y * d + j) = v[j];
      }
    }
    tord.insert(tord.end(), T.A.shape.ord.begin(), T.A.shape.ord.end());
  }
  KernelReport rep;
  rep.kernel = left_kernel(T.A.O, sys, R.shape, Shape{T.A.O, tord});
  Mat msys(R.dim(), d);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t mu = 0; mu < d; ++mu) {
      Vec v = T.A.mul(T.A.basis_elem(mu), T.at((int)g));
      for (std::size_t j = 0; j < d; ++j) msys.at(g * d + mu, j) = v[j];
    }
  rep.module_kernel = left_kernel(T.A.O, msys, R.shape, T.A.shape);
  require(rep.module_kernel.contains(rep.kernel), errc::internal,
          "kernel escapes the module kernel");
  require(two_sided(R, rep.kernel), errc::internal, "kernel of T is not two-sided");
  return rep;
}

Lattice kernel_of_rho(const GroupRep& rho) {
  GroupAlgebra R = GroupAlgebra::make(rho.G, rho.A);
  std::size_t d = rho.A.dim(), nn = rho.n;
  Mat sys(R.dim(), nn * nn * d);
  for (std::size_t g = 0; g < rho.G.order(); ++g)
    for (std::size_t mu = 0; mu < d; ++mu)
      sys.set_row(g * d + mu,
                  amat_flatten(amat_smul(rho.A, rho.A.basis_elem(mu), rho.mats[g])));
  return left_kernel(rho.A.O, sys, R.shape, matrix_shape(rho.A, nn));
}

KernelComparison compare_kernels(const GroupRep& rho) {
  KernelComparison out;
  out.ker_rho = kernel_of_rho(rho);
  out.ker_T = kernel_of_T(Pseudocharacter::of_rep(rho)).kernel;
  require(out.ker_T.contains(out.ker_rho), errc::internal,
          "kernel of the representation escapes the trace kernel");
  out.equal = out.ker_rho == out.ker_T;
  if (!out.equal)
    for (std::size_t r = 0; r < out.ker_T.basis.rows; ++r)
      if (!out.ker_rho.contains(out.ker_T.basis.row(r))) {
        out.witness = out.ker_T.basis.row(r);
        break;
      }
  return out;
}

Vec CHQuotient::project(const Vec& x) const {
  Vec y = vec_mat(R.A.O, x, sel);
  Vec out(keep.size());
  for (std::size_t t = 0; t < keep.size(); ++t) out[t] = y[keep[t]];
  return shape.reduce(out);
}

Vec CHQuotient::lift(const Vec& s) const {
  Vec out(R.dim(), 0);
  for (std::size_t i = 0; i < dim(); ++i)
    out = vec_add(R.A.O, out, vec_scale(R.A.O, s[i], lifts.row(i)));
  return R.shape.reduce(out);
}

Vec CHQuotient::add(const Vec& x, const Vec& y) const {
  return shape.reduce(vec_add(R.A.O, x, y));
}
Vec CHQuotient::sub(const Vec& x, const Vec& y) const {
  return shape.reduce(vec_sub(R.A.O, x, y));
}

Vec CHQuotient::mul(const Vec& x, const Vec& y) const {
  const BaseRing& O = R.A.O;
  Vec out(dim(), 0);
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    Vec row = vec_mat(O, y, mult[i]);
    out = vec_add(O, out, vec_scale(O, x[i], row));
  }
  return shape.reduce(out);
}

Vec CHQuotient::amul(const Vec& a, const Vec& x) const {
  Vec img = shape.reduce(vec_mat(R.A.O, R.A.shape.reduce(a), embed));
  return mul(img, x);
}

Vec CHQuotient::trace_of(const Vec& s) const {
  return R.A.shape.reduce(vec_mat(R.A.O, s, traces));
}

Vec CHQuotient::apply_tau(const Vec& s) const {
  require(tau.has_value(), errc::bad_scenario, "quotient carries no involution");
  return shape.reduce(vec_mat(R.A.O, s, *tau));
}

bool CHQuotient::is_idempotent(const Vec& s) const {
  Vec v = shape.reduce(s);
  return mul(v, v) == v;
}

CHQuotient cayley_hamilton_quotient(const Pseudocharacter& T, const Lattice& K,
                                    const std::optional<Involution>& tau) {
  CHQuotient S;
  S.R = GroupAlgebra::make(T.G, T.A);
  S.T = T;
  const BaseRing& O = T.A.O;
  require(K.shape == S.R.shape, errc::mismatched_parent, "kernel lives in a different algebra");
  require(two_sided(S.R, K), errc::bad_scenario, "kernel is not a two-sided ideal");
  KernelReport kt = kernel_of_T(T);
  require(kt.kernel.contains(K), errc::bad_scenario, "trace does not descend to the quotient");
  if (tau) {
    require(check_self_dual(T, *tau), errc::not_self_dual, "trace is not involution-symmetric");
    Mat timg(0, S.R.dim());
    for (std::size_t r = 0; r < K.basis.rows; ++r)
      timg.push_row(S.R.apply_involution(*tau, K.basis.row(r)));
    require(Lattice::span(S.R.shape, timg) == K, errc::not_self_dual,
            "kernel is not stable under the involution");
  }
  S.K = K;

  SmithResult sm = smith_form(O, K.basis);
  std::vector<int> ord;
  for (std::size_t j = 0; j < S.R.dim(); ++j)
    if (sm.diag_exp[j] > 0) {
      S.keep.push_back(j);
      ord.push_back(sm.diag_exp[j]);
    }
  S.shape = Shape{O, ord};
  S.sel = sm.C;
  S.lifts = Mat(S.keep.size(), S.R.dim());
  for (std::size_t t = 0; t < S.keep.size(); ++t)
    S.lifts.set_row(t, S.R.shape.reduce(sm.Cinv.row(S.keep[t])));

  std::size_t m = S.dim();
  S.mult.assign(m, Mat(m, m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      S.mult[i].set_row(j, S.project(S.R.convolve(S.lifts.row(i), S.lifts.row(j))));
  S.one = S.project(S.R.one());
  S.group_img = Mat(T.G.order(), m);
  for (std::size_t g = 0; g < T.G.order(); ++g)
    S.group_img.set_row(g, S.project(S.R.delta((int)g, T.A.one)));
  S.embed = Mat(T.A.dim(), m);
  for (std::size_t mu = 0; mu < T.A.dim(); ++mu)
    S.embed.set_row(mu, S.project(S.R.delta(0, T.A.basis_elem(mu))));
  S.traces = Mat(m, T.A.dim());
  for (std::size_t i = 0; i < m; ++i) S.traces.set_row(i, T.eval(S.R, S.lifts.row(i)));
  if (tau) {
    Mat tm(m, m);
    for (std::size_t i = 0; i < m; ++i)
      tm.set_row(i, S.project(S.R.apply_involution(*tau, S.lifts.row(i))));
    S.tau = std::move(tm);
  }

  // structural sanity: these hold by construction for honest inputs
  for (std::size_t i = 0; i < m; ++i) {
    Vec b(m, 0);
    b[i] = 1;
    b = S.shape.reduce(b);
    require(S.mul(S.one, b) == b && S.mul(b, S.one) == b, errc::internal,
            "quotient lost its unit");
  }
  for (std::size_t g = 0; g < T.G.order(); ++g)
    for (std::size_t h = 0; h < T.G.order(); ++h)
      require(S.mul(S.group_img.row(g), S.group_img.row(h)) ==
                  S.group_img.row((std::size_t)T.G.mul((int)g, (int)h)),
              errc::internal, "group images stopped being multiplicative");
  std::mt19937_64 rng(0x5EED);
  std::size_t triples = m * m * m;
  for (std::size_t t = 0; t < std::min<std::size_t>(triples, 512); ++t) {
    std::size_t i, j, k;
    if (triples <= 512) {
      i = t / (m * m);
      j = (t / m) % m;
      k = t % m;
    } else {
      i = rng() % m;
      j = rng() % m;
      k = rng() % m;
    }
    Vec bi(m, 0), bj(m, 0), bk(m, 0);
    bi[i] = bj[j] = bk[k] = 1;
    require(S.mul(S.mul(bi, bj), bk) == S.mul(bi, S.mul(bj, bk)), errc::internal,
            "quotient product is not associative");
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Vec bi(m, 0), bj(m, 0);
      bi[i] = bj[j] = 1;
      require(S.trace_of(S.mul(bi, bj)) == S.trace_of(S.mul(bj, bi)), errc::internal,
              "induced trace is not central");
      if (S.tau)
        require(S.apply_tau(S.mul(bi, bj)) == S.mul(S.apply_tau(bj), S.apply_tau(bi)),
                errc::internal, "induced involution is not an anti-homomorphism");
    }
  if (S.tau)
    for (std::size_t i = 0; i < m; ++i) {
      Vec bi(m, 0);
      bi[i] = 1;
      bi = S.shape.reduce(bi);
      require(S.apply_tau(S.apply_tau(bi)) == bi, errc::internal,
              "induced involution does not square to one");
      require(S.trace_of(S.apply_tau(bi)) == S.trace_of(bi), errc::internal,
              "induced trace lost involution symmetry");
    }
  return S;
}

Mat quotient_surjection(const CHQuotient& from, const CHQuotient& to) {
  require(from.R.G.table == to.R.G.table && from.R.A.shape == to.R.A.shape &&
              from.R.A.O == to.R.A.O && from.T.values == to.T.values,
          errc::mismatched_parent, "quotients of different group algebras");
  require(to.K.contains(from.K), errc::bad_scenario,
          "no surjection: target kernel does not contain the source kernel");
  Mat M(from.dim(), to.dim());
  for (std::size_t i = 0; i < from.dim(); ++i) M.set_row(i, to.project(from.lifts.row(i)));
  auto apply = [&](const Vec& s) { return to.shape.reduce(vec_mat(from.R.A.O, s, M)); };
  require(apply(from.one) == to.one, errc::diagram_not_commuting, "unit is not preserved");
  for (std::size_t i = 0; i < from.dim(); ++i)
    for (std::size_t j = 0; j < from.dim(); ++j) {
      Vec bi(from.dim(), 0), bj(from.dim(), 0);
      bi[i] = bj[j] = 1;
      require(apply(from.mul(bi, bj)) == to.mul(apply(bi), apply(bj)),
              errc::diagram_not_commuting, "map is not multiplicative");
    }
  return M;
}

Vec newton_idempotent(const CHQuotient& S, Vec x) {
  x = S.shape.reduce(x);
  for (int it = 0; it < 64; ++it) {
    Vec sq = S.mul(x, x);
    if (sq == x) return x;
    Vec cube = S.mul(sq, x);
    x = S.sub(S.shape.reduce(vec_scale(S.R.A.O, 3, sq)),
              S.shape.reduce(vec_scale(S.R.A.O, 2, cube)));
  }
  fail(errc::no_convergence, "idempotent iteration did not settle");
}

std::pair<Vec, Vec> lift_idempotents(const CHQuotient& S, const Vec& e1bar, const Vec& e2bar,
                                     bool tau_symmetric) {
  Vec s1 = S.shape.reduce(e1bar), s2 = S.shape.reduce(e2bar);
  if (tau_symmetric) {
    std::int64_t half = S.R.A.O.inv(2);
    s1 = S.shape.reduce(vec_scale(S.R.A.O, half, S.add(s1, S.apply_tau(s1))));
    s2 = S.shape.reduce(vec_scale(S.R.A.O, half, S.add(s2, S.apply_tau(s2))));
  }
  Vec e1 = newton_idempotent(S, s1);
  Vec f2 = newton_idempotent(S, s2);
  Vec co = S.sub(S.one, e1);
  Vec e2 = newton_idempotent(S, S.mul(S.mul(co, f2), co));
  require(!gmalab::is_zero(e1) && !gmalab::is_zero(e2), errc::not_residual_idempotent,
          "an idempotent lifted to zero");
  require(gmalab::is_zero(S.mul(e1, e2)) && gmalab::is_zero(S.mul(e2, e1)),
          errc::not_residual_idempotent, "lifted idempotents are not orthogonal");
  require(S.add(e1, e2) == S.one, errc::not_residual_idempotent,
          "lifted idempotents do not sum to one");
  if (tau_symmetric)
    require(S.apply_tau(e1) == e1 && S.apply_tau(e2) == e2, errc::not_residual_idempotent,
            "idempotents are not involution-fixed");
  return {e1, e2};
}

GMADecomposition gma_decompose(const CHQuotient& S, const Vec& e1, const Vec& e2) {
  GMADecomposition gma;
  gma.S = S;
  gma.e1 = S.shape.reduce(e1);
  gma.e2 = S.shape.reduce(e2);
  require(S.is_idempotent(gma.e1) && S.is_idempotent(gma.e2), errc::not_residual_idempotent,
          "inputs are not idempotent");
  require(gmalab::is_zero(S.mul(gma.e1, gma.e2)) && gmalab::is_zero(S.mul(gma.e2, gma.e1)),
          errc::not_residual_idempotent, "idempotents are not orthogonal");
  require(S.add(gma.e1, gma.e2) == S.one, errc::not_residual_idempotent,
          "idempotents do not sum to one");

  const LocalAlgebra& A = S.R.A;
  auto integral_trace = [&](const Vec& e) -> std::size_t {
    Vec t = S.trace_of(e);
    for (std::size_t k = 0; k <= S.T.n; ++k)
      if (t == A.scalar((std::int64_t)k)) return k;
    fail(errc::not_residual_idempotent, "trace of an idempotent is not integral");
  };
  gma.n1 = integral_trace(gma.e1);
  gma.n2 = integral_trace(gma.e2);
  require(gma.n1 >= 1 && gma.n2 >= 1 && gma.n1 + gma.n2 == S.T.n,
          errc::not_residual_idempotent, "idempotent traces do not split the dimension");

  const Vec* es[2] = {&gma.e1, &gma.e2};
  int total = 0;
  Mat allrows(0, S.dim());
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Mat rows(0, S.dim());
      for (std::size_t k = 0; k < S.dim(); ++k) {
        Vec b(S.dim(), 0);
        b[k] = 1;
        rows.push_row(S.mul(S.mul(*es[i], S.shape.reduce(b)), *es[j]));
      }
      Lattice C = Lattice::span(S.shape, rows);
      gma.corner_inv[i * 2 + j] = lattice_invariants(C);
      for (int f : gma.corner_inv[i * 2 + j].factors) total += f;
      for (std::size_t r = 0; r < C.basis.rows; ++r) allrows.push_row(C.basis.row(r));
      gma.corner[i * 2 + j] = std::move(C);
    }
  int full = 0;
  for (int o : S.shape.ord) full += o;
  require(total == full && Lattice::span(S.shape, allrows) == Lattice::full(S.shape),
          errc::internal, "corners do not decompose the quotient");
  gma.tau_stable = S.tau.has_value() && S.apply_tau(gma.e1) == gma.e1 &&
                   S.apply_tau(gma.e2) == gma.e2;
  return gma;
}

Ideal reducibility_ideal(const GMADecomposition& gma) {
  const CHQuotient& S = gma.S;
  std::vector<Vec> gens;
  const Lattice& a12 = gma.corner[1];
  const Lattice& a21 = gma.corner[2];
  for (std::size_t r = 0; r < a12.basis.rows; ++r)
    for (std::size_t s = 0; s < a21.basis.rows; ++s)
      gens.push_back(S.trace_of(S.mul(a12.basis.row(r), a21.basis.row(s))));
  return S.R.A.ideal(gens);
}

bool splits_as_two_characters(const Pseudocharacter& T, const Ideal& I) {
  require(T.n == 2, errc::too_large_for_exhaustion,
          "splitting search is implemented for dimension two");
  if (I.contains(T.A.one)) return true; // everything collapses
  auto [B, pi] = quotient_algebra(T.A, I);
  const FiniteGroup& G = T.G;
  if (G.gens.empty()) return true; // trivial group: T = 1 + 1
  unsigned long long count = 1;
  for (std::size_t t = 0; t < G.gens.size(); ++t) {
    count *= B.size();
    require(count <= (1ull << 21), errc::too_large_for_exhaustion,
            "too many candidate characters");
  }
  std::vector<Vec> tbar(G.order());
  for (std::size_t g = 0; g < G.order(); ++g) tbar[g] = pi.apply(T.at((int)g));
  std::vector<Vec> elems = Lattice::full(B.shape).elements(1ull << 21);

  std::vector<std::size_t> pick(G.gens.size(), 0);
  while (true) {
    // propagate candidate generator values to a character, if consistent
    std::vector<std::optional<Vec>> chi(G.order());
    chi[0] = B.shape.reduce(B.one);
    bool ok = true;
    bool grew = true;
    while (grew && ok) {
      grew = false;
      for (std::size_t g = 0; g < G.order() && ok; ++g) {
        if (!chi[g]) continue;
        for (std::size_t t = 0; t < G.gens.size() && ok; ++t) {
          int gs = G.mul((int)g, G.gens[t]);
          Vec v = B.mul(*chi[g], elems[pick[t]]);
          if (!chi[gs]) {
            chi[gs] = v;
            grew = true;
          } else if (*chi[gs] != v) {
            ok = false;
          }
        }
      }
    }
    for (std::size_t g = 0; g < G.order() && ok; ++g)
      if (!chi[g]) ok = false;
    if (ok) {
      std::vector<Vec> chi2(G.order());
      for (std::size_t g = 0; g < G.order(); ++g) chi2[g] = B.sub(tbar[g], *chi[g]);
      bool mult = chi2[0] == B.shape.reduce(B.one);
      for (std::size_t g = 0; g < G.order() && mult; ++g)
        for (std::size_t h = 0; h < G.order() && mult; ++h)
          if (chi2[(std::size_t)G.mul((int)g, (int)h)] != B.mul(chi2[g], chi2[h])) mult = false;
      if (mult) return true;
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == elems.size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return false;
}

bool verify_minimality(const Pseudocharacter& T, const Ideal& IT) {
  unsigned long long cap = 1;
  for (int i = 0; i < 6; ++i) cap *= (unsigned long long)T.A.O.p;
  require(T.A.size() <= cap, errc::too_large_for_exhaustion,
          "coefficient algebra too large for ideal enumeration");
  if (!splits_as_two_characters(T, IT)) return false;
  std::vector<Ideal> sub;
  for (const Ideal& J : T.A.all_ideals())
    if (IT.contains(J) && J != IT) sub.push_back(J);
  for (const Ideal& J : sub) {
    bool maximal = true;
    for (const Ideal& K : sub)
      if (K != J && K.contains(J)) maximal = false;
    if (maximal && splits_as_two_characters(T, J)) return false;
  }
  return true;
}

PrincipalityCertificate principality_certificate(const GMADecomposition& gma) {
  const CHQuotient& S = gma.S;
  const LocalAlgebra& A = S.R.A;
  PrincipalityCertificate cert;
  cert.used_involution = gma.tau_stable;
  Ideal IT = reducibility_ideal(gma);

  CornerGenerator c12 = corner_generator(S, gma.corner[1]);
  require(c12.min_generators <= 1, errc::corners_not_cyclic,
          "upper corner needs more than one generator");
  cert.g12 = c12.generator;
  if (gma.tau_stable) {
    Mat img(0, S.dim());
    for (std::size_t r = 0; r < gma.corner[1].basis.rows; ++r)
      img.push_row(S.apply_tau(gma.corner[1].basis.row(r)));
    cert.corner_swap_is_iso = Lattice::span(S.shape, img) == gma.corner[2];
    cert.g21 = S.apply_tau(cert.g12);
    require(gma.corner[2].contains(cert.g21), errc::internal,
            "involution image escapes the opposite corner");
    if (!cert.corner_swap_is_iso) {
      CornerGenerator c21 = corner_generator(S, gma.corner[2]);
      require(c21.min_generators <= 1, errc::corners_not_cyclic,
              "lower corner needs more than one generator");
      cert.g21 = c21.generator;
    }
  } else {
    CornerGenerator c21 = corner_generator(S, gma.corner[2]);
    require(c21.min_generators <= 1, errc::corners_not_cyclic,
            "lower corner needs more than one generator");
    cert.g21 = c21.generator;
  }
  cert.generator = S.trace_of(S.mul(cert.g12, cert.g21));
  cert.ideal = A.ideal({cert.generator});
  require(cert.ideal == IT, errc::internal,
          "principal generator does not span the reducibility ideal");
  return cert;
}

BlockTriangularization block_triangularize(const GroupRep& rho, std::size_t n1,
                                           const Ideal& I) {
  require(n1 >= 1 && n1 < rho.n, errc::bad_scenario, "block size out of range");
  auto [rhoB, pi] = mod_ideal(rho, I);
  const LocalAlgebra& B = rhoB.A;
  const BaseRing& O = B.O;
  std::size_t n2 = rho.n - n1;
  for (std::size_t g = 0; g < rho.G.order(); ++g)
    for (std::size_t r = 0; r < n2; ++r)
      for (std::size_t c = 0; c < n1; ++c)
        require(B.max_ideal.contains(rhoB.mats[g].at(n1 + r, c)), errc::bad_scenario,
                "representation is not residually block-triangular");

  const std::vector<int>& gens = rho.G.gens;
  // blocks of the generator images: [[a, b], [c, d]]
  auto blk = [&](const AMat& M, std::size_t r0, std::size_t c0, std::size_t nr,
                 std::size_t nc) {
    std::vector<Vec> out(nr * nc);
    for (std::size_t r = 0; r < nr; ++r)
      for (std::size_t c = 0; c < nc; ++c) out[r * nc + c] = M.at(r0 + r, c0 + c);
    return out;
  };
  auto bmul = [&](const std::vector<Vec>& P, std::size_t pr, std::size_t pc,
                  const std::vector<Vec>& Q, std::size_t qc) {
    std::vector<Vec> out(pr * qc, B.zero());
    for (std::size_t r = 0; r < pr; ++r)
      for (std::size_t c = 0; c < qc; ++c)
        for (std::size_t k = 0; k < pc; ++k)
          out[r * qc + c] = B.add(out[r * qc + c], B.mul(P[r * pc + k], Q[k * qc + c]));
    return out;
  };
  auto bsub = [&](const std::vector<Vec>& P, const std::vector<Vec>& Q) {
    std::vector<Vec> out(P.size());
    for (std::size_t i = 0; i < P.size(); ++i) out[i] = B.sub(P[i], Q[i]);
    return out;
  };

  std::vector<Vec> X(n2 * n1, B.zero());
  auto residual = [&](int s) {
    const AMat& M = rhoB.mats[s];
    auto a = blk(M, 0, 0, n1, n1), b = blk(M, 0, n1, n1, n2);
    auto c = blk(M, n1, 0, n2, n1), d = blk(M, n1, n1, n2, n2);
    auto r = bsub(c, bmul(X, n2, n1, a, n1));
    r = bsub(r, bsub(bmul(X, n2, n1, bmul(b, n1, n2, X, n1), n1), bmul(d, n2, n2, X, n1)));
    return r; // c - X a + d X - X b X
  };
  auto all_zero = [&](const std::vector<std::vector<Vec>>& rs) {
    for (const auto& r : rs)
      for (const Vec& v : r)
        if (!gmalab::is_zero(v)) return false;
    return true;
  };

  BlockTriangularization out{false, -1, B, pi, AMat(rho.n, B.dim()), std::nullopt};
  Ideal Mk = B.max_ideal;
  int layer = 1;
  while (true) {
    std::vector<std::vector<Vec>> rs;
    for (int s : gens) rs.push_back(residual(s));
    if (all_zero(rs)) break;
    for (const auto& r : rs)
      for (const Vec& v : r)
        require(Mk.contains(v), errc::internal, "residual escapes the current layer");
    if (Mk.is_zero()) {
      out.obstruction_layer = layer;
      return out;
    }
    Ideal Mk1 = B.product(Mk, B.max_ideal);
    std::size_t kb = Mk.L.basis.rows, d = B.dim();
    std::size_t eqs = gens.size() * n2 * n1 * d;
    std::size_t extra = gens.size() * n2 * n1 * Mk1.L.basis.rows;
    Mat sys(n2 * n1 * kb + extra, eqs);
    for (std::size_t r = 0; r < n2; ++r)
      for (std::size_t c = 0; c < n1; ++c)
        for (std::size_t bt = 0; bt < kb; ++bt) {
          std::size_t urow = (r * n1 + c) * kb + bt;
          Vec v = Mk.L.basis.row(bt);
          for (std::size_t si = 0; si < gens.size(); ++si) {
            const AMat& M = rhoB.mats[gens[si]];
            for (std::size_t c2 = 0; c2 < n1; ++c2) {
              Vec t = B.mul(v, M.at(c, c2)); // (Delta a) entry (r, c2)
              std::size_t base = ((si * n2 + r) * n1 + c2) * d;
              for (std::size_t mu = 0; mu < d; ++mu)
                sys.at(urow, base + mu) = O.add(sys.at(urow, base + mu), t[mu]);
            }
            for (std::size_t r2 = 0; r2 < n2; ++r2) {
              Vec t = B.mul(M.at(n1 + r2, n1 + r), v); // (d Delta) entry (r2, c)
              std::size_t base = ((si * n2 + r2) * n1 + c) * d;
              for (std::size_t mu = 0; mu < d; ++mu)
                sys.at(urow, base + mu) = O.sub(sys.at(urow, base + mu), t[mu]);
            }
          }
        }
    std::size_t at = n2 * n1 * kb;
    for (std::size_t si = 0; si < gens.size(); ++si)
      for (std::size_t r = 0; r < n2; ++r)
        for (std::size_t c = 0; c < n1; ++c)
          for (std::size_t bt = 0; bt < Mk1.L.basis.rows; ++bt) {
            Vec v = Mk1.L.basis.row(bt);
            std::size_t base = ((si * n2 + r) * n1 + c) * d;
            for (std::size_t mu = 0; mu < d; ++mu) sys.at(at, base + mu) = v[mu];
            ++at;
          }
    Vec rhs(eqs, 0);
    for (std::size_t si = 0; si < gens.size(); ++si)
      for (std::size_t r = 0; r < n2; ++r)
        for (std::size_t c = 0; c < n1; ++c) {
          const Vec& v = rs[si][r * n1 + c];
          std::size_t base = ((si * n2 + r) * n1 + c) * d;
          for (std::size_t mu = 0; mu < d; ++mu) rhs[base + mu] = v[mu];
        }
    std::optional<Vec> sol = solve_left(O, sys, rhs);
    if (!sol) {
      out.obstruction_layer = layer;
      return out;
    }
    for (std::size_t r = 0; r < n2; ++r)
      for (std::size_t c = 0; c < n1; ++c) {
        Vec delta = B.zero();
        for (std::size_t bt = 0; bt < kb; ++bt)
          delta = B.add(delta, B.smul((*sol)[(r * n1 + c) * kb + bt], Mk.L.basis.row(bt)));
        X[r * n1 + c] = B.add(X[r * n1 + c], delta);
      }
    Mk = Mk1;
    ++layer;
  }

  AMat Z = amat_identity(B, rho.n);
  for (std::size_t r = 0; r < n2; ++r)
    for (std::size_t c = 0; c < n1; ++c) Z.at(n1 + r, c) = B.sub(B.zero(), X[r * n1 + c]);
  AMat Zi = amat_inv(B, Z);
  std::vector<AMat> conj(rho.G.order());
  for (std::size_t g = 0; g < rho.G.order(); ++g) {
    conj[g] = amat_mul(B, amat_mul(B, Z, rhoB.mats[g]), Zi);
    for (std::size_t r = 0; r < n2; ++r)
      for (std::size_t c = 0; c < n1; ++c)
        require(gmalab::is_zero(conj[g].at(n1 + r, c)), errc::internal,
                "conjugated image is not block-triangular");
  }
  out.success = true;
  out.conjugator = Z;
  out.upper = GroupRep::from_map(rho.G, B, std::move(conj));
  return out;
}

bool nonzerodivisor_check(const LocalAlgebra& A, const Vec& t) {
  require(A.size() <= 4096, errc::too_large_for_exhaustion, "algebra too large to scan");
  Vec tt = A.shape.reduce(t);
  for (const Vec& x : Lattice::full(A.shape).elements(4096))
    if (!gmalab::is_zero(x) && gmalab::is_zero(A.mul(tt, x))) return false;
  return true;
}

} // namespace gmalab
