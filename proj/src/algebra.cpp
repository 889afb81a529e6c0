#include "gmalab/algebra.hpp"

#include <algorithm>
#include <random>

namespace gmalab {

namespace {

int logp(const BaseRing& O, unsigned long long s) {
  int k = 0;
  while (s > 1) {
    require(s % (unsigned long long)O.p == 0, errc::internal, "order is not a p-power");
    s /= (unsigned long long)O.p;
    ++k;
  }
  return k;
}

// Nilpotents of the special fibre A/pA, as a lattice over F_p.  The p-power
// map is F_p-linear there, so the nilradical is the stable kernel of its
// iterates.
Lattice fibre_nilpotents(const LocalAlgebra& A, const BaseRing& Fp) {
  std::size_t d = A.dim();
  Mat frob(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    Vec x = A.pow_elem(A.basis_elem(i), A.O.p);
    for (std::size_t j = 0; j < d; ++j) frob.at(i, j) = Fp.norm(x[j]);
  }
  Shape full = Shape::full(Fp, d);
  Mat power = frob;
  Lattice ker = left_kernel(Fp, power, full, full);
  for (;;) {
    power = mat_mul(Fp, power, frob);
    Lattice next = left_kernel(Fp, power, full, full);
    if (next == ker) return ker;
    ker = next;
  }
}

} // namespace

Vec LocalAlgebra::mul(const Vec& x, const Vec& y) const {
  Vec acc(dim(), 0);
  for (std::size_t i = 0; i < dim(); ++i) {
    std::int64_t c = O.norm(x[i]);
    if (c == 0) continue;
    const Mat& mi = mult[i];
    for (std::size_t k = 0; k < dim(); ++k) {
      std::int64_t yk = O.norm(y[k]);
      if (yk == 0) continue;
      std::int64_t cy = O.mul(c, yk);
      for (std::size_t j = 0; j < dim(); ++j) acc[j] = (acc[j] + cy * mi.at(k, j)) % O.q;
    }
  }
  return shape.reduce(acc);
}

Vec LocalAlgebra::pow_elem(Vec x, std::int64_t n) const {
  Vec r = shape.reduce(one);
  x = shape.reduce(x);
  for (; n > 0; n >>= 1) {
    if (n & 1) r = mul(r, x);
    x = mul(x, x);
  }
  return r;
}

Mat LocalAlgebra::mult_matrix(const Vec& x) const {
  Mat M(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i) M.set_row(i, mul(basis_elem(i), x));
  return M;
}

Vec LocalAlgebra::inv_elem(const Vec& x) const {
  auto sol = solve_left_mod(O, mult_matrix(x), shape.reduce(one), shape);
  require(sol.has_value(), errc::non_invertible_image, "element has no inverse");
  return shape.reduce(*sol);
}

Ideal LocalAlgebra::ideal(const std::vector<Vec>& gens) const {
  Mat rows(0, dim());
  for (const Vec& g : gens)
    for (std::size_t i = 0; i < dim(); ++i) rows.push_row(mul(g, basis_elem(i)));
  return Ideal{Lattice::span(shape, rows)};
}

Ideal LocalAlgebra::sum(const Ideal& I, const Ideal& J) const { return Ideal{I.L.sum(J.L)}; }

Ideal LocalAlgebra::product(const Ideal& I, const Ideal& J) const {
  Mat rows(0, dim());
  for (std::size_t i = 0; i < I.L.basis.rows; ++i)
    for (std::size_t j = 0; j < J.L.basis.rows; ++j)
      rows.push_row(mul(I.L.basis.row(i), J.L.basis.row(j)));
  return Ideal{Lattice::span(shape, rows)};
}

Ideal LocalAlgebra::annihilator(const Ideal& I) const {
  std::size_t d = dim(), k = I.L.basis.rows;
  Mat W(d, k * d);
  std::vector<int> tord;
  for (std::size_t b = 0; b < k; ++b) {
    Mat Mg = mult_matrix(I.L.basis.row(b));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) W.at(i, b * d + j) = Mg.at(i, j);
    tord.insert(tord.end(), shape.ord.begin(), shape.ord.end());
  }
  return Ideal{left_kernel(O, W, shape, Shape{O, tord})};
}

std::size_t LocalAlgebra::minimal_generators(const Ideal& I) const {
  if (I.is_zero()) return 0;
  Ideal mI = product(max_ideal, I);
  int k = logp(O, I.order() / mI.order());
  require(k % residue_degree == 0, errc::internal, "I/mI is not a residue vector space");
  return (std::size_t)(k / residue_degree);
}

std::optional<Vec> LocalAlgebra::principal_generator(const Ideal& I) const {
  if (I.is_zero()) return zero();
  if (minimal_generators(I) != 1) return std::nullopt;
  Ideal mI = product(max_ideal, I);
  for (std::size_t i = 0; i < I.L.basis.rows; ++i) {
    Vec r = shape.reduce(I.L.basis.row(i));
    if (mI.contains(r)) continue;
    require(ideal({r}) == I, errc::internal, "Nakayama witness does not generate");
    return r;
  }
  fail(errc::internal, "no generator outside m*I");
}

bool LocalAlgebra::is_gorenstein() const {
  Ideal socle = annihilator(max_ideal);
  return logp(O, socle.order()) == residue_degree;
}

std::vector<Ideal> LocalAlgebra::all_ideals(unsigned long long elem_cap) const {
  auto elems = Lattice::full(shape).elements(elem_cap);
  std::vector<Ideal> found;
  auto add = [&](const Ideal& I) {
    for (const Ideal& J : found)
      if (J == I) return false;
    found.push_back(I);
    return true;
  };
  for (const Vec& x : elems) add(ideal({x}));
  bool grew = true;
  while (grew) {
    grew = false;
    std::size_t n = found.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (add(sum(found[i], found[j]))) grew = true;
  }
  std::sort(found.begin(), found.end(), [](const Ideal& a, const Ideal& b) {
    auto oa = a.order(), ob = b.order();
    if (oa != ob) return oa < ob;
    return a.L.basis.a < b.L.basis.a;
  });
  return found;
}

LocalAlgebra LocalAlgebra::make(const BaseRing& O, std::vector<int> ord, std::vector<Mat> mult,
                                Vec one) {
  std::size_t d = ord.size();
  require(d >= 1, errc::no_unit, "algebra needs at least one generator");
  for (int o : ord)
    require(o >= 1 && o <= O.e, errc::bad_scenario, "generator order out of range");
  require(mult.size() == d && one.size() == d, errc::bad_scenario, "structure table sizes");
  LocalAlgebra A;
  A.O = O;
  A.shape = Shape{O, std::move(ord)};
  for (Mat& m : mult) {
    require(m.rows == d && m.cols == d, errc::bad_scenario, "structure table sizes");
    for (std::size_t i = 0; i < d; ++i) m.set_row(i, A.shape.reduce(m.row(i)));
  }
  A.mult = std::move(mult);
  A.one = A.shape.reduce(one);
  require(!gmalab::is_zero(A.one), errc::no_unit, "unit element is zero");

  // products must die with whichever factor has the smaller additive order
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec scaled = A.shape.reduce(vec_scale(O, O.pow_p(A.shape.ord[i]), A.mult[i].row(j)));
      require(gmalab::is_zero(scaled), errc::relation_violated,
              "product outlives a generator's additive order");
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      require(A.mult[i].row(j) == A.mult[j].row(i), errc::not_commutative,
              "structure constants are not symmetric");
  for (std::size_t j = 0; j < d; ++j)
    require(A.mul(A.one, A.basis_elem(j)) == A.basis_elem(j), errc::no_unit,
            "designated unit does not act as identity");

  auto check_assoc = [&](std::size_t i, std::size_t j, std::size_t k) {
    Vec lhs = A.mul(A.mul(A.basis_elem(i), A.basis_elem(j)), A.basis_elem(k));
    Vec rhs = A.mul(A.basis_elem(i), A.mul(A.basis_elem(j), A.basis_elem(k)));
    require(lhs == rhs, errc::not_associative, "associativity fails on basis triple");
  };
  if (d * d * d <= 512) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) check_assoc(i, j, k);
  } else {
    std::mt19937_64 rng(0xA55A);
    std::uniform_int_distribution<std::size_t> pick(0, d - 1);
    for (int t = 0; t < 512; ++t) check_assoc(pick(rng), pick(rng), pick(rng));
  }

  BaseRing Fp = BaseRing::make(O.p, 1);
  Lattice nil = fibre_nilpotents(A, Fp);
  Shape fibre = Shape::full(Fp, d);
  Mat frob_minus_id(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    Vec x = A.pow_elem(A.basis_elem(i), O.p);
    for (std::size_t j = 0; j < d; ++j)
      frob_minus_id.at(i, j) = Fp.sub(Fp.norm(x[j]), i == j ? 1 : 0);
  }
  // fixed points of Frobenius on the étale quotient count the field factors
  Lattice fixed = relative_relations(frob_minus_id, nil, fibre);
  int factors = logp(Fp, fixed.size()) - logp(Fp, nil.size());
  require(factors == 1, errc::not_local, "algebra splits into several local factors");
  A.residue_degree = (int)d - logp(Fp, nil.size());

  std::vector<Vec> mgens{A.scalar(O.p)};
  for (std::size_t i = 0; i < nil.basis.rows; ++i) mgens.push_back(A.shape.reduce(nil.basis.row(i)));
  A.max_ideal = A.ideal(mgens);
  unsigned long long rf = 1;
  for (int i = 0; i < A.residue_degree; ++i) rf *= (unsigned long long)O.p;
  require(A.size() / A.max_ideal.order() == rf, errc::internal, "residue field size mismatch");
  return A;
}

LocalAlgebra LocalAlgebra::base(const BaseRing& O) {
  Mat m(1, 1);
  m.at(0, 0) = 1;
  return make(O, {O.e}, {m}, {1});
}

LocalAlgebra LocalAlgebra::quadratic(const BaseRing& O, std::int64_t a, std::int64_t b,
                                     int xord) {
  Mat m0(2, 2), m1(2, 2);
  m0.at(0, 0) = 1;
  m0.at(1, 1) = 1;
  m1.at(0, 1) = 1;
  m1.at(1, 0) = O.norm(b);
  m1.at(1, 1) = O.norm(a);
  return make(O, {O.e, xord}, {m0, m1}, {1, 0});
}

LocalAlgebra LocalAlgebra::monomial(const BaseRing& O, int k) {
  require(k >= 1, errc::bad_scenario, "monomial algebra needs degree >= 1");
  std::size_t d = (std::size_t)k;
  std::vector<Mat> mult(d, Mat(d, d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i + j < d) mult[i].at(j, i + j) = 1;
  Vec one(d, 0);
  one[0] = 1;
  return make(O, std::vector<int>(d, O.e), std::move(mult), one);
}

LocalAlgebra LocalAlgebra::square_zero_pair(const BaseRing& O) {
  std::vector<Mat> mult(3, Mat(3, 3));
  for (std::size_t j = 0; j < 3; ++j) mult[0].at(j, j) = 1;
  mult[1].at(0, 1) = 1; // x * 1 = x
  mult[2].at(0, 2) = 1; // y * 1 = y
  Vec one{1, 0, 0};
  return make(O, {O.e, O.e, O.e}, std::move(mult), one);
}

NilradicalReport nilradical_report(const LocalAlgebra& A) {
  BaseRing Fp = BaseRing::make(A.O.p, 1);
  Lattice nil = fibre_nilpotents(A, Fp);
  std::vector<Vec> lifted;
  for (std::size_t i = 0; i < nil.basis.rows; ++i) lifted.push_back(A.shape.reduce(nil.basis.row(i)));
  NilradicalReport rep;
  rep.structural = A.ideal(lifted);
  rep.nilradical = A.sum(rep.structural, A.ideal({A.scalar(A.O.p)}));
  rep.equals_max_ideal = rep.nilradical == A.max_ideal;
  rep.uniformizer_nilpotent = gmalab::is_zero(A.pow_elem(A.scalar(A.O.p), A.O.e));
  return rep;
}

AlgebraHom AlgebraHom::make(LocalAlgebra dom, LocalAlgebra cod, Mat M) {
  require(dom.O == cod.O, errc::mismatched_parent, "hom across different base rings");
  require(M.rows == dom.dim() && M.cols == cod.dim(), errc::bad_scenario, "hom matrix size");
  for (std::size_t i = 0; i < M.rows; ++i) M.set_row(i, cod.shape.reduce(M.row(i)));
  AlgebraHom h{std::move(dom), std::move(cod), std::move(M)};
  for (std::size_t i = 0; i < h.dom.dim(); ++i) {
    Vec img = h.M.row(i);
    Vec killed = h.cod.shape.reduce(vec_scale(h.cod.O, h.cod.O.pow_p(h.dom.shape.ord[i]), img));
    require(gmalab::is_zero(killed), errc::not_algebra_hom,
            "image outlives the generator's additive order");
  }
  require(h.apply(h.dom.one) == h.cod.shape.reduce(h.cod.one), errc::not_algebra_hom,
          "unit is not preserved");
  for (std::size_t i = 0; i < h.dom.dim(); ++i)
    for (std::size_t j = 0; j < h.dom.dim(); ++j) {
      Vec lhs = h.apply(h.dom.mul(h.dom.basis_elem(i), h.dom.basis_elem(j)));
      Vec rhs = h.cod.mul(h.M.row(i), h.M.row(j));
      require(lhs == rhs, errc::not_algebra_hom, "multiplicativity fails on basis pair");
    }
  return h;
}

bool AlgebraHom::is_surjective() const {
  return Lattice::span(cod.shape, M) == Lattice::full(cod.shape);
}

Lattice AlgebraHom::kernel_lattice() const {
  return left_kernel(dom.O, M, dom.shape, cod.shape);
}

std::pair<LocalAlgebra, AlgebraHom> quotient_algebra(const LocalAlgebra& A, const Ideal& I) {
  require(!I.contains(A.one), errc::no_unit, "quotient by the unit ideal");
  const BaseRing& O = A.O;
  SmithResult sm = smith_form(O, I.L.basis);
  std::vector<std::size_t> keep;
  std::vector<int> ord;
  for (std::size_t j = 0; j < A.dim(); ++j)
    if (sm.diag_exp[j] > 0) {
      keep.push_back(j);
      ord.push_back(sm.diag_exp[j]);
    }
  Shape qshape{O, ord};
  auto project = [&](const Vec& x) {
    Vec y = vec_mat(O, x, sm.C);
    Vec out(keep.size());
    for (std::size_t t = 0; t < keep.size(); ++t) out[t] = y[keep[t]];
    return qshape.reduce(out);
  };
  std::vector<Vec> lift(keep.size());
  for (std::size_t t = 0; t < keep.size(); ++t) lift[t] = sm.Cinv.row(keep[t]);
  std::vector<Mat> mult(keep.size(), Mat(keep.size(), keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      mult[i].set_row(j, project(A.mul(lift[i], lift[j])));
  LocalAlgebra B = LocalAlgebra::make(O, ord, std::move(mult), project(A.one));
  Mat hm(A.dim(), keep.size());
  for (std::size_t i = 0; i < A.dim(); ++i) hm.set_row(i, project(A.basis_elem(i)));
  AlgebraHom pi = AlgebraHom::make(A, B, std::move(hm));
  return {std::move(B), std::move(pi)};
}

} // namespace gmalab
