#include "gmalab/rep.hpp"

#include <algorithm>

namespace gmalab {

AMat amat_identity(const LocalAlgebra& A, std::size_t n) {
  AMat X(n, A.dim());
  for (std::size_t i = 0; i < n; ++i) X.at(i, i) = A.shape.reduce(A.one);
  return X;
}

AMat amat_scalar(const LocalAlgebra& A, std::size_t n, const Vec& a) {
  AMat X(n, A.dim());
  for (std::size_t i = 0; i < n; ++i) X.at(i, i) = A.shape.reduce(a);
  return X;
}

AMat amat_add(const LocalAlgebra& A, const AMat& X, const AMat& Y) {
  AMat Z(X.n, A.dim());
  for (std::size_t i = 0; i < X.e.size(); ++i) Z.e[i] = A.add(X.e[i], Y.e[i]);
  return Z;
}

AMat amat_sub(const LocalAlgebra& A, const AMat& X, const AMat& Y) {
  AMat Z(X.n, A.dim());
  for (std::size_t i = 0; i < X.e.size(); ++i) Z.e[i] = A.sub(X.e[i], Y.e[i]);
  return Z;
}

AMat amat_mul(const LocalAlgebra& A, const AMat& X, const AMat& Y) {
  std::size_t n = X.n;
  AMat Z(n, A.dim());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Vec& x = X.at(i, k);
      if (gmalab::is_zero(x)) continue;
      for (std::size_t j = 0; j < n; ++j)
        Z.at(i, j) = A.add(Z.at(i, j), A.mul(x, Y.at(k, j)));
    }
  return Z;
}

AMat amat_smul(const LocalAlgebra& A, const Vec& a, const AMat& X) {
  AMat Z(X.n, A.dim());
  for (std::size_t i = 0; i < X.e.size(); ++i) Z.e[i] = A.mul(a, X.e[i]);
  return Z;
}

AMat amat_transpose(const AMat& X) {
  AMat Z = X;
  for (std::size_t i = 0; i < X.n; ++i)
    for (std::size_t j = 0; j < X.n; ++j) Z.at(j, i) = X.at(i, j);
  return Z;
}

Vec amat_trace(const LocalAlgebra& A, const AMat& X) {
  Vec t = A.zero();
  for (std::size_t i = 0; i < X.n; ++i) t = A.add(t, X.at(i, i));
  return t;
}

bool amat_is_zero(const AMat& X) {
  for (const Vec& v : X.e)
    if (!gmalab::is_zero(v)) return false;
  return true;
}

namespace {

// Gauss-Jordan with unit pivots; over a local ring this succeeds exactly for
// invertible matrices.  When out is null only invertibility is reported.
bool gauss_invert(const LocalAlgebra& A, AMat X, AMat* out) {
  std::size_t n = X.n;
  AMat inv = amat_identity(A, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t i = col; i < n; ++i)
      if (A.is_unit_elem(X.at(i, col))) {
        piv = i;
        break;
      }
    if (piv == n) return false;
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(X.at(piv, j), X.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    Vec s = A.inv_elem(X.at(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      X.at(col, j) = A.mul(s, X.at(col, j));
      inv.at(col, j) = A.mul(s, inv.at(col, j));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      Vec f = X.at(i, col);
      if (gmalab::is_zero(f)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        X.at(i, j) = A.sub(X.at(i, j), A.mul(f, X.at(col, j)));
        inv.at(i, j) = A.sub(inv.at(i, j), A.mul(f, inv.at(col, j)));
      }
    }
  }
  if (out) *out = std::move(inv);
  return true;
}

} // namespace

AMat amat_inv(const LocalAlgebra& A, const AMat& X) {
  AMat out;
  require(gauss_invert(A, X, &out), errc::non_invertible_image, "matrix is singular");
  return out;
}

bool amat_invertible(const LocalAlgebra& A, const AMat& X) {
  return gauss_invert(A, X, nullptr);
}

Shape matrix_shape(const LocalAlgebra& A, std::size_t n) {
  std::vector<int> ord;
  for (std::size_t i = 0; i < n * n; ++i)
    ord.insert(ord.end(), A.shape.ord.begin(), A.shape.ord.end());
  return Shape{A.O, ord};
}

Vec amat_flatten(const AMat& X) {
  Vec out;
  for (const Vec& v : X.e) out.insert(out.end(), v.begin(), v.end());
  return out;
}

AMat amat_unflatten(const LocalAlgebra& A, std::size_t n, const Vec& flat) {
  std::size_t d = A.dim();
  AMat X(n, d);
  for (std::size_t i = 0; i < n * n; ++i)
    X.e[i] = A.shape.reduce(Vec(flat.begin() + i * d, flat.begin() + (i + 1) * d));
  return X;
}

GroupRep GroupRep::from_map(FiniteGroup G, LocalAlgebra A, std::vector<AMat> mats) {
  require(mats.size() == G.order(), errc::bad_scenario, "one matrix per group element");
  std::size_t n = mats.empty() ? 0 : mats[0].n;
  require(n >= 1, errc::bad_scenario, "empty representation");
  for (AMat& m : mats) {
    require(m.n == n, errc::bad_scenario, "uneven matrix sizes");
    for (Vec& v : m.e) {
      require(v.size() == A.dim(), errc::mismatched_parent, "entry has wrong coefficient ring");
      v = A.shape.reduce(v);
    }
  }
  GroupRep rho{std::move(G), std::move(A), n, std::move(mats)};
  require(rho.mats[0] == amat_identity(rho.A, n), errc::relation_violated,
          "identity does not map to the identity matrix");
  for (std::size_t g = 0; g < rho.G.order(); ++g)
    for (std::size_t h = 0; h < rho.G.order(); ++h)
      require(amat_mul(rho.A, rho.mats[g], rho.mats[h]) == rho.mats[rho.G.mul((int)g, (int)h)],
              errc::relation_violated, "matrices do not respect the group table");
  return rho;
}

std::vector<Vec> GroupRep::character() const {
  std::vector<Vec> out(G.order());
  for (std::size_t g = 0; g < G.order(); ++g) out[g] = trace((int)g);
  return out;
}

std::pair<FiniteGroup, GroupRep> matrix_group_closure(const LocalAlgebra& A,
                                                      const std::vector<AMat>& gens,
                                                      std::size_t cap) {
  require(!gens.empty(), errc::bad_scenario, "no generators");
  std::size_t n = gens[0].n;
  for (const AMat& g : gens)
    require(amat_invertible(A, g), errc::non_invertible_image, "generator is singular");
  std::map<Vec, int> index;
  std::vector<AMat> elems{amat_identity(A, n)};
  index[amat_flatten(elems[0])] = 0;
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::size_t at = frontier.back();
    frontier.pop_back();
    for (const AMat& g : gens) {
      AMat prod = amat_mul(A, elems[at], g);
      Vec key = amat_flatten(prod);
      if (index.count(key)) continue;
      require(elems.size() < cap, errc::closure_too_large, "matrix group closure exceeds cap");
      index[key] = (int)elems.size();
      elems.push_back(prod);
      frontier.push_back(elems.size() - 1);
    }
  }
  std::size_t N = elems.size();
  std::vector<std::vector<int>> table(N, std::vector<int>(N));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      auto it = index.find(amat_flatten(amat_mul(A, elems[a], elems[b])));
      require(it != index.end(), errc::not_a_group, "closure is not multiplicatively closed");
      table[a][b] = it->second;
    }
  FiniteGroup G = FiniteGroup::from_table(std::move(table));
  GroupRep rho = GroupRep::from_map(G, A, std::move(elems));
  return {std::move(G), std::move(rho)};
}

Lattice rep_centralizer(const GroupRep& rho) {
  const LocalAlgebra& A = rho.A;
  Shape xs = matrix_shape(A, rho.n);
  std::vector<int> use = rho.G.gens;
  if (use.empty()) return Lattice::full(xs);
  std::size_t N = xs.dim();
  Mat sys(N, N * use.size());
  std::vector<int> tord;
  for (std::size_t t = 0; t < use.size(); ++t) {
    const AMat& R = rho.mats[use[t]];
    for (std::size_t mu = 0; mu < N; ++mu) {
      Vec unit(N, 0);
      unit[mu] = 1;
      AMat E = amat_unflatten(A, rho.n, unit);
      Vec img = amat_flatten(amat_sub(A, amat_mul(A, E, R), amat_mul(A, R, E)));
      for (std::size_t j = 0; j < N; ++j) sys.at(mu, t * N + j) = img[j];
    }
    tord.insert(tord.end(), xs.ord.begin(), xs.ord.end());
  }
  return left_kernel(A.O, sys, xs, Shape{A.O, tord});
}

bool is_absolutely_irreducible(const GroupRep& rho) {
  auto [K, red] = quotient_algebra(rho.A, rho.A.max_ideal);
  GroupRep bar = base_change(rho, red);
  Shape ms = matrix_shape(K, bar.n);
  Mat spanrows(0, ms.dim());
  for (std::size_t g = 0; g < bar.G.order(); ++g)
    for (std::size_t b = 0; b < K.dim(); ++b)
      spanrows.push_row(amat_flatten(amat_smul(K, K.basis_elem(b), bar.mats[g])));
  return Lattice::span(ms, spanrows) == Lattice::full(ms);
}

GroupRep base_change(const GroupRep& rho, const AlgebraHom& h) {
  require(h.dom.shape == rho.A.shape && h.dom.O == rho.A.O, errc::mismatched_parent,
          "hom domain does not match the representation");
  std::vector<AMat> mats(rho.G.order());
  for (std::size_t g = 0; g < rho.G.order(); ++g) {
    AMat m(rho.n, h.cod.dim());
    for (std::size_t i = 0; i < rho.n * rho.n; ++i) m.e[i] = h.apply(rho.mats[g].e[i]);
    mats[g] = std::move(m);
  }
  return GroupRep::from_map(rho.G, h.cod, std::move(mats));
}

std::pair<GroupRep, AlgebraHom> mod_ideal(const GroupRep& rho, const Ideal& I) {
  auto [B, pi] = quotient_algebra(rho.A, I);
  (void)B;
  return {base_change(rho, pi), pi};
}

Character Character::make(FiniteGroup G, LocalAlgebra A, std::vector<Vec> val) {
  require(val.size() == G.order(), errc::bad_scenario, "one value per group element");
  for (Vec& v : val) v = A.shape.reduce(v);
  Character chi{std::move(G), std::move(A), std::move(val)};
  require(chi.val[0] == chi.A.shape.reduce(chi.A.one), errc::relation_violated,
          "character of the identity must be 1");
  for (std::size_t g = 0; g < chi.G.order(); ++g) {
    require(chi.A.is_unit_elem(chi.val[g]), errc::non_invertible_image,
            "character value is not a unit");
    for (std::size_t h = 0; h < chi.G.order(); ++h)
      require(chi.val[chi.G.mul((int)g, (int)h)] == chi.A.mul(chi.val[g], chi.val[h]),
              errc::relation_violated, "character is not multiplicative");
  }
  return chi;
}

Character Character::trivial(const FiniteGroup& G, const LocalAlgebra& A) {
  return make(G, A, std::vector<Vec>(G.order(), A.one));
}

Character Character::mul(const Character& o) const {
  std::vector<Vec> v(val.size());
  for (std::size_t g = 0; g < val.size(); ++g) v[g] = A.mul(val[g], o.val[g]);
  return make(G, A, std::move(v));
}

Character Character::inverse() const {
  std::vector<Vec> v(val.size());
  for (std::size_t g = 0; g < val.size(); ++g) v[g] = val[G.invert((int)g)];
  return make(G, A, std::move(v));
}

GroupRep assemble_extension(const Character& chi1, const Character& chi2,
                            const std::vector<Vec>& f) {
  const LocalAlgebra& A = chi1.A;
  require(chi1.G.order() == chi2.G.order() && f.size() == chi1.G.order(), errc::bad_scenario,
          "extension data sizes");
  std::vector<AMat> mats(chi1.G.order());
  for (std::size_t g = 0; g < mats.size(); ++g) {
    AMat m(2, A.dim());
    m.at(0, 0) = chi1.val[g];
    m.at(0, 1) = A.shape.reduce(f[g]);
    m.at(1, 1) = chi2.val[g];
    mats[g] = std::move(m);
  }
  return GroupRep::from_map(chi1.G, A, std::move(mats));
}

std::optional<Vec> splitting_witness(const Character& chi1, const Character& chi2,
                                     const std::vector<Vec>& f) {
  const LocalAlgebra& A = chi1.A;
  std::size_t d = A.dim(), N = chi1.G.order();
  Mat sys(d, N * d);
  std::vector<int> tord;
  Vec rhs;
  for (std::size_t g = 0; g < N; ++g) {
    for (std::size_t i = 0; i < d; ++i) {
      Vec img = A.sub(A.mul(chi1.val[g], A.basis_elem(i)), A.mul(A.basis_elem(i), chi2.val[g]));
      for (std::size_t j = 0; j < d; ++j) sys.at(i, g * d + j) = img[j];
    }
    tord.insert(tord.end(), A.shape.ord.begin(), A.shape.ord.end());
    Vec fr = A.shape.reduce(f[g]);
    rhs.insert(rhs.end(), fr.begin(), fr.end());
  }
  return solve_left_mod(A.O, sys, rhs, Shape{A.O, tord});
}

Involution Involution::make(FiniteGroup G, LocalAlgebra A, std::vector<int> perm,
                            std::vector<Vec> coef) {
  require(perm.size() == G.order() && coef.size() == G.order(), errc::bad_scenario,
          "involution data sizes");
  for (Vec& v : coef) v = A.shape.reduce(v);
  Involution tau{std::move(G), std::move(A), std::move(perm), std::move(coef)};
  const FiniteGroup& g_ = tau.G;
  const LocalAlgebra& a_ = tau.A;
  require(tau.perm[0] == 0 && tau.coef[0] == a_.shape.reduce(a_.one),
          errc::invalid_order_two_element, "involution must fix 1");
  for (std::size_t g = 0; g < g_.order(); ++g) {
    require(tau.perm[tau.perm[g]] == (int)g, errc::invalid_order_two_element,
            "group part does not square to the identity");
    require(a_.mul(tau.coef[g], tau.coef[tau.perm[g]]) == a_.shape.reduce(a_.one),
            errc::invalid_order_two_element, "coefficient part does not square to 1");
    for (std::size_t h = 0; h < g_.order(); ++h) {
      int gh = g_.mul((int)g, (int)h);
      require(tau.perm[gh] == g_.mul(tau.perm[h], tau.perm[g]), errc::not_algebra_hom,
              "group part is not an anti-homomorphism");
      require(tau.coef[gh] == a_.mul(tau.coef[g], tau.coef[h]), errc::not_algebra_hom,
              "coefficient part is not multiplicative");
    }
  }
  return tau;
}

Involution Involution::inverse(const FiniteGroup& G, const LocalAlgebra& A) {
  std::vector<int> perm(G.order());
  for (std::size_t g = 0; g < G.order(); ++g) perm[g] = G.invert((int)g);
  return make(G, A, std::move(perm), std::vector<Vec>(G.order(), A.one));
}

Involution Involution::conjugate_inverse(const FiniteGroup& G, const LocalAlgebra& A, int c) {
  std::vector<int> perm(G.order());
  for (std::size_t g = 0; g < G.order(); ++g) perm[g] = G.conj(c, G.invert((int)g));
  return make(G, A, std::move(perm), std::vector<Vec>(G.order(), A.one));
}

Involution Involution::twisted_inverse(const Character& chi) {
  std::vector<int> perm(chi.G.order());
  for (std::size_t g = 0; g < chi.G.order(); ++g) perm[g] = chi.G.invert((int)g);
  return make(chi.G, chi.A, std::move(perm), chi.val);
}

} // namespace gmalab
