#include "gmalab/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gmalab {

const char* errc_name(errc c) {
  switch (c) {
    case errc::not_associative: return "NotAssociative";
    case errc::not_commutative: return "NotCommutative";
    case errc::no_unit: return "NoUnit";
    case errc::not_local: return "NotLocal";
    case errc::mismatched_parent: return "MismatchedParent";
    case errc::not_a_group: return "NotAGroup";
    case errc::closure_too_large: return "ClosureTooLarge";
    case errc::relation_violated: return "RelationViolated";
    case errc::non_invertible_image: return "NonInvertibleImage";
    case errc::not_a_field: return "NotAField";
    case errc::invalid_order_two_element: return "InvalidOrderTwoElement";
    case errc::not_a_cocycle: return "NotACocycle";
    case errc::no_convergence: return "NoConvergence";
    case errc::not_residual_idempotent: return "NotResidualIdempotent";
    case errc::not_self_dual: return "NotSelfDual";
    case errc::corners_not_cyclic: return "CornersNotCyclic";
    case errc::too_large_for_exhaustion: return "TooLargeForExhaustion";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::not_surjective: return "NotSurjective";
    case errc::not_algebra_hom: return "NotAlgebraHom";
    case errc::diagram_not_commuting: return "DiagramNotCommuting";
    case errc::unknown_demo: return "UnknownDemo";
    case errc::bad_scenario: return "BadScenario";
    case errc::internal: return "Internal";
  }
  return "Unknown";
}

BaseRing BaseRing::make(std::int64_t p, int e) {
  require(p >= 3 && p % 2 == 1, errc::bad_scenario, "p must be an odd prime >= 3");
  for (std::int64_t d = 3; d * d <= p; d += 2)
    require(p % d != 0, errc::bad_scenario, "p must be prime");
  require(e >= 1, errc::bad_scenario, "truncation exponent must be >= 1");
  std::int64_t q = 1;
  for (int i = 0; i < e; ++i) {
    q *= p;
    require(q <= (1 << 20), errc::budget_exceeded, "p^e too large");
  }
  return BaseRing{p, e, q};
}

std::int64_t BaseRing::inv(std::int64_t x) const {
  x = norm(x);
  require(is_unit(x), errc::internal, "inverse of a non-unit");
  std::int64_t a = x, b = q, u0 = 1, u1 = 0;
  while (b != 0) {
    std::int64_t k = a / b;
    a -= k * b;
    std::swap(a, b);
    u0 -= k * u1;
    std::swap(u0, u1);
  }
  return norm(u0);
}

Mat mat_mul(const BaseRing& O, const Mat& A, const Mat& B) {
  Mat R(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      std::int64_t c = A.at(i, k);
      if (c == 0) continue;
      for (std::size_t j = 0; j < B.cols; ++j)
        R.at(i, j) = (R.at(i, j) + c * B.at(k, j)) % O.q;
    }
  return R;
}

Mat mat_add(const BaseRing& O, const Mat& A, const Mat& B) {
  Mat R = A;
  for (std::size_t i = 0; i < R.a.size(); ++i) R.a[i] = O.add(R.a[i], B.a[i]);
  return R;
}

Mat mat_sub(const BaseRing& O, const Mat& A, const Mat& B) {
  Mat R = A;
  for (std::size_t i = 0; i < R.a.size(); ++i) R.a[i] = O.sub(R.a[i], B.a[i]);
  return R;
}

Mat mat_scale(const BaseRing& O, std::int64_t c, const Mat& A) {
  Mat R = A;
  c = O.norm(c);
  for (auto& x : R.a) x = O.mul(x, c);
  return R;
}

Vec vec_add(const BaseRing& O, const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = O.add(x[i], y[i]);
  return r;
}

Vec vec_sub(const BaseRing& O, const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = O.sub(x[i], y[i]);
  return r;
}

Vec vec_scale(const BaseRing& O, std::int64_t c, const Vec& x) {
  Vec r(x.size());
  c = O.norm(c);
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = O.mul(c, x[i]);
  return r;
}

Vec vec_mat(const BaseRing& O, const Vec& x, const Mat& A) {
  Vec r(A.cols, 0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < A.cols; ++j) r[j] = (r[j] + x[i] * A.at(i, j)) % O.q;
  }
  return r;
}

bool is_zero(const Vec& v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

Vec Shape::reduce(Vec v) const {
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::int64_t m = 1;
    for (int k = 0; k < ord[i]; ++k) m *= O.p;
    v[i] = ((v[i] % m) + m) % m;
  }
  return v;
}

Mat Shape::relation_rows() const {
  Mat R(0, dim());
  for (std::size_t i = 0; i < dim(); ++i)
    if (ord[i] < O.e) {
      Vec r(dim(), 0);
      r[i] = O.pow_p(ord[i]);
      R.push_row(r);
    }
  return R;
}

unsigned long long Shape::size() const {
  unsigned long long s = 1;
  for (int o : ord)
    for (int k = 0; k < o; ++k) s *= (unsigned long long)O.p;
  return s;
}

std::string ModuleInvariants::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) os << ",";
    os << O.p << "^" << factors[i];
  }
  os << "]";
  return os.str();
}

namespace {

std::size_t leading_col(const Vec& v) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v[j] != 0) return j;
  return v.size();
}

} // namespace

Mat howell_form(const BaseRing& O, const Mat& gens) {
  std::size_t cols = gens.cols;
  std::vector<Vec> work;
  for (std::size_t i = 0; i < gens.rows; ++i) {
    Vec v = gens.row(i);
    for (auto& x : v) x = O.norm(x);
    if (!is_zero(v)) work.push_back(std::move(v));
  }
  std::vector<Vec> basis;
  for (std::size_t col = 0; col < cols; ++col) {
    // candidates with leading entry in this column
    int best = -1, bestval = O.e + 1;
    for (std::size_t i = 0; i < work.size(); ++i)
      if (leading_col(work[i]) == col) {
        int v = O.val(work[i][col]);
        if (v < bestval) { bestval = v; best = (int)i; }
      }
    if (best < 0) continue;
    Vec piv = work[best];
    work.erase(work.begin() + best);
    piv = vec_scale(O, O.inv(O.unit_part(piv[col])), piv); // pivot = p^v
    std::int64_t pv = O.pow_p(bestval);
    std::vector<Vec> next;
    for (auto& w : work) {
      if (leading_col(w) == col) {
        std::int64_t f = w[col] / pv; // divisible: bestval is minimal
        w = vec_sub(O, w, vec_scale(O, f, piv));
      }
      if (!is_zero(w)) next.push_back(std::move(w));
    }
    work = std::move(next);
    // saturation row keeps the span's trailing part representable
    Vec sat = vec_scale(O, O.pow_p(O.e - bestval), piv);
    if (!is_zero(sat)) work.push_back(std::move(sat));
    basis.push_back(std::move(piv));
  }
  // entries above each pivot reduced mod the pivot
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::size_t c = leading_col(basis[i]);
    std::int64_t pv = basis[i][c];
    for (std::size_t j = 0; j < i; ++j) {
      std::int64_t f = basis[j][c] / pv;
      if (f != 0) basis[j] = vec_sub(O, basis[j], vec_scale(O, f, basis[i]));
    }
  }
  Mat H(0, cols);
  for (auto& r : basis) H.push_row(r);
  return H;
}

Lattice Lattice::span(const Shape& shape, const Mat& gens) {
  Mat all = gens;
  Mat rel = shape.relation_rows();
  for (std::size_t i = 0; i < rel.rows; ++i) all.push_row(rel.row(i));
  return Lattice{shape, howell_form(shape.O, all)};
}

Lattice Lattice::zero(const Shape& shape) { return span(shape, Mat(0, shape.dim())); }

Lattice Lattice::full(const Shape& shape) { return span(shape, Mat::identity(shape.dim())); }

Vec Lattice::reduce(const Vec& v) const {
  const BaseRing& O = shape.O;
  Vec r = v;
  for (auto& x : r) x = O.norm(x);
  for (std::size_t i = 0; i < basis.rows; ++i) {
    std::size_t c = leading_col(basis.row(i));
    std::int64_t pv = basis.at(i, c);
    std::int64_t f = r[c] / pv;
    if (f != 0)
      for (std::size_t j = 0; j < r.size(); ++j) r[j] = O.sub(r[j], O.mul(f, basis.at(i, j)));
  }
  return r;
}

bool Lattice::contains(const Vec& v) const { return gmalab::is_zero(reduce(v)); }

bool Lattice::contains(const Lattice& other) const {
  for (std::size_t i = 0; i < other.basis.rows; ++i)
    if (!contains(other.basis.row(i))) return false;
  return true;
}

unsigned long long Lattice::size() const {
  const BaseRing& O = shape.O;
  long long ex = 0;
  for (std::size_t i = 0; i < basis.rows; ++i)
    ex += O.e - O.val(basis.at(i, leading_col(basis.row(i))));
  for (int o : shape.ord) ex -= O.e - o; // divide out the ambient relations
  require(ex >= 0, errc::internal, "lattice size underflow");
  unsigned long long s = 1;
  for (long long k = 0; k < ex; ++k) {
    require(s <= ~0ull / (unsigned long long)O.p, errc::budget_exceeded, "module order overflow");
    s *= (unsigned long long)O.p;
  }
  return s;
}

Lattice Lattice::sum(const Lattice& other) const {
  require(shape == other.shape, errc::mismatched_parent, "lattice sum across shapes");
  Mat all = basis;
  for (std::size_t i = 0; i < other.basis.rows; ++i) all.push_row(other.basis.row(i));
  return Lattice{shape, howell_form(shape.O, all)};
}

Lattice Lattice::intersect(const Lattice& other) const {
  require(shape == other.shape, errc::mismatched_parent, "lattice intersection across shapes");
  const BaseRing& O = shape.O;
  std::size_t d = shape.dim();
  // {x : (x | x) lies in the product lattice L1 ⊕ L2}
  Mat Z(d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    Z.at(i, i) = 1;
    Z.at(i, d + i) = 1;
  }
  std::vector<int> dord = shape.ord;
  dord.insert(dord.end(), other.shape.ord.begin(), other.shape.ord.end());
  Shape dshape{O, dord};
  Mat prod(0, 2 * d);
  for (std::size_t i = 0; i < basis.rows; ++i) {
    Vec r(2 * d, 0);
    for (std::size_t j = 0; j < d; ++j) r[j] = basis.at(i, j);
    prod.push_row(r);
  }
  for (std::size_t i = 0; i < other.basis.rows; ++i) {
    Vec r(2 * d, 0);
    for (std::size_t j = 0; j < d; ++j) r[d + j] = other.basis.at(i, j);
    prod.push_row(r);
  }
  return relative_relations(Z, Lattice::span(dshape, prod), shape);
}

std::vector<Vec> Lattice::elements(unsigned long long cap) const {
  require(size() <= cap, errc::too_large_for_exhaustion, "module too large to enumerate");
  const BaseRing& O = shape.O;
  std::set<Vec> out;
  std::vector<Vec> stack{Vec(shape.dim(), 0)};
  out.insert(shape.reduce(Vec(shape.dim(), 0)));
  // breadth-first closure under adding basis rows, in canonical coordinates
  while (!stack.empty()) {
    Vec v = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < basis.rows; ++i) {
      Vec w = shape.reduce(vec_add(O, v, basis.row(i)));
      if (out.insert(w).second) stack.push_back(std::move(w));
    }
  }
  require(out.size() == size(), errc::internal, "element enumeration mismatch");
  return std::vector<Vec>(out.begin(), out.end());
}

namespace {

// Howell form of [A | I], returning the transformed rows. Invariant of every
// row (h | u): h = u * A0 with A0 the original stacked matrix.
Mat howell_augmented(const BaseRing& O, const Mat& A) {
  Mat aug(A.rows, A.cols + A.rows);
  for (std::size_t i = 0; i < A.rows; ++i) {
    for (std::size_t j = 0; j < A.cols; ++j) aug.at(i, j) = O.norm(A.at(i, j));
    aug.at(i, A.cols + i) = 1;
  }
  return howell_form(O, aug);
}

} // namespace

std::optional<Vec> solve_left(const BaseRing& O, const Mat& A, const Vec& b) {
  Mat H = howell_augmented(O, A);
  Vec r(b);
  for (auto& x : r) x = O.norm(x);
  Vec x(A.rows, 0);
  for (std::size_t i = 0; i < H.rows; ++i) {
    Vec h = H.row(i);
    std::size_t c = leading_col(h);
    if (c >= A.cols) break; // pure kernel rows from here on
    std::int64_t pv = H.at(i, c);
    std::int64_t f = r[c] / pv;
    if (f != 0) {
      for (std::size_t j = 0; j < A.cols; ++j) r[j] = O.sub(r[j], O.mul(f, H.at(i, j)));
      for (std::size_t j = 0; j < A.rows; ++j)
        x[j] = O.add(x[j], O.mul(f, H.at(i, A.cols + j)));
    }
  }
  if (!is_zero(r)) return std::nullopt;
  return x;
}

std::optional<Vec> solve_left_mod(const BaseRing& O, const Mat& A, const Vec& b,
                                  const Shape& tshape) {
  Mat stacked = A;
  Mat rel = tshape.relation_rows();
  for (std::size_t i = 0; i < rel.rows; ++i) stacked.push_row(rel.row(i));
  auto sol = solve_left(O, stacked, b);
  if (!sol) return std::nullopt;
  return Vec(sol->begin(), sol->begin() + A.rows);
}

Lattice left_kernel(const BaseRing& O, const Mat& A, const Shape& xshape, const Shape& tshape) {
  require(A.rows == xshape.dim(), errc::internal, "kernel shape mismatch");
  Mat rel = tshape.relation_rows();
  Mat stacked = A;
  for (std::size_t i = 0; i < rel.rows; ++i) stacked.push_row(rel.row(i));
  Mat H = howell_augmented(O, stacked);
  Mat gens(0, xshape.dim());
  for (std::size_t i = 0; i < H.rows; ++i) {
    if (leading_col(H.row(i)) < A.cols) continue;
    Vec u(xshape.dim());
    for (std::size_t j = 0; j < xshape.dim(); ++j) u[j] = H.at(i, A.cols + j);
    gens.push_row(u);
  }
  return Lattice::span(xshape, gens);
}

Lattice relative_relations(const Mat& Z, const Lattice& W, const Shape& cshape) {
  const BaseRing& O = W.shape.O;
  require(Z.cols == W.ambient_dim(), errc::internal, "relation dims mismatch");
  require(cshape.dim() == Z.rows, errc::internal, "relation unknowns mismatch");
  Mat stacked = Z;
  for (std::size_t i = 0; i < W.basis.rows; ++i) stacked.push_row(W.basis.row(i));
  Mat H = howell_augmented(O, stacked);
  Mat gens(0, Z.rows);
  for (std::size_t i = 0; i < H.rows; ++i) {
    if (leading_col(H.row(i)) < Z.cols) continue;
    Vec u(Z.rows);
    for (std::size_t j = 0; j < Z.rows; ++j) u[j] = H.at(i, Z.cols + j);
    gens.push_row(u);
  }
  return Lattice::span(cshape, gens);
}

SmithResult smith_form(const BaseRing& O, const Mat& G) {
  Mat D = G;
  for (auto& x : D.a) x = O.norm(x);
  std::size_t n = D.rows, m = D.cols;
  Mat C = Mat::identity(m), Cinv = Mat::identity(m);
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < m; ++j) std::swap(D.at(a, j), D.at(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < n; ++i) std::swap(D.at(i, a), D.at(i, b));
    for (std::size_t i = 0; i < m; ++i) std::swap(C.at(i, a), C.at(i, b));
    for (std::size_t j = 0; j < m; ++j) std::swap(Cinv.at(a, j), Cinv.at(b, j));
  };
  std::size_t r = 0;
  while (r < n && r < m) {
    int bestval = O.e;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = r; i < n; ++i)
      for (std::size_t j = r; j < m; ++j)
        if (D.at(i, j) != 0 && O.val(D.at(i, j)) < bestval) {
          bestval = O.val(D.at(i, j));
          bi = i;
          bj = j;
        }
    if (bestval == O.e) break; // remaining block is zero
    if (bi != r) swap_rows(bi, r);
    if (bj != r) swap_cols(bj, r);
    std::int64_t u = O.inv(O.unit_part(D.at(r, r)));
    for (std::size_t j = 0; j < m; ++j) D.at(r, j) = O.mul(u, D.at(r, j));
    std::int64_t pv = D.at(r, r);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || D.at(i, r) == 0) continue;
      std::int64_t f = D.at(i, r) / pv;
      for (std::size_t j = 0; j < m; ++j) D.at(i, j) = O.sub(D.at(i, j), O.mul(f, D.at(r, j)));
    }
    for (std::size_t j = r + 1; j < m; ++j) {
      if (D.at(r, j) == 0) continue;
      std::int64_t f = D.at(r, j) / pv;
      // col_j -= f * col_r  (only row r is nonzero in col r now)
      D.at(r, j) = O.sub(D.at(r, j), O.mul(f, D.at(r, r)));
      for (std::size_t i = 0; i < m; ++i) C.at(i, j) = O.sub(C.at(i, j), O.mul(f, C.at(i, r)));
      for (std::size_t k = 0; k < m; ++k)
        Cinv.at(r, k) = O.add(Cinv.at(r, k), O.mul(f, Cinv.at(j, k)));
    }
    ++r;
  }
  std::vector<int> diag(m, O.e);
  for (std::size_t i = 0; i < r; ++i) diag[i] = O.val(D.at(i, i));
  return SmithResult{std::move(C), std::move(Cinv), std::move(diag)};
}

ModuleInvariants quotient_invariants(const Mat& gens, const Lattice& sub) {
  const BaseRing& O = sub.shape.O;
  Lattice rel = relative_relations(gens, sub, Shape::full(O, gens.rows));
  SmithResult sm = smith_form(O, rel.basis);
  std::vector<int> factors;
  for (int k : sm.diag_exp)
    if (k > 0) factors.push_back(k);
  std::sort(factors.begin(), factors.end(), std::greater<int>());
  ModuleInvariants inv{O, factors, 1, factors.size()};
  for (int k : factors)
    for (int i = 0; i < k; ++i) {
      require(inv.order <= ~0ull / (unsigned long long)O.p, errc::budget_exceeded,
              "invariant order overflow");
      inv.order *= (unsigned long long)O.p;
    }
  return inv;
}

ModuleInvariants lattice_invariants(const Lattice& L) {
  return quotient_invariants(L.basis, Lattice::zero(L.shape));
}

} // namespace gmalab
