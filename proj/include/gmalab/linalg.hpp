#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmalab/zmod.hpp"

namespace gmalab {

// Dense row-major matrix over Z/p^e.  Vectors are rows; a submodule is the
// row span of its generating matrix.
struct Mat {
  std::size_t rows = 0, cols = 0;
  Vec a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  std::int64_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  std::int64_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  Vec row(std::size_t i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
  void set_row(std::size_t i, const Vec& v) {
    for (std::size_t j = 0; j < cols; ++j) at(i, j) = v[j];
  }
  void push_row(const Vec& v) {
    a.insert(a.end(), v.begin(), v.end());
    ++rows;
  }
  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

Mat mat_mul(const BaseRing& O, const Mat& A, const Mat& B);
Mat mat_add(const BaseRing& O, const Mat& A, const Mat& B);
Mat mat_sub(const BaseRing& O, const Mat& A, const Mat& B);
Mat mat_scale(const BaseRing& O, std::int64_t c, const Mat& A);
Vec vec_add(const BaseRing& O, const Vec& x, const Vec& y);
Vec vec_sub(const BaseRing& O, const Vec& x, const Vec& y);
Vec vec_scale(const BaseRing& O, std::int64_t c, const Vec& x);
Vec vec_mat(const BaseRing& O, const Vec& x, const Mat& A); // x * A
bool is_zero(const Vec& v);

// Ambient finite module M = ⊕_i Z/p^ord[i] inside the free cover (Z/p^e)^d.
// ord[i] = e means the coordinate carries the full ring.  Coordinates of an
// element are stored in the free cover and reduced mod p^ord[i] per slot.
struct Shape {
  BaseRing O;
  std::vector<int> ord;

  static Shape full(const BaseRing& O, std::size_t d) { return Shape{O, std::vector<int>(d, O.e)}; }
  std::size_t dim() const { return ord.size(); }
  bool operator==(const Shape& s) const { return O == s.O && ord == s.ord; }
  Vec reduce(Vec v) const; // canonical coordinates mod the slot orders
  // relation rows p^ord[i] * u_i for slots with ord[i] < e
  Mat relation_rows() const;
  unsigned long long size() const;
};

// Invariant factors of a finite module, stored as exponents k with factor
// p^k, sorted decreasingly.  order = ∏ p^k.
struct ModuleInvariants {
  BaseRing O;
  std::vector<int> factors;
  unsigned long long order = 1;
  std::size_t min_generators = 0; // = number of nonzero factors

  bool operator==(const ModuleInvariants& m) const {
    return O == m.O && factors == m.factors && order == m.order;
  }
  std::string str() const;
};

// Howell normal form of a set of row generators over Z/p^e.  Canonical: two
// generating sets span the same module iff their Howell forms are identical
// matrices.  Pivots are p^k, entries above a pivot are reduced mod the pivot,
// and the span is "saturated": any span element starting with zeros lies in
// the span of the later rows (this is what plain echelon lacks mod p^e).
Mat howell_form(const BaseRing& O, const Mat& gens);

// Submodule of a Shape ambient, canonically represented.  The stored basis
// always includes the ambient relation rows, so equality of submodules of M
// is equality of the basis matrices.
struct Lattice {
  Shape shape;
  Mat basis; // Howell form, includes shape relations

  static Lattice span(const Shape& shape, const Mat& gens);
  static Lattice zero(const Shape& shape);
  static Lattice full(const Shape& shape);

  std::size_t ambient_dim() const { return shape.dim(); }
  bool contains(const Vec& v) const;
  bool contains(const Lattice& other) const;
  bool operator==(const Lattice& o) const { return shape == o.shape && basis == o.basis; }
  bool operator!=(const Lattice& o) const { return !(*this == o); }
  // reduce v against the basis; v is in the span iff the result is zero
  Vec reduce(const Vec& v) const;
  unsigned long long size() const; // number of elements as a submodule of M
  bool is_zero() const { return size() == 1; }
  Lattice sum(const Lattice& other) const;
  Lattice intersect(const Lattice& other) const;
  // all elements, enumerated in a deterministic order (guarded)
  std::vector<Vec> elements(unsigned long long cap) const;
};

// Solve x * A = b (row-vector unknown).  Returns one solution or nullopt.
std::optional<Vec> solve_left(const BaseRing& O, const Mat& A, const Vec& b);
// Same, but equality holds in the target shape (mod its relation rows).
std::optional<Vec> solve_left_mod(const BaseRing& O, const Mat& A, const Vec& b,
                                  const Shape& tshape);
// {x : x * A = 0 in the target shape}, i.e. x*A may land in the target
// relation module.  Unknown x lives in the free cover of xshape.
Lattice left_kernel(const BaseRing& O, const Mat& A, const Shape& xshape, const Shape& tshape);
// Relation module {c : c * Z ∈ span(W)} for row systems Z, W over the target
// shape; the workhorse behind quotient computations.
Lattice relative_relations(const Mat& Z, const Lattice& W, const Shape& cshape);

// Diagonalization U*G*C = D with U, C invertible over Z/p^e and D diagonal
// with entries p^k (increasing k).  diag_exp is padded with e for columns
// that carry no relation.
struct SmithResult {
  Mat C, Cinv;
  std::vector<int> diag_exp; // length = cols of G
};
SmithResult smith_form(const BaseRing& O, const Mat& G);

// Invariant factors of span(gens)/sub inside sub.shape (sub ⊆ span assumed;
// pass sub = Lattice::zero(shape) for the plain span).
ModuleInvariants quotient_invariants(const Mat& gens, const Lattice& sub);
ModuleInvariants lattice_invariants(const Lattice& L);

} // namespace gmalab
