#pragma once
#include <optional>
#include <vector>

#include "gmalab/rep.hpp"

namespace gmalab {

// Finite O-module with a left G-action.  Module elements are row vectors in
// the shape's free cover; the action of g is w -> w * act[g].  Because row
// vectors compose on the right, the homomorphism property of the abstract
// action reads act[h] * act[g] = act[gh] on the stored matrices.
struct GModule {
  FiniteGroup G;
  Shape shape;
  std::vector<Mat> act;

  static GModule make(FiniteGroup G, Shape shape, std::vector<Mat> act);
  static GModule trivial(const FiniteGroup& G, const Shape& shape);
  // one-dimensional module Z/p^level with g acting by the given unit value
  static GModule from_character_values(const FiniteGroup& G, const BaseRing& O,
                                       const std::vector<std::int64_t>& val, int level);
  // ad rho: M_n(A) with g acting by X -> rho(g) X rho(g)^{-1}
  static GModule adjoint(const GroupRep& rho);
  // Hom(rho2, rho1): n1 x n2 matrices with g acting by f -> rho1(g) f rho2(g)^{-1}
  static GModule hom_module(const GroupRep& rho1, const GroupRep& rho2);

  std::size_t dim() const { return shape.dim(); }
  Vec apply(int g, const Vec& w) const { return shape.reduce(vec_mat(shape.O, w, act[g])); }
  // restriction of the action to a subgroup (elems maps indices into G)
  GModule restrict_to(const FiniteGroup& H, const std::vector<int>& elems) const;
  // pi^n-torsion submodule W[pi^n]; requires uniform generator order
  GModule torsion_sub(int n) const;
  // pi^n W as a standalone module; requires uniform generator order
  GModule power_quotient(int n) const;
  int uniform_level() const; // the common generator order, or throws
};

// Cocycles are stored as the concatenated value vectors f(g_0), ..., f(g_{n-1})
// over all of G; the ambient shape repeats the module shape |G| times.
struct CocycleSpace {
  Lattice Z1, B1;
  ModuleInvariants H1;
  std::optional<Lattice> selmer_z;
  std::optional<ModuleInvariants> selmer_h;
};

struct LocalCondition {
  enum class Mode { zero, full, explicit_gens };
  std::vector<int> subgroup_gens;
  Mode mode = Mode::zero;
  std::vector<Vec> gens; // cocycle value-vectors on the subgroup, explicit mode
};

Shape cocycle_shape(const GModule& W);
Lattice h0(const GModule& W);
CocycleSpace h1(const GModule& W);
CocycleSpace selmer(const GModule& W, const std::vector<LocalCondition>& conditions);

// Order accounting for 0 -> H0(W)/pi^n -> H1(W_n) -> H1(W)[pi^n] -> 0 where
// W_n is the pi^n-torsion submodule of W.  The honest exact sequence derived
// from 0 -> W_n -> W -> pi^n W -> 0 always balances; the classical statement
// |H1(W_n)| = |H0(W)/pi^n| * |H1(W)[pi^n]| needs the first connecting module
// to be full, which can fail at finite truncation level.  Both readings are
// reported; nothing here throws on a mismatch.
struct TorsionReport {
  int n = 0;
  unsigned long long h0_w = 1;       // |H0(W)|
  ModuleInvariants h1_torsion;       // H1(W_n)
  ModuleInvariants h1_level;         // H1(W)
  unsigned long long first_term = 1; // |H0(pi^n W) / image of H0(W)|
  unsigned long long h1w_pn_torsion = 1;
  bool injective = false;            // H1(W_n) -> H1(W)
  bool image_is_pn_torsion = false;  // image equals H1(W)[pi^n]
  bool exact_order_accounting = false;
  bool first_term_divisible_model = false; // first_term == |H0(W)/pi^n H0(W)|
  bool divisible_limit_formula = false;    // the classical order identity
  // with conditions: the same isomorphism check on Selmer subgroups
  std::optional<bool> selmer_injective;
  std::optional<bool> selmer_image_is_pn_torsion;
};
TorsionReport torsion_functoriality_check(const GModule& W, int n,
                                          const std::vector<LocalCondition>& conditions = {});

// Deformations of rho0 to the dual numbers modulo strict equivalence, i.e.
// H1(G, ad rho0), plus the block-upper-triangular subfamily: classes
// representable by upper-triangular-valued cocycles.  n1 is the size of the
// upper-left block.
struct TangentSpace {
  CocycleSpace full;
  ModuleInvariants ut_subfamily;
};
TangentSpace tangent_space(const GroupRep& rho0, std::size_t n1,
                           const std::vector<LocalCondition>& conditions = {});

// Scenario-declared inertia data: the one checkable consequence is whether
// the declared invariant submodule is divisible at the truncation level.
enum class TamagawaFlag { trivial_at_level, not_divisible_at_level, unchecked };
struct TamagawaReport {
  TamagawaFlag flag = TamagawaFlag::unchecked;
  ModuleInvariants inertia_invariants;
};
TamagawaReport tamagawa_inputs(const GModule& W, const std::optional<Lattice>& inertia_inv);

} // namespace gmalab
