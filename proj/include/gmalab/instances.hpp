#pragma once
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gmalab/cohomology.hpp"
#include "gmalab/criterion.hpp"
#include "gmalab/pseudochar.hpp"

namespace gmalab {

// Small-group and coefficient-algebra catalogs plus seeded instance
// generators feeding the trace pipeline, the comparison-map checks and the
// fuzzer.  Everything here is deterministic for a fixed seed.

FiniteGroup named_group(const std::string& name);
std::vector<std::string> group_catalog();

// F_p, Z/p^2, F_p[eps]/(eps^2), Z/p^2[delta]/(delta^2, p delta)
std::vector<LocalAlgebra> algebra_catalog(long long p);

// every A^x-valued character of G, found by propagating generator
// assignments; assignment pools are the units of order dividing ord(gen)
std::vector<Character> all_characters(const FiniteGroup& G, const LocalAlgebra& A);

// multiplication-by-a on A as a matrix in O-coordinates
Mat regular_action(const LocalAlgebra& A, const Vec& a);

// cocycles c with c(gh) = c(g) + (chi1/chi2)(g) c(h); rescaling by chi2
// turns them into glue for [[chi1, f],[0, chi2]]
GModule extension_module(const Character& chi1, const Character& chi2);
std::vector<Vec> glue_from_cocycle(const Character& chi1, const Character& chi2,
                                   const Vec& cocycle);

struct TriangularInstance {
  std::string label;
  GroupRep rho;
  Character chi1, chi2;
  bool split = false;            // the glue is a coboundary
  std::optional<Involution> tau; // fixes both residual characters when present
};

// all [[chi1, f],[0, chi2]] over (G, A) with residually distinct diagonal
// characters, one glue per cocycle-class representative up to the cap
std::vector<TriangularInstance> triangular_instances(const std::string& group_name,
                                                     const LocalAlgebra& A,
                                                     std::size_t max_per_pair = 3);

// (1 + delta U) rho0 over A0[delta]/(delta^2, p delta) for cocycle classes U
// of the residual adjoint; rho0 must live over a one-dimensional algebra
struct DeformationInstance {
  std::string label;
  GroupRep rho;
  bool lower_left = false; // U has a nonzero residual lower-left entry
  std::optional<Involution> tau;
};
std::vector<DeformationInstance> deformation_instances(const GroupRep& rho0,
                                                       const std::string& label,
                                                       std::size_t max_count = 6);

// representations that are irreducible at the top level but reduce to a
// nonsplit triangular (s3) or irreducible (q8) residual picture
GroupRep s3_standard_rep(const BaseRing& O);
GroupRep q8_standard_rep(const BaseRing& O);

// conjugate by an invertible P, entrywise over the coefficient algebra
GroupRep conjugated(const GroupRep& rho, const AMat& P);

// for n = 2: conjugate so the lower-left entries land in the maximal ideal,
// searching residual lines; empty when the residual rep is irreducible
std::optional<GroupRep> residually_triangular_form(const GroupRep& rho);

// first orthogonal idempotent pair reachable from deterministic seeds:
// exact projectors (1+g)/2, spectral projectors of group images, then a
// bounded sweep of residual candidates
std::optional<std::pair<Vec, Vec>> find_idempotent_pair(const CHQuotient& S,
                                                        bool tau_symmetric);

struct GmaRun {
  Pseudocharacter T;
  bool tau_attached = false;
  bool tau_self_dual = false;
  std::optional<GMADecomposition> gma; // empty when no idempotent pair exists
  Ideal IT;
  std::optional<PrincipalityCertificate> cert;
  std::optional<bool> splits_mod_IT; // unset when past the exhaustion budget
  std::optional<bool> minimal;
};
GmaRun run_gma_pipeline(const GroupRep& rho, const std::optional<Involution>& tau);

// smallest splitting ideal by exhaustion over all ideals of A, for algebras
// within the element cap; empty when no splitting ideal is comparable
std::optional<Ideal> brute_smallest_splitting_ideal(const Pseudocharacter& T,
                                                    unsigned long long elem_cap = 4096);

struct Cri1Fixture {
  std::string label;
  AlgebraHom phi;
  Vec pi;
  bool hypotheses = false; // expected value of hypotheses_hold
  std::string violated;    // name of the single failing hypothesis, if any
};
std::vector<Cri1Fixture> cri1_positive_suite();
std::vector<Cri1Fixture> cri1_negative_suite();

struct WLFixture {
  std::string label;
  AlgebraHom phi, piR, piS;
  unsigned long long phi_R = 0, o_mod_eta = 0;
  bool principal = false;
};
std::vector<WLFixture> wiles_lenstra_suite();

// torsion-functoriality inputs: uniform-level modules over Z/p^3 split by
// whether H^0 vanishes
struct TorsionCatalog {
  std::vector<std::pair<std::string, GModule>> h0_zero;
  std::vector<std::pair<std::string, GModule>> h0_nonzero;
};
TorsionCatalog torsion_module_catalog(long long p);

// fuzzer draws: both are total functions of the rng state
TriangularInstance random_triangular_instance(std::mt19937_64& rng);
Cri1Fixture random_cri1_instance(std::mt19937_64& rng);

} // namespace gmalab
