#pragma once
#include <optional>
#include <vector>

#include "gmalab/rep.hpp"

namespace gmalab {

// Report for the quotient-tower isomorphism criterion: a surjective phi and
// an element pi such that R/pi R maps isomorphically onto S/phi(pi)S force
// phi itself to be bijective, provided R/pi R is a cyclic O-module and, at
// full level, the induced map pi R/pi^2 R -> x S/x^2 S is also bijective.
// The conclusion is computed from ker phi independently of the hypotheses,
// so a violated implication is detectable.
struct CriterionReport {
  bool s_free = false;          // every invariant factor of S at full level
  bool phi1_iso = false;        // R/pi R -> S/x S bijective
  bool quotient_cyclic = false; // R/pi R generated by one element over O
  int r_level = -1;             // R/pi R = O/p^r when cyclic
  bool pi_square_iso = false;   // pi R/pi^2 R -> x S/x^2 S bijective
  bool hypotheses_hold = false;
  bool phi_bijective = false;
  bool consistent = false; // hypotheses imply the conclusion
  std::vector<unsigned long long> r_orders, s_orders; // |R/pi^n R|, |S/x^n S|
};
CriterionReport check_cri1(const AlgebraHom& phi, const Vec& pi);

// Tangent and congruence data for a commuting triangle of surjections
// R -> S -> O: Phi_A = ker pi_A / (ker pi_A)^2 and eta = pi_S(Ann ker pi_S).
// When ker pi_R is principal and |Phi_R| <= |O/eta|, phi must be bijective.
struct WilesLenstraData {
  unsigned long long phi_R = 1, phi_S = 1;
  unsigned long long o_mod_eta = 1;
  bool principal = false; // ker pi_R is principal
  bool phi_bijective = false;
  bool consistent = false;
};
WilesLenstraData wiles_lenstra_data(const AlgebraHom& phi, const AlgebraHom& piR,
                                    const AlgebraHom& piS);

// Does the image of O generate R/I?  When it does, R/I = O/p^s.
struct StructureReport {
  bool cyclic = false;
  int s = 0;
  std::optional<Vec> witness; // basis element of R missed by the image of O
};
StructureReport structure_surjectivity_check(const LocalAlgebra& R, const Ideal& I);

// O-subalgebra of the coefficient ring generated by all trace values of rho,
// compared against the whole ring.
struct TraceGenerationReport {
  bool generated = false;
  Lattice subalgebra;
  std::optional<Vec> witness; // basis element outside the closure
};
TraceGenerationReport trace_generation_check(const GroupRep& rho);

} // namespace gmalab
