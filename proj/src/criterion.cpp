#include "gmalab/criterion.hpp"

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

// tower of principal ideals (t^n), extended until it stabilizes
std::vector<Ideal> power_tower(const LocalAlgebra& A, const Vec& t) {
  std::vector<Ideal> out;
  Vec power = A.shape.reduce(t);
  out.push_back(A.ideal({power}));
  for (int n = 2; n <= 64; ++n) {
    power = A.mul(power, t);
    Ideal next = A.ideal({power});
    if (next == out.back()) return out;
    out.push_back(std::move(next));
  }
  fail(errc::internal, "power tower did not stabilize");
}

} // namespace

CriterionReport check_cri1(const AlgebraHom& phi, const Vec& pi) {
  require(phi.is_surjective(), errc::not_surjective, "the comparison map must be onto");
  const LocalAlgebra& R = phi.dom;
  const LocalAlgebra& S = phi.cod;
  const BaseRing& O = R.O;
  CriterionReport rep;

  rep.s_free = true;
  for (int o : S.shape.ord)
    if (o != O.e) rep.s_free = false;

  Vec x = phi.apply(pi);
  std::vector<Ideal> Ir = power_tower(R, pi);
  std::vector<Ideal> Is = power_tower(S, x);
  std::size_t levels = std::max(Ir.size(), Is.size());
  for (std::size_t n = 0; n < levels; ++n) {
    const Ideal& a = Ir[std::min(n, Ir.size() - 1)];
    const Ideal& b = Is[std::min(n, Is.size() - 1)];
    rep.r_orders.push_back(R.size() / a.order());
    rep.s_orders.push_back(S.size() / b.order());
    // phi_n stays surjective, so the source can never be the smaller side
    require(rep.r_orders.back() >= rep.s_orders.back(), errc::internal,
            "quotient of the source is smaller than its image");
  }
  // multiplication by pi maps each graded piece onto the next, which bounds
  // the growth of |pi R / pi^n R| by powers of |pi R / pi^2 R|
  int l1 = logp(O, Ir[0].order());
  int l2 = logp(O, Ir[std::min<std::size_t>(1, Ir.size() - 1)].order());
  for (std::size_t n = 0; n < Ir.size(); ++n)
    require(l1 - logp(O, Ir[n].order()) <= (int)n * (l1 - l2), errc::internal,
            "graded growth bound is violated");

  rep.phi1_iso = rep.r_orders[0] == rep.s_orders[0];
  ModuleInvariants q1 = quotient_invariants(Lattice::full(R.shape).basis, Ir[0].L);
  rep.quotient_cyclic = q1.min_generators <= 1;
  if (rep.quotient_cyclic) rep.r_level = q1.factors.empty() ? 0 : q1.factors[0];
  unsigned long long rstep = Ir[0].order() / Ir[std::min<std::size_t>(1, Ir.size() - 1)].order();
  unsigned long long sstep = Is[0].order() / Is[std::min<std::size_t>(1, Is.size() - 1)].order();
  rep.pi_square_iso = rstep == sstep;

  rep.hypotheses_hold = rep.s_free && rep.phi1_iso && rep.quotient_cyclic &&
                        rep.r_level >= 1 &&
                        (rep.r_level < O.e || rep.pi_square_iso);
  rep.phi_bijective = phi.kernel_lattice().is_zero();
  require(rep.phi_bijective == (R.size() == S.size()), errc::internal,
          "kernel and size comparison disagree");
  rep.consistent = !rep.hypotheses_hold || rep.phi_bijective;
  return rep;
}

WilesLenstraData wiles_lenstra_data(const AlgebraHom& phi, const AlgebraHom& piR,
                                    const AlgebraHom& piS) {
  const LocalAlgebra& R = phi.dom;
  const LocalAlgebra& S = phi.cod;
  require(piR.dom.shape == R.shape && piR.dom.O == R.O, errc::mismatched_parent,
          "piR does not start at the source");
  require(piS.dom.shape == S.shape && piS.dom.O == S.O, errc::mismatched_parent,
          "piS does not start at the target");
  require(piR.cod.dim() == 1 && piR.cod.shape.ord[0] == R.O.e &&
              piS.cod.shape == piR.cod.shape,
          errc::mismatched_parent, "the base of the triangle must be O itself");
  require(phi.is_surjective() && piR.is_surjective() && piS.is_surjective(),
          errc::not_surjective, "all three maps must be onto");
  for (std::size_t i = 0; i < R.dim(); ++i)
    require(piS.apply(phi.apply(R.basis_elem(i))) == piR.apply(R.basis_elem(i)),
            errc::diagram_not_commuting, "piS after phi differs from piR");

  WilesLenstraData out;
  Ideal Kr = piR.kernel();
  Ideal Ks = piS.kernel();
  out.phi_R = Kr.order() / R.product(Kr, Kr).order();
  out.phi_S = Ks.order() / S.product(Ks, Ks).order();
  Ideal ann = S.annihilator(Ks);
  Mat eta_rows(0, 1);
  for (std::size_t i = 0; i < ann.L.basis.rows; ++i)
    eta_rows.push_row(piS.apply(ann.L.basis.row(i)));
  Lattice eta = Lattice::span(piS.cod.shape, eta_rows);
  out.o_mod_eta = Lattice::full(piS.cod.shape).size() / eta.size();
  out.principal = R.principal_generator(Kr).has_value();
  out.phi_bijective = phi.kernel_lattice().is_zero();
  out.consistent = !(out.principal && out.phi_R <= out.o_mod_eta) || out.phi_bijective;
  return out;
}

StructureReport structure_surjectivity_check(const LocalAlgebra& R, const Ideal& I) {
  StructureReport rep;
  if (I.contains(R.one)) {
    rep.cyclic = true;
    return rep;
  }
  auto [Q, pr] = quotient_algebra(R, I);
  Mat row(0, Q.dim());
  row.push_row(Q.one);
  Lattice span = Lattice::span(Q.shape, row);
  if (span == Lattice::full(Q.shape)) {
    rep.cyclic = true;
    rep.s = logp(R.O, span.size());
    return rep;
  }
  for (std::size_t mu = 0; mu < R.dim(); ++mu)
    if (!span.contains(pr.apply(R.basis_elem(mu)))) {
      rep.witness = R.basis_elem(mu);
      break;
    }
  require(rep.witness.has_value(), errc::internal, "missing witness for a proper subspan");
  return rep;
}

TraceGenerationReport trace_generation_check(const GroupRep& rho) {
  const LocalAlgebra& R = rho.A;
  Mat rows(0, R.dim());
  rows.push_row(R.shape.reduce(R.one));
  for (std::size_t g = 0; g < rho.G.order(); ++g) rows.push_row(rho.trace((int)g));
  Lattice L = Lattice::span(R.shape, rows);
  while (true) {
    Mat grow(0, R.dim());
    for (std::size_t i = 0; i < L.basis.rows; ++i)
      for (std::size_t j = i; j < L.basis.rows; ++j) {
        Vec v = R.mul(L.basis.row(i), L.basis.row(j));
        if (!L.contains(v)) grow.push_row(v);
      }
    if (grow.rows == 0) break;
    for (std::size_t i = 0; i < L.basis.rows; ++i) grow.push_row(L.basis.row(i));
    L = Lattice::span(R.shape, grow);
  }
  TraceGenerationReport rep;
  rep.subalgebra = L;
  rep.generated = L == Lattice::full(R.shape);
  if (!rep.generated)
    for (std::size_t mu = 0; mu < R.dim(); ++mu)
      if (!L.contains(R.basis_elem(mu))) {
        rep.witness = R.basis_elem(mu);
        break;
      }
  return rep;
}

} // namespace gmalab
