#pragma once

#include <vector>

#include "twdesc/homology.hpp"
#include "twdesc/twisted.hpp"

namespace twdesc {

struct HigherGlueResult {
  GradedBundle bundle;    // on X, concentrated in degree l
  TwistedComplex source;  // its twisting-functor image (zero differential)
  HomCochain psi;         // closed, degree 0, source -> F
};

// Glues the local degree-l cycles of F into one bundle on X and a closed
// degree 0 morphism onto them: psi^{k,-k}_{i_0..i_k} is, on the j-th
// summand, (-1)^k rho_j b^{k+1,-k}_{i_0..i_k j} restricted to ker b^{0,1}_j.
// Requires H^n(F_i) = 0 pointwise for n > l (Error(kMath) with the index,
// point and degree otherwise). Verifies that psi is closed and that
// psi^{0,0}_i hits every cycle modulo boundaries.
HigherGlueResult higher_glue(const TwistedComplex& f, int l);

struct GlobalizationStep {
  int degree = 0;
  int glued_rank = 0;  // sum over points of the new fiber dimension
};

struct GlobalizationCertificate {
  GlobalComplex complex;
  TwistedComplex twisted;           // twist_object(complex)
  HomCochain phi;                   // twisted -> input, total degree 0
  HomCochain intertwine_residual;   // hom_diff(phi); zero on success
  WeqVerdict weq;
  std::vector<GlobalizationStep> steps;
};

// Builds a global complex E and a weak equivalence T(E) -> f by downward
// induction on the degree. Every intermediate invariant is checked and a
// failure raises Error(kMath) naming the degree and point.
GlobalizationCertificate globalize(const TwistedComplex& f);

// Pointwise quasi-isomorphism test for a degree 0 chain map of global
// complexes; failures as (index -1, point, degree).
WeqVerdict is_quasi_isomorphism(const SheafMorphism& f, const GlobalComplex& source,
                                const GlobalComplex& target);

struct RoundtripWitness {
  GlobalizationCertificate certificate;
  SheafMorphism global_map;  // descended from certificate.phi: E' -> E
  HomCochain homotopy;       // phi - T(global_map) = d(homotopy)
  WeqVerdict quasi_iso;
};

// globalize(twist_object(e)) together with a global chain map back to e
// and its verified quasi-isomorphism verdict.
RoundtripWitness roundtrip(const GlobalComplex& e);

}  // namespace twdesc
