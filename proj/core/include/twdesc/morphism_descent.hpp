#pragma once

#include "twdesc/twisted.hpp"

namespace twdesc {

struct DescendedMorphism {
  SheafMorphism global;  // phi~ = sum_i rho_i phi^{0,n}_i
  HomCochain homotopy;   // phi^ with phi - T(phi~) = d(phi^)
};

// phi: T(source) -> T(target) closed of total degree n. Both identities are
// verified before returning; a failure raises Error(kMath).
DescendedMorphism descend_morphism(const HomCochain& phi, const GlobalComplex& source,
                                   const GlobalComplex& target);

// Given T(phi) = d(phi_hat0), returns psi~ = sum_j rho_j phi_hat0^{0,n-1}_j
// with phi = d psi~. Error(kMath) if the hypothesis or the result fails.
SheafMorphism descend_coboundary(const SheafMorphism& phi, const HomCochain& phi_hat0,
                                 const GlobalComplex& source, const GlobalComplex& target);

}  // namespace twdesc
