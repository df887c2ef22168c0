#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twdesc/cochain.hpp"

namespace twdesc {

// Local bundles E_i plus a total degree 1 endomorphism cochain a. Valid iff
// mc_residual vanishes; construction only checks types.
struct TwistedComplex {
  FamilyPtr family;
  HomCochain a;
};

// Throws Error(kInput) unless a is an endomorphism cochain of `family`
// with every component in total degree 1 and Cech degree >= 0.
TwistedComplex make_twisted(FamilyPtr family, HomCochain a);
TwistedComplex zero_twisted(SitePtr site);

// A complex of bundles on all of X with a degree +1 differential.
struct GlobalComplex {
  SitePtr site;
  GradedBundle bundle;
  SheafMorphism d;
};

// Checks shapes and that the bundle lives on every point; not d o d = 0.
GlobalComplex make_global(SitePtr site, GradedBundle bundle, SheafMorphism d);
// First (point, degree) with d o d != 0.
std::optional<FiberKey> square_zero_defect(const GlobalComplex& e);
// Throws Error(kMath) naming the point and degree if d o d != 0.
void require_square_zero(const GlobalComplex& e);

// delta(a) + a.a; zero iff the Maurer-Cartan equation holds.
HomCochain mc_residual(const TwistedComplex& t);

// d(phi) = delta(phi) + b.phi - (-1)^{|phi|} phi.a on each homogeneous part.
HomCochain hom_diff(const HomCochain& phi, const HomCochain& a, const HomCochain& b);
HomCochain hom_diff(const HomCochain& phi, const TwistedComplex& source,
                    const TwistedComplex& target);

// E[1]^n = E^{n+1}, a[1]^{k,1-k} = (-1)^{k-1} a^{k,1-k}.
TwistedComplex shift(const TwistedComplex& t);
// phi[1]^{p,q} = (-1)^q phi^{p,q}, between the shifted families.
HomCochain shift_morphism(const HomCochain& phi);

// Sign conventions for the cone block table. With G^n = E^{n+1} + F^n,
// the block at Cech degree k is [[s_a a^k, 0], [s_phi phi^k, b^k]] where
//   kCoherent:   s_a = (-1)^{k-1}, s_phi = 1
//   kPrinted:    s_a = (-1)^{k-1}, s_phi = (-1)^k
//   kProofTable: s_a = (-1)^k,     s_phi = 1
// Only kCoherent solves Maurer-Cartan for every closed phi; the other two
// are kept so their residuals can be inspected.
enum class ConeSigns { kCoherent, kPrinted, kProofTable };

// Cone of a closed degree 0 morphism phi: source -> target. Throws
// Error(kMath) if phi is not closed and Error(kInput) if it is not of
// total degree 0.
TwistedComplex cone(const HomCochain& phi, const TwistedComplex& source,
                    const TwistedComplex& target, ConeSigns signs = ConeSigns::kCoherent);

// Restriction to the cover: a^{0,1}_i = d|U_i, a^{1,0}_{ij} = id, nothing else.
TwistedComplex twist_object(const GlobalComplex& e);
// A global morphism of degree n maps to its restrictions in bidegree (0, n).
HomCochain twist_morphism(const SheafMorphism& f, const TwistedComplex& source,
                          const TwistedComplex& target);

// d_F f - (-1)^n f d_E for a global morphism f of degree n.
SheafMorphism global_hom_diff(const SheafMorphism& f, const GlobalComplex& source,
                              const GlobalComplex& target);

// One nonzero fiber of a cochain, for diagnostics.
struct ResidualEntry {
  Tuple tuple;
  int q = 0;
  int point = 0;
  int degree = 0;
};

std::vector<ResidualEntry> residual_entries(const HomCochain& r);
std::string describe(const ResidualEntry& e, const Site& site);

}  // namespace twdesc
