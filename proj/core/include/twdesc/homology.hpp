#pragma once

#include <map>
#include <utility>
#include <vector>

#include "twdesc/twisted.hpp"

namespace twdesc {

// (point, degree) -> dim H^degree at that point. Every point of the open
// and every degree of the bundle window appears, zeros included.
using HomologyTable = std::map<FiberKey, int>;

// Pointwise homology of (b, d). Throws Error(kMath) naming the first point
// and degree where d o d != 0.
HomologyTable local_homology(const GradedBundle& b, const SheafMorphism& d);

// The degree-0 differential a^{0,1}_i of a twisted complex as a morphism.
SheafMorphism local_differential(const TwistedComplex& t, int index);

struct WeqFailure {
  int index = 0;
  int point = 0;
  int degree = 0;
  int source_dim = 0;  // dim H of the source at (index, point, degree)
  int target_dim = 0;
  int induced_rank = 0;
};

struct WeqVerdict {
  bool equivalent = true;
  std::vector<WeqFailure> failures;
};

// Rank of the map on homology induced by f at one point and degree, plus
// the two homology dimensions. The maps are d_in: X^{n-1} -> X^n etc.
struct InducedMap {
  int source_dim = 0;
  int target_dim = 0;
  int rank = 0;
  bool iso() const { return rank == source_dim && rank == target_dim; }
};
InducedMap induced_on_homology(const Matrix& e_in, const Matrix& e_out, const Matrix& f,
                               const Matrix& f_in, const Matrix& f_out);

// phi must be closed of total degree 0 (Error(kMath) / Error(kInput)
// otherwise). Equivalent iff every phi^{0,0}_i is a pointwise quasi-iso.
WeqVerdict is_weak_equivalence(const HomCochain& phi, const TwistedComplex& source,
                               const TwistedComplex& target);

// degree -> dim H^degree of the hom complex, over the degree window
// [min F - max E, max F - min E]. Empty when either side is zero.
using CohomologyDims = std::map<int, int>;
CohomologyDims hom_complex_cohomology(const GlobalComplex& source, const GlobalComplex& target);
CohomologyDims hom_complex_cohomology(const TwistedComplex& source, const TwistedComplex& target);

}  // namespace twdesc
