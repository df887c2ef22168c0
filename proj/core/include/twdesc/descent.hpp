#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twdesc/bundle.hpp"
#include "twdesc/site.hpp"

namespace twdesc {

// Descent data modulo a cocycle module: bundles P_i, Q_i on U_i with
// tau_i: Q_i -> P_i, transitions theta_{ji}: P_i -> P_j on U_ji and
// corrections vartheta_{kji}: P_i -> Q_k on U_kji such that
//   theta_{ki} - theta_{kj} theta_{ji} = tau_k vartheta_{kji},  theta_{ii} = id.
// Maps are keyed by the subscripts in the order written; missing ones are zero.
struct DescentDataModQ {
  SitePtr site;
  std::vector<GradedBundle> p;
  std::vector<GradedBundle> q;
  std::vector<SheafMorphism> tau;
  std::map<std::pair<int, int>, SheafMorphism> theta;
  std::map<std::array<int, 3>, SheafMorphism> vartheta;
};

// Empty iff the data satisfies both identities; otherwise one message per
// violated pair or triple, naming it.
std::vector<std::string> validate_descent_data(const DescentDataModQ& d);

struct DescentResult {
  GradedBundle r;                                  // on all of X
  std::vector<SheafMorphism> psi;                  // R|U_i -> P_i
  std::map<std::pair<int, int>, SheafMorphism> xi;  // (j, i): R|U_ji -> Q_j
};

// R = sum of the zero extensions of the P_i, psi_i = sum_j theta_{ij}(rho_j .),
// xi_{ji} = sum_k rho_k vartheta_{jik}. Validates the input first (Error(kMath)
// naming the triple) and checks psi_j - theta_{ji} psi_i = tau_j xi_{ji} and
// surjectivity modulo Q before returning.
DescentResult glue_modulo(const DescentDataModQ& d, const PartitionOfUnity& pou);

}  // namespace twdesc
