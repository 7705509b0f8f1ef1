#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/rational.hpp>

#include "partsep/forms.hpp"
#include "partsep/setcover.hpp"

namespace partsep::reductions {

using Rational = boost::rational<std::int64_t>;

// Labeled data built from a set-cover instance: one variable per set (in
// family order), one A-point per element (its incidence vector) and the
// all-zeros point as the only B-point. Elements with identical incidence
// vectors share an A-point.
struct HausslerData {
  LabeledData data;
  // element u -> index of x^u in data.a_points()
  std::vector<std::size_t> element_point;
};

// Variable name of set i in the Haussler universe ("s1", "s2", ...).
std::string set_variable_name(std::size_t i);

// Throws uncoverable if some element lies in no set (its incidence vector
// would be the B-point).
HausslerData haussler_data(const setcover::Instance& inst);

// Sigma' -> ({({s}, {}) | s in Sigma'}, {({}, Sigma')}). Throws
// infeasible_input unless Sigma' covers U.
PairSolution cover_to_dnf_pair(const setcover::Cover& cover, const setcover::Instance& inst);

// The smaller of Sigma'_0 (all positive variables of theta) and Sigma'_1
// (negated variables of the smallest all-negative term of theta'); ties go
// to Sigma'_0. Throws infeasible_pair unless the pair is feasible on the
// Haussler data of `inst`.
setcover::Cover dnf_pair_to_cover(const dnf::Form& theta, const dnf::Form& theta_prime,
                                  const setcover::Instance& inst);

// Complement for the negatable families (leaf or terminal swap). Throws
// invalid_params for DNFs.
Form negate(const Form& form);

// theta -> (theta, n(theta)). Throws infeasible_input unless theta
// separates A from B.
PairSolution negatable_h(const LabeledData& d, const Form& theta);

// argmin of R over {theta, n(theta')}, first argument on ties. Throws
// infeasible_pair unless the pair is feasible.
Form negatable_g(const LabeledData& d, const PairSolution& pair, Regularizer reg);

// Both sides of the ratio-transfer inequality
//   mapped / target_optimum <= feasible_sum / optimal_sum
// as exact rationals.
struct RatioReport {
  std::size_t feasible_cost = 0;       // R(theta) + R(theta') of the feasible pair
  std::size_t optimal_cost = 0;        // R-sum of an optimal pair
  std::size_t mapped_cost = 0;         // cost of g(theta, theta')
  std::size_t target_optimal_cost = 0; // optimum of the source problem
  std::size_t lifted_target_cost = 0;  // R-sum of h(source optimum)
  Rational ratio_lhs;
  Rational ratio_rhs;
  bool inequality_holds = false;
  // Under R_d the set-cover bound is additive: |g| / OPT <= (s - 1) / (s^ - 1)
  // for R-sums s and s^. The plain ratio above can exceed rhs there. For every
  // other regularizer these equal ratio_rhs and inequality_holds.
  Rational shifted_rhs;
  bool shifted_holds = false;
};

RatioReport make_ratio_report(std::size_t feasible_cost, std::size_t optimal_cost, std::size_t mapped_cost,
                              std::size_t target_optimal_cost, std::size_t lifted_target_cost);

// Set cover <-> DNF pairs on Haussler data: g is dnf_pair_to_cover and the
// target optimum is a minimum cover.
RatioReport ratio_transfer_report(const setcover::Instance& inst, const PairSolution& feasible,
                                  const PairSolution& optimal_pair, const setcover::Cover& optimal_cover,
                                  Regularizer reg);

// SEPARATION <-> PARTIAL-SEPARATION for negatable families: g is
// negatable_g and the target optimum is a minimum separating form.
RatioReport ratio_transfer_report(const LabeledData& d, const PairSolution& feasible,
                                  const PairSolution& optimal_pair, const Form& optimal_separation,
                                  Regularizer reg);

nlohmann::json to_json(const RatioReport& r);

}  // namespace partsep::reductions
