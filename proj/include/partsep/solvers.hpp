#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "partsep/forms.hpp"

namespace partsep::solvers {

// ---------------------------------------------------------------------------
// Verification

struct Violation {
  enum class Kind { exactness_a, exactness_b, contradiction, totality, universe };
  Kind kind;
  std::optional<Assignment> witness;
  std::string detail;
};

std::string_view to_string(Violation::Kind k);

struct Verification {
  bool feasible = true;
  std::vector<Violation> violations;
  // Set when non-contradictoriness or totality was checked on samples only.
  bool sampled = false;
};

struct VerifyOptions {
  bool check_totality = false;
  // Universes up to this many variables are checked exhaustively.
  std::size_t exhaustive_limit = 12;
  std::size_t samples = 1 << 14;
  std::uint64_t seed = 0x5eed;
};

// Checks f_theta(A) = {1}, f_theta'(B) = {1} and f_theta + f_theta' <= 1, and
// optionally 1 <= f_theta + f_theta'. DNF pairs use the pairwise term test;
// trees and diagrams are compared on all points for small universes and on
// random samples otherwise.
Verification verify_pair(const LabeledData& d, const PairSolution& pair, const VerifyOptions& opts = {});

// Checks f(A) = {1} and f(B) = {0}.
Verification verify_separation(const LabeledData& d, const Form& form);

// ---------------------------------------------------------------------------
// Exact DNF oracle

struct SolveBudget {
  // Largest total regularizer value the search will prove or refute.
  std::size_t max_total_regularizer = 64;
  // Search nodes expanded before giving up.
  std::size_t node_budget = 20'000'000;
};

inline constexpr std::size_t kMaxExactVars = 10;

// Minimum R(theta) + R(theta') over DNF pairs, for R in {length, depth}.
// Iterative deepening on the total; throws BudgetExceeded<PairSolution>
// with the best pair found so far and the last refuted total + 1.
PairSolution exact_partial_separation_dnf(const LabeledData& d, Regularizer reg, const SolveBudget& budget = {});

// ---------------------------------------------------------------------------
// Prime-implicant approximation

// How the covering step weighs a prime implicant: `length` = number of
// literals, `count` = 1 per term.
enum class CoverRule { count, length };
CoverRule cover_rule_from_string(std::string_view s);
std::string_view to_string(CoverRule r);

// DNF whose on-set is exactly `on_set`: greedy set cover of the on-set by
// prime implicants.
dnf::Form approx_min_length_dnf_total(const VarUniverse& universe, const std::vector<Assignment>& on_set,
                                      CoverRule rule = CoverRule::length);

// (A(J, X, A), A(J, X, B)): exact on-sets A and B respectively.
PairSolution approx_min_length_dnf(const LabeledData& d, CoverRule rule = CoverRule::length);

// Heuristic SEPARATION solve (tree inducer or diagram builder) followed by
// theta -> (theta, n(theta)).
PairSolution negation_based_partial_solver(const LabeledData& d, Family family);

// ---------------------------------------------------------------------------
// Worst-case instance

// Unit vectors e_i: A = {e_i | i != k}, B = {e_k}. `k` is a 0-based index.
LabeledData tight_instance(const VarUniverse& universe, VarIndex k);

}  // namespace partsep::solvers
