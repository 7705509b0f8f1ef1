#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace partsep {

enum class Errc {
  empty_label_set,
  overlapping_labels,
  length_mismatch,
  contradictory_pair,
  parse_error,
  index_out_of_range,
  malformed_diagram,
  uncoverable,
  budget_exceeded,
  infeasible_input,
  infeasible_pair,
  invalid_params,
  config_error,
  verification_failure,
  universe_mismatch,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Thrown by the exact solvers when a node budget runs out. Carries the best
// feasible solution found so far and a proven lower bound on the optimum.
template <class Solution>
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(Solution best, std::size_t best_cost, std::size_t lower_bound)
      : Error(Errc::budget_exceeded, "search budget exhausted (best " + std::to_string(best_cost) +
                                         ", lower bound " + std::to_string(lower_bound) + ")"),
        best_(std::move(best)),
        best_cost_(best_cost),
        lower_bound_(lower_bound) {}

  const Solution& best() const noexcept { return best_; }
  std::size_t best_cost() const noexcept { return best_cost_; }
  std::size_t lower_bound() const noexcept { return lower_bound_; }

 private:
  Solution best_;
  std::size_t best_cost_;
  std::size_t lower_bound_;
};

}  // namespace partsep
