#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "partsep/reductions.hpp"
#include "partsep/setcover.hpp"
#include "partsep/solvers.hpp"

namespace partsep::bench {

// Random set-cover instance over elements "1".."n_elements". Each set takes
// each element independently with probability `density`; elements left
// uncovered are then added to a randomly chosen set so the instance is
// always coverable. density == 1 makes every set equal to U.
setcover::Instance gen_random_setcover(std::uint64_t seed, std::size_t n_elements, std::size_t n_sets,
                                       double density);

// n_a + n_b distinct points over x1..x_nvars drawn uniformly without
// replacement; the first n_a go to A. Requires n_a + n_b <= 2^n_vars.
LabeledData gen_random_labeled(std::uint64_t seed, std::size_t n_vars, std::size_t n_a, std::size_t n_b);

// Per-instance seed derived from the run seed and the instance position.
std::uint64_t derive_seed(std::uint64_t run_seed, std::size_t suite, std::size_t instance);

struct BenchRecord {
  std::string instance_id;
  std::string generator;
  std::string params;  // "key=value;..." in a fixed order
  std::string solver;
  std::string regularizer;
  std::string status;  // "ok" or "budget_exceeded"
  std::size_t feasible_cost = 0;
  std::optional<std::size_t> oracle_cost;
  std::optional<reductions::Rational> ratio;  // feasible / oracle
  std::optional<double> wall_ms;
  std::optional<std::uint64_t> seed;
};

struct SuiteConfig {
  enum class Kind { tight, haussler, random_labeled };
  Kind kind = Kind::tight;
  std::size_t count = 1;
  // tight: universe sizes; random-labeled: a single size
  std::vector<std::size_t> vars;
  std::optional<std::size_t> k;  // tight, 1-based; defaults to the last variable
  std::size_t elements = 5;
  std::size_t sets = 4;
  double density = 0.4;
  std::size_t a = 3;
  std::size_t b = 3;
  std::vector<Regularizer> regularizers{Regularizer::length};
  std::vector<Family> families{Family::dnf};
};

struct BenchConfig {
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  bool timing = false;
  solvers::CoverRule cover_rule = solvers::CoverRule::length;
  solvers::SolveBudget budget;
  std::size_t cover_node_budget = setcover::kDefaultNodeBudget;
  std::vector<SuiteConfig> suites;
};

// Throws config_error on unknown keys, wrong types or invalid values.
BenchConfig config_from_json(const nlohmann::json& j);

// Runs every suite. Each solution is re-verified before it is recorded;
// a failed verification, a broken ratio bound or a broken optimum
// correspondence throws verification_failure. Records are ordered by
// suite, then instance, then solver, independently of `jobs`.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records);
nlohmann::json to_json(const std::vector<BenchRecord>& records);

}  // namespace partsep::bench
