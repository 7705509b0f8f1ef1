#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "partsep/core.hpp"

namespace partsep::setcover {

// Universe U of named elements and a family of subsets with stable indices.
// Optional positive integer weights turn cardinality into total weight.
class Instance {
 public:
  // Throws invalid_params on an empty universe, an element index out of
  // range or a non-positive weight. Coverability is not required here.
  Instance(std::vector<std::string> elements, std::vector<std::vector<std::size_t>> sets,
           std::vector<std::uint64_t> weights = {});

  std::size_t num_elements() const { return elements_.size(); }
  std::size_t num_sets() const { return sets_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::vector<std::size_t>& set(std::size_t i) const { return sets_[i]; }
  const std::vector<std::vector<std::size_t>>& sets() const { return sets_; }
  const BitVec& mask(std::size_t i) const { return masks_[i]; }

  bool weighted() const { return !weights_.empty(); }
  std::uint64_t weight(std::size_t i) const { return weights_.empty() ? 1 : weights_[i]; }
  const std::vector<std::uint64_t>& weights() const { return weights_; }

  // True iff the union of all sets is the universe.
  bool coverable() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.elements_ == b.elements_ && a.sets_ == b.sets_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<std::string> elements_;
  std::vector<std::vector<std::size_t>> sets_;
  std::vector<std::uint64_t> weights_;
  std::vector<BitVec> masks_;
};

// Chosen family indices, sorted ascending.
struct Cover {
  std::vector<std::size_t> chosen;

  static Cover of(std::vector<std::size_t> indices);
  std::size_t size() const { return chosen.size(); }
  friend bool operator==(const Cover&, const Cover&) = default;
};

bool is_feasible(const Instance& inst, const Cover& cover);
// Cardinality, or total weight for weighted instances.
std::uint64_t cost(const Instance& inst, const Cover& cover);

// Greedy: repeatedly take the set with the most newly covered elements per
// unit weight, lowest index on ties. Throws uncoverable.
Cover greedy(const Instance& inst);

inline constexpr std::size_t kDefaultNodeBudget = 50'000'000;

// Branch and bound for a minimum-cost cover. Branches on the uncovered
// element contained in the fewest sets. Throws uncoverable, or
// BudgetExceeded<Cover> carrying the incumbent when `node_budget` search
// nodes were expanded without closing the search.
Cover exact(const Instance& inst, std::size_t node_budget = kDefaultNodeBudget);

nlohmann::json to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Cover& cover);
Cover cover_from_json(const nlohmann::json& j, const Instance& inst);

}  // namespace partsep::setcover
