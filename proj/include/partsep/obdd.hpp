#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "partsep/core.hpp"

namespace partsep::obdd {

// Reference to a diagram node: 0 and 1 are the terminals, r >= 2 is
// interior node r - 2.
using Ref = std::uint32_t;
inline constexpr Ref kZero = 0;
inline constexpr Ref kOne = 1;

inline bool is_terminal(Ref r) { return r < 2; }
inline Ref node_ref(std::size_t index) { return static_cast<Ref>(index + 2); }
inline std::size_t node_index(Ref r) { return r - 2; }

// Ordered binary decision diagram over variables 0..num_vars-1, tested in
// index order. Construction checks that levels strictly increase along
// every edge; it does not require the diagram to be reduced.
class Diagram {
 public:
  struct Node {
    VarIndex var;
    Ref low;
    Ref high;
    friend bool operator==(const Node&, const Node&) = default;
  };

  // Throws malformed_diagram on dangling references or order violations.
  Diagram(std::size_t num_vars, std::vector<Node> nodes, Ref root);

  static Diagram terminal(std::size_t num_vars, bool value);

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(Ref r) const { return nodes_[node_index(r)]; }
  Ref root() const { return root_; }

  friend bool operator==(const Diagram&, const Diagram&) = default;

 private:
  std::size_t num_vars_;
  std::vector<Node> nodes_;
  Ref root_;
};

bool eval(const Diagram& b, const Assignment& x);

// Canonical reduced form: no node with low == high, no two nodes with the
// same (var, low, high), unreachable nodes dropped, nodes numbered in
// depth-first (low before high) order from the root. Idempotent.
Diagram reduce(const Diagram& b);
bool is_reduced(const Diagram& b);

// Interior nodes reachable from the root.
std::size_t interior_nodes(const Diagram& b);
// Largest number of reachable interior nodes testing the same variable.
std::size_t width(const Diagram& b);

// Swaps the two terminals.
Diagram negate(const Diagram& b);

// Reduced diagram of the indicator function of A (0 on every other point).
Diagram build(const LabeledData& d);

// Reduced diagram of the function with the given truth table (n <= 24).
Diagram from_truth_table(std::size_t n, const BitVec& table);
BitVec truth_table(const Diagram& b);

nlohmann::json to_json(const Diagram& b, const VarUniverse& universe);
Diagram from_json(const nlohmann::json& j, const VarUniverse& universe);

}  // namespace partsep::obdd
