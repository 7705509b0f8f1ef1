#pragma once

#include <cstddef>
#include <vector>

#include "partsep/core.hpp"

namespace partsep::bdt {

// Binary decision tree stored as a flat pre-order array; node 0 is the root.
// Two trees are structurally identical iff their arrays are equal.
class Tree {
 public:
  struct Node {
    bool is_leaf = true;
    bool label = false;      // leaves only
    VarIndex var = 0;        // internal nodes only
    std::uint32_t low = 0;   // child taken when x[var] == 0
    std::uint32_t high = 0;  // child taken when x[var] == 1
    friend bool operator==(const Node&, const Node&) = default;
  };

  static Tree leaf(bool label);
  static Tree internal(VarIndex var, const Tree& low, const Tree& high);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& root() const { return nodes_.front(); }
  bool is_leaf() const { return root().is_leaf; }

  friend bool operator==(const Tree&, const Tree&) = default;
  friend Tree negate(const Tree& t);

 private:
  Tree() = default;
  void append(const Tree& sub);

  std::vector<Node> nodes_;
};

bool eval(const Tree& t, const Assignment& x);

// Total number of nodes, leaves included.
std::size_t node_count(const Tree& t);
std::size_t leaf_count(const Tree& t);
std::size_t internal_count(const Tree& t);
// Longest root-to-leaf path in edges; a single leaf has depth 0.
std::size_t depth(const Tree& t);

// Same structure with every leaf label flipped.
Tree negate(const Tree& t);

// Greedy top-down inducer. The result labels every point of A with 1 and
// every point of B with 0. At each node the variable separating the most
// (a, b) pairs is chosen, lowest index first on ties.
Tree induce(const LabeledData& d);

BitVec truth_table(const Tree& t, std::size_t n);

nlohmann::json to_json(const Tree& t, const VarUniverse& universe);
Tree from_json(const nlohmann::json& j, const VarUniverse& universe);

}  // namespace partsep::bdt
