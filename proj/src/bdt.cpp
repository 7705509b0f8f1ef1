#include "partsep/bdt.hpp"

#include <algorithm>

namespace partsep::bdt {

Tree Tree::leaf(bool label) {
  Tree t;
  t.nodes_.push_back(Node{true, label, 0, 0, 0});
  return t;
}

void Tree::append(const Tree& sub) {
  const auto offset = static_cast<std::uint32_t>(nodes_.size());
  for (auto n : sub.nodes_) {
    if (!n.is_leaf) {
      n.low += offset;
      n.high += offset;
    }
    nodes_.push_back(n);
  }
}

Tree Tree::internal(VarIndex var, const Tree& low, const Tree& high) {
  Tree t;
  t.nodes_.reserve(1 + low.nodes_.size() + high.nodes_.size());
  t.nodes_.push_back(Node{false, false, var, 1, static_cast<std::uint32_t>(1 + low.nodes_.size())});
  t.append(low);
  t.append(high);
  return t;
}

bool eval(const Tree& t, const Assignment& x) {
  std::uint32_t i = 0;
  while (!t.nodes()[i].is_leaf) {
    const auto& n = t.nodes()[i];
    if (n.var >= x.size()) {
      throw Error(Errc::index_out_of_range, "tree tests variable " + std::to_string(n.var) +
                                                " outside a universe of " + std::to_string(x.size()));
    }
    i = x[n.var] ? n.high : n.low;
  }
  return t.nodes()[i].label;
}

std::size_t node_count(const Tree& t) { return t.nodes().size(); }

std::size_t leaf_count(const Tree& t) {
  return static_cast<std::size_t>(
      std::count_if(t.nodes().begin(), t.nodes().end(), [](const Tree::Node& n) { return n.is_leaf; }));
}

std::size_t internal_count(const Tree& t) { return node_count(t) - leaf_count(t); }

std::size_t depth(const Tree& t) {
  // Pre-order layout: children always follow their parent.
  std::vector<std::size_t> d(t.nodes().size(), 0);
  std::size_t best = 0;
  for (std::size_t i = 0; i < t.nodes().size(); ++i) {
    const auto& n = t.nodes()[i];
    best = std::max(best, d[i]);
    if (!n.is_leaf) {
      d[n.low] = d[i] + 1;
      d[n.high] = d[i] + 1;
    }
  }
  return best;
}

Tree negate(const Tree& t) {
  Tree r = t;
  for (auto& n : r.nodes_) {
    if (n.is_leaf) n.label = !n.label;
  }
  return r;
}

namespace {

using PointRefs = std::vector<const Assignment*>;

Tree induce_rec(const PointRefs& a, const PointRefs& b, std::size_t n) {
  if (b.empty()) return Tree::leaf(!a.empty());
  if (a.empty()) return Tree::leaf(false);

  std::size_t best_var = n;
  std::size_t best_pairs = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t a1 = 0, b1 = 0;
    for (const auto* x : a) a1 += (*x)[j];
    for (const auto* x : b) b1 += (*x)[j];
    const std::size_t pairs = (a.size() - a1) * b1 + a1 * (b.size() - b1);
    if (pairs > best_pairs) {
      best_pairs = pairs;
      best_var = j;
    }
  }
  // A and B are disjoint, so some variable separates at least one pair.
  if (best_var == n) throw Error(Errc::overlapping_labels, "no variable separates the remaining points");

  PointRefs a0, a1, b0, b1;
  for (const auto* x : a) ((*x)[best_var] ? a1 : a0).push_back(x);
  for (const auto* x : b) ((*x)[best_var] ? b1 : b0).push_back(x);
  return Tree::internal(static_cast<VarIndex>(best_var), induce_rec(a0, b0, n), induce_rec(a1, b1, n));
}

}  // namespace

Tree induce(const LabeledData& d) {
  PointRefs a, b;
  for (const auto& x : d.a_points()) a.push_back(&x);
  for (const auto& x : d.b_points()) b.push_back(&x);
  return induce_rec(a, b, d.num_vars());
}

BitVec truth_table(const Tree& t, std::size_t n) {
  if (n > 24) throw Error(Errc::invalid_params, "truth tables are limited to 24 variables");
  const std::size_t points = std::size_t{1} << n;
  BitVec table(points);
  for (std::size_t p = 0; p < points; ++p) {
    std::uint32_t i = 0;
    while (!t.nodes()[i].is_leaf) {
      const auto& node = t.nodes()[i];
      if (node.var >= n) throw Error(Errc::index_out_of_range, "tree variable outside the universe");
      i = ((p >> node.var) & 1u) ? node.high : node.low;
    }
    if (t.nodes()[i].label) table.set(p);
  }
  return table;
}

namespace {

nlohmann::json node_json(const Tree& t, std::uint32_t i, const VarUniverse& u) {
  const auto& n = t.nodes()[i];
  if (n.is_leaf) return {{"leaf", n.label ? 1 : 0}};
  return {{"var", u.name(n.var)}, {"low", node_json(t, n.low, u)}, {"high", node_json(t, n.high, u)}};
}

Tree node_from_json(const nlohmann::json& j, const VarUniverse& u, const std::string& where) {
  if (!j.is_object()) throw Error(Errc::parse_error, where + ": expected an object");
  if (j.contains("leaf")) {
    require_known_fields(j, {"leaf", "family"}, where);
    const auto& v = j["leaf"];
    if (!v.is_number_integer() || (v.get<int>() != 0 && v.get<int>() != 1)) {
      throw Error(Errc::parse_error, where + ".leaf: expected 0 or 1");
    }
    return Tree::leaf(v.get<int>() == 1);
  }
  require_known_fields(j, {"var", "low", "high", "family"}, where);
  if (!j.contains("var") || !j["var"].is_string()) throw Error(Errc::parse_error, where + ": missing 'var'");
  if (!j.contains("low") || !j.contains("high")) throw Error(Errc::parse_error, where + ": missing child");
  const auto name = j["var"].get<std::string>();
  if (!u.contains(name)) throw Error(Errc::parse_error, where + ": unknown variable '" + name + "'");
  return Tree::internal(u.index_of(name), node_from_json(j["low"], u, where + ".low"),
                        node_from_json(j["high"], u, where + ".high"));
}

}  // namespace

nlohmann::json to_json(const Tree& t, const VarUniverse& universe) { return node_json(t, 0, universe); }

Tree from_json(const nlohmann::json& j, const VarUniverse& universe) {
  if (j.is_object() && j.contains("family") && j["family"] != "bdt") {
    throw Error(Errc::parse_error, "tree: family must be \"bdt\"");
  }
  return node_from_json(j, universe, "tree");
}

}  // namespace partsep::bdt
