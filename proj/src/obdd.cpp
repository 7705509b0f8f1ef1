#include "partsep/obdd.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <unordered_map>

namespace partsep::obdd {

namespace {

struct NodeKey {
  VarIndex var;
  Ref low;
  Ref high;
  friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    std::size_t h = k.var;
    h = h * 0x100000001b3ULL ^ k.low;
    h = h * 0x100000001b3ULL ^ k.high;
    return h;
  }
};

// Per-build hash-consing table.
class UniqueTable {
 public:
  Ref make(VarIndex var, Ref low, Ref high) {
    if (low == high) return low;
    const NodeKey key{var, low, high};
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    nodes_.push_back(Diagram::Node{var, low, high});
    const Ref r = node_ref(nodes_.size() - 1);
    table_.emplace(key, r);
    return r;
  }
  std::vector<Diagram::Node>& nodes() { return nodes_; }

 private:
  std::vector<Diagram::Node> nodes_;
  std::unordered_map<NodeKey, Ref, NodeKeyHash> table_;
};

// Renumbers the nodes reachable from `root` in depth-first, low-first order.
Diagram renumber(std::size_t num_vars, const std::vector<Diagram::Node>& nodes, Ref root) {
  std::vector<Ref> fresh(nodes.size(), 0);
  std::vector<bool> seen(nodes.size(), false);
  std::vector<Diagram::Node> out;
  std::vector<std::size_t> order;
  std::function<void(Ref)> visit = [&](Ref r) {
    if (is_terminal(r) || seen[node_index(r)]) return;
    seen[node_index(r)] = true;
    fresh[node_index(r)] = node_ref(order.size());
    order.push_back(node_index(r));
    visit(nodes[node_index(r)].low);
    visit(nodes[node_index(r)].high);
  };
  visit(root);
  auto map = [&](Ref r) { return is_terminal(r) ? r : fresh[node_index(r)]; };
  out.reserve(order.size());
  for (auto i : order) out.push_back(Diagram::Node{nodes[i].var, map(nodes[i].low), map(nodes[i].high)});
  return Diagram(num_vars, std::move(out), map(root));
}

std::vector<bool> reachable(const Diagram& b) {
  std::vector<bool> seen(b.nodes().size(), false);
  std::vector<Ref> stack{b.root()};
  while (!stack.empty()) {
    const Ref r = stack.back();
    stack.pop_back();
    if (is_terminal(r) || seen[node_index(r)]) continue;
    seen[node_index(r)] = true;
    stack.push_back(b.node(r).low);
    stack.push_back(b.node(r).high);
  }
  return seen;
}

}  // namespace

Diagram::Diagram(std::size_t num_vars, std::vector<Node> nodes, Ref root)
    : num_vars_(num_vars), nodes_(std::move(nodes)), root_(root) {
  auto check_ref = [&](Ref r, const char* what) {
    if (!is_terminal(r) && node_index(r) >= nodes_.size()) {
      throw Error(Errc::malformed_diagram, std::string(what) + " references missing node " + std::to_string(r));
    }
  };
  check_ref(root_, "root");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (n.var >= num_vars_) {
      throw Error(Errc::malformed_diagram, "node " + std::to_string(i) + " tests a variable outside the order");
    }
    check_ref(n.low, "low edge");
    check_ref(n.high, "high edge");
    for (Ref child : {n.low, n.high}) {
      if (!is_terminal(child) && nodes_[node_index(child)].var <= n.var) {
        throw Error(Errc::malformed_diagram, "edge from node " + std::to_string(i) + " violates the variable order");
      }
    }
  }
}

Diagram Diagram::terminal(std::size_t num_vars, bool value) { return Diagram(num_vars, {}, value ? kOne : kZero); }

bool eval(const Diagram& b, const Assignment& x) {
  if (x.size() != b.num_vars()) throw Error(Errc::length_mismatch, "assignment length does not match the diagram");
  Ref r = b.root();
  while (!is_terminal(r)) {
    const auto& n = b.node(r);
    r = x[n.var] ? n.high : n.low;
  }
  return r == kOne;
}

Diagram reduce(const Diagram& b) {
  const auto seen = reachable(b);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < b.nodes().size(); ++i) {
    if (seen[i]) order.push_back(i);
  }
  // Children sit on strictly deeper levels, so deepest-first is a valid
  // bottom-up order.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return b.nodes()[l].var > b.nodes()[r].var; });
  UniqueTable table;
  std::vector<Ref> canon(b.nodes().size(), kZero);
  auto map = [&](Ref r) { return is_terminal(r) ? r : canon[node_index(r)]; };
  for (auto i : order) {
    const auto& n = b.nodes()[i];
    canon[i] = table.make(n.var, map(n.low), map(n.high));
  }
  return renumber(b.num_vars(), table.nodes(), map(b.root()));
}

bool is_reduced(const Diagram& b) { return reduce(b) == b; }

std::size_t interior_nodes(const Diagram& b) {
  const auto seen = reachable(b);
  return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
}

std::size_t width(const Diagram& b) {
  const auto seen = reachable(b);
  std::vector<std::size_t> per_level(b.num_vars(), 0);
  for (std::size_t i = 0; i < b.nodes().size(); ++i) {
    if (seen[i]) ++per_level[b.nodes()[i].var];
  }
  return per_level.empty() ? 0 : *std::max_element(per_level.begin(), per_level.end());
}

Diagram negate(const Diagram& b) {
  auto flip = [](Ref r) { return is_terminal(r) ? (r ^ 1u) : r; };
  std::vector<Diagram::Node> nodes = b.nodes();
  for (auto& n : nodes) {
    n.low = flip(n.low);
    n.high = flip(n.high);
  }
  return Diagram(b.num_vars(), std::move(nodes), flip(b.root()));
}

namespace {

Ref build_indicator(UniqueTable& table, std::vector<const Assignment*>& points, std::size_t level, std::size_t n) {
  if (points.empty()) return kZero;
  if (level == n) return kOne;
  std::vector<const Assignment*> lo, hi;
  for (const auto* x : points) ((*x)[level] ? hi : lo).push_back(x);
  const Ref low = build_indicator(table, lo, level + 1, n);
  const Ref high = build_indicator(table, hi, level + 1, n);
  return table.make(static_cast<VarIndex>(level), low, high);
}

Ref build_table(UniqueTable& table, const BitVec& tt, std::uint64_t prefix, std::size_t level, std::size_t n) {
  if (level == n) return tt.test(prefix) ? kOne : kZero;
  const Ref low = build_table(table, tt, prefix, level + 1, n);
  const Ref high = build_table(table, tt, prefix | (std::uint64_t{1} << level), level + 1, n);
  return table.make(static_cast<VarIndex>(level), low, high);
}

}  // namespace

Diagram build(const LabeledData& d) {
  UniqueTable table;
  std::vector<const Assignment*> points;
  for (const auto& x : d.a_points()) points.push_back(&x);
  const Ref root = build_indicator(table, points, 0, d.num_vars());
  return renumber(d.num_vars(), table.nodes(), root);
}

Diagram from_truth_table(std::size_t n, const BitVec& table) {
  if (n > 24) throw Error(Errc::invalid_params, "truth tables are limited to 24 variables");
  if (table.size() != (std::size_t{1} << n)) throw Error(Errc::length_mismatch, "truth table has the wrong size");
  UniqueTable unique;
  const Ref root = build_table(unique, table, 0, 0, n);
  return renumber(n, unique.nodes(), root);
}

BitVec truth_table(const Diagram& b) {
  const std::size_t n = b.num_vars();
  if (n > 24) throw Error(Errc::invalid_params, "truth tables are limited to 24 variables");
  const std::size_t points = std::size_t{1} << n;
  BitVec table(points);
  for (std::size_t p = 0; p < points; ++p) {
    Ref r = b.root();
    while (!is_terminal(r)) {
      const auto& node = b.node(r);
      r = ((p >> node.var) & 1u) ? node.high : node.low;
    }
    if (r == kOne) table.set(p);
  }
  return table;
}

nlohmann::json to_json(const Diagram& b, const VarUniverse& universe) {
  if (universe.size() != b.num_vars()) throw Error(Errc::universe_mismatch, "diagram and universe sizes differ");
  auto ref_json = [](Ref r) -> nlohmann::json {
    if (r == kZero) return "T0";
    if (r == kOne) return "T1";
    return node_index(r);
  };
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < b.nodes().size(); ++i) {
    const auto& n = b.nodes()[i];
    nodes.push_back({{"id", i}, {"var", universe.name(n.var)}, {"low", ref_json(n.low)}, {"high", ref_json(n.high)}});
  }
  return {{"family", "obdd"}, {"order", universe.names()}, {"nodes", nodes}, {"root", ref_json(b.root())}};
}

Diagram from_json(const nlohmann::json& j, const VarUniverse& universe) {
  require_known_fields(j, {"family", "order", "nodes", "root"}, "obdd");
  if (j.value("family", std::string{}) != "obdd") throw Error(Errc::parse_error, "obdd: family must be \"obdd\"");
  if (!j.contains("order") || j["order"] != nlohmann::json(universe.names())) {
    throw Error(Errc::universe_mismatch, "obdd: 'order' must list the instance variables in order");
  }
  if (!j.contains("nodes") || !j["nodes"].is_array()) throw Error(Errc::parse_error, "obdd: 'nodes' must be an array");
  if (!j.contains("root")) throw Error(Errc::parse_error, "obdd: missing 'root'");

  const auto& arr = j["nodes"];
  std::map<std::int64_t, std::size_t> id_to_index;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& nj = arr[i];
    require_known_fields(nj, {"id", "var", "low", "high"}, "nodes[" + std::to_string(i) + "]");
    if (!nj.contains("id") || !nj["id"].is_number_integer()) {
      throw Error(Errc::parse_error, "nodes[" + std::to_string(i) + "]: 'id' must be an integer");
    }
    if (!id_to_index.emplace(nj["id"].get<std::int64_t>(), i).second) {
      throw Error(Errc::parse_error, "nodes[" + std::to_string(i) + "]: duplicate id");
    }
  }
  auto parse_ref = [&](const nlohmann::json& r, const std::string& where) -> Ref {
    if (r.is_string()) {
      if (r == "T0") return kZero;
      if (r == "T1") return kOne;
    } else if (r.is_number_integer()) {
      auto it = id_to_index.find(r.get<std::int64_t>());
      if (it != id_to_index.end()) return node_ref(it->second);
      throw Error(Errc::malformed_diagram, where + ": reference to unknown node " + r.dump());
    }
    throw Error(Errc::parse_error, where + ": expected \"T0\", \"T1\" or a node id");
  };
  std::vector<Diagram::Node> nodes;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& nj = arr[i];
    const std::string where = "nodes[" + std::to_string(i) + "]";
    if (!nj.contains("var") || !nj["var"].is_string() || !universe.contains(nj["var"].get<std::string>())) {
      throw Error(Errc::parse_error, where + ": 'var' must name an instance variable");
    }
    if (!nj.contains("low") || !nj.contains("high")) throw Error(Errc::parse_error, where + ": missing edge");
    nodes.push_back(Diagram::Node{universe.index_of(nj["var"].get<std::string>()), parse_ref(nj["low"], where + ".low"),
                                  parse_ref(nj["high"], where + ".high")});
  }
  return Diagram(universe.size(), std::move(nodes), parse_ref(j["root"], "root"));
}

}  // namespace partsep::obdd
