#include "partsep/setcover.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace partsep::setcover {

Instance::Instance(std::vector<std::string> elements, std::vector<std::vector<std::size_t>> sets,
                   std::vector<std::uint64_t> weights)
    : elements_(std::move(elements)), sets_(std::move(sets)), weights_(std::move(weights)) {
  if (elements_.empty()) throw Error(Errc::invalid_params, "set cover universe must be non-empty");
  if (!weights_.empty() && weights_.size() != sets_.size()) {
    throw Error(Errc::invalid_params, "one weight per set is required");
  }
  for (auto w : weights_) {
    if (w == 0) throw Error(Errc::invalid_params, "set weights must be positive");
  }
  masks_.reserve(sets_.size());
  for (auto& s : sets_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    BitVec m(elements_.size());
    for (auto e : s) {
      if (e >= elements_.size()) throw Error(Errc::invalid_params, "set element index out of range");
      m.set(e);
    }
    masks_.push_back(std::move(m));
  }
}

bool Instance::coverable() const {
  BitVec u(elements_.size());
  for (const auto& m : masks_) u |= m;
  return u.all();
}

Cover Cover::of(std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  return Cover{std::move(indices)};
}

bool is_feasible(const Instance& inst, const Cover& cover) {
  BitVec u(inst.num_elements());
  for (auto i : cover.chosen) {
    if (i >= inst.num_sets()) return false;
    u |= inst.mask(i);
  }
  return u.all();
}

std::uint64_t cost(const Instance& inst, const Cover& cover) {
  std::uint64_t c = 0;
  for (auto i : cover.chosen) c += inst.weight(i);
  return c;
}

namespace {

void require_coverable(const Instance& inst) {
  BitVec u(inst.num_elements());
  for (std::size_t i = 0; i < inst.num_sets(); ++i) u |= inst.mask(i);
  if (!u.all()) {
    BitVec missing = ~u;
    throw Error(Errc::uncoverable, "element '" + inst.elements()[missing.find_first()] + "' is in no set");
  }
}

}  // namespace

Cover greedy(const Instance& inst) {
  require_coverable(inst);
  BitVec uncovered(inst.num_elements(), true);
  std::vector<std::size_t> chosen;
  while (uncovered.any()) {
    std::size_t best = inst.num_sets();
    std::uint64_t best_gain = 0, best_weight = 1;
    for (std::size_t i = 0; i < inst.num_sets(); ++i) {
      const std::uint64_t gain = (inst.mask(i) & uncovered).count();
      if (gain == 0) continue;
      // gain / weight > best_gain / best_weight
      if (best == inst.num_sets() || gain * best_weight > best_gain * inst.weight(i)) {
        best = i;
        best_gain = gain;
        best_weight = inst.weight(i);
      }
    }
    chosen.push_back(best);
    uncovered.subtract(inst.mask(best));
  }
  return Cover::of(std::move(chosen));
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, std::size_t node_budget) : inst_(inst), node_budget_(node_budget) {
    const std::size_t n = inst.num_elements();
    containing_.resize(n);
    min_weight_.assign(n, std::numeric_limits<std::uint64_t>::max());
    min_set_weight_ = std::numeric_limits<std::uint64_t>::max();
    for (std::size_t i = 0; i < inst.num_sets(); ++i) {
      min_set_weight_ = std::min(min_set_weight_, inst.weight(i));
      for (auto e : inst.set(i)) {
        containing_[e].push_back(i);
        min_weight_[e] = std::min(min_weight_[e], inst.weight(i));
      }
    }
  }

  Cover run() {
    best_ = greedy(inst_);
    best_cost_ = cost(inst_, best_);
    BitVec uncovered(inst_.num_elements(), true);
    proven_lb_ = static_cast<std::size_t>(lower_bound(uncovered));
    search(uncovered, 0);
    return best_;
  }

 private:
  std::uint64_t lower_bound(const BitVec& uncovered) const {
    std::uint64_t per_element = 0;
    uncovered.for_each_set([&](std::size_t e) { per_element = std::max(per_element, min_weight_[e]); });
    std::uint64_t max_gain = 0;
    for (std::size_t i = 0; i < inst_.num_sets(); ++i) {
      max_gain = std::max<std::uint64_t>(max_gain, (inst_.mask(i) & uncovered).count());
    }
    if (max_gain == 0) return std::numeric_limits<std::uint64_t>::max() / 2;
    const std::uint64_t remaining = uncovered.count();
    const std::uint64_t sets_needed = (remaining + max_gain - 1) / max_gain;
    return std::max(per_element, sets_needed * min_set_weight_);
  }

  void search(const BitVec& uncovered, std::uint64_t current) {
    if (++nodes_ > node_budget_) throw BudgetExceeded<Cover>(best_, best_cost_, proven_lb_);
    if (uncovered.none()) {
      if (current < best_cost_) {
        best_cost_ = current;
        best_ = Cover::of(stack_);
      }
      return;
    }
    if (current + lower_bound(uncovered) >= best_cost_) return;

    std::size_t pivot = inst_.num_elements();
    uncovered.for_each_set([&](std::size_t e) {
      if (pivot == inst_.num_elements() || containing_[e].size() < containing_[pivot].size()) pivot = e;
    });

    // Try sets with the best gain per weight first so good incumbents come early.
    std::vector<std::pair<std::uint64_t, std::size_t>> cands;
    for (auto i : containing_[pivot]) cands.emplace_back((inst_.mask(i) & uncovered).count(), i);
    std::stable_sort(cands.begin(), cands.end(), [&](const auto& l, const auto& r) {
      return l.first * inst_.weight(r.second) > r.first * inst_.weight(l.second);
    });
    for (const auto& [gain, i] : cands) {
      BitVec next = uncovered;
      next.subtract(inst_.mask(i));
      stack_.push_back(i);
      search(next, current + inst_.weight(i));
      stack_.pop_back();
    }
  }

  const Instance& inst_;
  std::size_t node_budget_;
  std::size_t nodes_ = 0;
  std::vector<std::vector<std::size_t>> containing_;
  std::vector<std::uint64_t> min_weight_;
  std::uint64_t min_set_weight_ = 1;
  std::vector<std::size_t> stack_;
  Cover best_;
  std::uint64_t best_cost_ = 0;
  std::size_t proven_lb_ = 1;
};

}  // namespace

Cover exact(const Instance& inst, std::size_t node_budget) {
  require_coverable(inst);
  BranchAndBound bb(inst, node_budget);
  return bb.run();
}

// JSON -----------------------------------------------------------------------

nlohmann::json to_json(const Instance& inst) {
  nlohmann::json sets = nlohmann::json::array();
  for (const auto& s : inst.sets()) {
    nlohmann::json names = nlohmann::json::array();
    for (auto e : s) names.push_back(inst.elements()[e]);
    sets.push_back(std::move(names));
  }
  nlohmann::json j{{"universe", inst.elements()}, {"sets", sets}};
  if (inst.weighted()) j["weights"] = inst.weights();
  return j;
}

namespace {

std::string element_id(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  throw Error(Errc::parse_error, where + ": element ids must be strings or integers");
}

}  // namespace

Instance instance_from_json(const nlohmann::json& j) {
  require_known_fields(j, {"universe", "sets", "weights"}, "setcover");
  if (!j.contains("universe") || !j["universe"].is_array()) {
    throw Error(Errc::parse_error, "setcover: 'universe' must be an array");
  }
  if (!j.contains("sets") || !j["sets"].is_array()) throw Error(Errc::parse_error, "setcover: 'sets' must be an array");
  std::vector<std::string> elements;
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < j["universe"].size(); ++i) {
    auto id = element_id(j["universe"][i], "universe[" + std::to_string(i) + "]");
    if (!index.emplace(id, elements.size()).second) {
      throw Error(Errc::parse_error, "universe[" + std::to_string(i) + "]: duplicate element '" + id + "'");
    }
    elements.push_back(std::move(id));
  }
  std::vector<std::vector<std::size_t>> sets;
  for (std::size_t i = 0; i < j["sets"].size(); ++i) {
    const auto& sj = j["sets"][i];
    const std::string where = "sets[" + std::to_string(i) + "]";
    if (!sj.is_array()) throw Error(Errc::parse_error, where + ": expected an array");
    std::vector<std::size_t> s;
    for (const auto& v : sj) {
      auto id = element_id(v, where);
      auto it = index.find(id);
      if (it == index.end()) throw Error(Errc::parse_error, where + ": unknown element '" + id + "'");
      s.push_back(it->second);
    }
    sets.push_back(std::move(s));
  }
  std::vector<std::uint64_t> weights;
  if (j.contains("weights")) {
    const auto& wj = j["weights"];
    if (!wj.is_array() || wj.size() != sets.size()) {
      throw Error(Errc::parse_error, "setcover: 'weights' must have one entry per set");
    }
    for (const auto& w : wj) {
      if (!w.is_number_integer() || w.get<std::int64_t>() <= 0) {
        throw Error(Errc::parse_error, "setcover: weights must be positive integers");
      }
      weights.push_back(w.get<std::uint64_t>());
    }
  }
  try {
    return Instance(std::move(elements), std::move(sets), std::move(weights));
  } catch (const Error& e) {
    throw Error(Errc::parse_error, e.what());
  }
}

nlohmann::json to_json(const Cover& cover) { return {{"cover", cover.chosen}}; }

Cover cover_from_json(const nlohmann::json& j, const Instance& inst) {
  require_known_fields(j, {"cover"}, "cover");
  if (!j.contains("cover") || !j["cover"].is_array()) throw Error(Errc::parse_error, "cover: 'cover' must be an array");
  std::vector<std::size_t> chosen;
  for (const auto& v : j["cover"]) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0 ||
        static_cast<std::size_t>(v.get<std::int64_t>()) >= inst.num_sets()) {
      throw Error(Errc::parse_error, "cover: set indices must be in range");
    }
    chosen.push_back(v.get<std::size_t>());
  }
  return Cover::of(std::move(chosen));
}

}  // namespace partsep::setcover
