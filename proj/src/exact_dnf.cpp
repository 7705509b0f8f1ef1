// Exact minimum-R pair search for DNFs.
//
// The pair is split into an "outer" side (the label class with fewer points)
// and an "inner" side. Outer terms are enumerated directly: at each step the
// first uncovered outer point must be covered by some term avoiding all inner
// points. Once the outer side is complete its region F is fixed, and the inner
// side only needs terms avoiding F; any such term can be widened to a prime
// implicant of the complement of F without raising its size, so the inner
// search ranges over those primes only.

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

#include "partsep/solvers.hpp"

namespace partsep::solvers {

namespace {

struct TermTable {
  std::size_t n = 0;
  std::vector<dnf::Term> terms;       // sorted by dnf::Term ordering
  std::vector<BitVec> sat;            // satisfying set per term
  std::vector<std::uint32_t> code;    // base-3 code per term
  std::vector<std::uint32_t> rank_of; // base-3 code -> term id
  std::vector<std::vector<std::uint32_t>> through; // point -> term ids containing it, in term order
  std::vector<std::uint32_t> pow3;

  explicit TermTable(std::size_t nvars) : n(nvars) {
    pow3.assign(n + 1, 1);
    for (std::size_t j = 1; j <= n; ++j) pow3[j] = pow3[j - 1] * 3;
    const std::uint32_t total = pow3[n];

    std::vector<std::pair<dnf::Term, std::uint32_t>> all;
    all.reserve(total);
    for (std::uint32_t c = 0; c < total; ++c) {
      dnf::Term t;
      std::uint32_t rest = c;
      for (std::size_t j = 0; j < n; ++j, rest /= 3) {
        if (rest % 3 == 1) t.pos.push_back(static_cast<VarIndex>(j));
        if (rest % 3 == 2) t.neg.push_back(static_cast<VarIndex>(j));
      }
      all.emplace_back(std::move(t), c);
    }
    std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.first < r.first; });

    rank_of.assign(total, 0);
    for (std::uint32_t id = 0; id < total; ++id) {
      rank_of[all[id].second] = id;
      code.push_back(all[id].second);
      sat.push_back(dnf::satisfying_set(all[id].first, n));
      terms.push_back(std::move(all[id].first));
    }

    const std::size_t points = std::size_t{1} << n;
    through.resize(points);
    for (std::uint32_t id = 0; id < total; ++id) {
      sat[id].for_each_set([&](std::size_t p) { through[p].push_back(id); });
    }
  }

  std::size_t size(std::uint32_t id) const { return terms[id].size(); }

  // True iff dropping some literal of `id` still avoids `forbidden`.
  bool widenable(std::uint32_t id, const BitVec& forbidden) const {
    std::uint32_t rest = code[id];
    for (std::size_t j = 0; j < n; ++j, rest /= 3) {
      const std::uint32_t digit = rest % 3;
      if (digit == 0) continue;
      const std::uint32_t parent = rank_of[code[id] - digit * pow3[j]];
      if (!sat[parent].intersects(forbidden)) return true;
    }
    return false;
  }
};

class NodeBudgetExhausted {};

class PairSearch {
 public:
  PairSearch(const TermTable& table, BitVec outer_pts, BitVec inner_pts, std::size_t node_budget)
      : t_(table), outer_(std::move(outer_pts)), inner_(std::move(inner_pts)), node_budget_(node_budget) {}

  std::size_t nodes() const { return nodes_; }

  // Length: is there a pair with total length <= budget?
  bool length_feasible(std::size_t budget) {
    budget_ = budget;
    outer_memo_.clear();
    outer_terms_.clear();
    inner_terms_.clear();
    return length_outer(BitVec(outer_.size()), 0);
  }

  // Depth: outer terms of size <= d_outer, inner terms of size <= d_inner.
  bool depth_feasible(std::size_t d_outer, std::size_t d_inner) {
    d_outer_ = d_outer;
    d_inner_ = d_inner;
    failed_regions_.clear();
    outer_terms_.clear();
    inner_terms_.clear();
    return depth_outer(BitVec(outer_.size()));
  }

  const std::vector<std::uint32_t>& outer_terms() const { return outer_terms_; }
  const std::vector<std::uint32_t>& inner_terms() const { return inner_terms_; }

 private:
  void tick() {
    if (++nodes_ > node_budget_) throw NodeBudgetExhausted{};
  }

  // Smallest term through p avoiding `forbidden` with size <= cap, or npos.
  std::size_t min_term_size(std::size_t p, const BitVec& forbidden, std::size_t cap) const {
    for (auto id : t_.through[p]) {
      if (t_.size(id) > cap) break;
      if (!t_.sat[id].intersects(forbidden)) return t_.size(id);
    }
    return kNone;
  }

  // Largest over inner points of the smallest admissible term size.
  std::size_t inner_bound(const BitVec& forbidden, const BitVec& pending, std::size_t cap) const {
    std::size_t lb = 0;
    bool dead = false;
    pending.for_each_set([&](std::size_t p) {
      if (dead) return;
      const std::size_t m = min_term_size(p, forbidden, cap);
      if (m == kNone) {
        dead = true;
      } else {
        lb = std::max(lb, m);
      }
    });
    return dead ? kNone : lb;
  }

  bool length_outer(const BitVec& region, std::size_t cost) {
    tick();
    const BitVec forbidden = region | outer_;
    const std::size_t lb_inner = inner_bound(forbidden, inner_, budget_ - cost);
    if (lb_inner == kNone || cost + lb_inner > budget_) return false;

    BitVec pending = outer_;
    pending.subtract(region);
    if (pending.none()) {
      inner_memo_.clear();
      return length_inner(forbidden, BitVec(inner_.size()), cost);
    }

    auto [it, inserted] = outer_memo_.try_emplace(region, cost);
    if (!inserted) {
      if (it->second <= cost) return false;
      it->second = cost;
    }

    const std::size_t p = pending.find_first();
    for (auto id : t_.through[p]) {
      const std::size_t sz = t_.size(id);
      if (cost + sz + lb_inner > budget_) break;
      if (t_.sat[id].intersects(inner_)) continue;
      outer_terms_.push_back(id);
      if (length_outer(region | t_.sat[id], cost + sz)) return true;
      outer_terms_.pop_back();
    }
    return false;
  }

  bool length_inner(const BitVec& forbidden, const BitVec& covered, std::size_t cost) {
    tick();
    BitVec pending = inner_;
    pending.subtract(covered);
    if (pending.none()) return true;
    const std::size_t lb = inner_bound(forbidden, pending, budget_ - cost);
    if (lb == kNone || cost + lb > budget_) return false;

    auto [it, inserted] = inner_memo_.try_emplace(covered, cost);
    if (!inserted) {
      if (it->second <= cost) return false;
      it->second = cost;
    }

    const std::size_t p = pending.find_first();
    for (auto id : t_.through[p]) {
      const std::size_t sz = t_.size(id);
      if (cost + sz > budget_) break;
      if (t_.sat[id].intersects(forbidden) || t_.widenable(id, forbidden)) continue;
      inner_terms_.push_back(id);
      if (length_inner(forbidden, covered | (t_.sat[id] & inner_), cost + sz)) return true;
      inner_terms_.pop_back();
    }
    return false;
  }

  bool depth_outer(const BitVec& region) {
    tick();
    const BitVec forbidden = region | outer_;
    if (inner_bound(forbidden, inner_, d_inner_) == kNone) return false;

    BitVec pending = outer_;
    pending.subtract(region);
    if (pending.none()) {
      // Every inner point has an admissible term; take the smallest one for
      // each point not yet covered.
      BitVec covered(inner_.size());
      inner_.for_each_set([&](std::size_t p) {
        if (covered.test(p)) return;
        for (auto id : t_.through[p]) {
          if (!t_.sat[id].intersects(forbidden)) {
            inner_terms_.push_back(id);
            covered |= t_.sat[id];
            break;
          }
        }
      });
      return true;
    }
    if (!failed_regions_.insert(region).second) return false;

    const std::size_t p = pending.find_first();
    for (auto id : t_.through[p]) {
      if (t_.size(id) > d_outer_) break;
      if (t_.sat[id].intersects(inner_)) continue;
      outer_terms_.push_back(id);
      if (depth_outer(region | t_.sat[id])) return true;
      outer_terms_.pop_back();
    }
    return false;
  }

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  const TermTable& t_;
  BitVec outer_;
  BitVec inner_;
  std::size_t node_budget_;
  std::size_t nodes_ = 0;

  std::size_t budget_ = 0;
  std::size_t d_outer_ = 0;
  std::size_t d_inner_ = 0;
  std::unordered_map<BitVec, std::size_t, BitVecHash> outer_memo_;
  std::unordered_map<BitVec, std::size_t, BitVecHash> inner_memo_;
  std::unordered_set<BitVec, BitVecHash> failed_regions_;
  std::vector<std::uint32_t> outer_terms_;
  std::vector<std::uint32_t> inner_terms_;
};

dnf::Form collect(const TermTable& table, const std::vector<std::uint32_t>& ids) {
  std::vector<dnf::Term> terms;
  for (auto id : ids) terms.push_back(table.terms[id]);
  return dnf::Form(std::move(terms));
}

}  // namespace

PairSolution exact_partial_separation_dnf(const LabeledData& d, Regularizer reg, const SolveBudget& budget) {
  if (reg != Regularizer::length && reg != Regularizer::depth) {
    throw Error(Errc::invalid_params, "the exact DNF oracle supports the length and depth regularizers");
  }
  const std::size_t n = d.num_vars();
  if (n > kMaxExactVars) {
    throw Error(Errc::invalid_params, "the exact DNF oracle is limited to " + std::to_string(kMaxExactVars) +
                                          " variables");
  }

  // Incumbent: the prime-implicant approximation is always feasible.
  PairSolution best = approx_min_length_dnf(d);
  const std::size_t best_cost = best.cost(reg);

  const TermTable table(n);
  const BitVec a = point_set(d.a_points(), n);
  const BitVec b = point_set(d.b_points(), n);
  const bool a_outer = d.a_points().size() < d.b_points().size();
  PairSearch search(table, a_outer ? a : b, a_outer ? b : a, budget.node_budget);

  auto assemble = [&] {
    dnf::Form outer = collect(table, search.outer_terms());
    dnf::Form inner = collect(table, search.inner_terms());
    return a_outer ? PairSolution(std::move(outer), std::move(inner)) : PairSolution(std::move(inner), std::move(outer));
  };

  // Both sides need a term with at least one literal: the empty term would
  // cover the other side's points.
  std::size_t total = 2;
  const std::size_t limit = std::min(best_cost, budget.max_total_regularizer + 1);
  try {
    for (; total < limit; ++total) {
      if (reg == Regularizer::length) {
        if (search.length_feasible(total)) return assemble();
      } else {
        for (std::size_t d_outer = 1; d_outer < total; ++d_outer) {
          if (search.depth_feasible(d_outer, total - d_outer)) return assemble();
        }
      }
    }
  } catch (const NodeBudgetExhausted&) {
    throw BudgetExceeded<PairSolution>(best, best_cost, total);
  }
  if (best_cost > budget.max_total_regularizer) throw BudgetExceeded<PairSolution>(best, best_cost, total);
  return best;
}

}  // namespace partsep::solvers
