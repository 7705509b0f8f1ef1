#include "partsep/solvers.hpp"

#include <random>

#include "partsep/reductions.hpp"
#include "partsep/setcover.hpp"

namespace partsep::solvers {

std::string_view to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::exactness_a: return "exactness-A";
    case Violation::Kind::exactness_b: return "exactness-B";
    case Violation::Kind::contradiction: return "contradiction";
    case Violation::Kind::totality: return "totality";
    case Violation::Kind::universe: return "universe";
  }
  return "?";
}

namespace {

// Returns an error description if the form refers outside the universe.
std::optional<std::string> universe_problem(const Form& form, std::size_t n) {
  if (const auto* d = std::get_if<dnf::Form>(&form)) {
    for (const auto& t : d->terms()) {
      for (const auto* lits : {&t.pos, &t.neg}) {
        for (auto v : *lits) {
          if (v >= n) return "DNF literal on variable " + std::to_string(v);
        }
      }
    }
  } else if (const auto* t = std::get_if<bdt::Tree>(&form)) {
    for (const auto& node : t->nodes()) {
      if (!node.is_leaf && node.var >= n) return "tree tests variable " + std::to_string(node.var);
    }
  } else if (const auto* b = std::get_if<obdd::Diagram>(&form)) {
    if (b->num_vars() != n) return "diagram over " + std::to_string(b->num_vars()) + " variables";
  }
  return std::nullopt;
}

Assignment joint_witness(const dnf::Term& t, const dnf::Term& u, std::size_t n) {
  Assignment x(n);
  for (auto v : t.pos) x.set(v, true);
  for (auto v : u.pos) x.set(v, true);
  return x;
}

}  // namespace

Verification verify_pair(const LabeledData& d, const PairSolution& pair, const VerifyOptions& opts) {
  Verification out;
  const std::size_t n = d.num_vars();
  auto fail = [&](Violation::Kind kind, const std::optional<Assignment>& w, std::string detail) {
    out.feasible = false;
    auto& v = out.violations.emplace_back();
    v.kind = kind;
    if (w) v.witness = *w;
    v.detail = std::move(detail);
  };

  for (const auto* form : {&pair.theta, &pair.theta_prime}) {
    if (auto problem = universe_problem(*form, n)) fail(Violation::Kind::universe, std::nullopt, *problem);
  }
  if (!out.feasible) return out;

  for (const auto& x : d.a_points()) {
    if (!eval(pair.theta, x)) fail(Violation::Kind::exactness_a, x, "theta is 0 on a point of A");
  }
  for (const auto& x : d.b_points()) {
    if (!eval(pair.theta_prime, x)) fail(Violation::Kind::exactness_b, x, "theta' is 0 on a point of B");
  }

  const bool exhaustive = n <= opts.exhaustive_limit;
  if (pair.family() == Family::dnf) {
    const auto& f = std::get<dnf::Form>(pair.theta);
    const auto& g = std::get<dnf::Form>(pair.theta_prime);
    bool found = false;
    for (const auto& t : f.terms()) {
      for (const auto& u : g.terms()) {
        if (!found && t.compatible_with(u)) {
          fail(Violation::Kind::contradiction, joint_witness(t, u, n), "a pair of terms is jointly satisfiable");
          found = true;
        }
      }
    }
  }

  const bool need_tables = pair.family() != Family::dnf || opts.check_totality;
  if (!need_tables) return out;

  if (exhaustive) {
    const BitVec f = truth_table(pair.theta, n);
    const BitVec g = truth_table(pair.theta_prime, n);
    if (pair.family() != Family::dnf) {
      const BitVec both = f & g;
      if (both.any()) {
        fail(Violation::Kind::contradiction, Assignment::from_index(both.find_first(), n), "both forms hold");
      }
    }
    if (opts.check_totality) {
      const BitVec neither = ~(f | g);
      if (neither.any()) {
        fail(Violation::Kind::totality, Assignment::from_index(neither.find_first(), n), "neither form holds");
      }
    }
    return out;
  }

  out.sampled = true;
  std::mt19937_64 rng(opts.seed);
  std::bernoulli_distribution coin(0.5);
  bool contradiction_seen = false, gap_seen = false;
  for (std::size_t s = 0; s < opts.samples; ++s) {
    Assignment x(n);
    for (std::size_t j = 0; j < n; ++j) x.set(j, coin(rng));
    const bool f = eval(pair.theta, x);
    const bool g = eval(pair.theta_prime, x);
    if (pair.family() != Family::dnf && f && g && !contradiction_seen) {
      fail(Violation::Kind::contradiction, x, "both forms hold (sampled)");
      contradiction_seen = true;
    }
    if (opts.check_totality && !f && !g && !gap_seen) {
      fail(Violation::Kind::totality, x, "neither form holds (sampled)");
      gap_seen = true;
    }
  }
  return out;
}

Verification verify_separation(const LabeledData& d, const Form& form) {
  Verification out;
  if (auto problem = universe_problem(form, d.num_vars())) {
    out.feasible = false;
    out.violations.push_back(Violation{Violation::Kind::universe, std::nullopt, *problem});
    return out;
  }
  for (const auto& x : d.a_points()) {
    if (!eval(form, x)) {
      out.feasible = false;
      out.violations.push_back(Violation{Violation::Kind::exactness_a, x, "form is 0 on a point of A"});
    }
  }
  for (const auto& x : d.b_points()) {
    if (eval(form, x)) {
      out.feasible = false;
      out.violations.push_back(Violation{Violation::Kind::exactness_b, x, "form is 1 on a point of B"});
    }
  }
  return out;
}

CoverRule cover_rule_from_string(std::string_view s) {
  if (s == "count") return CoverRule::count;
  if (s == "length") return CoverRule::length;
  throw Error(Errc::invalid_params, "unknown cover rule '" + std::string(s) + "'");
}

std::string_view to_string(CoverRule r) { return r == CoverRule::count ? "count" : "length"; }

dnf::Form approx_min_length_dnf_total(const VarUniverse& universe, const std::vector<Assignment>& on_set,
                                      CoverRule rule) {
  if (on_set.empty()) throw Error(Errc::invalid_params, "on-set must be non-empty");
  std::vector<Assignment> points = on_set;
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  const auto primes = dnf::prime_implicants(universe, points);
  // The constant-1 function: its only prime implicant is the empty term.
  if (primes.size() == 1 && primes.front().size() == 0) return dnf::Form({primes.front()});

  std::vector<std::string> elements;
  for (std::size_t i = 0; i < points.size(); ++i) elements.push_back(std::to_string(i));
  std::vector<std::vector<std::size_t>> sets;
  std::vector<std::uint64_t> weights;
  for (const auto& t : primes) {
    std::vector<std::size_t> covered;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (t.satisfied_by(points[i])) covered.push_back(i);
    }
    sets.push_back(std::move(covered));
    weights.push_back(t.size());
  }
  if (rule == CoverRule::count) weights.clear();
  const setcover::Instance inst(std::move(elements), std::move(sets), std::move(weights));
  const auto cover = setcover::greedy(inst);

  std::vector<dnf::Term> chosen;
  for (auto i : cover.chosen) chosen.push_back(primes[i]);
  return dnf::Form(std::move(chosen));
}

PairSolution approx_min_length_dnf(const LabeledData& d, CoverRule rule) {
  return PairSolution(approx_min_length_dnf_total(d.universe(), d.a_points(), rule),
                      approx_min_length_dnf_total(d.universe(), d.b_points(), rule));
}

PairSolution negation_based_partial_solver(const LabeledData& d, Family family) {
  switch (family) {
    case Family::bdt: return reductions::negatable_h(d, bdt::induce(d));
    case Family::obdd: return reductions::negatable_h(d, obdd::build(d));
    case Family::dnf: break;
  }
  throw Error(Errc::invalid_params, "DNFs have no polynomial negation; use the exact or approx modes");
}

LabeledData tight_instance(const VarUniverse& universe, VarIndex k) {
  const std::size_t n = universe.size();
  if (n < 2) throw Error(Errc::invalid_params, "the tight instance needs at least two variables");
  if (k >= n) throw Error(Errc::index_out_of_range, "k = " + std::to_string(k) + " outside the universe");
  std::vector<Assignment> a, b;
  for (std::size_t i = 0; i < n; ++i) {
    Assignment e(n);
    e.set(i, true);
    (i == k ? b : a).push_back(std::move(e));
  }
  return make_labeled_data(universe, std::move(a), std::move(b));
}

}  // namespace partsep::solvers
