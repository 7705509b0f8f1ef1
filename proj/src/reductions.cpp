#include "partsep/reductions.hpp"

#include <algorithm>
#include <map>

#include "partsep/solvers.hpp"

namespace partsep::reductions {

std::string set_variable_name(std::size_t i) { return "s" + std::to_string(i + 1); }

HausslerData haussler_data(const setcover::Instance& inst) {
  if (inst.num_sets() == 0) throw Error(Errc::invalid_params, "Haussler data needs a non-empty family");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < inst.num_sets(); ++i) names.push_back(set_variable_name(i));
  VarUniverse universe(std::move(names));

  const std::size_t n = inst.num_sets();
  std::vector<Assignment> incidence(inst.num_elements(), Assignment(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (auto e : inst.set(i)) incidence[e].set(i, true);
  }
  const Assignment zero(n);
  for (std::size_t u = 0; u < incidence.size(); ++u) {
    if (incidence[u] == zero) {
      throw Error(Errc::uncoverable, "element '" + inst.elements()[u] + "' is in no set");
    }
  }

  HausslerData h{make_labeled_data(std::move(universe), incidence, {zero}), {}};
  for (const auto& x : incidence) {
    const auto& a = h.data.a_points();
    h.element_point.push_back(static_cast<std::size_t>(std::lower_bound(a.begin(), a.end(), x) - a.begin()));
  }
  return h;
}

PairSolution cover_to_dnf_pair(const setcover::Cover& cover, const setcover::Instance& inst) {
  if (!setcover::is_feasible(inst, cover)) throw Error(Errc::infeasible_input, "the given sets do not cover U");
  std::vector<dnf::Term> singles;
  std::vector<VarIndex> all;
  for (auto i : cover.chosen) {
    singles.push_back(dnf::Term::make({static_cast<VarIndex>(i)}, {}));
    all.push_back(static_cast<VarIndex>(i));
  }
  return PairSolution(dnf::Form(std::move(singles)), dnf::Form({dnf::Term::make({}, std::move(all))}));
}

setcover::Cover dnf_pair_to_cover(const dnf::Form& theta, const dnf::Form& theta_prime,
                                  const setcover::Instance& inst) {
  const auto h = haussler_data(inst);
  const auto check = solvers::verify_pair(h.data, PairSolution(theta, theta_prime));
  if (!check.feasible) {
    throw Error(Errc::infeasible_pair,
                "pair is not feasible on the Haussler data (" +
                    std::string(solvers::to_string(check.violations.front().kind)) + ")");
  }

  std::vector<std::size_t> sigma0;
  for (const auto& t : theta.terms()) {
    for (auto v : t.pos) sigma0.push_back(v);
  }
  const auto cover0 = setcover::Cover::of(std::move(sigma0));

  // Terms are ordered by size then lexicographically, so the first
  // all-negative term is the smallest one.
  setcover::Cover cover1;
  for (const auto& t : theta_prime.terms()) {
    if (t.pos.empty()) {
      cover1 = setcover::Cover::of({t.neg.begin(), t.neg.end()});
      break;
    }
  }
  return cover1.size() < cover0.size() ? cover1 : cover0;
}

Form negate(const Form& form) {
  if (const auto* t = std::get_if<bdt::Tree>(&form)) return bdt::negate(*t);
  if (const auto* b = std::get_if<obdd::Diagram>(&form)) return obdd::negate(*b);
  throw Error(Errc::invalid_params, "DNFs are not polynomially negatable");
}

PairSolution negatable_h(const LabeledData& d, const Form& theta) {
  if (family_of(theta) == Family::dnf) throw Error(Errc::invalid_params, "DNFs are not polynomially negatable");
  if (!solvers::verify_separation(d, theta).feasible) {
    throw Error(Errc::infeasible_input, "form does not separate A from B");
  }
  return PairSolution(theta, negate(theta));
}

Form negatable_g(const LabeledData& d, const PairSolution& pair, Regularizer reg) {
  if (pair.family() == Family::dnf) throw Error(Errc::invalid_params, "DNFs are not polynomially negatable");
  if (!applies_to(reg, pair.family())) throw Error(Errc::invalid_params, "regularizer does not apply to this family");
  if (!solvers::verify_pair(d, pair).feasible) throw Error(Errc::infeasible_pair, "pair is not feasible");
  Form flipped = negate(pair.theta_prime);
  return regularize(pair.theta, reg) <= regularize(flipped, reg) ? pair.theta : flipped;
}

RatioReport make_ratio_report(std::size_t feasible_cost, std::size_t optimal_cost, std::size_t mapped_cost,
                              std::size_t target_optimal_cost, std::size_t lifted_target_cost) {
  if (optimal_cost == 0 || target_optimal_cost == 0) {
    throw Error(Errc::invalid_params, "optimal costs must be positive");
  }
  RatioReport r;
  r.feasible_cost = feasible_cost;
  r.optimal_cost = optimal_cost;
  r.mapped_cost = mapped_cost;
  r.target_optimal_cost = target_optimal_cost;
  r.lifted_target_cost = lifted_target_cost;
  r.ratio_lhs = Rational(static_cast<std::int64_t>(mapped_cost), static_cast<std::int64_t>(target_optimal_cost));
  r.ratio_rhs = Rational(static_cast<std::int64_t>(feasible_cost), static_cast<std::int64_t>(optimal_cost));
  r.inequality_holds = r.ratio_lhs <= r.ratio_rhs;
  r.shifted_rhs = r.ratio_rhs;
  r.shifted_holds = r.inequality_holds;
  return r;
}

RatioReport ratio_transfer_report(const setcover::Instance& inst, const PairSolution& feasible,
                                  const PairSolution& optimal_pair, const setcover::Cover& optimal_cover,
                                  Regularizer reg) {
  if (reg != Regularizer::length && reg != Regularizer::depth) {
    throw Error(Errc::invalid_params, "DNF reports use the length or depth regularizer");
  }
  if (feasible.family() != Family::dnf || optimal_pair.family() != Family::dnf) {
    throw Error(Errc::invalid_params, "set cover reports need DNF pairs");
  }
  if (!setcover::is_feasible(inst, optimal_cover)) throw Error(Errc::infeasible_input, "optimal cover does not cover U");
  const auto h = haussler_data(inst);
  if (!solvers::verify_pair(h.data, optimal_pair).feasible) {
    throw Error(Errc::infeasible_pair, "optimal pair is not feasible");
  }
  const auto mapped = dnf_pair_to_cover(std::get<dnf::Form>(feasible.theta), std::get<dnf::Form>(feasible.theta_prime),
                                        inst);
  const auto lifted = cover_to_dnf_pair(optimal_cover, inst);
  auto r = make_ratio_report(feasible.cost(reg), optimal_pair.cost(reg), mapped.size(), optimal_cover.size(),
                             lifted.cost(reg));
  if (reg == Regularizer::depth) {
    r.shifted_rhs = Rational(static_cast<std::int64_t>(r.feasible_cost) - 1, static_cast<std::int64_t>(r.optimal_cost) - 1);
    r.shifted_holds = r.ratio_lhs <= r.shifted_rhs;
  }
  return r;
}

RatioReport ratio_transfer_report(const LabeledData& d, const PairSolution& feasible, const PairSolution& optimal_pair,
                                  const Form& optimal_separation, Regularizer reg) {
  if (!solvers::verify_pair(d, optimal_pair).feasible) {
    throw Error(Errc::infeasible_pair, "optimal pair is not feasible");
  }
  const Form mapped = negatable_g(d, feasible, reg);
  const auto lifted = negatable_h(d, optimal_separation);
  return make_ratio_report(feasible.cost(reg), optimal_pair.cost(reg), regularize(mapped, reg),
                           regularize(optimal_separation, reg), lifted.cost(reg));
}

nlohmann::json to_json(const RatioReport& r) {
  auto rat = [](const Rational& q) {
    return nlohmann::json{{"num", q.numerator()},
                          {"den", q.denominator()},
                          {"decimal", static_cast<double>(q.numerator()) / static_cast<double>(q.denominator())}};
  };
  return {{"feasible_cost", r.feasible_cost},         {"optimal_cost", r.optimal_cost},
          {"mapped_cost", r.mapped_cost},             {"target_optimal_cost", r.target_optimal_cost},
          {"lifted_target_cost", r.lifted_target_cost}, {"ratio_lhs", rat(r.ratio_lhs)},
          {"ratio_rhs", rat(r.ratio_rhs)},            {"inequality_holds", r.inequality_holds},
          {"shifted_rhs", rat(r.shifted_rhs)},        {"shifted_holds", r.shifted_holds}};
}

}  // namespace partsep::reductions
