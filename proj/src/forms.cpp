#include "partsep/forms.hpp"

namespace partsep {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::dnf: return "dnf";
    case Family::bdt: return "bdt";
    case Family::obdd: return "obdd";
  }
  return "?";
}

std::string_view to_string(Regularizer r) {
  switch (r) {
    case Regularizer::length: return "length";
    case Regularizer::depth: return "depth";
    case Regularizer::nodes: return "nodes";
    case Regularizer::interior: return "interior";
    case Regularizer::width: return "width";
  }
  return "?";
}

Family family_from_string(std::string_view s) {
  if (s == "dnf") return Family::dnf;
  if (s == "bdt") return Family::bdt;
  if (s == "obdd") return Family::obdd;
  throw Error(Errc::invalid_params, "unknown family '" + std::string(s) + "'");
}

Regularizer regularizer_from_string(std::string_view s) {
  if (s == "length") return Regularizer::length;
  if (s == "depth") return Regularizer::depth;
  if (s == "nodes") return Regularizer::nodes;
  if (s == "interior") return Regularizer::interior;
  if (s == "width") return Regularizer::width;
  throw Error(Errc::invalid_params, "unknown regularizer '" + std::string(s) + "'");
}

bool applies_to(Regularizer r, Family f) {
  switch (f) {
    case Family::dnf: return r == Regularizer::length || r == Regularizer::depth;
    case Family::bdt: return r == Regularizer::nodes || r == Regularizer::depth;
    case Family::obdd: return r == Regularizer::interior || r == Regularizer::width;
  }
  return false;
}

Family family_of(const Form& form) { return static_cast<Family>(form.index()); }

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

bool eval(const Form& form, const Assignment& x) {
  return std::visit(Overloaded{[&](const dnf::Form& f) { return dnf::eval(f, x); },
                               [&](const bdt::Tree& t) { return bdt::eval(t, x); },
                               [&](const obdd::Diagram& b) { return obdd::eval(b, x); }},
                    form);
}

std::size_t regularize(const Form& form, Regularizer r) {
  const Family f = family_of(form);
  if (!applies_to(r, f)) {
    throw Error(Errc::invalid_params,
                "regularizer '" + std::string(to_string(r)) + "' does not apply to " + std::string(to_string(f)));
  }
  return std::visit(Overloaded{[&](const dnf::Form& d) { return r == Regularizer::length ? dnf::length(d) : dnf::depth(d); },
                               [&](const bdt::Tree& t) { return r == Regularizer::nodes ? bdt::node_count(t) : bdt::depth(t); },
                               [&](const obdd::Diagram& b) {
                                 return r == Regularizer::interior ? obdd::interior_nodes(b) : obdd::width(b);
                               }},
                    form);
}

BitVec truth_table(const Form& form, std::size_t n) {
  return std::visit(Overloaded{[&](const dnf::Form& d) { return dnf::truth_table(d, n); },
                               [&](const bdt::Tree& t) { return bdt::truth_table(t, n); },
                               [&](const obdd::Diagram& b) {
                                 if (b.num_vars() != n) throw Error(Errc::universe_mismatch, "diagram width differs");
                                 return obdd::truth_table(b);
                               }},
                    form);
}

PairSolution::PairSolution(Form theta_in, Form theta_prime_in)
    : theta(std::move(theta_in)), theta_prime(std::move(theta_prime_in)) {
  if (theta.index() != theta_prime.index()) throw Error(Errc::invalid_params, "pair forms belong to different families");
}

TriValue eval_partial(const PairSolution& pair, const Assignment& x) {
  const bool one = eval(pair.theta, x);
  const bool zero = eval(pair.theta_prime, x);
  if (one && zero) throw Error(Errc::contradictory_pair, "both forms hold at " + x.to_string());
  if (one) return TriValue::one;
  if (zero) return TriValue::zero;
  return TriValue::undefined;
}

nlohmann::json form_to_json(const Form& form, const VarUniverse& universe) {
  return std::visit(Overloaded{[&](const dnf::Form& d) { return dnf::to_json(d, universe); },
                               [&](const bdt::Tree& t) { return bdt::to_json(t, universe); },
                               [&](const obdd::Diagram& b) { return obdd::to_json(b, universe); }},
                    form);
}

Form form_from_json(const nlohmann::json& j, Family family, const VarUniverse& universe) {
  switch (family) {
    case Family::dnf: return dnf::from_json(j, universe);
    case Family::bdt: return bdt::from_json(j, universe);
    case Family::obdd: return obdd::from_json(j, universe);
  }
  throw Error(Errc::parse_error, "unknown family");
}

nlohmann::json pair_to_json(const PairSolution& pair, const VarUniverse& universe) {
  return {{"family", to_string(pair.family())},
          {"theta", form_to_json(pair.theta, universe)},
          {"theta_prime", form_to_json(pair.theta_prime, universe)}};
}

PairSolution pair_from_json(const nlohmann::json& j, const VarUniverse& universe) {
  require_known_fields(j, {"family", "theta", "theta_prime", "cost", "lower_bound"}, "solution");
  if (!j.contains("family") || !j["family"].is_string()) throw Error(Errc::parse_error, "solution: missing 'family'");
  if (!j.contains("theta") || !j.contains("theta_prime")) {
    throw Error(Errc::parse_error, "solution: 'theta' and 'theta_prime' are required");
  }
  Family family;
  try {
    family = family_from_string(j["family"].get<std::string>());
  } catch (const Error& e) {
    throw Error(Errc::parse_error, e.what());
  }
  return PairSolution(form_from_json(j["theta"], family, universe), form_from_json(j["theta_prime"], family, universe));
}

}  // namespace partsep
