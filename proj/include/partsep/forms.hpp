#pragma once

#include <cstddef>
#include <string_view>
#include <variant>

#include "partsep/bdt.hpp"
#include "partsep/core.hpp"
#include "partsep/dnf.hpp"
#include "partsep/obdd.hpp"

namespace partsep {

enum class Family { dnf, bdt, obdd };

// Complexity measures. `depth` means DNF depth for DNFs and tree depth for
// decision trees; `nodes` counts all tree nodes (leaves included).
enum class Regularizer { length, depth, nodes, interior, width };

std::string_view to_string(Family f);
std::string_view to_string(Regularizer r);
Family family_from_string(std::string_view s);
Regularizer regularizer_from_string(std::string_view s);

// True iff `r` is defined for family `f`.
bool applies_to(Regularizer r, Family f);

using Form = std::variant<dnf::Form, bdt::Tree, obdd::Diagram>;

Family family_of(const Form& form);
bool eval(const Form& form, const Assignment& x);
// Throws invalid_params when `r` does not apply to the form's family.
std::size_t regularize(const Form& form, Regularizer r);
// Truth table over 2^n points.
BitVec truth_table(const Form& form, std::size_t n);

// A candidate partial-function representation (theta, theta'): theta marks
// the points valued 1, theta' the points valued 0.
struct PairSolution {
  Form theta;
  Form theta_prime;

  // Throws invalid_params if the two forms belong to different families.
  PairSolution(Form theta, Form theta_prime);

  Family family() const { return family_of(theta); }
  std::size_t cost(Regularizer r) const { return regularize(theta, r) + regularize(theta_prime, r); }
  PairSolution swapped() const { return PairSolution(theta_prime, theta); }

  friend bool operator==(const PairSolution&, const PairSolution&) = default;
};

// ONE where theta holds, ZERO where theta' holds, UNDEFINED elsewhere.
// Throws contradictory_pair when both hold at x.
TriValue eval_partial(const PairSolution& pair, const Assignment& x);

nlohmann::json form_to_json(const Form& form, const VarUniverse& universe);
Form form_from_json(const nlohmann::json& j, Family family, const VarUniverse& universe);

// {"family": ..., "theta": <form>, "theta_prime": <form>}
nlohmann::json pair_to_json(const PairSolution& pair, const VarUniverse& universe);
PairSolution pair_from_json(const nlohmann::json& j, const VarUniverse& universe);

}  // namespace partsep
