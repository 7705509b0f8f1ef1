#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "partsep/core.hpp"

namespace partsep::dnf {

// Conjunction of positive literals `pos` and negated literals `neg`.
// Both lists are sorted and disjoint.
struct Term {
  std::vector<VarIndex> pos;
  std::vector<VarIndex> neg;

  // Sorts, deduplicates and checks pos and neg are disjoint.
  static Term make(std::vector<VarIndex> pos, std::vector<VarIndex> neg);

  std::size_t size() const { return pos.size() + neg.size(); }
  bool satisfied_by(const Assignment& x) const;
  // True iff some assignment satisfies both terms.
  bool compatible_with(const Term& other) const;

  friend bool operator==(const Term&, const Term&) = default;
  // Shorter terms first, then lexicographic on (pos, neg).
  friend bool operator<(const Term& a, const Term& b);
};

// A DNF: a set of terms, kept sorted and duplicate-free.
class Form {
 public:
  Form() = default;
  explicit Form(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  friend bool operator==(const Form&, const Form&) = default;

 private:
  std::vector<Term> terms_;
};

bool eval(const Form& theta, const Assignment& x);

// Total literal count.
std::size_t length(const Form& theta);
// Largest term size; 0 for the empty DNF.
std::size_t depth(const Form& theta);

// True iff no assignment satisfies both DNFs. Polynomial: the product is
// non-zero iff some pair of terms is jointly satisfiable.
bool pair_noncontradictory(const Form& theta, const Form& theta_prime);

// Satisfying set of a term over all 2^n points (n <= 24).
BitVec satisfying_set(const Term& t, std::size_t n);
// Truth table of a DNF over all 2^n points (n <= 24).
BitVec truth_table(const Form& theta, std::size_t n);

// All prime implicants of the total function whose on-set is exactly
// `on_set`. Requires a non-empty on-set and at most 64 variables.
std::vector<Term> prime_implicants(const VarUniverse& universe, const std::vector<Assignment>& on_set);

nlohmann::json to_json(const Form& theta, const VarUniverse& universe);
Form from_json(const nlohmann::json& j, const VarUniverse& universe);

// Human-readable form such as "x1 & !x2 | x3"; "0" for the empty DNF and
// "1" for the empty term.
std::string to_string(const Form& theta, const VarUniverse& universe);

}  // namespace partsep::dnf
