#include "partsep/core.hpp"

#include <algorithm>
#include <sstream>

namespace partsep {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::empty_label_set: return "EmptyLabelSet";
    case Errc::overlapping_labels: return "OverlappingLabels";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::contradictory_pair: return "ContradictoryPair";
    case Errc::parse_error: return "ParseError";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::malformed_diagram: return "MalformedDiagram";
    case Errc::uncoverable: return "Uncoverable";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::infeasible_input: return "InfeasibleInput";
    case Errc::infeasible_pair: return "InfeasiblePair";
    case Errc::invalid_params: return "InvalidParams";
    case Errc::config_error: return "ConfigError";
    case Errc::verification_failure: return "VerificationFailure";
    case Errc::universe_mismatch: return "UniverseMismatch";
  }
  return "Unknown";
}

std::string_view to_string(TriValue v) {
  switch (v) {
    case TriValue::one: return "1";
    case TriValue::zero: return "0";
    case TriValue::undefined: return "undefined";
  }
  return "?";
}

VarUniverse::VarUniverse(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw Error(Errc::invalid_params, "variable universe must be non-empty");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], static_cast<VarIndex>(i)).second) {
      throw Error(Errc::invalid_params, "duplicate variable '" + names_[i] + "'");
    }
  }
}

VarUniverse VarUniverse::numbered(std::size_t n, std::string_view prefix) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return VarUniverse(std::move(names));
}

const std::string& VarUniverse::name(VarIndex i) const {
  if (i >= names_.size()) throw Error(Errc::index_out_of_range, "variable index " + std::to_string(i));
  return names_[i];
}

VarIndex VarUniverse::index_of(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw Error(Errc::index_out_of_range, "unknown variable '" + std::string(name) + "'");
  return it->second;
}

bool VarUniverse::contains(std::string_view name) const { return index_.count(std::string(name)) != 0; }

Assignment::Assignment(std::initializer_list<int> bits) : bits_(bits.size()) {
  std::size_t j = 0;
  for (int b : bits) bits_.set(j++, b != 0);
}

Assignment Assignment::from_index(std::uint64_t index, std::size_t n) {
  Assignment x(n);
  for (std::size_t j = 0; j < n; ++j) x.bits_.set(j, (index >> j) & 1u);
  return x;
}

std::uint64_t Assignment::index() const {
  if (bits_.size() > 63) throw Error(Errc::index_out_of_range, "assignment too wide for a point index");
  return bits_.words().empty() ? 0 : bits_.words()[0];
}

bool LabeledData::in_a(const Assignment& x) const { return std::binary_search(a_.begin(), a_.end(), x); }
bool LabeledData::in_b(const Assignment& x) const { return std::binary_search(b_.begin(), b_.end(), x); }

LabeledData LabeledData::swapped() const {
  LabeledData d = *this;
  std::swap(d.a_, d.b_);
  return d;
}

namespace {

void sort_unique(std::vector<Assignment>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

LabeledData make_labeled_data(VarUniverse universe, std::vector<Assignment> a, std::vector<Assignment> b) {
  if (universe.size() == 0) throw Error(Errc::invalid_params, "variable universe must be non-empty");
  if (a.empty()) throw Error(Errc::empty_label_set, "A is empty");
  if (b.empty()) throw Error(Errc::empty_label_set, "B is empty");
  for (const auto* side : {&a, &b}) {
    for (const auto& x : *side) {
      if (x.size() != universe.size()) {
        throw Error(Errc::length_mismatch, "assignment of length " + std::to_string(x.size()) +
                                               " in a universe of " + std::to_string(universe.size()) +
                                               " variables");
      }
    }
  }
  sort_unique(a);
  sort_unique(b);
  std::vector<Assignment> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  if (!both.empty()) throw Error(Errc::overlapping_labels, "point " + both.front().to_string() + " is in A and B");

  LabeledData d;
  d.universe_ = std::move(universe);
  d.a_ = std::move(a);
  d.b_ = std::move(b);
  return d;
}

BitVec point_set(const std::vector<Assignment>& points, std::size_t n) {
  if (n > 24) throw Error(Errc::invalid_params, "point sets are limited to 24 variables");
  BitVec s(std::size_t{1} << n);
  for (const auto& x : points) s.set(x.index());
  return s;
}

// JSON -----------------------------------------------------------------------

nlohmann::json parse_json_text(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into line/column for the diagnostic.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << "line " << line << ", column " << col << ": " << e.what();
    throw Error(Errc::parse_error, msg.str());
  }
}

void require_known_fields(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                          std::string_view where) {
  if (!j.is_object()) throw Error(Errc::parse_error, std::string(where) + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(Errc::parse_error, std::string(where) + ": unknown field '" + key + "'");
    }
  }
}

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key, std::string_view where) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(Errc::parse_error, std::string(where) + ": missing field '" + key + "'");
  return *it;
}

std::vector<Assignment> points_from_json(const nlohmann::json& j, const char* key, std::size_t n) {
  const auto& arr = field(j, key, "instance");
  if (!arr.is_array()) throw Error(Errc::parse_error, std::string("field '") + key + "': expected an array");
  std::vector<Assignment> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& row = arr[i];
    const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
    if (!row.is_array()) throw Error(Errc::parse_error, where + ": expected an array of bits");
    if (row.size() != n) {
      throw Error(Errc::length_mismatch, where + ": has " + std::to_string(row.size()) + " bits, expected " +
                                             std::to_string(n));
    }
    Assignment x(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& bit = row[k];
      if (!bit.is_number_integer() || (bit.get<int>() != 0 && bit.get<int>() != 1)) {
        throw Error(Errc::parse_error, where + "[" + std::to_string(k) + "]: expected 0 or 1");
      }
      x.set(k, bit.get<int>() == 1);
    }
    out.push_back(std::move(x));
  }
  return out;
}

nlohmann::json points_to_json(const std::vector<Assignment>& pts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& x : pts) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < x.size(); ++k) row.push_back(x[k] ? 1 : 0);
    arr.push_back(std::move(row));
  }
  return arr;
}

}  // namespace

nlohmann::json instance_to_json(const LabeledData& d) {
  return {{"vars", d.universe().names()}, {"A", points_to_json(d.a_points())}, {"B", points_to_json(d.b_points())}};
}

LabeledData instance_from_json(const nlohmann::json& j) {
  require_known_fields(j, {"vars", "A", "B"}, "instance");
  const auto& vars = field(j, "vars", "instance");
  if (!vars.is_array()) throw Error(Errc::parse_error, "field 'vars': expected an array of strings");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!vars[i].is_string()) throw Error(Errc::parse_error, "vars[" + std::to_string(i) + "]: expected a string");
    names.push_back(vars[i].get<std::string>());
  }
  VarUniverse universe(std::move(names));
  const std::size_t n = universe.size();
  auto a = points_from_json(j, "A", n);
  auto b = points_from_json(j, "B", n);
  return make_labeled_data(std::move(universe), std::move(a), std::move(b));
}

std::string serialize_instance(const LabeledData& d) { return instance_to_json(d).dump(); }

LabeledData parse_instance(std::string_view text) { return instance_from_json(parse_json_text(text)); }

}  // namespace partsep
