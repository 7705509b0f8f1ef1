#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "partsep/bitvec.hpp"
#include "partsep/error.hpp"

namespace partsep {

using VarIndex = std::uint32_t;

// Ordered, duplicate-free list of variable names. The order is the variable
// order used by every form family (and the level order of OBDDs).
class VarUniverse {
 public:
  VarUniverse() = default;
  explicit VarUniverse(std::vector<std::string> names);
  // Variables named "x1" .. "xn".
  static VarUniverse numbered(std::size_t n, std::string_view prefix = "x");

  std::size_t size() const { return names_.size(); }
  const std::string& name(VarIndex i) const;
  const std::vector<std::string>& names() const { return names_; }
  VarIndex index_of(std::string_view name) const;
  bool contains(std::string_view name) const;

  friend bool operator==(const VarUniverse& a, const VarUniverse& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VarIndex> index_;
};

// A point of {0,1}^J, bit j is the value of variable j.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t n) : bits_(n) {}
  explicit Assignment(BitVec bits) : bits_(std::move(bits)) {}
  Assignment(std::initializer_list<int> bits);

  // Point whose bit j is bit j of `index` (requires n <= 63).
  static Assignment from_index(std::uint64_t index, std::size_t n);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t j) const { return bits_.test(j); }
  void set(std::size_t j, bool v) { bits_.set(j, v); }
  const BitVec& bits() const { return bits_; }

  // Inverse of from_index; requires size() <= 63.
  std::uint64_t index() const;

  friend bool operator==(const Assignment& a, const Assignment& b) { return a.bits_ == b.bits_; }
  friend bool operator<(const Assignment& a, const Assignment& b) { return a.bits_ < b.bits_; }

  std::string to_string() const { return bits_.to_string(); }

 private:
  BitVec bits_;
};

struct AssignmentHash {
  std::size_t operator()(const Assignment& a) const { return a.bits().hash(); }
};

enum class TriValue { one, zero, undefined };

std::string_view to_string(TriValue v);

// Boolean labeled data (J, A, B). A and B are stored sorted and deduplicated.
class LabeledData {
 public:
  const VarUniverse& universe() const { return universe_; }
  std::size_t num_vars() const { return universe_.size(); }
  const std::vector<Assignment>& a_points() const { return a_; }
  const std::vector<Assignment>& b_points() const { return b_; }

  bool in_a(const Assignment& x) const;
  bool in_b(const Assignment& x) const;

  // The labeled data with A and B exchanged.
  LabeledData swapped() const;

  friend bool operator==(const LabeledData&, const LabeledData&) = default;

 private:
  friend LabeledData make_labeled_data(VarUniverse, std::vector<Assignment>, std::vector<Assignment>);

  VarUniverse universe_;
  std::vector<Assignment> a_;
  std::vector<Assignment> b_;
};

// Validates and constructs labeled data. Throws empty_label_set,
// overlapping_labels or length_mismatch.
LabeledData make_labeled_data(VarUniverse universe, std::vector<Assignment> a, std::vector<Assignment> b);

// Set of point indices (over 2^n) for a list of assignments; n <= 24.
BitVec point_set(const std::vector<Assignment>& points, std::size_t n);

nlohmann::json instance_to_json(const LabeledData& d);
LabeledData instance_from_json(const nlohmann::json& j);
std::string serialize_instance(const LabeledData& d);
LabeledData parse_instance(std::string_view text);

// Parses JSON text, mapping syntax errors to Errc::parse_error with the
// line and column of the failure.
nlohmann::json parse_json_text(std::string_view text);

// Rejects any key of `j` that is not in `allowed`.
void require_known_fields(const nlohmann::json& j, std::initializer_list<std::string_view> allowed,
                          std::string_view where);

}  // namespace partsep
