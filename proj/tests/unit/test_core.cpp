#include <doctest.h>

#include <random>

#include "partsep/core.hpp"
#include "partsep/forms.hpp"
#include "partsep/solvers.hpp"

using namespace partsep;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::invalid_params;
}

}  // namespace

TEST_CASE("universe") {
  const auto u = VarUniverse::numbered(3);
  CHECK(u.size() == 3);
  CHECK(u.name(0) == "x1");
  CHECK(u.index_of("x3") == 2);
  CHECK_FALSE(u.contains("x4"));
  CHECK(code_of([] { VarUniverse({"a", "a"}); }) == Errc::invalid_params);
  CHECK(code_of([] { VarUniverse(std::vector<std::string>{}); }) == Errc::invalid_params);
}

TEST_CASE("make_labeled_data validates") {
  const auto j2 = VarUniverse::numbered(2);
  const auto j1 = VarUniverse::numbered(1);
  const auto d = make_labeled_data(j2, {{1, 0}}, {{0, 1}});
  CHECK(d.a_points().size() == 1);
  CHECK(d.in_a(Assignment{1, 0}));
  CHECK(d.in_b(Assignment{0, 1}));
  CHECK(code_of([&] { make_labeled_data(j1, {{1}}, {{1}}); }) == Errc::overlapping_labels);
  CHECK(code_of([&] { make_labeled_data(j1, {}, {{0}}); }) == Errc::empty_label_set);
  CHECK(code_of([&] { make_labeled_data(j1, {{1}}, {}); }) == Errc::empty_label_set);
  CHECK(code_of([&] { make_labeled_data(j1, {{1, 0}}, {{0}}); }) == Errc::length_mismatch);
}

TEST_CASE("duplicates are removed before the overlap check") {
  const auto d = make_labeled_data(VarUniverse::numbered(2), {{1, 0}, {1, 0}, {1, 1}}, {{0, 0}});
  CHECK(d.a_points().size() == 2);
}

TEST_CASE("eval_partial") {
  const auto u = VarUniverse::numbered(1);
  const PairSolution pair(dnf::Form({dnf::Term::make({0}, {})}), dnf::Form({dnf::Term::make({}, {0})}));
  CHECK(eval_partial(pair, Assignment{1}) == TriValue::one);
  CHECK(eval_partial(pair, Assignment{0}) == TriValue::zero);

  // A' output on the tight instance leaves (1,1,1) unclaimed.
  const auto tight = solvers::tight_instance(VarUniverse::numbered(3), 2);
  const auto approx = solvers::approx_min_length_dnf(tight);
  CHECK(eval_partial(approx, Assignment{1, 1, 1}) == TriValue::undefined);

  const PairSolution ones(dnf::Form({dnf::Term{}}), dnf::Form({dnf::Term{}}));
  CHECK(code_of([&] { eval_partial(ones, Assignment{0}); }) == Errc::contradictory_pair);
}

TEST_CASE("instance JSON round trip") {
  const auto d = make_labeled_data(VarUniverse({"p", "q"}), {{1, 0}}, {{0, 1}, {1, 1}});
  CHECK(parse_instance(serialize_instance(d)) == d);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 1 + rng() % 9;
    std::vector<Assignment> a, b;
    for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p) {
      const auto r = rng() % 3;
      if (r == 0) a.push_back(Assignment::from_index(p, n));
      if (r == 1) b.push_back(Assignment::from_index(p, n));
    }
    if (a.empty() || b.empty()) continue;
    const auto e = make_labeled_data(VarUniverse::numbered(n), a, b);
    CHECK(parse_instance(serialize_instance(e)) == e);
  }
}

TEST_CASE("instance parse errors") {
  CHECK(code_of([] { parse_instance(R"({"vars":["a"],"A":[[1]],"B":[[1]]})"); }) == Errc::overlapping_labels);
  CHECK(code_of([] { parse_instance(R"({"vars":["a"],"A":[[1]],"B":[[0]],"C":1})"); }) == Errc::parse_error);
  CHECK(code_of([] { parse_instance(R"({"vars":["a"],"A":[[1]],)"); }) == Errc::parse_error);
  CHECK(code_of([] { parse_instance(R"({"vars":["a"],"A":[[2]],"B":[[0]]})"); }) == Errc::parse_error);
  CHECK(code_of([] { parse_instance(R"({"vars":["a","b"],"A":[[1]],"B":[[0,0]]})"); }) == Errc::length_mismatch);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_json_text("{\n  \"vars\": [,\n}");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}
