#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "partsep/obdd.hpp"
#include "partsep/reductions.hpp"
#include "partsep/solvers.hpp"

using namespace partsep;
using obdd::Diagram;
using obdd::kOne;
using obdd::kZero;
using obdd::node_ref;

namespace {

Diagram single(std::size_t n, VarIndex v, obdd::Ref low, obdd::Ref high) { return Diagram(n, {{v, low, high}}, node_ref(0)); }

// x1 XOR x2 with a duplicated second-level node.
Diagram unreduced_xor() {
  return Diagram(2,
                 {{0, node_ref(1), node_ref(3)}, {1, kZero, kOne}, {1, kZero, kOne}, {1, kOne, kZero}},
                 node_ref(0));
}

}  // namespace

TEST_CASE("evaluation") {
  CHECK(eval(Diagram::terminal(2, true), Assignment{0, 1}));
  const Diagram s = single(1, 0, kZero, kOne);
  CHECK(eval(s, Assignment{1}));
  CHECK_FALSE(eval(s, Assignment{0}));
  CHECK_THROWS_AS(eval(s, Assignment{1, 0}), Error);
}

TEST_CASE("construction rejects malformed diagrams") {
  auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::invalid_params;
  };
  CHECK(code([] { Diagram(2, {{0, node_ref(5), kOne}}, node_ref(0)); }) == Errc::malformed_diagram);
  CHECK(code([] { Diagram(2, {{1, node_ref(1), kOne}, {0, kZero, kOne}}, node_ref(0)); }) == Errc::malformed_diagram);
  CHECK(code([] { Diagram(1, {{3, kZero, kOne}}, node_ref(0)); }) == Errc::malformed_diagram);
}

TEST_CASE("reduction") {
  const Diagram redundant = single(1, 0, kOne, kOne);
  CHECK(obdd::reduce(redundant) == Diagram::terminal(1, true));

  const Diagram dup(2, {{0, node_ref(1), node_ref(2)}, {1, kZero, kOne}, {1, kZero, kOne}}, node_ref(0));
  CHECK(obdd::reduce(dup) == single(2, 1, kZero, kOne));

  const Diagram x = obdd::reduce(unreduced_xor());
  CHECK(obdd::interior_nodes(x) == 3);
  CHECK(obdd::width(x) == 2);
  CHECK(obdd::truth_table(x) == obdd::truth_table(unreduced_xor()));
  CHECK(obdd::reduce(x) == x);
  CHECK(obdd::is_reduced(x));
  CHECK_FALSE(obdd::is_reduced(unreduced_xor()));
}

TEST_CASE("sizes") {
  CHECK(obdd::interior_nodes(Diagram::terminal(3, false)) == 0);
  CHECK(obdd::width(Diagram::terminal(3, false)) == 0);
  CHECK(obdd::interior_nodes(single(1, 0, kZero, kOne)) == 1);
  CHECK(obdd::width(single(1, 0, kZero, kOne)) == 1);
}

TEST_CASE("negation swaps terminals") {
  CHECK(obdd::negate(Diagram::terminal(1, true)) == Diagram::terminal(1, false));
  CHECK(obdd::negate(single(1, 0, kZero, kOne)) == single(1, 0, kOne, kZero));
}

TEST_CASE("tables, canonicity and negation on random functions") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 150; ++i) {
    const std::size_t n = 1 + rng() % 8;
    const auto table = oracle::random_table(rng, n);
    const Diagram b = obdd::from_truth_table(n, oracle::to_bitvec(table));
    REQUIRE(obdd::truth_table(b) == oracle::to_bitvec(table));
    CHECK(obdd::is_reduced(b));
    CHECK(obdd::interior_nodes(b) == oracle::brute_obdd_interior(table, n));

    // canonicity: same table -> same diagram; different table -> different
    auto other = table;
    CHECK(obdd::from_truth_table(n, oracle::to_bitvec(other)) == b);
    const std::size_t flip = rng() % table.size();
    other[flip] = !other[flip];
    CHECK_FALSE(obdd::from_truth_table(n, oracle::to_bitvec(other)) == b);

    const Diagram nb = obdd::negate(b);
    CHECK(obdd::negate(nb) == b);
    CHECK((obdd::truth_table(nb) ^ obdd::truth_table(b)).all());
    CHECK(obdd::interior_nodes(nb) == obdd::interior_nodes(b));
    CHECK(obdd::width(nb) == obdd::width(b));
  }
}

TEST_CASE("build separates") {
  const auto j1 = VarUniverse::numbered(1);
  CHECK(obdd::build(make_labeled_data(j1, {{1}}, {{0}})) == single(1, 0, kZero, kOne));

  const auto inst = setcover::Instance({"1", "2"}, {{0}, {0, 1}});
  const auto h = reductions::haussler_data(inst);
  CHECK(solvers::verify_separation(h.data, obdd::build(h.data)).feasible);

  // A = X \ B: the diagram is the complement of the B indicator.
  const std::size_t n = 4;
  std::vector<Assignment> a, b;
  std::vector<bool> b_table(16, false);
  for (std::uint64_t p = 0; p < 16; ++p) {
    if (p == 3 || p == 12 || p == 9) {
      b.push_back(Assignment::from_index(p, n));
      b_table[p] = true;
    } else {
      a.push_back(Assignment::from_index(p, n));
    }
  }
  const Diagram built = obdd::build(make_labeled_data(VarUniverse::numbered(n), a, b));
  CHECK(built == obdd::negate(obdd::from_truth_table(n, oracle::to_bitvec(b_table))));
  CHECK(obdd::interior_nodes(built) == oracle::brute_obdd_interior(b_table, n));
}

TEST_CASE("JSON round trip") {
  const auto u = VarUniverse({"p", "q"});
  const Diagram x = obdd::reduce(unreduced_xor());
  const auto j = obdd::to_json(x, u);
  CHECK(j["family"] == "obdd");
  CHECK(obdd::from_json(j, u) == x);
  CHECK(obdd::from_json(obdd::to_json(Diagram::terminal(2, true), u), u) == Diagram::terminal(2, true));
  auto bad = j;
  bad["order"] = {"q", "p"};
  CHECK_THROWS_AS(obdd::from_json(bad, u), Error);
}
