#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "partsep/bdt.hpp"
#include "partsep/solvers.hpp"

using namespace partsep;
using bdt::Tree;

TEST_CASE("evaluation") {
  CHECK(eval(Tree::leaf(true), Assignment{0}));
  const Tree t = Tree::internal(0, Tree::leaf(false), Tree::leaf(true));
  CHECK(eval(t, Assignment{1}));
  CHECK_FALSE(eval(t, Assignment{0}));
  CHECK_THROWS_AS(eval(Tree::internal(3, Tree::leaf(false), Tree::leaf(true)), Assignment{1}), Error);
}

TEST_CASE("node count and depth") {
  CHECK(bdt::node_count(Tree::leaf(false)) == 1);
  CHECK(bdt::depth(Tree::leaf(false)) == 0);
  const Tree t = Tree::internal(0, Tree::leaf(false), Tree::leaf(true));
  CHECK(bdt::node_count(t) == 3);
  CHECK(bdt::depth(t) == 1);
  const Tree full = Tree::internal(0, t, Tree::internal(1, Tree::leaf(true), Tree::leaf(false)));
  CHECK(bdt::node_count(full) == 7);
  CHECK(bdt::depth(full) == 2);
  const Tree full2 = oracle::full_tree({false, true, true, false}, 2);
  CHECK(bdt::node_count(full2) == 7);
  CHECK(bdt::depth(full2) == 2);
  CHECK(bdt::leaf_count(full2) == 4);
  CHECK(bdt::internal_count(full2) == 3);
}

TEST_CASE("negation flips leaves") {
  CHECK(bdt::negate(Tree::leaf(true)) == Tree::leaf(false));
  CHECK(bdt::negate(Tree::internal(0, Tree::leaf(false), Tree::leaf(true))) ==
        Tree::internal(0, Tree::leaf(true), Tree::leaf(false)));

  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 10;
    const Tree t = oracle::random_tree(rng, n, n);
    const Tree nt = bdt::negate(t);
    CHECK(bdt::negate(nt) == t);
    CHECK(bdt::node_count(nt) == bdt::node_count(t));
    CHECK(bdt::depth(nt) == bdt::depth(t));
    CHECK((bdt::truth_table(t, n) ^ bdt::truth_table(nt, n)).all());
  }
}

TEST_CASE("inducer separates") {
  const auto j1 = VarUniverse::numbered(1);
  const Tree t = bdt::induce(make_labeled_data(j1, {{1}}, {{0}}));
  CHECK(t == Tree::internal(0, Tree::leaf(false), Tree::leaf(true)));

  const Tree s = bdt::induce(make_labeled_data(VarUniverse::numbered(2), {{1, 1}}, {{1, 0}}));
  CHECK(s.root().var == 1);

  const auto tight = solvers::tight_instance(VarUniverse::numbered(3), 2);
  CHECK(solvers::verify_separation(tight, bdt::induce(tight)).feasible);

  std::mt19937_64 rng(19);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + rng() % 8;
    std::vector<Assignment> a, b;
    for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p) {
      const auto r = rng() % 4;
      if (r == 0) a.push_back(Assignment::from_index(p, n));
      if (r == 1) b.push_back(Assignment::from_index(p, n));
    }
    if (a.empty() || b.empty()) continue;
    const auto d = make_labeled_data(VarUniverse::numbered(n), a, b);
    CHECK(solvers::verify_separation(d, bdt::induce(d)).feasible);
  }
}

TEST_CASE("JSON round trip") {
  const auto u = VarUniverse({"p", "q"});
  const Tree t = Tree::internal(1, Tree::leaf(false), Tree::internal(0, Tree::leaf(true), Tree::leaf(false)));
  CHECK(bdt::from_json(bdt::to_json(t, u), u) == t);
  CHECK(bdt::to_json(Tree::leaf(true), u) == nlohmann::json{{"leaf", 1}});
  CHECK_THROWS_AS(bdt::from_json(nlohmann::json::parse(R"({"var":"r","low":{"leaf":0},"high":{"leaf":1}})"), u),
                  Error);
}
