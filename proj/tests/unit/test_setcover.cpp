#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "partsep/bench.hpp"
#include "partsep/setcover.hpp"

using namespace partsep;
using setcover::Cover;
using setcover::Instance;

namespace {

std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace

TEST_CASE("greedy examples") {
  CHECK(setcover::greedy(Instance(names(3), {{0, 1, 2}})) == Cover::of({0}));
  CHECK(setcover::greedy(Instance(names(1), {{}, {0}})) == Cover::of({1}));

  const Instance bad(names(6), {{0, 1, 2, 3}, {0, 1, 4}, {2, 3, 5}, {4}, {5}});
  CHECK(setcover::greedy(bad).size() == 3);
  CHECK(setcover::exact(bad).size() == 2);
  CHECK(oracle::brute_cover_opt(bad) == 2);
}

TEST_CASE("exact examples") {
  const Instance inst(names(4), {{0, 1}, {2, 3}, {0, 2}, {3}});
  CHECK(setcover::exact(inst) == Cover::of({0, 1}));
  CHECK(setcover::exact(Instance(names(1), {{0}})).size() == 1);
}

TEST_CASE("uncoverable instances") {
  const Instance inst(names(2), {{0}});
  CHECK_FALSE(inst.coverable());
  CHECK_THROWS_AS(setcover::greedy(inst), Error);
  CHECK_THROWS_AS(setcover::exact(inst), Error);
  CHECK_THROWS_AS(Instance({}, {}), Error);
  CHECK_THROWS_AS(Instance(names(2), {{0, 5}}), Error);
  CHECK_THROWS_AS(Instance(names(2), {{0, 1}}, {0}), Error);
}

TEST_CASE("exact matches enumeration and bounds greedy") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 200; ++i) {
    const std::size_t elements = 1 + rng() % 10;
    const std::size_t sets = 1 + rng() % 12;
    const double density = 0.1 + 0.1 * static_cast<double>(rng() % 6);
    const auto inst = bench::gen_random_setcover(rng(), elements, sets, density);
    const auto greedy = setcover::greedy(inst);
    const auto exact = setcover::exact(inst);
    CHECK(setcover::is_feasible(inst, greedy));
    CHECK(setcover::is_feasible(inst, exact));
    REQUIRE(exact.size() == oracle::brute_cover_opt(inst));
    CHECK(exact.size() <= greedy.size());
    CHECK(oracle::within_harmonic(greedy.size(), exact.size(), elements));
  }
}

TEST_CASE("weighted mode") {
  const Instance inst(names(3), {{0, 1, 2}, {0}, {1, 2}}, {5, 1, 2});
  CHECK(setcover::exact(inst) == Cover::of({1, 2}));
  CHECK(setcover::cost(inst, setcover::exact(inst)) == 3);
  // greedy: {1,2} at 1 per element beats {0,1,2} at 5/3
  CHECK(setcover::greedy(inst) == Cover::of({1, 2}));

  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    const std::size_t elements = 1 + rng() % 8, sets = 1 + rng() % 10;
    const auto base = bench::gen_random_setcover(rng(), elements, sets, 0.35);
    std::vector<std::uint64_t> w;
    for (std::size_t s = 0; s < sets; ++s) w.push_back(1 + rng() % 5);
    const Instance inst2(base.elements(), base.sets(), w);
    CHECK(setcover::cost(inst2, setcover::exact(inst2)) == oracle::brute_cover_opt(inst2));
  }
}

TEST_CASE("budget exhaustion carries the incumbent") {
  std::mt19937_64 rng(37);
  const auto inst = bench::gen_random_setcover(41, 30, 25, 0.2);
  try {
    setcover::exact(inst, 3);
    FAIL("expected the budget to run out");
  } catch (const BudgetExceeded<Cover>& e) {
    CHECK(setcover::is_feasible(inst, e.best()));
    CHECK(e.lower_bound() <= e.best_cost());
  }
}

TEST_CASE("JSON") {
  const auto j = nlohmann::json::parse(R"({"universe":["u1","u2","u3"],"sets":[["u1","u2"],["u3"]]})");
  const auto inst = setcover::instance_from_json(j);
  CHECK(inst.num_sets() == 2);
  CHECK(setcover::instance_from_json(setcover::to_json(inst)) == inst);
  const auto cover = setcover::cover_from_json(nlohmann::json::parse(R"({"cover":[1,0]})"), inst);
  CHECK(cover == Cover::of({0, 1}));
  CHECK_THROWS_AS(setcover::instance_from_json(nlohmann::json::parse(R"({"universe":["a"],"sets":[["b"]]})")),
                  Error);
  CHECK_THROWS_AS(setcover::cover_from_json(nlohmann::json::parse(R"({"cover":[7]})"), inst), Error);
}
