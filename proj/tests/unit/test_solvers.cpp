#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "partsep/bench.hpp"
#include "partsep/reductions.hpp"
#include "partsep/solvers.hpp"

using namespace partsep;
using namespace partsep::solvers;
using dnf::Term;

namespace {

const dnf::Form& theta(const PairSolution& p) { return std::get<dnf::Form>(p.theta); }
const dnf::Form& theta_prime(const PairSolution& p) { return std::get<dnf::Form>(p.theta_prime); }

LabeledData one_var() { return make_labeled_data(VarUniverse::numbered(1), {{1}}, {{0}}); }

}  // namespace

TEST_CASE("verify_pair") {
  const auto inst = setcover::Instance({"1", "2", "3"}, {{0, 1}, {1, 2}, {2}});
  const auto h = reductions::haussler_data(inst);
  const auto pair = reductions::cover_to_dnf_pair(setcover::greedy(inst), inst);
  CHECK(verify_pair(h.data, pair).feasible);
  CHECK(verify_pair(h.data.swapped(), pair.swapped()).feasible);

  const PairSolution ones(dnf::Form({Term{}}), dnf::Form({Term{}}));
  const auto v = verify_pair(one_var(), ones);
  CHECK_FALSE(v.feasible);
  REQUIRE(v.violations.size() == 1);
  CHECK(v.violations[0].kind == Violation::Kind::contradiction);

  const PairSolution empty(dnf::Form{}, dnf::Form({Term::make({}, {0})}));
  const auto e = verify_pair(one_var(), empty);
  CHECK_FALSE(e.feasible);
  CHECK(e.violations[0].kind == Violation::Kind::exactness_a);
  CHECK(*e.violations[0].witness == Assignment{1});

  const PairSolution out_of_range(dnf::Form({Term::make({4}, {})}), dnf::Form({Term::make({}, {0})}));
  CHECK(verify_pair(one_var(), out_of_range).violations[0].kind == Violation::Kind::universe);
}

TEST_CASE("totality") {
  const auto d = make_labeled_data(VarUniverse::numbered(2), {{1, 1}}, {{0, 0}});
  const PairSolution partial(dnf::Form({Term::make({0, 1}, {})}), dnf::Form({Term::make({}, {0, 1})}));
  CHECK(verify_pair(d, partial).feasible);
  const auto v = verify_pair(d, partial, {.check_totality = true});
  CHECK_FALSE(v.feasible);
  CHECK(v.violations[0].kind == Violation::Kind::totality);
}

TEST_CASE("wide trees are checked on samples") {
  const std::size_t n = 14;
  std::vector<Assignment> a{Assignment::from_index(1, n)}, b{Assignment::from_index(0, n)};
  const auto d = make_labeled_data(VarUniverse::numbered(n), a, b);
  const auto pair = negation_based_partial_solver(d, Family::bdt);
  const auto v = verify_pair(d, pair, {.check_totality = true});
  CHECK(v.feasible);
  CHECK(v.sampled);
  const PairSolution clash(bdt::Tree::internal(0, bdt::Tree::leaf(false), bdt::Tree::leaf(true)),
                           bdt::Tree::internal(13, bdt::Tree::leaf(true), bdt::Tree::leaf(true)));
  const auto w = verify_pair(d, clash);
  CHECK_FALSE(w.feasible);
  CHECK(w.violations[0].kind == Violation::Kind::contradiction);
}

TEST_CASE("exact examples") {
  const auto h = reductions::haussler_data(setcover::Instance({"1", "2"}, {{0}, {0, 1}}));
  const auto p = exact_partial_separation_dnf(h.data, Regularizer::length);
  CHECK(p.cost(Regularizer::length) == 2);
  CHECK(theta(p) == dnf::Form({Term::make({1}, {})}));
  CHECK(theta_prime(p) == dnf::Form({Term::make({}, {1})}));

  const auto tight = tight_instance(VarUniverse::numbered(3), 2);
  const auto q = exact_partial_separation_dnf(tight, Regularizer::length);
  CHECK(q.cost(Regularizer::length) == 2);
  CHECK(theta(q) == dnf::Form({Term::make({}, {2})}));
  CHECK(theta_prime(q) == dnf::Form({Term::make({2}, {})}));

  CHECK(exact_partial_separation_dnf(one_var(), Regularizer::length).cost(Regularizer::length) == 2);
  CHECK(exact_partial_separation_dnf(one_var(), Regularizer::depth).cost(Regularizer::depth) == 2);
}

TEST_CASE("prime-implicant approximation: total forms") {
  const auto j2 = VarUniverse::numbered(2);
  CHECK(approx_min_length_dnf_total(j2, {{1, 1}, {1, 0}}) == dnf::Form({Term::make({0}, {})}));
  CHECK(approx_min_length_dnf_total(j2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}) == dnf::Form({Term{}}));
  const auto tight = tight_instance(VarUniverse::numbered(3), 2);
  const auto a_side = approx_min_length_dnf_total(tight.universe(), tight.a_points());
  CHECK(a_side == dnf::Form({Term::make({0}, {1, 2}), Term::make({1}, {0, 2})}));
  CHECK(dnf::length(a_side) == 6);
  CHECK_THROWS_AS(approx_min_length_dnf_total(j2, {}), Error);
}

TEST_CASE("prime-implicant approximation: exact on-set and guarantees") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 8;
    const auto table = oracle::random_table(rng, n);
    std::vector<Assignment> on;
    for (std::uint64_t p = 0; p < table.size(); ++p) {
      if (table[p]) on.push_back(Assignment::from_index(p, n));
    }
    if (on.empty()) continue;
    for (auto rule : {CoverRule::length, CoverRule::count}) {
      const auto f = approx_min_length_dnf_total(VarUniverse::numbered(n), on, rule);
      REQUIRE(dnf::truth_table(f, n) == oracle::to_bitvec(table));
      CHECK(f.size() <= on.size());
      CHECK(dnf::length(f) <= n * on.size());
      const auto primes = oracle::brute_primes(table, n);
      for (const auto& t : f.terms()) CHECK(std::binary_search(primes.begin(), primes.end(), t));
    }
  }
}

TEST_CASE("A' pairs") {
  const auto p = approx_min_length_dnf(one_var());
  CHECK(theta(p) == dnf::Form({Term::make({0}, {})}));
  CHECK(theta_prime(p) == dnf::Form({Term::make({}, {0})}));
  CHECK(p.cost(Regularizer::length) == 2);

  const auto tight = tight_instance(VarUniverse::numbered(3), 2);
  CHECK(approx_min_length_dnf(tight).cost(Regularizer::length) == 9);

  std::mt19937_64 rng(59);
  for (int i = 0; i < 40; ++i) {
    const auto d = bench::gen_random_labeled(rng(), 5, 1 + rng() % 5, 1 + rng() % 5);
    const auto pair = approx_min_length_dnf(d);
    REQUIRE(verify_pair(d, pair).feasible);
    CHECK(dnf::truth_table(theta(pair), 5) == point_set(d.a_points(), 5));
    CHECK(dnf::truth_table(theta_prime(pair), 5) == point_set(d.b_points(), 5));
    const auto opt = exact_partial_separation_dnf(d, Regularizer::length);
    const std::size_t points = d.a_points().size() + d.b_points().size();
    CHECK(2 * pair.cost(Regularizer::length) <= 5 * points * opt.cost(Regularizer::length));
  }
}

TEST_CASE("negation-based solver") {
  const auto p = negation_based_partial_solver(one_var(), Family::bdt);
  CHECK(p.cost(Regularizer::nodes) == 6);
  CHECK(verify_pair(one_var(), p, {.check_totality = true}).feasible);

  const auto h = reductions::haussler_data(setcover::Instance({"1", "2", "3"}, {{0, 1}, {2}, {1, 2}}));
  const auto q = negation_based_partial_solver(h.data, Family::obdd);
  CHECK(verify_pair(h.data, q, {.check_totality = true}).feasible);
  CHECK(q.cost(Regularizer::interior) == 2 * regularize(q.theta, Regularizer::interior));

  CHECK_THROWS_AS(negation_based_partial_solver(one_var(), Family::dnf), Error);
}

TEST_CASE("tight instance") {
  const auto t3 = tight_instance(VarUniverse::numbered(3), 2);
  CHECK(t3.a_points() == std::vector<Assignment>{{0, 1, 0}, {1, 0, 0}});
  CHECK(t3.b_points() == std::vector<Assignment>{{0, 0, 1}});
  const auto t2 = tight_instance(VarUniverse::numbered(2), 0);
  CHECK(t2.a_points() == std::vector<Assignment>{{0, 1}});
  CHECK(t2.b_points() == std::vector<Assignment>{{1, 0}});

  const auto t4 = tight_instance(VarUniverse::numbered(4), 1);
  const auto approx = approx_min_length_dnf(t4).cost(Regularizer::length);
  const auto opt = exact_partial_separation_dnf(t4, Regularizer::length).cost(Regularizer::length);
  CHECK(reductions::Rational(approx, opt) == reductions::Rational(8));

  CHECK_THROWS_AS(tight_instance(VarUniverse::numbered(3), 3), Error);
  CHECK_THROWS_AS(tight_instance(VarUniverse::numbered(1), 0), Error);
}

TEST_CASE("cover rule names") {
  CHECK(cover_rule_from_string("count") == CoverRule::count);
  CHECK(to_string(CoverRule::length) == "length");
  CHECK_THROWS_AS(cover_rule_from_string("weight"), Error);
}
