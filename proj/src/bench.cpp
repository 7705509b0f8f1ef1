#include "partsep/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <numeric>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

namespace partsep::bench {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Portable draws: the standard distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() { return splitmix64(state_++); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }

 private:
  std::uint64_t state_;
};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

[[noreturn]] void verification_failure(const std::string& id, const std::string& what) {
  throw Error(Errc::verification_failure, id + ": " + what);
}

reductions::Rational ratio_of(std::size_t num, std::size_t den) {
  return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct Context {
  const BenchConfig& config;
  std::string id;
  std::string generator;
  std::string params;
  std::optional<std::uint64_t> seed;

  BenchRecord record(std::string solver, Regularizer reg, std::size_t cost, std::optional<double> ms) const {
    BenchRecord r;
    r.instance_id = id;
    r.generator = generator;
    r.params = params;
    r.solver = std::move(solver);
    r.regularizer = std::string(to_string(reg));
    r.status = "ok";
    r.feasible_cost = cost;
    if (config.timing) r.wall_ms = ms;
    r.seed = seed;
    return r;
  }
};

void attach_oracle(BenchRecord& r, std::size_t oracle) {
  r.oracle_cost = oracle;
  if (oracle > 0) r.ratio = ratio_of(r.feasible_cost, oracle);
}

void require_pair(const Context& ctx, const LabeledData& d, const PairSolution& pair, std::string_view solver,
                  bool totality = false) {
  solvers::VerifyOptions opts;
  opts.check_totality = totality;
  const auto v = solvers::verify_pair(d, pair, opts);
  if (!v.feasible) {
    verification_failure(ctx.id, std::string(solver) + " produced an infeasible pair (" +
                                     std::string(solvers::to_string(v.violations.front().kind)) + ")");
  }
}

struct DnfOutcome {
  PairSolution approx;
  std::optional<PairSolution> exact;
};

// A' against the exact oracle under one regularizer; checks the
// approximation bound |J||A u B|/2 whenever the oracle finishes.
DnfOutcome dnf_records(const Context& ctx, const LabeledData& d, Regularizer reg, std::vector<BenchRecord>& out) {
  Timer t_approx;
  PairSolution approx = solvers::approx_min_length_dnf(d, ctx.config.cover_rule);
  const double approx_ms = t_approx.ms();
  require_pair(ctx, d, approx, "approx-dnf");
  BenchRecord approx_rec = ctx.record("approx-dnf", reg, approx.cost(reg), approx_ms);

  DnfOutcome outcome{approx, std::nullopt};
  if (d.num_vars() > solvers::kMaxExactVars) {
    out.push_back(std::move(approx_rec));
    return outcome;
  }

  Timer t_exact;
  BenchRecord exact_rec;
  try {
    PairSolution exact = solvers::exact_partial_separation_dnf(d, reg, ctx.config.budget);
    const double exact_ms = t_exact.ms();
    require_pair(ctx, d, exact, "exact-dnf");
    exact_rec = ctx.record("exact-dnf", reg, exact.cost(reg), exact_ms);
    attach_oracle(approx_rec, exact.cost(reg));
    outcome.exact = std::move(exact);
  } catch (const BudgetExceeded<PairSolution>& e) {
    exact_rec = ctx.record("exact-dnf", reg, e.best_cost(), t_exact.ms());
    exact_rec.status = "budget_exceeded";
  }

  if (reg == Regularizer::length && approx_rec.ratio) {
    const std::size_t points = d.a_points().size() + d.b_points().size();
    const reductions::Rational bound(static_cast<std::int64_t>(d.num_vars() * points), 2);
    if (*approx_rec.ratio > bound) verification_failure(ctx.id, "approx-dnf ratio exceeds |J||A u B|/2");
  }
  out.push_back(std::move(approx_rec));
  out.push_back(std::move(exact_rec));
  return outcome;
}

std::vector<BenchRecord> run_tight(const BenchConfig& config, const SuiteConfig& s, std::size_t si, std::size_t i) {
  const std::size_t n = s.vars[i];
  const std::size_t k = s.k.value_or(n);
  Context ctx{config, "tight-" + std::to_string(si) + "-" + std::to_string(i), "tight",
              "vars=" + std::to_string(n) + ";k=" + std::to_string(k), std::nullopt};
  const LabeledData d = solvers::tight_instance(VarUniverse::numbered(n), static_cast<VarIndex>(k - 1));
  std::vector<BenchRecord> out;
  for (auto reg : s.regularizers) dnf_records(ctx, d, reg, out);
  return out;
}

std::vector<BenchRecord> run_haussler(const BenchConfig& config, const SuiteConfig& s, std::size_t si,
                                      std::size_t i) {
  const std::uint64_t seed = derive_seed(config.seed, si, i);
  Context ctx{config, "haussler-" + std::to_string(si) + "-" + std::to_string(i), "haussler",
              "elements=" + std::to_string(s.elements) + ";sets=" + std::to_string(s.sets) +
                  ";density=" + fmt("%g", s.density),
              seed};
  const auto inst = gen_random_setcover(seed, s.elements, s.sets, s.density);
  const auto h = reductions::haussler_data(inst);
  std::vector<BenchRecord> out;

  Timer t_greedy;
  const auto greedy = setcover::greedy(inst);
  const double greedy_ms = t_greedy.ms();
  if (!setcover::is_feasible(inst, greedy)) verification_failure(ctx.id, "greedy cover does not cover U");
  BenchRecord greedy_rec = ctx.record("greedy-cover", Regularizer::length, greedy.size(), greedy_ms);
  greedy_rec.regularizer = "cardinality";

  std::optional<setcover::Cover> optimum;
  Timer t_exact;
  try {
    optimum = setcover::exact(inst, config.cover_node_budget);
  } catch (const BudgetExceeded<setcover::Cover>& e) {
    BenchRecord r = ctx.record("exact-cover", Regularizer::length, e.best_cost(), t_exact.ms());
    r.regularizer = "cardinality";
    r.status = "budget_exceeded";
    out.push_back(std::move(greedy_rec));
    out.push_back(std::move(r));
  }
  if (optimum) {
    const double exact_ms = t_exact.ms();
    if (!setcover::is_feasible(inst, *optimum)) verification_failure(ctx.id, "exact cover does not cover U");
    attach_oracle(greedy_rec, optimum->size());
    // greedy <= H(|U|) * OPT
    boost::multiprecision::cpp_rational harmonic = 0;
    for (std::size_t m = 1; m <= inst.num_elements(); ++m) harmonic += boost::multiprecision::cpp_rational(1, m);
    if (boost::multiprecision::cpp_rational(greedy.size()) > harmonic * optimum->size()) {
      verification_failure(ctx.id, "greedy cover exceeds H(|U|) times the optimum");
    }
    BenchRecord exact_rec = ctx.record("exact-cover", Regularizer::length, optimum->size(), exact_ms);
    exact_rec.regularizer = "cardinality";
    out.push_back(std::move(greedy_rec));
    out.push_back(std::move(exact_rec));
  }

  for (auto reg : s.regularizers) {
    const auto outcome = dnf_records(ctx, h.data, reg, out);

    const PairSolution lifted = reductions::cover_to_dnf_pair(greedy, inst);
    require_pair(ctx, h.data, lifted, "lifted-greedy");
    BenchRecord lifted_rec = ctx.record("lifted-greedy", reg, lifted.cost(reg), std::nullopt);
    if (outcome.exact) attach_oracle(lifted_rec, outcome.exact->cost(reg));
    out.push_back(std::move(lifted_rec));

    if (!optimum || !outcome.exact) continue;
    const std::size_t pair_opt = outcome.exact->cost(reg);
    const std::size_t expected = reg == Regularizer::length ? 2 * optimum->size() : optimum->size() + 1;
    if (pair_opt != expected) {
      verification_failure(ctx.id, "pair optimum " + std::to_string(pair_opt) + " does not match cover optimum " +
                                       std::to_string(optimum->size()));
    }
    for (const auto* feasible : {&outcome.approx, &lifted}) {
      const auto report = reductions::ratio_transfer_report(inst, *feasible, *outcome.exact, *optimum, reg);
      if (!report.shifted_holds) verification_failure(ctx.id, "ratio-transfer bound violated");
    }
  }
  return out;
}

std::vector<BenchRecord> run_random_labeled(const BenchConfig& config, const SuiteConfig& s, std::size_t si,
                                            std::size_t i) {
  const std::uint64_t seed = derive_seed(config.seed, si, i);
  const std::size_t n = s.vars.front();
  Context ctx{config, "labeled-" + std::to_string(si) + "-" + std::to_string(i), "random-labeled",
              "vars=" + std::to_string(n) + ";a=" + std::to_string(s.a) + ";b=" + std::to_string(s.b), seed};
  const LabeledData d = gen_random_labeled(seed, n, s.a, s.b);
  std::vector<BenchRecord> out;

  for (auto family : s.families) {
    if (family == Family::dnf) {
      for (auto reg : s.regularizers) {
        if (applies_to(reg, Family::dnf)) dnf_records(ctx, d, reg, out);
      }
      continue;
    }
    Timer t;
    const PairSolution pair = solvers::negation_based_partial_solver(d, family);
    const double ms = t.ms();
    const std::string solver = family == Family::bdt ? "negation-bdt" : "negation-obdd";
    require_pair(ctx, d, pair, solver, true);
    const Regularizer reg = family == Family::bdt ? Regularizer::nodes : Regularizer::interior;
    if (pair.cost(reg) > 2 * regularize(pair.theta, reg)) verification_failure(ctx.id, solver + " exceeds 2 R(theta)");
    out.push_back(ctx.record(solver, reg, pair.cost(reg), ms));
  }
  return out;
}

[[noreturn]] void config_failure(const std::string& what) { throw Error(Errc::config_error, what); }

template <class T>
T get_field(const nlohmann::json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    config_failure(where + ": field '" + key + "' has the wrong type");
  }
}

std::size_t positive(const nlohmann::json& j, const char* key, const std::string& where) {
  const auto v = get_field<std::int64_t>(j, key, where);
  if (v <= 0) config_failure(where + ": field '" + key + "' must be positive");
  return static_cast<std::size_t>(v);
}

SuiteConfig suite_from_json(const nlohmann::json& j, const std::string& where) {
  try {
    require_known_fields(j, {"kind", "count", "vars", "k", "elements", "sets", "density", "a", "b", "regularizers",
                             "families"},
                         where);
  } catch (const Error& e) {
    config_failure(e.what());
  }
  if (!j.contains("kind")) config_failure(where + ": missing 'kind'");
  SuiteConfig s;
  const auto kind = get_field<std::string>(j, "kind", where);
  if (kind == "tight") {
    s.kind = SuiteConfig::Kind::tight;
    s.vars = {3, 4, 5};
  } else if (kind == "haussler") {
    s.kind = SuiteConfig::Kind::haussler;
  } else if (kind == "random-labeled") {
    s.kind = SuiteConfig::Kind::random_labeled;
    s.vars = {4};
    s.families = {Family::dnf, Family::bdt, Family::obdd};
  } else {
    config_failure(where + ": unknown suite kind '" + kind + "'");
  }

  if (j.contains("count")) s.count = positive(j, "count", where);
  if (j.contains("vars")) {
    if (j["vars"].is_array()) {
      s.vars = get_field<std::vector<std::size_t>>(j, "vars", where);
    } else {
      s.vars = {positive(j, "vars", where)};
    }
    if (s.vars.empty()) config_failure(where + ": 'vars' must not be empty");
  }
  if (j.contains("k")) s.k = positive(j, "k", where);
  if (j.contains("elements")) s.elements = positive(j, "elements", where);
  if (j.contains("sets")) s.sets = positive(j, "sets", where);
  if (j.contains("density")) s.density = get_field<double>(j, "density", where);
  if (j.contains("a")) s.a = positive(j, "a", where);
  if (j.contains("b")) s.b = positive(j, "b", where);
  try {
    if (j.contains("regularizers")) {
      s.regularizers.clear();
      for (const auto& r : get_field<std::vector<std::string>>(j, "regularizers", where)) {
        s.regularizers.push_back(regularizer_from_string(r));
      }
    }
    if (j.contains("families")) {
      s.families.clear();
      for (const auto& f : get_field<std::vector<std::string>>(j, "families", where)) {
        s.families.push_back(family_from_string(f));
      }
    }
  } catch (const Error& e) {
    if (e.code() == Errc::config_error) throw;
    config_failure(where + ": " + e.what());
  }

  if (s.kind != SuiteConfig::Kind::random_labeled) {
    for (auto r : s.regularizers) {
      if (!applies_to(r, Family::dnf)) config_failure(where + ": regularizer must be length or depth");
    }
  }
  if (s.kind == SuiteConfig::Kind::tight) {
    for (auto n : s.vars) {
      if (n < 2) config_failure(where + ": tight instances need at least two variables");
      if (s.k && *s.k > n) config_failure(where + ": k exceeds a universe size");
    }
    s.count = s.vars.size();
  }
  if (s.kind == SuiteConfig::Kind::haussler && !(s.density > 0.0 && s.density <= 1.0)) {
    config_failure(where + ": density must lie in (0, 1]");
  }
  if (s.kind == SuiteConfig::Kind::random_labeled) {
    const std::size_t n = s.vars.front();
    if (s.vars.size() != 1 || n > 20 || s.a + s.b > (std::size_t{1} << n)) {
      config_failure(where + ": need a single 'vars' <= 20 with a + b <= 2^vars");
    }
  }
  return s;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t run_seed, std::size_t suite, std::size_t instance) {
  return splitmix64(splitmix64(run_seed ^ splitmix64(suite)) + instance);
}

setcover::Instance gen_random_setcover(std::uint64_t seed, std::size_t n_elements, std::size_t n_sets,
                                       double density) {
  if (n_elements == 0 || n_sets == 0) throw Error(Errc::invalid_params, "sizes must be positive");
  if (!(density > 0.0 && density <= 1.0)) throw Error(Errc::invalid_params, "density must lie in (0, 1]");
  Rng rng(seed);
  std::vector<std::string> elements;
  for (std::size_t u = 1; u <= n_elements; ++u) elements.push_back(std::to_string(u));

  std::vector<std::vector<std::size_t>> sets(n_sets);
  std::vector<bool> covered(n_elements, false);
  for (auto& s : sets) {
    for (std::size_t u = 0; u < n_elements; ++u) {
      if (density >= 1.0 || rng.unit() < density) {
        s.push_back(u);
        covered[u] = true;
      }
    }
  }
  for (std::size_t u = 0; u < n_elements; ++u) {
    if (!covered[u]) sets[rng.below(n_sets)].push_back(u);
  }
  for (auto& s : sets) std::sort(s.begin(), s.end());
  return setcover::Instance(std::move(elements), std::move(sets));
}

LabeledData gen_random_labeled(std::uint64_t seed, std::size_t n_vars, std::size_t n_a, std::size_t n_b) {
  if (n_vars == 0 || n_vars > 20) throw Error(Errc::invalid_params, "n_vars must lie in [1, 20]");
  if (n_a == 0 || n_b == 0) throw Error(Errc::invalid_params, "both label sets must be non-empty");
  const std::size_t space = std::size_t{1} << n_vars;
  if (n_a + n_b > space) throw Error(Errc::invalid_params, "more points requested than exist");

  Rng rng(seed);
  std::vector<std::uint64_t> idx(space);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < n_a + n_b; ++i) std::swap(idx[i], idx[i + rng.below(space - i)]);

  std::vector<Assignment> a, b;
  for (std::size_t i = 0; i < n_a + n_b; ++i) {
    (i < n_a ? a : b).push_back(Assignment::from_index(idx[i], n_vars));
  }
  return make_labeled_data(VarUniverse::numbered(n_vars), std::move(a), std::move(b));
}

BenchConfig config_from_json(const nlohmann::json& j) {
  try {
    require_known_fields(j, {"seed", "jobs", "timing", "cover_rule", "max_reg", "node_budget", "cover_node_budget",
                             "suites"},
                         "bench config");
  } catch (const Error& e) {
    config_failure(e.what());
  }
  const std::string where = "bench config";
  BenchConfig c;
  if (j.contains("seed")) c.seed = get_field<std::uint64_t>(j, "seed", where);
  if (j.contains("jobs")) c.jobs = positive(j, "jobs", where);
  if (j.contains("timing")) c.timing = get_field<bool>(j, "timing", where);
  if (j.contains("cover_rule")) {
    try {
      c.cover_rule = solvers::cover_rule_from_string(get_field<std::string>(j, "cover_rule", where));
    } catch (const Error& e) {
      if (e.code() == Errc::config_error) throw;
      config_failure(e.what());
    }
  }
  if (j.contains("max_reg")) c.budget.max_total_regularizer = positive(j, "max_reg", where);
  if (j.contains("node_budget")) c.budget.node_budget = positive(j, "node_budget", where);
  if (j.contains("cover_node_budget")) c.cover_node_budget = positive(j, "cover_node_budget", where);
  if (j.contains("suites")) {
    if (!j["suites"].is_array()) config_failure(where + ": 'suites' must be an array");
    for (std::size_t i = 0; i < j["suites"].size(); ++i) {
      c.suites.push_back(suite_from_json(j["suites"][i], "suites[" + std::to_string(i) + "]"));
    }
  }
  return c;
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  struct Task {
    std::size_t suite;
    std::size_t instance;
  };
  std::vector<Task> tasks;
  for (std::size_t s = 0; s < config.suites.size(); ++s) {
    for (std::size_t i = 0; i < config.suites[s].count; ++i) tasks.push_back({s, i});
  }

  std::vector<std::vector<BenchRecord>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  auto run_one = [&](std::size_t t) {
    const auto& suite = config.suites[tasks[t].suite];
    try {
      switch (suite.kind) {
        case SuiteConfig::Kind::tight:
          results[t] = run_tight(config, suite, tasks[t].suite, tasks[t].instance);
          break;
        case SuiteConfig::Kind::haussler:
          results[t] = run_haussler(config, suite, tasks[t].suite, tasks[t].instance);
          break;
        case SuiteConfig::Kind::random_labeled:
          results[t] = run_random_labeled(config, suite, tasks[t].suite, tasks[t].instance);
          break;
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, tasks.size()));
  if (jobs == 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) run_one(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < jobs; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) run_one(t);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<BenchRecord> records;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (errors[t]) std::rethrow_exception(errors[t]);
    for (auto& r : results[t]) records.push_back(std::move(r));
  }
  return records;
}

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
  os << "instance_id,generator,params,solver,regularizer,status,feasible_cost,oracle_cost,ratio_num,ratio_den,"
        "ratio_decimal,wall_ms,seed\n";
  for (const auto& r : records) {
    os << r.instance_id << ',' << r.generator << ',' << r.params << ',' << r.solver << ',' << r.regularizer << ','
       << r.status << ',' << r.feasible_cost << ',';
    if (r.oracle_cost) os << *r.oracle_cost;
    os << ',';
    if (r.ratio) {
      os << r.ratio->numerator() << ',' << r.ratio->denominator() << ','
         << fmt("%.6f", static_cast<double>(r.ratio->numerator()) / static_cast<double>(r.ratio->denominator()));
    } else {
      os << ",,";
    }
    os << ',';
    if (r.wall_ms) os << fmt("%.3f", *r.wall_ms);
    os << ',';
    if (r.seed) os << *r.seed;
    os << '\n';
  }
}

nlohmann::json to_json(const std::vector<BenchRecord>& records) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json j{{"instance_id", r.instance_id}, {"generator", r.generator}, {"params", r.params},
                     {"solver", r.solver},           {"regularizer", r.regularizer}, {"status", r.status},
                     {"feasible_cost", r.feasible_cost}};
    j["oracle_cost"] = r.oracle_cost ? nlohmann::json(*r.oracle_cost) : nlohmann::json(nullptr);
    if (r.ratio) {
      j["ratio"] = {{"num", r.ratio->numerator()},
                    {"den", r.ratio->denominator()},
                    {"decimal", static_cast<double>(r.ratio->numerator()) / static_cast<double>(r.ratio->denominator())}};
    } else {
      j["ratio"] = nullptr;
    }
    j["wall_ms"] = r.wall_ms ? nlohmann::json(*r.wall_ms) : nlohmann::json(nullptr);
    j["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace partsep::bench
