// partsep: generators, solvers, reductions, verification and benchmarks for
// partial separation of labeled Boolean data.
//
// Exit codes: 0 success, 2 verification failure, 3 budget exceeded,
// 4 parse or configuration error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "partsep/bench.hpp"
#include "partsep/reductions.hpp"
#include "partsep/setcover.hpp"
#include "partsep/solvers.hpp"

namespace {

using namespace partsep;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 2;
constexpr int kExitBudget = 3;
constexpr int kExitConfig = 4;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::config_error, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(g.out);
  if (!os) throw Error(Errc::config_error, "cannot write '" + g.out + "'");
  os << text;
}

void emit_json(const Globals& g, const json& j) {
  if (g.format != "json") throw Error(Errc::config_error, "this command only writes JSON");
  emit(g, j.dump(2) + "\n");
}

bool is_setcover(const json& j) { return j.is_object() && j.contains("universe"); }

json verification_to_json(const solvers::Verification& v, const VarUniverse& universe) {
  json violations = json::array();
  for (const auto& viol : v.violations) {
    json w = nullptr;
    if (viol.witness) {
      w = json::array();
      for (std::size_t j = 0; j < universe.size(); ++j) w.push_back((*viol.witness)[j] ? 1 : 0);
    }
    violations.push_back({{"kind", std::string(solvers::to_string(viol.kind))}, {"witness", w}, {"detail", viol.detail}});
  }
  return {{"feasible", v.feasible}, {"sampled", v.sampled}, {"violations", violations}};
}

// ---------------------------------------------------------------------------

struct GenOpts {
  std::size_t elements = 6, sets = 5;
  double density = 0.4;
  std::size_t vars = 4, a = 3, b = 3;
  std::size_t k = 0;
  std::string instance;
};

void add_gen(CLI::App& app, Globals& g, GenOpts& o, std::function<void()>& action) {
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->require_subcommand(1);

  auto* sc = gen->add_subcommand("setcover", "Random coverable set-cover instance");
  sc->add_option("--elements", o.elements, "Number of elements")->capture_default_str();
  sc->add_option("--sets", o.sets, "Number of sets")->capture_default_str();
  sc->add_option("--density", o.density, "Membership probability in (0, 1]")->capture_default_str();
  sc->callback([&] {
    action = [&] {
      emit_json(g, setcover::to_json(bench::gen_random_setcover(g.seed.value_or(1), o.elements, o.sets, o.density)));
    };
  });

  auto* lab = gen->add_subcommand("labeled", "Random labeled data over x1..xn");
  lab->add_option("--vars", o.vars, "Number of variables")->capture_default_str();
  lab->add_option("--a", o.a, "Points labeled 1")->capture_default_str();
  lab->add_option("--b", o.b, "Points labeled 0")->capture_default_str();
  lab->callback([&] {
    action = [&] { emit_json(g, instance_to_json(bench::gen_random_labeled(g.seed.value_or(1), o.vars, o.a, o.b))); };
  });

  auto* hs = gen->add_subcommand("haussler", "Labeled data of a set-cover instance");
  hs->add_option("--instance", o.instance, "Set-cover JSON")->required();
  hs->callback([&] {
    action = [&] {
      emit_json(g, instance_to_json(reductions::haussler_data(setcover::instance_from_json(read_json(o.instance))).data));
    };
  });

  auto* tight = gen->add_subcommand("tight", "Unit vectors with one of them labeled 0");
  tight->add_option("--vars", o.vars, "Number of variables")->required();
  tight->add_option("--k", o.k, "Variable whose unit vector is labeled 0 (1-based)")->required();
  tight->callback([&] {
    action = [&] {
      if (o.k == 0) throw Error(Errc::index_out_of_range, "k is 1-based");
      emit_json(g, instance_to_json(solvers::tight_instance(VarUniverse::numbered(o.vars),
                                                             static_cast<VarIndex>(o.k - 1))));
    };
  });
}

// ---------------------------------------------------------------------------

struct SolveOpts {
  std::string instance;
  std::string family = "dnf";
  std::string reg;  // empty: length, nodes or interior by family
  std::string mode = "approx";
  std::string cover_rule = "length";
  std::size_t max_reg = solvers::SolveBudget{}.max_total_regularizer;
  std::size_t node_budget = solvers::SolveBudget{}.node_budget;
};

int solve_setcover(const Globals& g, const SolveOpts& o, const json& j) {
  const auto inst = setcover::instance_from_json(j);
  if (o.mode == "approx") {
    emit_json(g, setcover::to_json(setcover::greedy(inst)));
    return kExitOk;
  }
  if (o.mode != "exact") throw Error(Errc::config_error, "set cover supports --mode exact|approx");
  try {
    emit_json(g, setcover::to_json(setcover::exact(inst, o.node_budget)));
    return kExitOk;
  } catch (const BudgetExceeded<setcover::Cover>& e) {
    emit_json(g, setcover::to_json(e.best()));
    std::cerr << e.what() << "\n";
    return kExitBudget;
  }
}

int run_solve(const Globals& g, const SolveOpts& o) {
  const json j = read_json(o.instance);
  if (is_setcover(j)) return solve_setcover(g, o, j);

  const LabeledData d = instance_from_json(j);
  const Family family = family_from_string(o.family);
  Regularizer reg = Regularizer::length;
  if (!o.reg.empty()) {
    reg = regularizer_from_string(o.reg);
  } else if (family == Family::bdt) {
    reg = Regularizer::nodes;
  } else if (family == Family::obdd) {
    reg = Regularizer::interior;
  }
  if (!applies_to(reg, family)) throw Error(Errc::config_error, "regularizer does not apply to this family");

  if (o.mode == "exact" && family == Family::dnf) {
    try {
      const auto pair = solvers::exact_partial_separation_dnf(d, reg, solvers::SolveBudget{o.max_reg, o.node_budget});
      json out = pair_to_json(pair, d.universe());
      out["cost"] = pair.cost(reg);
      emit_json(g, out);
      return kExitOk;
    } catch (const BudgetExceeded<PairSolution>& e) {
      json out = pair_to_json(e.best(), d.universe());
      out["cost"] = e.best_cost();
      out["lower_bound"] = e.lower_bound();
      emit_json(g, out);
      std::cerr << e.what() << "\n";
      return kExitBudget;
    }
  }

  PairSolution pair = [&]() -> PairSolution {
    if (o.mode == "negation") return solvers::negation_based_partial_solver(d, family);
    if (family != Family::dnf) throw Error(Errc::config_error, "trees and diagrams use --mode negation");
    if (o.mode == "approx") return solvers::approx_min_length_dnf(d, solvers::cover_rule_from_string(o.cover_rule));
    throw Error(Errc::config_error, "unknown mode '" + o.mode + "'");
  }();
  json out = pair_to_json(pair, d.universe());
  out["cost"] = pair.cost(reg);
  emit_json(g, out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

int run_verify(const Globals& g, const std::string& instance, const std::string& solution, bool totality) {
  const json ij = read_json(instance);
  const json sj = read_json(solution);
  if (is_setcover(ij)) {
    const auto inst = setcover::instance_from_json(ij);
    const auto cover = setcover::cover_from_json(sj, inst);
    const bool ok = setcover::is_feasible(inst, cover);
    emit_json(g, {{"feasible", ok}, {"cost", setcover::cost(inst, cover)}});
    return ok ? kExitOk : kExitVerification;
  }
  const LabeledData d = instance_from_json(ij);
  const PairSolution pair = pair_from_json(sj, d.universe());
  solvers::VerifyOptions opts;
  opts.check_totality = totality;
  const auto v = solvers::verify_pair(d, pair, opts);
  if (v.sampled) std::cerr << "warning: non-contradiction checked on random samples only\n";
  emit_json(g, verification_to_json(v, d.universe()));
  return v.feasible ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------------------

struct ReportOpts {
  std::string instance, solution, optimal, separation;
  std::string reg = "length";
  std::size_t max_reg = solvers::SolveBudget{}.max_total_regularizer;
  std::size_t node_budget = solvers::SolveBudget{}.node_budget;
};

int run_report(const Globals& g, const ReportOpts& o) {
  const json ij = read_json(o.instance);
  const Regularizer reg = regularizer_from_string(o.reg);
  reductions::RatioReport report;
  if (is_setcover(ij)) {
    const auto inst = setcover::instance_from_json(ij);
    const auto h = reductions::haussler_data(inst);
    const PairSolution feasible = pair_from_json(read_json(o.solution), h.data.universe());
    const auto cover = setcover::exact(inst, o.node_budget);
    const PairSolution opt = o.optimal.empty()
                                 ? solvers::exact_partial_separation_dnf(h.data, reg, {o.max_reg, o.node_budget})
                                 : pair_from_json(read_json(o.optimal), h.data.universe());
    report = reductions::ratio_transfer_report(inst, feasible, opt, cover, reg);
  } else {
    const LabeledData d = instance_from_json(ij);
    const PairSolution feasible = pair_from_json(read_json(o.solution), d.universe());
    if (o.optimal.empty() || o.separation.empty()) {
      throw Error(Errc::config_error, "labeled-data reports need --optimal and --separation");
    }
    const PairSolution opt = pair_from_json(read_json(o.optimal), d.universe());
    const Form sep = form_from_json(read_json(o.separation), feasible.family(), d.universe());
    report = reductions::ratio_transfer_report(d, feasible, opt, sep, reg);
  }
  emit_json(g, reductions::to_json(report));
  return report.inequality_holds ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------------------

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::verification_failure:
    case Errc::infeasible_input:
    case Errc::infeasible_pair:
      return kExitVerification;
    case Errc::budget_exceeded:
      return kExitBudget;
    default:
      return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial separation of labeled Boolean data"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Seed for randomized generators and benchmarks");
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  std::function<void()> action;
  int status = kExitOk;

  GenOpts gen_opts;
  add_gen(app, g, gen_opts, action);

  SolveOpts so;
  auto* solve = app.add_subcommand("solve", "Solve labeled data or a set-cover instance");
  solve->add_option("--instance", so.instance, "Instance JSON")->required();
  solve->add_option("--family", so.family, "dnf|bdt|obdd")->capture_default_str();
  solve->add_option("--reg", so.reg, "length|depth|nodes|interior|width (default: by family)");
  solve->add_option("--mode", so.mode, "exact|approx|negation")->capture_default_str();
  solve->add_option("--cover-rule", so.cover_rule, "count|length")->capture_default_str();
  solve->add_option("--max-reg", so.max_reg, "Largest total regularizer searched")->capture_default_str();
  solve->add_option("--node-budget", so.node_budget, "Search nodes before giving up")->capture_default_str();
  solve->callback([&] { action = [&] { status = run_solve(g, so); }; });

  std::string r_instance, r_cover, r_solution;
  auto* reduce = app.add_subcommand("reduce", "Set cover <-> DNF pair mappings");
  reduce->require_subcommand(1);
  auto* r_h = reduce->add_subcommand("haussler", "Labeled data of a set-cover instance");
  r_h->add_option("--instance", r_instance, "Set-cover JSON")->required();
  r_h->callback([&] {
    action = [&] {
      emit_json(g, instance_to_json(reductions::haussler_data(setcover::instance_from_json(read_json(r_instance))).data));
    };
  });
  auto* r_c2p = reduce->add_subcommand("cover-to-pair", "Cover -> DNF pair on the Haussler data");
  r_c2p->add_option("--instance", r_instance, "Set-cover JSON")->required();
  r_c2p->add_option("--cover", r_cover, "Cover JSON")->required();
  r_c2p->callback([&] {
    action = [&] {
      const auto inst = setcover::instance_from_json(read_json(r_instance));
      const auto cover = setcover::cover_from_json(read_json(r_cover), inst);
      const auto h = reductions::haussler_data(inst);
      emit_json(g, pair_to_json(reductions::cover_to_dnf_pair(cover, inst), h.data.universe()));
    };
  });
  auto* r_p2c = reduce->add_subcommand("pair-to-cover", "Feasible DNF pair -> cover");
  r_p2c->add_option("--instance", r_instance, "Set-cover JSON")->required();
  r_p2c->add_option("--solution", r_solution, "Pair JSON")->required();
  r_p2c->callback([&] {
    action = [&] {
      const auto inst = setcover::instance_from_json(read_json(r_instance));
      const auto h = reductions::haussler_data(inst);
      const PairSolution pair = pair_from_json(read_json(r_solution), h.data.universe());
      if (pair.family() != Family::dnf) throw Error(Errc::config_error, "pair-to-cover needs a DNF pair");
      emit_json(g, setcover::to_json(reductions::dnf_pair_to_cover(std::get<dnf::Form>(pair.theta),
                                                                   std::get<dnf::Form>(pair.theta_prime), inst)));
    };
  });

  std::string v_instance, v_solution;
  bool v_totality = false;
  auto* verify = app.add_subcommand("verify", "Check a pair (or a cover) against its instance");
  verify->add_option("--instance", v_instance, "Instance JSON")->required();
  verify->add_option("--solution", v_solution, "Solution JSON")->required();
  verify->add_flag("--totality", v_totality, "Also require every point to be claimed by one form");
  verify->callback([&] { action = [&] { status = run_verify(g, v_instance, v_solution, v_totality); }; });

  ReportOpts ro;
  auto* report = app.add_subcommand("report", "Reports");
  report->require_subcommand(1);
  auto* ratio = report->add_subcommand("ratio", "Ratio-transfer inequality for a feasible pair");
  ratio->add_option("--instance", ro.instance, "Set-cover or labeled-data JSON")->required();
  ratio->add_option("--solution", ro.solution, "Feasible pair JSON")->required();
  ratio->add_option("--optimal", ro.optimal, "Optimal pair JSON (computed for set cover when omitted)");
  ratio->add_option("--separation", ro.separation, "Optimal separating form JSON (labeled data only)");
  ratio->add_option("--reg", ro.reg, "Regularizer")->capture_default_str();
  ratio->add_option("--max-reg", ro.max_reg, "Largest total regularizer searched")->capture_default_str();
  ratio->add_option("--node-budget", ro.node_budget, "Search nodes before giving up")->capture_default_str();
  ratio->callback([&] { action = [&] { status = run_report(g, ro); }; });

  std::string b_config;
  std::optional<std::size_t> b_jobs;
  bool b_timing = false;
  auto* bench_cmd = app.add_subcommand("bench", "Run benchmark suites from a config file");
  bench_cmd->add_option("--config", b_config, "Bench config JSON")->required();
  bench_cmd->add_option("--jobs", b_jobs, "Worker threads");
  bench_cmd->add_flag("--timing", b_timing, "Fill the wall_ms column");
  bench_cmd->callback([&] {
    action = [&] {
      auto config = bench::config_from_json(read_json(b_config));
      if (g.seed) config.seed = *g.seed;
      if (b_jobs) config.jobs = std::max<std::size_t>(1, *b_jobs);
      if (b_timing) config.timing = true;
      const auto records = bench::run_bench(config);
      if (g.format == "csv") {
        std::ostringstream os;
        bench::write_csv(os, records);
        emit(g, os.str());
      } else {
        emit(g, bench::to_json(records).dump(2) + "\n");
      }
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    action();
  } catch (const BudgetExceeded<PairSolution>& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return status;
}
