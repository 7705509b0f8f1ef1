#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

class Sandbox {
 public:
  Sandbox() {
    dir_ = fs::temp_directory_path() / ("partsep_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~Sandbox() { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Runs the CLI with stdout to `out` (if given) and returns the exit code.
  int run(const std::string& args, const std::string& out = "") const {
    std::string cmd = std::string(PARTSEP_CLI) + " " + args;
    cmd += out.empty() ? " > /dev/null" : " > " + path(out);
    cmd += " 2> " + path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

 private:
  fs::path dir_;
};

}  // namespace

TEST_CASE("gen tight") {
  Sandbox s;
  REQUIRE(s.run("gen tight --vars 3 --k 3", "t.json") == 0);
  const auto j = nlohmann::json::parse(s.read("t.json"));
  CHECK(j["vars"] == nlohmann::json({"x1", "x2", "x3"}));
  CHECK(j["A"] == nlohmann::json::parse("[[0,1,0],[1,0,0]]"));
  CHECK(j["B"] == nlohmann::json::parse("[[0,0,1]]"));
  CHECK(s.run("gen tight --vars 3 --k 4") == 4);
  CHECK(s.run("gen tight --vars 3 --k 0") == 4);
}

TEST_CASE("solve and verify round trip") {
  Sandbox s;
  REQUIRE(s.run("gen tight --vars 4 --k 2", "t.json") == 0);
  const std::string inst = "--instance " + s.path("t.json");
  REQUIRE(s.run("solve " + inst + " --mode exact", "exact.json") == 0);
  CHECK(nlohmann::json::parse(s.read("exact.json"))["cost"] == 2);
  CHECK(s.run("verify " + inst + " --solution " + s.path("exact.json")) == 0);

  REQUIRE(s.run("solve " + inst + " --mode approx", "approx.json") == 0);
  CHECK(nlohmann::json::parse(s.read("approx.json"))["cost"] == 16);
  CHECK(s.run("verify " + inst + " --solution " + s.path("approx.json")) == 0);

  REQUIRE(s.run("solve " + inst + " --mode approx --cover-rule count", "count.json") == 0);
  CHECK(s.run("verify " + inst + " --solution " + s.path("count.json")) == 0);

  for (const std::string fam : {"bdt", "obdd"}) {
    const std::string reg = fam == "bdt" ? "nodes" : "interior";
    REQUIRE(s.run("solve " + inst + " --mode negation --family " + fam + " --reg " + reg, fam + ".json") == 0);
    CHECK(s.run("verify --totality " + inst + " --solution " + s.path(fam + ".json")) == 0);
  }

  // swap theta and theta' to get an infeasible pair
  auto j = nlohmann::json::parse(s.read("exact.json"));
  std::swap(j["theta"], j["theta_prime"]);
  s.write("bad.json", j.dump());
  CHECK(s.run("verify " + inst + " --solution " + s.path("bad.json"), "v.json") == 2);
  CHECK(nlohmann::json::parse(s.read("v.json"))["feasible"] == false);
}

TEST_CASE("budget exhaustion exits with 3 and still writes a feasible pair") {
  Sandbox s;
  REQUIRE(s.run("--seed 4 gen labeled --vars 6 --a 8 --b 8", "d.json") == 0);
  const std::string inst = "--instance " + s.path("d.json");
  CHECK(s.run("solve " + inst + " --mode exact --node-budget 3", "best.json") == 3);
  CHECK(s.run("verify " + inst + " --solution " + s.path("best.json")) == 0);
}

TEST_CASE("set cover reductions") {
  Sandbox s;
  s.write("sc.json", R"({"universe":["1","2","3","4"],"sets":[["1","2"],["3","4"],["1","3"],["4"]]})");
  const std::string inst = "--instance " + s.path("sc.json");
  REQUIRE(s.run("solve " + inst + " --mode exact", "cover.json") == 0);
  CHECK(nlohmann::json::parse(s.read("cover.json"))["cover"] == nlohmann::json({0, 1}));
  CHECK(s.run("verify " + inst + " --solution " + s.path("cover.json")) == 0);

  REQUIRE(s.run("reduce haussler " + inst, "h.json") == 0);
  REQUIRE(s.run("reduce cover-to-pair " + inst + " --cover " + s.path("cover.json"), "pair.json") == 0);
  CHECK(s.run("verify --instance " + s.path("h.json") + " --solution " + s.path("pair.json")) == 0);
  REQUIRE(s.run("reduce pair-to-cover " + inst + " --solution " + s.path("pair.json"), "back.json") == 0);
  CHECK(nlohmann::json::parse(s.read("back.json"))["cover"] == nlohmann::json({0, 1}));

  REQUIRE(s.run("solve --instance " + s.path("h.json") + " --mode approx", "approx.json") == 0);
  REQUIRE(s.run("report ratio " + inst + " --solution " + s.path("approx.json"), "r.json") == 0);
  CHECK(nlohmann::json::parse(s.read("r.json"))["inequality_holds"] == true);

  REQUIRE(s.run("gen haussler " + inst, "h2.json") == 0);
  CHECK(s.read("h2.json") == s.read("h.json"));
}

TEST_CASE("bench determinism and errors") {
  Sandbox s;
  s.write("cfg.json", R"({"suites":[{"kind":"tight"},{"kind":"haussler","count":4},
                                    {"kind":"random-labeled","count":4}]})");
  REQUIRE(s.run("--seed 3 --format csv bench --config " + s.path("cfg.json"), "a.csv") == 0);
  REQUIRE(s.run("--seed 3 --format csv bench --config " + s.path("cfg.json") + " --jobs 3", "b.csv") == 0);
  CHECK(s.read("a.csv") == s.read("b.csv"));
  CHECK(s.read("a.csv").rfind("instance_id,", 0) == 0);

  REQUIRE(s.run("--seed 3 --out " + s.path("o.json") + " bench --config " + s.path("cfg.json")) == 0);
  CHECK(nlohmann::json::parse(s.read("o.json")).is_array());

  s.write("bad.json", R"({"suites":[{"kind":"tight","colour":1}]})");
  CHECK(s.run("bench --config " + s.path("bad.json")) == 4);
  s.write("broken.json", R"({"suites":[)");
  CHECK(s.run("bench --config " + s.path("broken.json")) == 4);
  CHECK(s.run("bench --config " + s.path("missing.json")) == 4);
  CHECK(s.run("frobnicate") == 4);
  CHECK(s.run("--format csv gen tight --vars 3 --k 1") == 4);
}

TEST_CASE("negation solve picks the family regularizer") {
  Sandbox s;
  REQUIRE(s.run("--seed 5 gen labeled --vars 4 --a 3 --b 3", "l.json") == 0);
  for (const std::string family : {"bdt", "obdd"}) {
    REQUIRE(s.run("solve --instance " + s.path("l.json") + " --family " + family + " --mode negation", "p.json") == 0);
    const auto j = nlohmann::json::parse(s.read("p.json"));
    CHECK(j["family"] == family);
    CHECK(s.run("verify --totality --instance " + s.path("l.json") + " --solution " + s.path("p.json")) == 0);
  }
  CHECK(s.run("solve --instance " + s.path("l.json") + " --family bdt --reg length --mode negation") == 4);
}
