#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fraisse/cli.hpp"

namespace fs = std::filesystem;
using fraisse::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "fraisse");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(FRAISSE_DATA_DIR) + "/" + name; }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

fs::path scratch(const char* name) {
  auto p = fs::temp_directory_path() / ("fraisse_cli_test_" + std::string(name));
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("header and adequacy verdicts") {
  auto r = call({"check-adequate", "--p2", data("random_graph.p2")});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("# fraisse 0.1.0\n# command check-adequate\n# seed 1\n# input ", 0) == 0);
  CHECK(contains(r.out, "fnv1a64="));
  CHECK(contains(r.out, "verdict holds"));
  auto bad = call({"check-adequate", "--p2", data("two_colours_apart.p2")});
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "verdict fails"));
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(call({"check-adequate", "--p2", "/nonexistent/p2.txt"}).code == 2);
  CHECK(call({}).code == 2);
  CHECK(call({"no-such-command"}).code == 2);
  CHECK(call({"enum", "--p2", data("random_graph.p2"), "--size", "two"}).code == 2);
  CHECK(call({"zeroone", "--p2", data("random_graph.p2"), "--axiom", "ext 1: Q"}).code == 2);
  CHECK(call({"types", "--n", "2"}).code == 2);
  CHECK(call({"check-hp", "--p2", data("random_graph.p2"), "--format", "xml"}).code == 2);
}

TEST_CASE("every subcommand has help naming its construct") {
  const std::vector<std::pair<std::string, std::string>> expect = {
      {"check-hp", "hereditary"},         {"check-ap", "amalgamation"}, {"check-adequate", "1-adequacy"},
      {"enum", "isomorphism types"},      {"gen", "extension axioms"},  {"types", "types"},
      {"acl", "Algebraic closure"},       {"triviality", "acl"},        {"degenerate", "rho"},
      {"example412", "Doubled cover"},    {"zeroone", "extension axioms"}, {"reduct", "reduct"}};
  for (const auto& [cmd, word] : expect) {
    auto r = call({cmd, "--help"});
    CHECK(r.code == 0);
    CHECK_MESSAGE(contains(r.out, word), cmd);
  }
}

TEST_CASE("class checks") {
  auto ap = call({"check-ap", "--class", data("complete_or_edgeless.txt"), "--size-bound", "3", "--amalgam-bound", "4"});
  CHECK(ap.code == 1);
  CHECK(contains(ap.out, "verdict fails"));
  auto hp = call({"check-hp", "--p2", data("tournament.p2"), "--bound", "3"});
  CHECK(hp.code == 0);
  auto en = call({"enum", "--p2", data("random_graph.p2"), "--size", "3"});
  CHECK(en.code == 0);
  CHECK(contains(en.out, "size 3 iso-types 4"));
}

TEST_CASE("identical runs give identical reports") {
  const std::vector<std::string> args = {"example412", "--base-size", "12", "--saturate", "2", "--check", "claim3"};
  auto a = call(args), b = call(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const std::vector<std::string> gen = {"gen", "--p2", data("random_graph.p2"), "--points", "5", "--seed", "4"};
  CHECK(call(gen).out == call(gen).out);
  auto other = call({"gen", "--p2", data("random_graph.p2"), "--points", "5", "--seed", "5"});
  CHECK(other.out != call(gen).out);
}

TEST_CASE("seed from the environment") {
  ::setenv("FRAISSE_SEED", "4242", 1);
  auto r = call({"zeroone", "--p2", data("random_graph.p2"), "--sizes", "5", "--trials", "3"});
  auto explicit_seed = call({"zeroone", "--p2", data("random_graph.p2"), "--sizes", "5", "--trials", "3", "--seed", "7"});
  ::setenv("FRAISSE_SEED", "not-a-number", 1);
  auto broken = call({"zeroone", "--p2", data("random_graph.p2"), "--sizes", "5", "--trials", "3"});
  ::unsetenv("FRAISSE_SEED");
  CHECK(contains(r.out, "# seed 4242\n"));
  CHECK(contains(explicit_seed.out, "# seed 7\n"));
  CHECK(broken.code == 2);
}

TEST_CASE("zero-one tables") {
  auto csv = call({"zeroone", "--p2", data("random_graph.p2"), "--axiom", "ext 2: E | E", "--sizes", "5,20", "--trials",
                   "10", "--format", "csv"});
  CHECK(csv.code == 0);
  CHECK(contains(csv.out, "n,trials,successes,estimate,wilson_lo,wilson_hi\n5,10,"));
  auto incompatible = call({"zeroone", "--p2", data("random_graph.p2"), "--axiom", "ext 1: E>", "--sizes", "5",
                            "--trials", "3"});
  CHECK(incompatible.code == 1);
  CHECK(contains(incompatible.out, "# incompatible yes"));
}

TEST_CASE("type and acl reports") {
  const std::vector<std::string> oracle = {"--p2", data("random_graph.p2"), "--points", "10", "--saturate", "2"};
  auto with = [&](std::vector<std::string> head) {
    head.insert(head.end(), oracle.begin(), oracle.end());
    return call(head);
  };
  auto ty = with({"types", "--n", "2", "--distinct"});
  CHECK(ty.code == 0);
  CHECK(contains(ty.out, "types 2 "));
  auto acl = with({"acl", "--base", "0,1", "--d", "3", "--budget", "100"});
  CHECK(acl.code == 0);
  CHECK(contains(acl.out, "acl 0,1\n"));
  auto starved = with({"acl", "--base", "0", "--d", "50", "--budget", "0"});
  CHECK(starved.code == 3);
  auto triv = with({"triviality", "--max-b", "2", "--budget", "300"});
  CHECK(triv.code == 0);
  CHECK(contains(triv.out, "trivial yes"));
  auto deg = with({"degenerate", "--max-a", "1", "--max-b", "2", "--max-c", "1", "--budget", "300"});
  CHECK(deg.code == 0);
  CHECK(contains(deg.out, "1-degenerate yes"));

  // A 4-cycle read from a file: small counts are inconclusive unless trusted.
  auto dir = scratch("cycle");
  fs::create_directories(dir);
  std::ofstream(dir / "c4.txt") << "vocab graph\nrel E 2\nstructure c4 over graph\nsize 4\n"
                                   "E: 0 1; 1 0; 1 2; 2 1; 2 3; 3 2; 3 0; 0 3\n";
  const std::string c4 = (dir / "c4.txt").string();
  CHECK(call({"acl", "--input", c4, "--base", "0"}).code == 3);
  auto trusted = call({"acl", "--input", c4, "--base", "0", "--assume-saturated"});
  CHECK(trusted.code == 0);
  CHECK(contains(trusted.out, "acl 0,1,2,3\n"));
  fs::remove_all(dir);
}

TEST_CASE("doubled cover walkthrough and emitted tables") {
  auto sep = call({"example412", "--base-size", "16", "--saturate", "2", "--check", "separation"});
  CHECK(sep.code == 0);
  CHECK(contains(sep.out, "pairwise-equal yes triple-distinct yes"));
  auto claim2 = call({"example412", "--base-size", "12", "--saturate", "2", "--check", "claim2"});
  CHECK(claim2.code == 3);

  auto dir = scratch("ex412");
  auto all = call({"example412", "--base-size", "16", "--saturate", "2", "--check", "reduct", "--reduct-nmax", "3",
                   "--emit-structures", dir.string()});
  CHECK(all.code == 0);
  CHECK(contains(all.out, "reduct G over G0: not a reduct: fails at arity 3"));
  CHECK(contains(all.out, "reduct G over G*0: reduct (up to 3)"));
  for (const char* f : {"F.txt", "M.txt", "Mstar.txt", "quotient.txt", "G.types", "G0.types", "Gstar0.types"})
    CHECK_MESSAGE(fs::exists(dir / f), f);
  CHECK(call({"check-hp", "--class", (dir / "F.txt").string(), "--bound", "2"}).code == 0);

  auto weak = call({"reduct", "--source", (dir / "G0.types").string(), "--target", (dir / "G.types").string()});
  CHECK(weak.code == 1);
  CHECK(contains(weak.out, "fails at arity 3"));
  auto strong = call({"reduct", "--source", (dir / "Gstar0.types").string(), "--target", (dir / "G.types").string()});
  CHECK(strong.code == 0);
  CHECK(contains(strong.out, "verdict reduct (up to 3)"));
  fs::remove_all(dir);
}

TEST_CASE("generator transcript") {
  auto dir = scratch("gen");
  fs::create_directories(dir);
  const auto log = dir / "steps.log";
  auto r = call({"gen", "--p2", data("random_graph.p2"), "--points", "4", "--saturate", "1", "--transcript",
                 log.string()});
  CHECK(r.code == 0);
  CHECK_FALSE(contains(r.out, "# step"));
  std::ifstream in(log);
  std::string first;
  std::getline(in, first);
  CHECK(first.rfind("random 0 ", 0) == 0);
  fs::remove_all(dir);
}
