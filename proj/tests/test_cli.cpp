#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "stepauto/stm.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = stepauto::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) {
  const char* root = std::getenv("STEPAUTO_DATA");
  return (fs::path(root ? root : "data") / rel).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  fs::path p = fs::temp_directory_path() / "stepauto_cli_test";
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("parse") {
  Result r = call({"parse", "a.(b||c).d"});
  CHECK(r.code == 0);
  CHECK(r.out == "Seq(Seq(a,Par(b,c)),d)\n");
  Result bad = call({"parse", "a.(b"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("position 4") != std::string::npos);
}

TEST_CASE("lang") {
  CHECK(call({"lang", "a.(b||c)", "--size", "3"}).out == "a.(b||c)\n");
  Result zero = call({"lang", "0", "--size", "3"});
  CHECK(zero.code == 0);
  CHECK(zero.out.empty());
  CHECK(call({"lang", "a*", "--size", "2"}).out == "1\na\na.a\n");
  CHECK(call({"lang", "a+"}).code == 2);
}

TEST_CASE("compile") {
  fs::path dir = scratch();
  std::string json = (dir / "fork_join.json").string();
  std::string dot = (dir / "fork_join.dot").string();
  Result r = call({"compile", "a.(b||c).d", "--out", json, "--dot", dot});
  CHECK(r.code == 0);
  CHECK(r.out == "states 4\ntransitions 3\ninitial a.(b||c).d\nwell-nested yes\n");
  CHECK(slurp(dot).find("\"(b||c).d\" -> \"d\" [label=\"<b,c>\"];") != std::string::npos);
  CHECK(call({"compile", "1"}).out == "states 1\ntransitions 0\ninitial 1\nwell-nested yes\n");
  Result cap = call({"compile", "a^*", "--width", "2"});
  CHECK(cap.code == 2);
  CHECK(cap.err == "error: width cap W=2 reached at a^*\n");

  Result acc = call({"accept", json, "a.<b,c>.d"});
  CHECK(acc.code == 0);
  CHECK(acc.out == "accepted\n");
  Result rej = call({"accept", json, "a.b.c.d"});
  CHECK(rej.code == 1);
  CHECK(rej.out == "rejected\n");
  CHECK(call({"words", json, "--len", "5"}).out == "a.<b,c>.d\n");
  CHECK(call({"words", json, "--state", "d"}).out == "d\n");
  CHECK(call({"extract", json}).out == "a.((b||c).d)\n");
  CHECK(call({"accept", json, "a", "--state", "zz"}).code == 2);
}

TEST_CASE("words are listed in sorted order") {
  fs::path dir = scratch();
  std::string json = (dir / "sum.json").string();
  REQUIRE(call({"compile", "b+a.a+1", "--out", json}).code == 0);
  CHECK(call({"words", json}).out == "1\na.a\nb\n");
}

TEST_CASE("malformed automaton files") {
  fs::path bad = scratch() / "bad.json";
  std::ofstream(bad) << "{\"states\": [\"p\"]";
  Result r = call({"words", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.rfind("error: malformed automaton file", 0) == 0);
  CHECK(call({"words", (scratch() / "missing.json").string()}).code == 2);
}

TEST_CASE("equiv") {
  Result eq = call({"equiv", "(a+b).c", "a.c+b.c", "--size", "3"});
  CHECK(eq.code == 0);
  CHECK(eq.out == "equal\n");
  Result ne = call({"equiv", "a||b", "a.b", "--size", "2"});
  CHECK(ne.code == 1);
  CHECK(ne.out == "different\nwitness a||b (first only)\n");
  CHECK(call({"equiv", "a", "a", "--size", "1"}).code == 0);
  CHECK(call({"equiv", "a", "(", "--size", "1"}).code == 2);
}

TEST_CASE("axioms") {
  Result r = call({"axioms", "--samples", "20", "--seed", "7"});
  std::istringstream lines(r.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    ++n;
    if (line.rfind("P5 ", 0) == 0) {
      CHECK(line.find("fails") != std::string::npos);
      CHECK(line.find("holds up to subsumption") != std::string::npos);
    } else {
      CHECK(line.find("holds") == 5);
    }
  }
  CHECK(n == 28);
  CHECK(r.code == 1);
  CHECK(call({"axioms", "--samples", "20", "--seed", "7"}).out == r.out);
  CHECK(r.out.find("A14  holds 40 instances, 17 vacuous") != std::string::npos);

  Result broken = call({"axioms", "--samples", "20", "--seed", "7", "--inject", "par-as-seq"});
  CHECK(broken.code == 1);
  CHECK(broken.out.find("fails up to subsumption") != std::string::npos);
  CHECK(broken.out.find("P1   fails") != std::string::npos);
  CHECK(call({"axioms", "--inject", "nonsense"}).code == 2);
}

TEST_CASE("stm run") {
  Result inc = call({"stm", "run", data("machines/increment.json"), "--input", "1011"});
  CHECK(inc.code == 0);
  CHECK(inc.out.rfind("accepted 1100\n", 0) == 0);
  Result none = call({"stm", "run", data("machines/increment.json"), "--input", "1011",
                      "--max-steps", "0"});
  CHECK(none.code == 1);
  CHECK(none.out == "bound_exceeded\n");
  Result copy = call({"stm", "run", data("machines/copy.json"), "--input", "101", "--trace"});
  CHECK(copy.code == 0);
  CHECK(copy.out.find("  input   □[1]01□\n") != std::string::npos);
  CHECK(copy.out.rfind("accepted 101\nsteps 8\nword 1\nstep 0\n", 0) == 0);
  Result parity = call({"stm", "run", data("machines/parity.json"), "--input", "10"});
  CHECK(parity.code == 1);
  CHECK(parity.out == "rejected\n");
  Result notk = call({"stm", "run", data("machines/not_k4.json"), "--input", "01101001"});
  CHECK(notk.out.rfind("accepted 10010110\n", 0) == 0);
  CHECK(notk.out.find("word <n,n,n,n>.<n,n,n,n>\n") != std::string::npos);
  fs::path bad = scratch() / "bad_machine.json";
  std::ofstream(bad) << R"({"states": ["q"], "initial": "x", "finals": [], "k": 1})";
  CHECK(call({"stm", "run", bad.string()}).code == 2);
}

TEST_CASE("stm words") {
  Result r = call({"stm", "words", data("machines/fork_join.json")});
  CHECK(r.code == 0);
  CHECK(r.out == "a.<b,c>.d\n");
  CHECK(call({"stm", "words", data("machines/copy.json"), "--input", "10"}).out == "1\n");
}

TEST_CASE("machine files match the built-in constructions") {
  using namespace stepauto;
  CHECK(slurp(data("machines/increment.json")) == stm_to_json(from_classical_tm(machines::increment_tm())));
  CHECK(slurp(data("machines/identity.json")) == stm_to_json(from_classical_tm(machines::identity_tm())));
  CHECK(slurp(data("machines/parity.json")) == stm_to_json(from_classical_tm(machines::parity_tm())));
  CHECK(slurp(data("machines/halting.json")) == stm_to_json(from_classical_tm(machines::halting_tm())));
  CHECK(slurp(data("machines/copy.json")) == stm_to_json(machines::copy_machine()));
  CHECK(slurp(data("machines/fork_join.json")) == stm_to_json(machines::fork_join_machine()));
  CHECK(slurp(data("machines/not_k4.json")) == stm_to_json(machines::not_machine(4)));
  CHECK(slurp(data("machines/not_k1.json")) == stm_to_json(machines::not_machine(1)));
  CHECK(call({"stm", "builtin", "copy"}).out == stm_to_json(machines::copy_machine()));
  CHECK(call({"stm", "builtin", "bogus"}).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"lang"}).code == 2);
  CHECK(call({"lang", "a", "--size", "x"}).code == 2);
  CHECK(call({"--help"}).code == 0);
}
