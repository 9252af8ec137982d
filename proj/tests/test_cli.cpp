#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "swdiag/io.hpp"

using namespace swdiag;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Workspace {
 public:
  Workspace() : dir_(fs::temp_directory_path() / ("swdiag_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

 private:
  fs::path dir_;
};

const char* kTriangle = R"({"n": 3, "edges": [[1, 2], [2, 3], [1, 3]]})";

}  // namespace

TEST_CASE("gen s1 emits a six-edge network") {
  const auto r = run({"gen", "s1", "--n", "3"});
  CHECK(r.code == 0);
  CHECK(parse_network(r.out).edge_count() == 6);
}

TEST_CASE("reduce vc answers YES/NO") {
  Workspace ws;
  const auto graph = ws.write("k3.json", kTriangle);
  CHECK(run({"reduce", "vc", "--graph", graph, "--m", "2", "--variant", "q1"}).out == "YES\n");
  CHECK(run({"reduce", "vc", "--graph", graph, "--m", "1", "--variant", "q2"}).out == "NO\n");
}

TEST_CASE("tree build --exact on two classes has depth 1") {
  Workspace ws;
  const auto net = ws.write("s1.json", run({"gen", "s1", "--n", "2"}).out);
  const FaultSet set{FaultType::zero(), {Fault{}, constant_fault(s1_network(2), false)}};
  const auto faults = ws.write("r.json", serialize_fault_set(set));
  const auto built = run({"tree", "build", "--network", net, "--faults", faults, "--exact"});
  REQUIRE(built.code == 0);
  CHECK(parse_tree(built.out).depth() == 1);

  const auto tree = ws.write("t.json", built.out);
  const auto v = run({"tree", "verify", "--tree", tree, "--network", net, "--faults", faults});
  CHECK(v.code == 0);
  CHECK(nlohmann::json::parse(v.out)["verified"] == true);

  const auto dead = ws.write("dead.json", serialize_fault(constant_fault(s1_network(2), false)));
  const auto ran = run({"tree", "run", "--tree", tree, "--network", net, "--fault", dead});
  CHECK(ran.code == 0);
  CHECK(parse_fault(ran.out) == constant_fault(s1_network(2), false));

  CHECK(run({"tree", "export-dot", "--tree", tree}).out.find("digraph") == 0);
}

TEST_CASE("eval, table, equiv and faults") {
  Workspace ws;
  const auto net = ws.write("s2.json", run({"gen", "s2", "--n", "2"}).out);
  CHECK(run({"eval", "--network", net, "--input", "10"}).out == "0\n");
  CHECK(run({"eval", "--network", net, "--input", "10", "--paths"}).out == "0\n");
  const auto ones = ws.write("ones.json", serialize_fault(conjunction_fault(ConjunctionKind::s2_one, 2, Assignment::parse("10"))));
  CHECK(run({"eval", "--network", net, "--fault", ones, "--input", "10"}).out == "1\n");

  const auto table = nlohmann::json::parse(run({"table", "--network", net, "--fault", ones, "--jobs", "2"}).out);
  CHECK(table["table"] == "0100");
  CHECK(table["variables"] == nlohmann::json::array({1, 2}));

  const auto eq = nlohmann::json::parse(run({"equiv", "--network", net, "--fault-a", ones}).out);
  CHECK(eq["equivalent"] == false);
  CHECK(eq["differences"] == nlohmann::json::array({"10"}));

  const auto all = parse_fault_set(run({"faults", "enum", "--network", net, "--type", "1"}).out);
  CHECK(all.faults.size() == 16);
  const auto seq = run({"faults", "enum", "--network", net, "--type", "01", "--classes"}).out;
  const auto par = run({"faults", "enum", "--network", net, "--type", "01", "--classes", "--jobs", "3"}).out;
  CHECK(seq == par);
  CHECK(nlohmann::json::parse(seq)["faults"] == 81);
}

TEST_CASE("gen shannon, psi-g, gadgets and DOT") {
  Workspace ws;
  CHECK(parse_network(run({"gen", "shannon", "--t", "0101"}).out).edge_count() == 12);
  CHECK(parse_network(run({"gen", "shannon", "--kind", "at-least", "--n", "4", "--threshold", "2"}).out).edge_count() == 20);
  CHECK(run({"gen", "shannon", "--kind", "at-least", "--n", "4"}).code == 1);
  CHECK(run({"gen", "shannon"}).code == 1);
  const auto graph = ws.write("k3.json", kTriangle);
  CHECK(parse_network(run({"gen", "psi-g", "--graph", graph}).out).edge_count() == 6);
  const auto r = ws.path("r.json");
  const auto q2 = run({"gen", "q2", "--graph", graph, "--m", "1", "--faults-out", r});
  CHECK(parse_network(q2.out).edge_count() == 20);
  std::ifstream in(r);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(parse_fault_set(buf.str()).faults.size() == 2);
  CHECK(run({"gen", "s1", "--n", "2", "--dot"}).out.find("graph switching_network") == 0);
  const auto net = ws.write("s1.json", run({"gen", "s1", "--n", "2"}).out);
  CHECK(run({"export-dot", "--network", net}).out == run({"gen", "s1", "--n", "2", "--dot"}).out);
}

TEST_CASE("bound and verify commands") {
  Workspace ws;
  const auto net = ws.write("s1.json", run({"gen", "s1", "--n", "2"}).out);
  std::vector<Fault> fam;
  for (AssignmentIndex d = 0; d < 4; ++d)
    fam.push_back(conjunction_fault(ConjunctionKind::s1_zero, 2, Assignment::from_index(d, 2)));
  const auto family = ws.write("fam.json", serialize_fault_set({FaultType::zero(), fam}));
  const auto base = ws.write("base.json", serialize_fault(constant_fault(s1_network(2), false)));
  const auto b = nlohmann::json::parse(run({"bound", "lemma1", "--network", net, "--base", base, "--family", family}).out);
  CHECK(b["t"] == 4);

  const auto t1 = run({"verify", "theorem1", "--n", "3", "--type", "0"});
  CHECK(t1.code == 0);
  CHECK(nlohmann::json::parse(t1.out)["t"] == 8);
  const auto t2 = run({"verify", "theorem2", "--n", "4", "--type", "01"});
  CHECK(t2.code == 0);
  CHECK(nlohmann::json::parse(t2.out)["t"] == 6);
  CHECK(run({"verify", "theorem2", "--n", "3", "--type", "0", "--network", net}).code == 1);
  const auto r1 = run({"verify", "remark1", "--max-n", "20"});
  CHECK(r1.code == 0);
  CHECK(nlohmann::json::parse(r1.out)["ok"] == true);
}

TEST_CASE("exit codes and diagnostics") {
  CHECK(run({}).code == 2);
  CHECK(run({"gen", "s1"}).code == 2);
  CHECK(run({"gen", "s1", "--n", "x"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  const auto missing = run({"eval", "--network", "/nonexistent/net.json", "--input", "1"});
  CHECK(missing.code == 1);
  CHECK(missing.err.rfind("error[E-IO]", 0) == 0);
  CHECK(missing.out.empty());
  const auto bad = run({"gen", "s1", "--n", "0"});
  CHECK(bad.code == 1);
  CHECK(bad.err.rfind("error[E-RANGE]", 0) == 0);
  Workspace ws;
  const auto net = ws.write("bad.json", "{\"nodes\": [0,\n}");
  const auto parse = run({"eval", "--network", net, "--input", "1"});
  CHECK(parse.err.rfind("error[E-PARSE]", 0) == 0);
  CHECK(parse.err.find("line 2") != std::string::npos);
}

TEST_CASE("outputs are reproducible; metadata stays on the error stream") {
  const auto a = run({"verify", "theorem1", "--n", "2", "--type", "01"});
  const auto b = run({"--meta", "verify", "theorem1", "--n", "2", "--type", "01"});
  CHECK(a.out == b.out);
  CHECK(a.err.empty());
  CHECK(b.err.find("meta:") == 0);

  Workspace ws;
  const auto file = ws.path("out.json");
  CHECK(run({"--output", file, "gen", "s2", "--n", "2"}).out.empty());
  std::ifstream in(file);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == run({"gen", "s2", "--n", "2"}).out);
}
