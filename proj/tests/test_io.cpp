#include <sstream>

#include "doctest.h"
#include "swdiag/io.hpp"

using namespace swdiag;

namespace {

template <typename F>
ParseError parse_error_of(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(0, 0, "");
}

}  // namespace

TEST_CASE("network documents round-trip") {
  const auto s1 = s1_network(2);
  const auto text = serialize_network(s1);
  CHECK(parse_network(text) == s1);
  CHECK(serialize_network(parse_network(text)) == text);
  const auto ladder = shannon_network(SymmetricSpec::parse("0110"));
  CHECK(parse_network(serialize_network(ladder)) == ladder);
}

TEST_CASE("hand-written single edge evaluates as its literal") {
  const auto net = parse_network(R"({"format": "swdiag-network", "version": 1,
    "nodes": [0, 1], "poles": [0, 1],
    "edges": [{"id": 0, "u": 0, "v": 1, "var": 0, "neg": false}]})");
  CHECK(truth_table(net, {}).to_string() == "01");
}

TEST_CASE("positioned errors") {
  const auto unknown = parse_error_of([] {
    parse_network("{\"format\": \"swdiag-network\", \"version\": 1,\n \"nodes\": [0, 1], \"poles\": [0, 1],\n"
                  " \"edges\": [{\"id\": 0, \"u\": 0, \"v\": 1, \"var\": 0, \"neg\": false, \"color\": 3}]}");
  });
  CHECK(unknown.line() == 3);
  CHECK(unknown.column() > 1);
  CHECK(std::string(unknown.what()).find("color") != std::string::npos);

  const auto syntax = parse_error_of([] { parse_network("{\n  \"nodes\": [0, 1,\n}"); });
  CHECK(syntax.line() == 3);
  CHECK(syntax.code() == ErrorCode::parse);

  const auto semantic = parse_error_of([] {
    parse_network(R"({"format": "swdiag-network", "version": 1, "nodes": [0, 1], "poles": [0, 0],
      "edges": [{"id": 0, "u": 0, "v": 1, "var": 0, "neg": false}]})");
  });
  CHECK(std::string(semantic.what()).find("pole") != std::string::npos);

  CHECK_THROWS_AS(parse_network(R"({"format": "swdiag-tree", "version": 1})"), ParseError);
  CHECK_THROWS_AS(parse_network(R"({"format": "swdiag-network", "version": 2, "nodes": [], "poles": [0,1], "edges": []})"),
                  ParseError);
}

TEST_CASE("fault documents") {
  Fault f;
  f.set(3, true).set(0, false);
  CHECK(parse_fault(serialize_fault(f)) == f);
  CHECK(parse_fault(serialize_fault(Fault{})).is_empty());
  CHECK_THROWS_AS(parse_fault(R"({"format": "swdiag-fault", "version": 1, "assign": [{"edge": 1, "value": 2}]})"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_fault(R"({"format": "swdiag-fault", "version": 1, "assign": [{"edge": 1, "value": 0}, {"edge": 1, "value": 1}]})"),
      ParseError);

  const FaultSet set{FaultType::zero(), {Fault{}, f}};
  const auto back = parse_fault_set(serialize_fault_set(set));
  CHECK(back.type == FaultType::zero());
  CHECK(back.faults == set.faults);
}

TEST_CASE("tree documents") {
  const auto s1 = s1_network(2);
  std::vector<Fault> r{Fault{}};
  for (AssignmentIndex d = 0; d < 4; ++d)
    r.push_back(conjunction_fault(ConjunctionKind::s1_zero, 2, Assignment::from_index(d, 2)));
  const DiagnosisProblem p{s1, FaultType::zero(), r};
  const auto tree = build_tree_greedy(p);
  const auto text = serialize_tree(tree);
  const auto back = parse_tree(text);
  back.check_structure();
  CHECK(back.depth() == tree.depth());
  CHECK(back.node_count() == tree.node_count());
  CHECK(verify_tree(back, p));
  CHECK(serialize_tree(back) == text);

  CHECK_THROWS_AS(parse_tree(R"({"format": "swdiag-tree", "version": 1, "arity": 2, "faults": [],
    "root": {"fault": 0}})"),
                  ParseError);
  CHECK_THROWS_AS(parse_tree(R"({"format": "swdiag-tree", "version": 1, "arity": 2, "faults": [{"assign": []}],
    "root": {"query": "101", "children": [{"fault": 0}, {"fault": 0}]}})"),
                  ParseError);
}

TEST_CASE("graph documents") {
  const SimpleGraph g(3, {{1, 2}, {3, 2}});
  const auto back = parse_graph(serialize_graph(g));
  CHECK(back.vertex_count() == 3);
  CHECK(back.edges() == g.edges());
  CHECK_THROWS_AS(parse_graph(R"({"n": 3, "edges": [[1, 1]]})"), Error);
  CHECK_THROWS_AS(parse_graph(R"({"n": 3, "edges": [[1, 2, 3]]})"), ParseError);
}

TEST_CASE("DOT export") {
  const auto s1 = s1_network(2);
  const DiagnosisProblem p{s1, FaultType::zero(), enumerate_faults(s1, FaultType::zero())};
  const auto tree = build_tree_greedy(p);
  const auto dot = tree_to_dot(tree);
  std::size_t nodes = 0, edges = 0, labelled = 0;
  std::istringstream in(dot);
  for (std::string line; std::getline(in, line);) {
    if (line.find("->") != std::string::npos) {
      ++edges;
      if (line.find("label=\"0\"") != std::string::npos || line.find("label=\"1\"") != std::string::npos) ++labelled;
    } else if (line.find("[shape=") != std::string::npos) {
      ++nodes;
    }
  }
  CHECK(nodes == tree.node_count());
  CHECK(edges == tree.node_count() - 1);
  CHECK(labelled == edges);

  const auto ndot = network_to_dot(s1);
  CHECK(ndot.find("graph switching_network") != std::string::npos);
  CHECK(ndot.find("~x2") != std::string::npos);
  CHECK(literal_name({3, true}) == "~x3");
}
