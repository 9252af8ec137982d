#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "swdiag/constructions.hpp"
#include "swdiag/treediag.hpp"

using namespace swdiag;

namespace {

std::vector<Fault> s1_conjunction_family(int n) {
  std::vector<Fault> r{Fault{}};
  for (AssignmentIndex d = 0; d < (AssignmentIndex{1} << n); ++d)
    r.push_back(conjunction_fault(ConjunctionKind::s1_zero, n, Assignment::from_index(d, n)));
  return r;
}

}  // namespace

TEST_CASE("function classes") {
  const auto s1 = s1_network(2);
  CHECK(function_classes({s1, FaultType::both(), {Fault{}}}).size() == 1);

  const auto two = function_classes({s1, FaultType::zero(), {Fault{}, constant_fault(s1, false)}});
  REQUIRE(two.size() == 2);
  CHECK(two[0].function.is_constant(true));
  CHECK(two[1].function.is_constant(false));

  // Once the first pair is cut, zeroing more edges changes nothing.
  Fault a;
  a.set(0, false).set(1, false);
  Fault c = a;
  c.set(2, false);
  const auto merged = function_classes({s1, FaultType::zero(), {a, c}});
  CHECK(merged.size() == 1);
  CHECK(merged[0].members == std::vector<std::size_t>{0, 1});

  // lambda represents its class even when listed later
  Fault harmless;
  harmless.set(0, true);
  const auto cls = function_classes({s1, FaultType::both(), {harmless, Fault{}}});
  REQUIRE(cls.size() == 1);
  CHECK(cls[0].representative == 1);
}

TEST_CASE("problem validation") {
  const auto s1 = s1_network(2);
  CHECK_THROWS_AS(check_problem({s1, FaultType::zero(), {}}), Error);
  CHECK_THROWS_AS(check_problem({s1, FaultType::zero(), {Fault().set(0, true)}}), Error);
  CHECK_THROWS_AS(check_problem({s1, FaultType::zero(), {Fault().set(99, false)}}), Error);
}

TEST_CASE("greedy trees") {
  const auto s1 = s1_network(2);
  const DiagnosisProblem single{s1, FaultType::both(), {Fault{}}};
  const auto leaf = build_tree_greedy(single);
  CHECK(leaf.node_count() == 1);
  CHECK(leaf.depth() == 0);
  CHECK(verify_tree(leaf, single));

  const DiagnosisProblem family{s1, FaultType::zero(), s1_conjunction_family(2)};
  const auto t = build_tree_greedy(family);
  CHECK(t.node_count() <= 9);
  CHECK(verify_tree(t, family));
  for (const Fault& f : family.faults) {
    const auto got = run_tree(t, table_oracle(truth_table(s1, f)));
    CHECK(truth_table(s1, got) == truth_table(s1, f));
  }

  const VcInstance k3(SimpleGraph(3, {{1, 2}, {2, 3}, {1, 3}}), 2);
  const Gadget g = q1_network(k3);
  const DiagnosisProblem q{g.network, g.fault_type, {g.lambda, g.rho}};
  const auto qt = build_tree_greedy(q);
  CHECK(qt.depth() == 1);
  CHECK(verify_tree(qt, q));
}

TEST_CASE("exact trees") {
  const auto s1 = s1_network(2);
  const DiagnosisProblem two{s1, FaultType::zero(), {Fault{}, constant_fault(s1, false)}};
  CHECK(build_tree_exact(two).depth() == 1);

  std::vector<Fault> fam = s1_conjunction_family(2);
  fam.front() = constant_fault(s1, false);
  const DiagnosisProblem conj{s1, FaultType::zero(), fam};
  const auto tc = build_tree_exact(conj);
  CHECK(tc.depth() == 4);
  CHECK(verify_tree(tc, conj));

  const DiagnosisProblem full{s1, FaultType::zero(), enumerate_faults(s1, FaultType::zero())};
  const auto tf = build_tree_exact(full);
  CHECK(tf.depth() >= 4);
  CHECK(verify_tree(tf, full));

  ExactOptions tight;
  tight.max_classes = 2;
  try {
    build_tree_exact(conj, tight);
    FAIL("expected resource error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::resource);
  }
}

TEST_CASE("run_tree and structural checks") {
  DecisionTree leaf(2);
  leaf.set_root(leaf.add_leaf(Fault().set(0, false)));
  int calls = 0;
  const auto out = run_tree(leaf, [&calls](const Assignment&) {
    ++calls;
    return true;
  });
  CHECK(out == Fault().set(0, false));
  CHECK(calls == 0);

  DecisionTree broken(2);
  const int l = broken.add_leaf(Fault{});
  broken.set_root(broken.add_query(1, l, -1));
  CHECK_THROWS_AS(broken.check_structure(), Error);
  CHECK_THROWS_AS(run_tree(broken, [](const Assignment&) { return true; }), Error);

  DecisionTree shared(2);
  const int s = shared.add_leaf(Fault{});
  shared.set_root(shared.add_query(1, s, s));
  CHECK_THROWS_AS(shared.check_structure(), Error);

  DecisionTree wide(2);
  const int a = wide.add_leaf(Fault{});
  const int b = wide.add_leaf(Fault{});
  wide.set_root(wide.add_query(4, a, b));
  CHECK_THROWS_AS(wide.check_structure(), Error);
}

TEST_CASE("depth-1 tree traces the lambda oracle") {
  const auto s1 = s1_network(2);
  const DiagnosisProblem p{s1, FaultType::zero(), {Fault{}, constant_fault(s1, false)}};
  const auto t = build_tree_greedy(p);
  REQUIRE(t.depth() == 1);
  const auto out = run_tree(t, table_oracle(truth_table(s1, {})));
  CHECK(out.is_empty());
}

TEST_CASE("swapped leaves fail verification") {
  const auto s1 = s1_network(2);
  const DiagnosisProblem p{s1, FaultType::zero(), {Fault{}, constant_fault(s1, false)}};
  auto t = build_tree_greedy(p);
  CHECK(verify_tree(t, p));
  auto& root = t.node(t.root());
  std::swap(t.node(root.children[0]).fault, t.node(root.children[1]).fault);
  CHECK_FALSE(verify_tree(t, p));
}

TEST_CASE("leaf faults outside the fault type fail verification") {
  const auto s1 = s1_network(1);
  const DiagnosisProblem p{s1, FaultType::zero(), {Fault{}}};
  DecisionTree t(1);
  t.set_root(t.add_leaf(Fault().set(0, true)));
  CHECK_FALSE(verify_tree(t, p));
}

TEST_CASE("random problems: builders are sound, bounded and exact") {
  std::mt19937_64 rng(23);
  const FaultType types[] = {FaultType::both(), FaultType::zero(), FaultType::one()};
  for (int trial = 0; trial < 120; ++trial) {
    const auto net = oracle::random_network(rng, {5, 7, 3});
    const FaultType type = types[trial % 3];
    std::vector<Fault> r;
    const int size = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < size; ++i) r.push_back(oracle::random_fault(rng, net, type, 0.4));
    const DiagnosisProblem p{net, type, r};

    const auto greedy = build_tree_greedy(p);
    CHECK(verify_tree(greedy, p));
    CHECK(greedy.node_count() <= 2 * r.size() - 1);
    CHECK(build_tree_greedy(p).nodes().size() == greedy.nodes().size());

    const auto exact = build_tree_exact(p);
    CHECK(verify_tree(exact, p));
    CHECK(exact.depth() <= greedy.depth());

    oracle::TreeExistence search(oracle::distinct_tables(net, r));
    CHECK(search.exists(exact.depth()));
    if (exact.depth() > 0) CHECK_FALSE(search.exists(exact.depth() - 1));
  }
}
