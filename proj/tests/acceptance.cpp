// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.

#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "swdiag/constructions.hpp"
#include "swdiag/treediag.hpp"

using namespace swdiag;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string first_failure;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) first_failure = what;
    pass = pass && ok;
  }
};

const FaultType kTypes[] = {FaultType::both(), FaultType::zero(), FaultType::one()};

Outcome semantics_equivalence() {
  Outcome o;
  std::mt19937_64 rng(20240501);
  std::size_t checks = 0;
  for (int i = 0; i < 500; ++i) {
    const auto net = oracle::random_network(rng, {8, 12, 5});
    o.require(validate(net).empty(), "generated network invalid");
    std::vector<Fault> faults{Fault{}};
    for (int k = 0; k < 3; ++k) faults.push_back(oracle::random_fault(rng, net, kTypes[k], 0.35));
    for (const Fault& f : faults) {
      const Evaluator eval(net, f);
      for (AssignmentIndex a = 0; a < (AssignmentIndex{1} << net.arity()); ++a) {
        const auto in = Assignment::from_index(a, net.arity());
        o.require(eval(in) == path_dnf_eval(net, f, in), "connectivity differs from path DNF");
        ++checks;
      }
    }
  }
  o.detail = "500 networks, " + std::to_string(checks) + " (fault, input) pairs";
  return o;
}

Outcome shannon_correctness() {
  Outcome o;
  std::size_t networks = 0;
  auto check = [&](const std::vector<bool>& values) {
    const int n = static_cast<int>(values.size()) - 1;
    const auto net = shannon_network(SymmetricSpec(values));
    ++networks;
    o.require(validate(net).empty(), "ladder invalid");
    o.require(net.edge_count() == static_cast<std::size_t>(n * n + n), "ladder edge count");
    const auto expect = oracle::symmetric(values);
    o.require(oracle::table(net, {}) == expect, "ladder table (closure oracle)");
    const auto lib = truth_table(net, {});
    for (AssignmentIndex a = 0; a < expect.size(); ++a) o.require(lib[a] == expect[a], "ladder table (library)");
  };
  for (int n = 1; n <= 5; ++n)
    for (std::uint32_t code = 1; code < (1u << (n + 1)); ++code) {
      std::vector<bool> values(static_cast<std::size_t>(n + 1));
      for (int w = 0; w <= n; ++w) values[static_cast<std::size_t>(w)] = (code >> w) & 1u;
      check(values);
    }
  for (int n = 1; n <= 8; ++n) {
    const int mid = (n + 1) / 2;
    std::vector<bool> eq(static_cast<std::size_t>(n + 1)), ne(static_cast<std::size_t>(n + 1), true);
    eq[static_cast<std::size_t>(mid)] = true;
    ne[static_cast<std::size_t>(mid)] = false;
    check(eq);
    check(ne);
    for (int th = 1; th <= n; ++th) {
      std::vector<bool> at(static_cast<std::size_t>(n + 1));
      for (int w = th; w <= n; ++w) at[static_cast<std::size_t>(w)] = true;
      check(at);
    }
  }
  o.detail = std::to_string(networks) + " ladders (all tuples n<=5, three families n<=8)";
  return o;
}

Outcome theorem1_scale() {
  Outcome o;
  int confirmed = 0;
  for (int n = 1; n <= 10; ++n) {
    for (const FaultType type : kTypes) {
      const auto r = theorem1_verify(n, type);
      const std::string tag = "n=" + std::to_string(n) + " C=" + type.name();
      o.require(r.ok() && r.t == (std::size_t{1} << n), tag + ": library report");

      // Independent rebuild of the family; closure oracle up to n = 6, library tables beyond.
      const bool s1 = type.allows(false);
      const auto net = s1 ? s1_network(n) : s2_network(n);
      const Fault base = s1 ? constant_fault(net, false) : Fault{};
      const auto table_of = [&](const Fault& f) {
        if (n <= 6) return oracle::table(net, f);
        const auto lib = truth_table(net, f);
        oracle::Table t(lib.size());
        for (AssignmentIndex a = 0; a < lib.size(); ++a) t[a] = lib[a];
        return t;
      };
      const auto base_table = table_of(base);
      std::vector<std::vector<std::uint64_t>> diffs;
      bool singletons = true;
      for (AssignmentIndex d = 0; d < (AssignmentIndex{1} << n); ++d) {
        const Fault f = conjunction_fault(s1 ? ConjunctionKind::s1_zero : ConjunctionKind::s2_one, n,
                                          Assignment::from_index(d, n));
        o.require(is_fault_of(net, f, type), tag + ": family fault outside C");
        const auto t = table_of(f);
        std::vector<std::uint64_t> diff;
        for (AssignmentIndex a = 0; a < t.size(); ++a)
          if (t[a] != base_table[a]) diff.push_back(a);
        singletons = singletons && diff == std::vector<std::uint64_t>{d};
        diffs.push_back(std::move(diff));
      }
      o.require(singletons, tag + ": difference sets are not the singletons {delta}");
      if (n <= 4) {
        o.require(oracle::min_hitting_set(diffs) == (std::size_t{1} << n), tag + ": brute-force hitting set");
        o.require(r.exact_t_confirmed.value_or(false), tag + ": exact search not confirmed");
        ++confirmed;
      }
      if (n == 2) {
        o.require(r.exact_depth.value_or(0) >= 4, tag + ": exact depth");
        oracle::TreeExistence search(oracle::distinct_tables(net, enumerate_faults(net, type)));
        o.require(!search.exists(3), tag + ": a depth-3 tree exists");
      }
    }
  }
  o.detail = "n=1..10 x 3 fault types, t=2^n; " + std::to_string(confirmed) +
             " exact confirmations; depth>=4 at n=2 by exhaustive search";
  return o;
}

Outcome theorem2_scale() {
  Outcome o;
  std::ostringstream ts;
  for (int n : {3, 4, 5}) {
    for (const FaultType type : kTypes) {
      const std::string tag = "n=" + std::to_string(n) + " C=" + type.name();
      const auto q = theorem2_network(n, type);
      const auto r = theorem2_verify(n, type, q);
      const int k = (n + 1) / 2;
      std::size_t expected = 0;
      for (AssignmentIndex d = 0; d < (AssignmentIndex{1} << n); ++d) expected += std::popcount(d) == k;
      o.require(r.ok() && r.t == expected && r.cases.size() == expected, tag + ": library report");
      const bool clause = type.allows(true);

      std::vector<bool> psi(static_cast<std::size_t>(n + 1), clause);
      psi[static_cast<std::size_t>(k)] = !clause;
      o.require(oracle::table(q, {}) == oracle::symmetric(psi), tag + ": Q does not implement psi");

      const auto base_table = oracle::table(q, constant_fault(q, clause));
      std::vector<std::vector<std::uint64_t>> diffs;
      for (const auto& c : r.cases) {
        o.require(c.delta.popcount() == static_cast<std::size_t>(k), tag + ": delta weight");
        for (const auto& [edge, value] : c.fault.assignments())
          o.require(type.allows(value) && q.find_edge(edge) != nullptr, tag + ": case fault outside C");
        const auto t = oracle::table(q, c.fault);
        const AssignmentIndex d = c.delta.index();
        std::vector<std::uint64_t> diff;
        for (AssignmentIndex a = 0; a < t.size(); ++a) {
          o.require(t[a] == (clause ? a != d : a == d), tag + ": induced function is not the expected clause or term");
          if (t[a] != base_table[a]) diff.push_back(a);
        }
        diffs.push_back(std::move(diff));
      }
      o.require(oracle::min_hitting_set(diffs) == expected, tag + ": brute-force hitting set");
      if (type == FaultType::both()) ts << (n == 3 ? "" : ",") << r.t;
    }
  }
  o.detail = "n in {3,4,5} x 3 fault types, t = {" + ts.str() + "}";
  return o;
}

Outcome remark1() {
  Outcome o;
  std::vector<std::uint64_t> row{1};
  for (int n = 0; n <= 20; ++n) {
    if (n > 0) {
      std::vector<std::uint64_t> next(static_cast<std::size_t>(n + 1), 1);
      for (int j = 1; j < n; ++j) next[static_cast<std::size_t>(j)] = row[j - 1] + row[j];
      row = std::move(next);
    }
    const std::uint64_t central = row[static_cast<std::size_t>((n + 1) / 2)];
    std::uint64_t largest = 0;
    for (auto c : row) largest = std::max(largest, c);
    o.require(central * static_cast<std::uint64_t>(n + 1) >= (std::uint64_t{1} << n), "bound fails");
    o.require(central == largest, "central is not the largest");
    const auto lib = remark1_check(20)[static_cast<std::size_t>(n)];
    o.require(lib.central == central && lib.bound_holds && lib.largest == largest, "library row");
  }
  o.detail = "n=0..20";
  return o;
}

Outcome reduction() {
  Outcome o;
  std::size_t instances = 0;
  auto check = [&](int n, const std::vector<std::pair<int, int>>& edges) {
    const SimpleGraph g(n, edges);
    const int best = oracle::min_vertex_cover(n, edges);
    for (int m = 1; m < n; ++m) {
      const VcInstance inst(g, m);
      const bool truth = best <= m;
      o.require(vc_reduction_decide(inst, ReductionVariant::q1) == truth, "q1 disagrees with brute force");
      o.require(vc_reduction_decide(inst, ReductionVariant::q2) == truth, "q2 disagrees with brute force");
      ++instances;
    }
  };
  for (int n = 2; n <= 6; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v) slots.emplace_back(u, v);
    for (std::uint32_t mask = 1; mask < (1u << slots.size()); ++mask) {
      std::vector<std::pair<int, int>> edges;
      for (std::size_t i = 0; i < slots.size(); ++i)
        if ((mask >> i) & 1u) edges.push_back(slots[i]);
      check(n, edges);
    }
  }
  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    const int n = 7 + i % 2;
    std::vector<std::pair<int, int>> edges;
    const double p = std::uniform_real_distribution<double>(0.15, 0.7)(rng);
    while (edges.empty()) {
      for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
          if (std::bernoulli_distribution(p)(rng)) edges.emplace_back(u, v);
    }
    check(n, edges);
  }
  o.detail = std::to_string(instances) + " (graph, m) instances, both gadgets";
  return o;
}

Outcome tree_bounds() {
  Outcome o;
  std::mt19937_64 rng(4242);
  int exhaustive = 0;
  std::size_t lemma_checks = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto net = oracle::random_network(rng, {6, 9, 4});
    const FaultType type = kTypes[i % 3];
    const int size = 1 + static_cast<int>(rng() % 10);
    std::vector<Fault> r;
    for (int k = 0; k < size; ++k) r.push_back(oracle::random_fault(rng, net, type, 0.4));
    const DiagnosisProblem p{net, type, r};

    const auto greedy = build_tree_greedy(p);
    o.require(verify_tree(greedy, p), "greedy tree does not verify");
    o.require(greedy.node_count() <= 2 * r.size() - 1, "greedy tree exceeds 2|R|-1 nodes");

    const auto exact = build_tree_exact(p);
    o.require(verify_tree(exact, p), "exact tree does not verify");
    const auto classes = oracle::distinct_tables(net, r);
    const int log_bound = static_cast<int>(std::bit_width(classes.size() - 1));
    o.require(exact.depth() >= log_bound, "exact depth below ceil(log2 classes)");

    const auto fcs = function_classes(p);
    for (std::size_t c = 0; c < fcs.size(); ++c) {
      std::vector<BooleanFunction> others;
      for (std::size_t d = 0; d < fcs.size(); ++d)
        if (d != c) others.push_back(fcs[d].function);
      if (others.empty()) continue;
      const auto t = min_distinguishing_set(fcs[c].function, others).t;
      o.require(exact.depth() >= static_cast<int>(t), "exact depth below a distinguishing-set bound");
      ++lemma_checks;
    }

    if (net.arity() <= 3) {
      oracle::TreeExistence search(classes);
      o.require(search.exists(exact.depth()), "exhaustive search finds no tree of the exact depth");
      if (exact.depth() > 0) o.require(!search.exists(exact.depth() - 1), "a shallower tree exists");
      ++exhaustive;
    }
  }
  o.detail = "1000 problems, " + std::to_string(lemma_checks) + " distinguishing-set bounds, " +
             std::to_string(exhaustive) + " exhaustive optimality checks";
  return o;
}

struct Criterion {
  const char* id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"AC1", "path-DNF and connectivity semantics agree", 30, semantics_equivalence},
      {"AC2", "ladder size and truth tables", 60, shannon_correctness},
      {"AC3", "2^n lower bound on S1/S2", 120, theorem1_scale},
      {"AC4", "central-binomial lower bound on the ladder", 120, theorem2_scale},
      {"AC5", "central binomial bounds", 1, remark1},
      {"AC6", "vertex-cover reduction", 600, reduction},
      {"AC7", "tree size and depth bounds", 300, tree_bounds},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.first_failure = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) out.require(false, "over time budget");
    all = all && out.pass;
    std::printf("%s %s %s: %s (%.2f s, budget %.0f s)%s%s\n", out.pass ? "PASS" : "FAIL", c.id, c.name,
                out.detail.c_str(), secs, c.budget_seconds, out.pass ? "" : " -- ", out.first_failure.c_str());
    std::fflush(stdout);
  }
  std::printf("INFO AC8 unbounded-n asymptotics are not executable; AC3 and AC4 check the finite instances and their fault families instead\n");
  std::printf("%s\n", all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
