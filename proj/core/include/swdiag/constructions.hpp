#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "swdiag/boolfn.hpp"
#include "swdiag/network.hpp"
#include "swdiag/symmetric.hpp"
#include "swdiag/treediag.hpp"

namespace swdiag {

/// Simple undirected graph on vertices 1..vertex_count.
class SimpleGraph {
 public:
  SimpleGraph(int vertex_count, std::vector<std::pair<int, int>> edges);

  int vertex_count() const noexcept { return vertex_count_; }
  /// Each pair stored with first < second, in input order.
  const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }

 private:
  int vertex_count_;
  std::vector<std::pair<int, int>> edges_;
};

/// Vertex-cover question: is there a cover of size <= max_cover? Requires
/// 0 < max_cover < vertex_count.
struct VcInstance {
  VcInstance(SimpleGraph g, int m);

  SimpleGraph graph;
  int max_cover;
};

/// n parallel pairs {x_i, x_i-bar} in series; edge 2(i-1) carries x_i and
/// edge 2(i-1)+1 carries x_i-bar. Implements constant 1.
SwitchingNetwork s1_network(int n);

/// Series path x_1, x_1-bar, ..., x_n, x_n-bar with the same edge numbering as
/// s1_network. Implements constant 0.
SwitchingNetwork s2_network(int n);

enum class ConjunctionKind { s1_zero, s2_one };

/// Fault turning S1 (zeroing) or S2 (setting to one) into the conjunction
/// x_1^{d_1} ... x_n^{d_n}. delta must have n bits.
Fault conjunction_fault(ConjunctionKind kind, int n, const Assignment& delta);

/// Series of parallel pairs {x_i, x_j}, one per graph edge; implements the
/// product of clauses (x_i v x_j).
SwitchingNetwork psi_g_network(const SimpleGraph& graph);

/// Truth table of the clause product over x_1..x_n.
BooleanFunction psi_g_function(const SimpleGraph& graph);

/// Reduction gadget with its two-fault set R = {lambda, rho}.
struct Gadget {
  SwitchingNetwork network;
  FaultType fault_type;
  Fault lambda;
  Fault rho;
};

/// Threshold network for "at least m+1 ones" in parallel with psi_g_network;
/// rho zeroes every clause-network edge.
Gadget q1_network(const VcInstance& instance);

/// Threshold network in parallel with [psi_g_network, x_1, x_1-bar] in series;
/// rho sets the blocking x_1 / x_1-bar edges to 1.
Gadget q2_network(const VcInstance& instance);

enum class ReductionVariant { q1, q2 };

/// Decides the vertex-cover instance through the diagnosis problem on the
/// gadget: true iff the tree sends lambda and rho to faults with different
/// functions.
bool vc_reduction_decide(const VcInstance& instance, ReductionVariant variant);

/// Brute force over vertex subsets by increasing size.
bool has_vertex_cover(const SimpleGraph& graph, int max_size);
int min_vertex_cover_size(const SimpleGraph& graph);

struct Theorem1Report {
  int n = 0;
  FaultType fault_type = FaultType::both();
  bool uses_s1 = true;
  std::size_t edge_count = 0;
  /// Every family fault induces its predicted conjunction.
  bool family_functions_ok = false;
  /// Each family function differs from the base exactly at its own delta.
  bool difference_sets_ok = false;
  std::size_t t = 0;
  std::size_t expected_t = 0;
  /// Exact hitting-set search (no singleton shortcut) agreed with t.
  std::optional<bool> exact_t_confirmed;
  /// Exact tree depth over the full C-fault set.
  std::optional<int> exact_depth;
  bool partial = false;
  std::string note;

  bool ok() const;
};

struct Theorem1Options {
  int exact_hitting_set_max_n = 4;
  int exact_tree_max_n = 2;
};

Theorem1Report theorem1_verify(int n, FaultType type, const Theorem1Options& options = {});

struct Theorem2Case {
  Assignment delta;
  Fault fault;
  /// Clause (C = {0,1}, {1}) or term (C = {0}) the fault should induce.
  BooleanFunction predicted;
  bool matches = false;
};

struct Theorem2Report {
  int n = 0;
  int k = 0;
  FaultType fault_type = FaultType::both();
  std::vector<Theorem2Case> cases;
  /// The base fault (all edges to 1, resp. to 0) induces constant 1, resp. 0.
  bool base_ok = false;
  std::size_t t = 0;
  std::size_t expected_t = 0;

  bool ok() const;
};

/// Shannon network of the symmetric function the lower-bound argument uses for
/// this fault type ("!= ceil(n/2) ones" for {0,1} and {1}, "= ceil(n/2)" for {0}).
SwitchingNetwork theorem2_network(int n, FaultType type);
SymmetricSpec theorem2_function(int n, FaultType type);

/// Checks the literal-set fault families on a network q implementing the
/// required symmetric function.
Theorem2Report theorem2_verify(int n, FaultType type, const SwitchingNetwork& q);

std::uint64_t binomial(int n, int k);

struct Remark1Row {
  int n;
  std::uint64_t central;  // C(n, ceil(n/2))
  std::uint64_t largest;  // max_k C(n, k)
  bool bound_holds;       // central >= 2^n / (n+1)
};

std::vector<Remark1Row> remark1_check(int max_n);

}  // namespace swdiag
