#include "swdiag/constructions.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace swdiag {

namespace {
__extension__ using Wide = unsigned __int128;
}  // namespace

SimpleGraph::SimpleGraph(int vertex_count, std::vector<std::pair<int, int>> edges) : vertex_count_(vertex_count) {
  if (vertex_count < 1) throw Error(ErrorCode::range, "graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 1 || b < 1 || a > vertex_count || b > vertex_count) {
      throw Error(ErrorCode::range, "edge {" + std::to_string(a) + "," + std::to_string(b) +
                                        "} leaves vertex range 1.." + std::to_string(vertex_count));
    }
    if (a == b) throw Error(ErrorCode::range, "self-loop at vertex " + std::to_string(a));
    const auto e = std::minmax(a, b);
    if (!seen.insert(e).second) {
      throw Error(ErrorCode::range, "duplicate edge {" + std::to_string(e.first) + "," +
                                        std::to_string(e.second) + "}");
    }
    edges_.emplace_back(e.first, e.second);
  }
}

VcInstance::VcInstance(SimpleGraph g, int m) : graph(std::move(g)), max_cover(m) {
  if (m <= 0 || m >= graph.vertex_count()) {
    throw Error(ErrorCode::range, "cover bound m must satisfy 0 < m < " + std::to_string(graph.vertex_count()));
  }
}

namespace {

void require_positive(int n, const char* what) {
  if (n < 1) throw Error(ErrorCode::range, std::string(what) + " needs n >= 1");
}

// Appends the clause product between `from` and `to`, allocating interior
// nodes from `next_node`.
void append_clause_chain(const SimpleGraph& graph, NodeId from, NodeId to, NodeId& next_node,
                         std::vector<NodeId>& nodes, std::vector<Edge>& edges) {
  const auto& clauses = graph.edges();
  NodeId left = from;
  for (std::size_t l = 0; l < clauses.size(); ++l) {
    NodeId right = to;
    if (l + 1 < clauses.size()) {
      right = next_node++;
      nodes.push_back(right);
    }
    edges.push_back(Edge{static_cast<EdgeId>(edges.size()), left, right, Literal{clauses[l].first, false}});
    edges.push_back(Edge{static_cast<EdgeId>(edges.size()), left, right, Literal{clauses[l].second, false}});
    left = right;
  }
}

void require_clauses(const SimpleGraph& graph) {
  if (graph.edges().empty()) throw Error(ErrorCode::range, "graph has no edges, the clause product is empty");
}

struct Composite {
  std::vector<NodeId> nodes;
  NodeId pole_a;
  NodeId pole_b;
  std::vector<Edge> edges;
  NodeId next_node;
};

Composite threshold_part(const VcInstance& instance) {
  const int n = instance.graph.vertex_count();
  SwitchingNetwork p1 = shannon_network(symmetric_spec(SymmetricKind::at_least, n, instance.max_cover + 1));
  Composite c{p1.nodes(), p1.pole_a(), p1.pole_b(), p1.edges(), p1.nodes().back() + 1};
  return c;
}

}  // namespace

SwitchingNetwork s1_network(int n) {
  require_positive(n, "S1");
  std::vector<NodeId> nodes(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) nodes[i] = i;
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) {
    edges.push_back(Edge{2 * (i - 1), i - 1, i, Literal{i, false}});
    edges.push_back(Edge{2 * (i - 1) + 1, i - 1, i, Literal{i, true}});
  }
  return SwitchingNetwork(std::move(nodes), 0, n, std::move(edges));
}

SwitchingNetwork s2_network(int n) {
  require_positive(n, "S2");
  std::vector<NodeId> nodes(2 * static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= 2 * n; ++i) nodes[i] = i;
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) {
    edges.push_back(Edge{2 * (i - 1), 2 * (i - 1), 2 * (i - 1) + 1, Literal{i, false}});
    edges.push_back(Edge{2 * (i - 1) + 1, 2 * (i - 1) + 1, 2 * i, Literal{i, true}});
  }
  return SwitchingNetwork(std::move(nodes), 0, 2 * n, std::move(edges));
}

Fault conjunction_fault(ConjunctionKind kind, int n, const Assignment& delta) {
  require_positive(n, "conjunction fault");
  if (delta.arity() != n) {
    throw Error(ErrorCode::arity, "delta has " + std::to_string(delta.arity()) + " bits, expected " + std::to_string(n));
  }
  const bool constant = kind == ConjunctionKind::s2_one;
  Fault f;
  for (int i = 1; i <= n; ++i) {
    // delta_i = 0 hits the x_i edge, delta_i = 1 the x_i-bar edge
    const EdgeId edge = 2 * (i - 1) + (delta[static_cast<std::size_t>(i - 1)] ? 1 : 0);
    f.set(edge, constant);
  }
  return f;
}

SwitchingNetwork psi_g_network(const SimpleGraph& graph) {
  require_clauses(graph);
  std::vector<NodeId> nodes{0, 1};
  std::vector<Edge> edges;
  NodeId next = 2;
  append_clause_chain(graph, 0, 1, next, nodes, edges);
  return SwitchingNetwork(std::move(nodes), 0, 1, std::move(edges));
}

BooleanFunction psi_g_function(const SimpleGraph& graph) {
  return BooleanFunction::from_predicate(graph.vertex_count(), [&graph](AssignmentIndex a) {
    return std::all_of(graph.edges().begin(), graph.edges().end(), [a](const auto& e) {
      return ((a >> (e.first - 1)) & 1u) != 0 || ((a >> (e.second - 1)) & 1u) != 0;
    });
  });
}

Gadget q1_network(const VcInstance& instance) {
  require_clauses(instance.graph);
  Composite c = threshold_part(instance);
  const auto first_clause_edge = static_cast<EdgeId>(c.edges.size());
  append_clause_chain(instance.graph, c.pole_a, c.pole_b, c.next_node, c.nodes, c.edges);
  Fault rho;
  for (auto e = first_clause_edge; e < static_cast<EdgeId>(c.edges.size()); ++e) rho.set(e, false);
  return Gadget{SwitchingNetwork(std::move(c.nodes), c.pole_a, c.pole_b, std::move(c.edges)), FaultType::zero(),
                Fault{}, std::move(rho)};
}

Gadget q2_network(const VcInstance& instance) {
  require_clauses(instance.graph);
  Composite c = threshold_part(instance);
  const NodeId clause_end = c.next_node++;
  const NodeId middle = c.next_node++;
  c.nodes.push_back(clause_end);
  c.nodes.push_back(middle);
  append_clause_chain(instance.graph, c.pole_a, clause_end, c.next_node, c.nodes, c.edges);
  const auto blocking = static_cast<EdgeId>(c.edges.size());
  c.edges.push_back(Edge{blocking, clause_end, middle, Literal{1, false}});
  c.edges.push_back(Edge{blocking + 1, middle, c.pole_b, Literal{1, true}});
  Fault rho;
  rho.set(blocking, true).set(blocking + 1, true);
  return Gadget{SwitchingNetwork(std::move(c.nodes), c.pole_a, c.pole_b, std::move(c.edges)), FaultType::one(),
                Fault{}, std::move(rho)};
}

bool vc_reduction_decide(const VcInstance& instance, ReductionVariant variant) {
  Gadget g = variant == ReductionVariant::q1 ? q1_network(instance) : q2_network(instance);
  DiagnosisProblem problem{g.network, g.fault_type, {g.lambda, g.rho}};
  const DecisionTree tree = build_tree_greedy(problem);
  const BooleanFunction f_lambda = truth_table(g.network, g.lambda);
  const BooleanFunction f_rho = truth_table(g.network, g.rho);
  const Fault out_lambda = run_tree(tree, table_oracle(f_lambda));
  const Fault out_rho = run_tree(tree, table_oracle(f_rho));
  return !equivalent(truth_table(g.network, out_lambda), truth_table(g.network, out_rho));
}

bool has_vertex_cover(const SimpleGraph& graph, int max_size) {
  const int n = graph.vertex_count();
  if (n > 30) throw Error(ErrorCode::resource, "brute-force vertex cover is capped at 30 vertices");
  for (int size = 0; size <= std::min(max_size, n); ++size) {
    // Gosper's hack over subsets with `size` members.
    std::uint64_t subset = size == 0 ? 0 : (std::uint64_t{1} << size) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (subset < limit) {
      const bool covers = std::all_of(graph.edges().begin(), graph.edges().end(), [subset](const auto& e) {
        return ((subset >> (e.first - 1)) & 1u) != 0 || ((subset >> (e.second - 1)) & 1u) != 0;
      });
      if (covers) return true;
      if (subset == 0) break;
      const std::uint64_t low = subset & (~subset + 1);
      const std::uint64_t ripple = subset + low;
      subset = (((ripple ^ subset) >> 2) / low) | ripple;
    }
  }
  return false;
}

int min_vertex_cover_size(const SimpleGraph& graph) {
  for (int k = 0; k <= graph.vertex_count(); ++k) {
    if (has_vertex_cover(graph, k)) return k;
  }
  return graph.vertex_count();
}

bool Theorem1Report::ok() const {
  return family_functions_ok && difference_sets_ok && t == expected_t && exact_t_confirmed.value_or(true) &&
         (!exact_depth || static_cast<std::size_t>(*exact_depth) >= expected_t);
}

Theorem1Report theorem1_verify(int n, FaultType type, const Theorem1Options& options) {
  if (n < 1 || n > 16) throw Error(ErrorCode::range, "S1/S2 lower-bound check supports 1 <= n <= 16");
  Theorem1Report r;
  r.n = n;
  r.fault_type = type;
  r.uses_s1 = type.allows(false);
  const SwitchingNetwork net = r.uses_s1 ? s1_network(n) : s2_network(n);
  const Fault base = r.uses_s1 ? constant_fault(net, false) : Fault{};
  const auto kind = r.uses_s1 ? ConjunctionKind::s1_zero : ConjunctionKind::s2_one;
  r.edge_count = net.edge_count();
  r.expected_t = std::size_t{1} << n;

  const BooleanFunction base_fn = truth_table(net, base);
  std::vector<BooleanFunction> family;
  r.family_functions_ok = true;
  r.difference_sets_ok = true;
  for (AssignmentIndex d = 0; d < (AssignmentIndex{1} << n); ++d) {
    const Assignment delta = Assignment::from_index(d, n);
    const Fault f = conjunction_fault(kind, n, delta);
    if (!is_fault_of(net, f, type)) r.family_functions_ok = false;
    BooleanFunction g = truth_table(net, f);
    const auto predicted = BooleanFunction::from_predicate(n, [d](AssignmentIndex a) { return a == d; });
    if (!equivalent(g, predicted)) r.family_functions_ok = false;
    if (difference_set(base_fn, g) != std::vector<AssignmentIndex>{d}) r.difference_sets_ok = false;
    family.push_back(std::move(g));
  }
  if (!base_fn.is_constant(false) || !is_fault_of(net, base, type)) r.difference_sets_ok = false;

  if (r.difference_sets_ok) {
    r.t = min_distinguishing_set(base_fn, family).t;
    if (n <= options.exact_hitting_set_max_n) {
      DistinguishingOptions exact;
      exact.singleton_shortcut = false;
      r.exact_t_confirmed = min_distinguishing_set(base_fn, family, exact).t == r.t;
    }
  }

  if (n <= options.exact_tree_max_n) {
    DiagnosisProblem problem{net, type, enumerate_faults(net, type)};
    try {
      r.exact_depth = build_tree_exact(problem).depth();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::resource) throw;
      r.partial = true;
      r.note = e.what();
    }
  } else {
    r.partial = true;
    r.note = "exact tree depth over all faults skipped for n > " + std::to_string(options.exact_tree_max_n);
  }
  return r;
}

SymmetricSpec theorem2_function(int n, FaultType type) {
  return symmetric_spec(type.allows(true) ? SymmetricKind::not_equal_mid : SymmetricKind::equal_mid, n);
}

SwitchingNetwork theorem2_network(int n, FaultType type) { return shannon_network(theorem2_function(n, type)); }

bool Theorem2Report::ok() const {
  return base_ok && t == expected_t && !cases.empty() &&
         std::all_of(cases.begin(), cases.end(), [](const Theorem2Case& c) { return c.matches; });
}

Theorem2Report theorem2_verify(int n, FaultType type, const SwitchingNetwork& q) {
  if (n < 1 || n > kDefaultArityCap) throw Error(ErrorCode::range, "mid-weight lower-bound check supports 1 <= n <= 20");
  const SymmetricSpec psi = theorem2_function(n, type);
  std::vector<int> expected_vars(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) expected_vars[i] = i + 1;
  if (!validate(q).empty() || q.input_variables() != expected_vars ||
      !equivalent(truth_table(q, Fault{}), symmetric_function(psi))) {
    throw Error(ErrorCode::precondition, "network does not implement the symmetric function " + psi.to_string() +
                                             " over x_1..x_" + std::to_string(n));
  }

  Theorem2Report r;
  r.n = n;
  r.k = ceil_half(n);
  r.fault_type = type;
  r.expected_t = binomial(n, r.k);
  const bool clause_case = type.allows(true);

  const Fault base = constant_fault(q, clause_case);
  const BooleanFunction base_fn = truth_table(q, base);
  r.base_ok = base_fn.is_constant(clause_case) && is_fault_of(q, base, type);

  std::vector<BooleanFunction> induced;
  for (AssignmentIndex d = 0; d < (AssignmentIndex{1} << n); ++d) {
    if (std::popcount(d) != r.k) continue;
    Theorem2Case c;
    c.delta = Assignment::from_index(d, n);
    if (clause_case) {
      // every edge whose literal is true under delta is set to 1
      for (const Edge& e : q.edges()) {
        if (e.label.value(c.delta[static_cast<std::size_t>(e.label.variable - 1)])) c.fault.set(e.id, true);
      }
      c.predicted = BooleanFunction::from_predicate(n, [d](AssignmentIndex a) { return a != d; });
    } else {
      // keep one path that is true under delta and zero everything else
      const auto path = find_true_path(q, c.delta);
      if (path) {
        const std::set<EdgeId> keep(path->begin(), path->end());
        for (const Edge& e : q.edges()) {
          if (keep.count(e.id) == 0) c.fault.set(e.id, false);
        }
      }
      c.predicted = BooleanFunction::from_predicate(n, [d](AssignmentIndex a) { return a == d; });
    }
    BooleanFunction g = truth_table(q, c.fault);
    c.matches = is_fault_of(q, c.fault, type) && equivalent(g, c.predicted);
    induced.push_back(std::move(g));
    r.cases.push_back(std::move(c));
  }

  const bool all_differ = std::none_of(induced.begin(), induced.end(),
                                       [&base_fn](const BooleanFunction& g) { return equivalent(g, base_fn); });
  if (all_differ) r.t = min_distinguishing_set(base_fn, induced).t;
  return r;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  Wide c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(c);
}

std::vector<Remark1Row> remark1_check(int max_n) {
  if (max_n < 0 || max_n > 62) throw Error(ErrorCode::range, "central binomial check supports n <= 62");
  std::vector<Remark1Row> rows;
  for (int n = 0; n <= max_n; ++n) {
    Remark1Row row{n, binomial(n, ceil_half(n)), 0, false};
    for (int k = 0; k <= n; ++k) row.largest = std::max(row.largest, binomial(n, k));
    row.bound_holds = static_cast<Wide>(row.central) * static_cast<unsigned>(n + 1) >=
                      (static_cast<Wide>(1) << n);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace swdiag
