#include "swdiag/network.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace swdiag {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_network: return "E-NETWORK";
    case ErrorCode::invalid_fault: return "E-FAULT";
    case ErrorCode::arity: return "E-ARITY";
    case ErrorCode::resource: return "E-RESOURCE";
    case ErrorCode::precondition: return "E-PRECONDITION";
    case ErrorCode::range: return "E-RANGE";
    case ErrorCode::structure: return "E-STRUCTURE";
    case ErrorCode::parse: return "E-PARSE";
    case ErrorCode::io: return "E-IO";
  }
  return "E-UNKNOWN";
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

}  // namespace

SwitchingNetwork::SwitchingNetwork(std::vector<NodeId> nodes, NodeId pole_a, NodeId pole_b,
                                   std::vector<Edge> edges)
    : nodes_(std::move(nodes)), pole_a_(pole_a), pole_b_(pole_b), edges_(std::move(edges)) {
  std::sort(nodes_.begin(), nodes_.end());
  std::stable_sort(edges_.begin(), edges_.end(),
                   [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    node_index_.try_emplace(nodes_[i], static_cast<int>(i));
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    edge_index_.try_emplace(edges_[i].id, i);
    variables_.push_back(edges_[i].label.variable);
  }
  std::sort(variables_.begin(), variables_.end());
  variables_.erase(std::unique(variables_.begin(), variables_.end()), variables_.end());
}

int SwitchingNetwork::variable_position(int variable) const {
  auto it = std::lower_bound(variables_.begin(), variables_.end(), variable);
  if (it == variables_.end() || *it != variable) return -1;
  return static_cast<int>(it - variables_.begin());
}

int SwitchingNetwork::node_index(NodeId node) const {
  auto it = node_index_.find(node);
  return it == node_index_.end() ? -1 : it->second;
}

const Edge* SwitchingNetwork::find_edge(EdgeId id) const {
  auto it = edge_index_.find(id);
  return it == edge_index_.end() ? nullptr : &edges_[it->second];
}

bool operator==(const SwitchingNetwork& a, const SwitchingNetwork& b) {
  return a.nodes_ == b.nodes_ && a.pole_a_ == b.pole_a_ && a.pole_b_ == b.pole_b_ &&
         a.edges_ == b.edges_;
}

std::string_view diagnostic_kind_name(Diagnostic::Kind kind) noexcept {
  using K = Diagnostic::Kind;
  switch (kind) {
    case K::loop: return "loop";
    case K::disconnected: return "disconnected";
    case K::equal_poles: return "equal-poles";
    case K::duplicate_edge_id: return "duplicate-edge-id";
    case K::sparse_edge_ids: return "sparse-edge-ids";
    case K::unknown_node: return "unknown-node";
    case K::duplicate_node: return "duplicate-node";
    case K::negative_variable: return "negative-variable";
  }
  return "unknown";
}

std::vector<Diagnostic> validate(const SwitchingNetwork& network) {
  using K = Diagnostic::Kind;
  std::vector<Diagnostic> out;
  auto report = [&out](K kind, std::string message) {
    out.push_back(Diagnostic{kind, std::move(message)});
  };

  const auto& nodes = network.nodes();
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    if (nodes[i] == nodes[i - 1]) {
      report(K::duplicate_node, "node " + std::to_string(nodes[i]) + " listed more than once");
    }
  }
  bool poles_known = true;
  for (NodeId pole : {network.pole_a(), network.pole_b()}) {
    if (network.node_index(pole) < 0) {
      report(K::unknown_node, "pole " + std::to_string(pole) + " is not a node");
      poles_known = false;
    }
  }
  if (network.pole_a() == network.pole_b()) {
    report(K::equal_poles, "both poles are node " + std::to_string(network.pole_a()));
  }

  bool endpoints_known = true;
  std::set<EdgeId> seen;
  for (const Edge& e : network.edges()) {
    if (!seen.insert(e.id).second) {
      report(K::duplicate_edge_id, "edge id " + std::to_string(e.id) + " used more than once");
    }
    if (e.u == e.v) {
      report(K::loop, "edge " + std::to_string(e.id) + " is a loop at node " + std::to_string(e.u));
    }
    for (NodeId end : {e.u, e.v}) {
      if (network.node_index(end) < 0) {
        report(K::unknown_node,
               "edge " + std::to_string(e.id) + " references unknown node " + std::to_string(end));
        endpoints_known = false;
      }
    }
    if (e.label.variable < 0) {
      report(K::negative_variable, "edge " + std::to_string(e.id) + " has a negative variable index");
    }
  }
  const auto edge_count = static_cast<EdgeId>(network.edge_count());
  if (seen.size() == network.edge_count() && !seen.empty() &&
      (*seen.begin() != 0 || *seen.rbegin() != edge_count - 1)) {
    report(K::sparse_edge_ids, "edge ids are not 0.." + std::to_string(edge_count - 1));
  }

  if (endpoints_known && poles_known) {
    UnionFind uf(nodes.size());
    for (const Edge& e : network.edges()) uf.unite(network.node_index(e.u), network.node_index(e.v));
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      if (uf.find(static_cast<int>(i)) != uf.find(0)) {
        report(K::disconnected, "node " + std::to_string(nodes[i]) + " is not connected to node " +
                                    std::to_string(nodes[0]));
        break;
      }
    }
  }
  return out;
}

std::vector<int> input_variables(const SwitchingNetwork& network) { return network.input_variables(); }

FaultType FaultType::parse(std::string_view text) {
  if (text == "01" || text == "10") return both();
  if (text == "0") return zero();
  if (text == "1") return one();
  throw Error(ErrorCode::range, "fault type must be one of 01, 0, 1; got '" + std::string(text) + "'");
}

std::string FaultType::name() const {
  if (zero_ && one_) return "01";
  return zero_ ? "0" : "1";
}

std::optional<bool> Fault::constant(EdgeId edge) const {
  auto it = assignments_.find(edge);
  if (it == assignments_.end()) return std::nullopt;
  return it->second;
}

void check_fault(const SwitchingNetwork& network, const Fault& fault, std::optional<FaultType> type) {
  for (const auto& [edge, constant] : fault.assignments()) {
    if (network.find_edge(edge) == nullptr) {
      throw Error(ErrorCode::invalid_fault, "fault assigns unknown edge " + std::to_string(edge));
    }
    if (type && !type->allows(constant)) {
      throw Error(ErrorCode::invalid_fault, "fault assigns constant " + std::to_string(constant) +
                                                " to edge " + std::to_string(edge) +
                                                ", not allowed for fault type " + type->name());
    }
  }
}

bool is_fault_of(const SwitchingNetwork& network, const Fault& fault, FaultType type) {
  for (const auto& [edge, constant] : fault.assignments()) {
    if (network.find_edge(edge) == nullptr || !type.allows(constant)) return false;
  }
  return true;
}

Fault constant_fault(const SwitchingNetwork& network, bool constant) {
  Fault f;
  for (const Edge& e : network.edges()) f.set(e.id, constant);
  return f;
}

std::vector<Fault> enumerate_faults(const SwitchingNetwork& network, FaultType type,
                                    std::size_t max_count) {
  std::vector<int> choices{-1};  // -1 = unfaulted
  if (type.allows(false)) choices.push_back(0);
  if (type.allows(true)) choices.push_back(1);

  const std::size_t radix = choices.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < network.edge_count(); ++i) {
    if (total > max_count / radix) {
      throw Error(ErrorCode::resource, "more than " + std::to_string(max_count) + " " + type.name() +
                                           "-faults for " + std::to_string(network.edge_count()) +
                                           " edges");
    }
    total *= radix;
  }

  std::vector<Fault> out;
  out.reserve(total);
  std::vector<std::size_t> digit(network.edge_count(), 0);
  for (std::size_t k = 0; k < total; ++k) {
    Fault f;
    for (std::size_t i = 0; i < digit.size(); ++i) {
      if (choices[digit[i]] >= 0) f.set(network.edges()[i].id, choices[digit[i]] == 1);
    }
    out.push_back(std::move(f));
    for (std::size_t i = 0; i < digit.size(); ++i) {
      if (++digit[i] < radix) break;
      digit[i] = 0;
    }
  }
  return out;
}

Assignment Assignment::from_index(AssignmentIndex index, int arity) {
  if (arity < 0 || arity > 63) throw Error(ErrorCode::arity, "assignment arity must be in 0..63");
  std::vector<bool> bits(static_cast<std::size_t>(arity));
  for (int j = 0; j < arity; ++j) bits[j] = (index >> j) & 1u;
  return Assignment(std::move(bits));
}

Assignment Assignment::parse(std::string_view text) {
  std::vector<bool> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::parse, "assignment must be a string of 0/1, got '" + std::string(text) + "'");
    }
    bits.push_back(c == '1');
  }
  return Assignment(std::move(bits));
}

std::size_t Assignment::popcount() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

AssignmentIndex Assignment::index() const {
  if (bits_.size() > 63) throw Error(ErrorCode::arity, "assignment too long for an index");
  AssignmentIndex idx = 0;
  for (std::size_t j = 0; j < bits_.size(); ++j) {
    if (bits_[j]) idx |= AssignmentIndex{1} << j;
  }
  return idx;
}

std::string Assignment::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

Evaluator::Evaluator(const SwitchingNetwork& network, const Fault& fault)
    : arity_(network.arity()),
      node_count_(static_cast<int>(network.nodes().size())),
      pole_a_(network.node_index(network.pole_a())),
      pole_b_(network.node_index(network.pole_b())) {
  if (auto diags = validate(network); !diags.empty()) {
    throw Error(ErrorCode::invalid_network, "invalid network: " + diags.front().message);
  }
  check_fault(network, fault);
  edges_.reserve(network.edge_count());
  for (const Edge& e : network.edges()) {
    CompiledEdge c{network.node_index(e.u), network.node_index(e.v),
                   network.variable_position(e.label.variable), e.label.negated, false};
    if (auto k = fault.constant(e.id)) {
      if (!*k) continue;  // constant 0: the edge never conducts
      c.position = -1;
      c.constant = true;
    }
    edges_.push_back(c);
  }
}

template <typename BitAt>
bool Evaluator::connected(BitAt bit_at) const {
  UnionFind uf(static_cast<std::size_t>(node_count_));
  for (const CompiledEdge& e : edges_) {
    if (e.position < 0 || bit_at(e.position) != e.negated) uf.unite(e.u, e.v);
  }
  return uf.find(pole_a_) == uf.find(pole_b_);
}

bool Evaluator::operator()(const Assignment& input) const {
  if (input.arity() != arity_) {
    throw Error(ErrorCode::arity, "input has " + std::to_string(input.arity()) + " bits, network has " +
                                      std::to_string(arity_) + " input variables");
  }
  return connected([&input](int j) { return input[static_cast<std::size_t>(j)]; });
}

bool Evaluator::at(AssignmentIndex index) const {
  if (arity_ > 63) throw Error(ErrorCode::arity, "assignment index cannot address more than 63 variables");
  return connected([index](int j) { return ((index >> j) & 1u) != 0; });
}

bool evaluate(const SwitchingNetwork& network, const Fault& fault, const Assignment& input) {
  return Evaluator(network, fault)(input);
}

std::vector<std::vector<EdgeId>> simple_paths(const SwitchingNetwork& network, const PathLimits& limits) {
  if (network.edge_count() > limits.max_edges) {
    throw Error(ErrorCode::resource, "path enumeration capped at " + std::to_string(limits.max_edges) +
                                         " edges, network has " + std::to_string(network.edge_count()));
  }
  const std::size_t n = network.nodes().size();
  // adjacency: (edge position, neighbour index)
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(n);
  for (std::size_t i = 0; i < network.edge_count(); ++i) {
    const Edge& e = network.edges()[i];
    adj[network.node_index(e.u)].emplace_back(i, network.node_index(e.v));
    adj[network.node_index(e.v)].emplace_back(i, network.node_index(e.u));
  }
  const int target = network.node_index(network.pole_b());
  std::vector<std::vector<EdgeId>> out;
  std::vector<EdgeId> path;
  std::vector<bool> on_path(n, false);

  auto dfs = [&](auto&& self, int node) -> void {
    if (node == target) {
      if (out.size() >= limits.max_paths) {
        throw Error(ErrorCode::resource, "more than " + std::to_string(limits.max_paths) + " simple paths");
      }
      out.push_back(path);
      return;
    }
    on_path[node] = true;
    for (const auto& [pos, next] : adj[node]) {
      if (on_path[next]) continue;
      path.push_back(network.edges()[pos].id);
      self(self, next);
      path.pop_back();
    }
    on_path[node] = false;
  };
  dfs(dfs, network.node_index(network.pole_a()));
  return out;
}

bool path_dnf_eval(const SwitchingNetwork& network, const Fault& fault, const Assignment& input,
                   const PathLimits& limits) {
  if (auto diags = validate(network); !diags.empty()) {
    throw Error(ErrorCode::invalid_network, "invalid network: " + diags.front().message);
  }
  check_fault(network, fault);
  if (input.arity() != network.arity()) {
    throw Error(ErrorCode::arity, "input has " + std::to_string(input.arity()) + " bits, network has " +
                                      std::to_string(network.arity()) + " input variables");
  }
  auto edge_value = [&](EdgeId id) {
    if (auto k = fault.constant(id)) return *k;
    const Literal& lit = network.find_edge(id)->label;
    return lit.value(input[static_cast<std::size_t>(network.variable_position(lit.variable))]);
  };
  for (const auto& path : simple_paths(network, limits)) {
    if (std::all_of(path.begin(), path.end(), edge_value)) return true;
  }
  return false;
}

std::optional<std::vector<EdgeId>> find_true_path(const SwitchingNetwork& network, const Assignment& input) {
  if (input.arity() != network.arity()) {
    throw Error(ErrorCode::arity, "input arity does not match network");
  }
  const std::size_t n = network.nodes().size();
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(n);
  for (std::size_t i = 0; i < network.edge_count(); ++i) {
    const Edge& e = network.edges()[i];
    if (!e.label.value(input[static_cast<std::size_t>(network.variable_position(e.label.variable))])) continue;
    adj[network.node_index(e.u)].emplace_back(i, network.node_index(e.v));
    adj[network.node_index(e.v)].emplace_back(i, network.node_index(e.u));
  }
  const int target = network.node_index(network.pole_b());
  std::vector<EdgeId> path;
  std::vector<bool> visited(n, false);
  // A node that failed to reach the target once cannot reach it later through
  // other prefixes either, so plain DFS with a visited set yields a simple path.
  auto dfs = [&](auto&& self, int node) -> bool {
    if (node == target) return true;
    visited[node] = true;
    for (const auto& [pos, next] : adj[node]) {
      if (visited[next]) continue;
      path.push_back(network.edges()[pos].id);
      if (self(self, next)) return true;
      path.pop_back();
    }
    return false;
  };
  if (dfs(dfs, network.node_index(network.pole_a()))) return path;
  return std::nullopt;
}

}  // namespace swdiag
