#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "swdiag/error.hpp"

namespace swdiag {

using NodeId = int;
using EdgeId = int;

/// Index of an assignment in the canonical enumeration: bit j is the value
/// of the j-th smallest input variable.
using AssignmentIndex = std::uint64_t;

/// x_i (negated == false) or its negation.
struct Literal {
  int variable = 0;
  bool negated = false;

  bool value(bool x) const noexcept { return x != negated; }
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// x^1 = x, x^0 = x-bar.
inline Literal power_literal(int variable, bool exponent) { return Literal{variable, !exponent}; }

struct Edge {
  EdgeId id = 0;
  NodeId u = 0;
  NodeId v = 0;
  Literal label;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Two-pole undirected multigraph whose edges carry literals. Construction
/// does not enforce the structural invariants; see validate().
class SwitchingNetwork {
 public:
  SwitchingNetwork(std::vector<NodeId> nodes, NodeId pole_a, NodeId pole_b, std::vector<Edge> edges);

  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  NodeId pole_a() const noexcept { return pole_a_; }
  NodeId pole_b() const noexcept { return pole_b_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Sorted, duplicate-free variable indices of the edge labels (the input
  /// variables). Faults never change this sequence.
  const std::vector<int>& input_variables() const noexcept { return variables_; }
  int arity() const noexcept { return static_cast<int>(variables_.size()); }

  /// Position of a variable in input_variables(), or -1.
  int variable_position(int variable) const;

  /// Dense index of a node id in ascending node order, or -1 when unknown.
  int node_index(NodeId node) const;

  /// Edge with the given id, or nullptr.
  const Edge* find_edge(EdgeId id) const;

  friend bool operator==(const SwitchingNetwork& a, const SwitchingNetwork& b);

 private:
  std::vector<NodeId> nodes_;  // ascending
  NodeId pole_a_;
  NodeId pole_b_;
  std::vector<Edge> edges_;    // ascending by id
  std::vector<int> variables_;
  std::unordered_map<NodeId, int> node_index_;
  std::unordered_map<EdgeId, std::size_t> edge_index_;
};

struct Diagnostic {
  enum class Kind {
    loop,
    disconnected,
    equal_poles,
    duplicate_edge_id,
    sparse_edge_ids,
    unknown_node,
    duplicate_node,
    negative_variable,
  };
  Kind kind;
  std::string message;
};

std::string_view diagnostic_kind_name(Diagnostic::Kind kind) noexcept;

/// One diagnostic per violated structural invariant; empty iff the network is
/// a legal switching network.
std::vector<Diagnostic> validate(const SwitchingNetwork& network);

/// Same sequence as network.input_variables().
std::vector<int> input_variables(const SwitchingNetwork& network);

/// One of the constant sets {0,1}, {0}, {1}.
class FaultType {
 public:
  static constexpr FaultType both() { return FaultType(true, true); }
  static constexpr FaultType zero() { return FaultType(true, false); }
  static constexpr FaultType one() { return FaultType(false, true); }

  /// "01", "0" or "1"; anything else is a range error.
  static FaultType parse(std::string_view text);

  constexpr bool allows(bool constant) const noexcept { return constant ? one_ : zero_; }
  std::string name() const;

  friend constexpr bool operator==(const FaultType&, const FaultType&) = default;

 private:
  constexpr FaultType(bool zero, bool one) : zero_(zero), one_(one) {}
  bool zero_;
  bool one_;
};

/// Partial mapping edge id -> constant. The empty fault is lambda.
class Fault {
 public:
  using Map = std::map<EdgeId, bool>;

  Fault() = default;
  explicit Fault(Map assignments) : assignments_(std::move(assignments)) {}

  static Fault empty() { return Fault(); }

  Fault& set(EdgeId edge, bool constant) {
    assignments_[edge] = constant;
    return *this;
  }
  std::optional<bool> constant(EdgeId edge) const;

  bool is_empty() const noexcept { return assignments_.empty(); }
  std::size_t size() const noexcept { return assignments_.size(); }
  const Map& assignments() const noexcept { return assignments_; }

  friend bool operator==(const Fault&, const Fault&) = default;
  friend auto operator<=>(const Fault&, const Fault&) = default;

 private:
  Map assignments_;
};

/// Throws invalid_fault when the fault names an unknown edge, or, when a type
/// is given, uses a constant outside it.
void check_fault(const SwitchingNetwork& network, const Fault& fault,
                 std::optional<FaultType> type = std::nullopt);
bool is_fault_of(const SwitchingNetwork& network, const Fault& fault, FaultType type);

/// Fault assigning `constant` to every edge.
Fault constant_fault(const SwitchingNetwork& network, bool constant);

/// Every C-fault of the network including lambda, in a deterministic order
/// (mixed radix over edge ids, lambda first). Resource error above max_count.
std::vector<Fault> enumerate_faults(const SwitchingNetwork& network, FaultType type,
                                    std::size_t max_count = 1u << 20);

/// Bits ordered by the network's canonical variable order.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<bool> bits) : bits_(std::move(bits)) {}

  static Assignment from_index(AssignmentIndex index, int arity);
  /// First variable leftmost, e.g. "0110".
  static Assignment parse(std::string_view bits);

  int arity() const noexcept { return static_cast<int>(bits_.size()); }
  bool operator[](std::size_t j) const { return bits_[j]; }
  const std::vector<bool>& bits() const noexcept { return bits_; }
  std::size_t popcount() const;

  /// Requires arity <= 63.
  AssignmentIndex index() const;
  std::string to_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<bool> bits_;
};

/// Evaluates one (network, fault) pair repeatedly; validates both once.
class Evaluator {
 public:
  Evaluator(const SwitchingNetwork& network, const Fault& fault);

  int arity() const noexcept { return arity_; }
  bool operator()(const Assignment& input) const;
  /// Requires arity <= 63.
  bool at(AssignmentIndex index) const;

 private:
  struct CompiledEdge {
    int u;
    int v;
    int position;  // -1 for constant edges
    bool negated;
    bool constant;
  };

  template <typename BitAt>
  bool connected(BitAt bit_at) const;

  int arity_;
  int node_count_;
  int pole_a_;
  int pole_b_;
  std::vector<CompiledEdge> edges_;
};

/// 1 iff the poles are connected through edges whose effective function
/// (constant when faulted, literal otherwise) is 1 under input.
bool evaluate(const SwitchingNetwork& network, const Fault& fault, const Assignment& input);

struct PathLimits {
  std::size_t max_edges = 24;
  std::size_t max_paths = 1u << 20;
};

/// All simple pole-to-pole paths as edge id sequences.
std::vector<std::vector<EdgeId>> simple_paths(const SwitchingNetwork& network,
                                              const PathLimits& limits = {});

/// Disjunction over simple paths of the conjunction of effective edge
/// functions. Exponential; kept as the reference semantics for evaluate().
bool path_dnf_eval(const SwitchingNetwork& network, const Fault& fault, const Assignment& input,
                   const PathLimits& limits = {});

/// First simple pole-to-pole path (depth-first, ascending edge id) all of whose
/// unfaulted literals are true under input.
std::optional<std::vector<EdgeId>> find_true_path(const SwitchingNetwork& network,
                                                  const Assignment& input);

}  // namespace swdiag
