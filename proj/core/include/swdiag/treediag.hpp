#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "swdiag/boolfn.hpp"
#include "swdiag/network.hpp"

namespace swdiag {

/// Network P, fault type C and fault set R. R must be nonempty and consist of
/// C-faults of P; duplicates are allowed.
struct DiagnosisProblem {
  SwitchingNetwork network;
  FaultType fault_type;
  std::vector<Fault> faults;
};

/// Throws precondition / invalid_fault errors when the problem is malformed.
void check_problem(const DiagnosisProblem& problem);

/// Faults of R grouped by equal truth tables, classes in order of first
/// appearance in R.
struct FunctionClass {
  std::size_t representative;         // index into R; lambda if present, else first member
  std::vector<std::size_t> members;   // indices into R, ascending
  BooleanFunction function;
};

std::vector<FunctionClass> function_classes(const DiagnosisProblem& problem, const TableOptions& options = {});

/// Binary decision tree. Internal nodes query one assignment; child 0 / 1 is
/// followed on the observed value. Leaves name a fault.
class DecisionTree {
 public:
  struct Node {
    std::optional<AssignmentIndex> query;
    std::array<int, 2> children{-1, -1};
    Fault fault;  // leaves only
  };

  explicit DecisionTree(int arity = 0) : arity_(arity) {}

  int add_leaf(Fault fault);
  int add_query(AssignmentIndex query, int child0, int child1);
  void set_root(int node) { root_ = node; }

  int arity() const noexcept { return arity_; }
  int root() const noexcept { return root_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  Node& node(int i) { return nodes_.at(static_cast<std::size_t>(i)); }
  const Node& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t leaf_count() const;
  /// Maximum root-to-leaf edge count.
  int depth() const;

  /// Throws structure error unless the nodes form a rooted tree in which every
  /// internal node has both children.
  void check_structure() const;

 private:
  int arity_;
  int root_ = -1;
  std::vector<Node> nodes_;
};

DecisionTree build_tree_greedy(const DiagnosisProblem& problem, const TableOptions& options = {});

struct ExactOptions {
  std::size_t max_classes = 64;
  int max_arity = 6;
};

/// Minimum-depth tree by memoized search over sets of live classes.
DecisionTree build_tree_exact(const DiagnosisProblem& problem, const ExactOptions& options = {});

using Oracle = std::function<bool(const Assignment&)>;

Fault run_tree(const DecisionTree& tree, const Oracle& oracle);

/// Oracle answering from a truth table.
Oracle table_oracle(const BooleanFunction& f);

/// True iff for every fault of R the tree outputs a C-fault with the same function.
bool verify_tree(const DecisionTree& tree, const DiagnosisProblem& problem);

}  // namespace swdiag
