#include "swdiag/treediag.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>

namespace swdiag {

void check_problem(const DiagnosisProblem& problem) {
  if (problem.faults.empty()) throw Error(ErrorCode::precondition, "fault set R is empty");
  if (auto diags = validate(problem.network); !diags.empty()) {
    throw Error(ErrorCode::invalid_network, "invalid network: " + diags.front().message);
  }
  for (const Fault& f : problem.faults) check_fault(problem.network, f, problem.fault_type);
}

std::vector<FunctionClass> function_classes(const DiagnosisProblem& problem, const TableOptions& options) {
  check_problem(problem);
  std::vector<FunctionClass> classes;
  std::map<std::vector<std::uint64_t>, std::size_t> by_table;
  for (std::size_t i = 0; i < problem.faults.size(); ++i) {
    BooleanFunction f = truth_table(problem.network, problem.faults[i], options);
    auto [it, inserted] = by_table.try_emplace(f.words(), classes.size());
    if (inserted) {
      classes.push_back(FunctionClass{i, {i}, std::move(f)});
      continue;
    }
    FunctionClass& c = classes[it->second];
    c.members.push_back(i);
    if (problem.faults[i].is_empty() && !problem.faults[c.representative].is_empty()) c.representative = i;
  }
  return classes;
}

int DecisionTree::add_leaf(Fault fault) {
  nodes_.push_back(Node{std::nullopt, {-1, -1}, std::move(fault)});
  return static_cast<int>(nodes_.size()) - 1;
}

int DecisionTree::add_query(AssignmentIndex query, int child0, int child1) {
  nodes_.push_back(Node{query, {child0, child1}, Fault{}});
  return static_cast<int>(nodes_.size()) - 1;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return !n.query; }));
}

int DecisionTree::depth() const {
  check_structure();
  int best = 0;
  std::vector<std::pair<int, int>> stack{{root_, 0}};
  while (!stack.empty()) {
    auto [node, d] = stack.back();
    stack.pop_back();
    const Node& n = nodes_[static_cast<std::size_t>(node)];
    if (!n.query) {
      best = std::max(best, d);
      continue;
    }
    stack.emplace_back(n.children[0], d + 1);
    stack.emplace_back(n.children[1], d + 1);
  }
  return best;
}

void DecisionTree::check_structure() const {
  const auto count = static_cast<int>(nodes_.size());
  if (root_ < 0 || root_ >= count) throw Error(ErrorCode::structure, "tree has no valid root");
  std::vector<int> seen(nodes_.size(), 0);
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    const int node = stack.back();
    stack.pop_back();
    if (seen[static_cast<std::size_t>(node)]++ != 0) {
      throw Error(ErrorCode::structure, "node " + std::to_string(node) + " is reachable twice");
    }
    const Node& n = nodes_[static_cast<std::size_t>(node)];
    if (!n.query) {
      if (n.children[0] != -1 || n.children[1] != -1) {
        throw Error(ErrorCode::structure, "leaf " + std::to_string(node) + " has children");
      }
      continue;
    }
    if (arity_ < 64 && *n.query >> arity_ != 0) {
      throw Error(ErrorCode::structure, "query at node " + std::to_string(node) + " exceeds the arity");
    }
    for (int c : n.children) {
      if (c < 0 || c >= count) {
        throw Error(ErrorCode::structure, "internal node " + std::to_string(node) + " lacks a child");
      }
      stack.push_back(c);
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw Error(ErrorCode::structure, "tree has nodes unreachable from the root");
  }
}

namespace {

int query_arity(const DiagnosisProblem& problem, int cap) {
  const int m = problem.network.arity();
  if (m > cap) {
    throw Error(ErrorCode::resource, "query universe 2^" + std::to_string(m) + " exceeds cap 2^" +
                                         std::to_string(cap));
  }
  return m;
}

int greedy_build(DecisionTree& tree, const DiagnosisProblem& problem,
                 const std::vector<FunctionClass>& classes, const std::vector<std::size_t>& live,
                 AssignmentIndex queries) {
  if (live.size() == 1) return tree.add_leaf(problem.faults[classes[live.front()].representative]);

  const std::size_t ideal = live.size() / 2;
  std::size_t best_side = 0;
  AssignmentIndex best_query = 0;
  for (AssignmentIndex q = 0; q < queries; ++q) {
    std::size_t ones = 0;
    for (std::size_t c : live) ones += classes[c].function[q] ? 1 : 0;
    const std::size_t side = std::min(ones, live.size() - ones);
    if (side > best_side) {
      best_side = side;
      best_query = q;
      if (side == ideal) break;
    }
  }
  if (best_side == 0) throw Error(ErrorCode::precondition, "live classes are not distinguishable");

  std::array<std::vector<std::size_t>, 2> parts;
  for (std::size_t c : live) parts[classes[c].function[best_query] ? 1 : 0].push_back(c);
  const int zero = greedy_build(tree, problem, classes, parts[0], queries);
  const int one = greedy_build(tree, problem, classes, parts[1], queries);
  return tree.add_query(best_query, zero, one);
}

class ExactSearch {
 public:
  using Mask = std::uint64_t;

  ExactSearch(const std::vector<FunctionClass>& classes, int arity)
      : k_(classes.size()), queries_(AssignmentIndex{1} << arity), ones_(queries_, 0), diff_(k_ * k_, 0) {
    for (AssignmentIndex q = 0; q < queries_; ++q) {
      for (std::size_t c = 0; c < k_; ++c) {
        if (classes[c].function[q]) ones_[q] |= Mask{1} << c;
      }
    }
    for (std::size_t a = 0; a < k_; ++a) {
      for (std::size_t b = 0; b < k_; ++b) {
        Mask m = 0;
        for (AssignmentIndex q = 0; q < queries_; ++q) {
          if (classes[a].function[q] != classes[b].function[q]) m |= Mask{1} << q;
        }
        diff_[a * k_ + b] = m;
      }
    }
  }

  Mask all() const { return k_ == 64 ? ~Mask{0} : (Mask{1} << k_) - 1; }

  int solve(Mask live) {
    if (std::popcount(live) <= 1) return 0;
    if (auto it = memo_.find(live); it != memo_.end()) return it->second.first;
    const int lb = lower(live);
    int best = 1 << 30;
    AssignmentIndex best_query = 0;
    for (AssignmentIndex q = 0; q < queries_ && best > lb; ++q) {
      const Mask one = live & ones_[q];
      const Mask zero = live & ~ones_[q];
      if (one == 0 || zero == 0) continue;
      if (1 + std::max(lower(zero), lower(one)) >= best) continue;
      const int d0 = solve(zero);
      if (1 + d0 >= best) continue;
      const int d = 1 + std::max(d0, solve(one));
      if (d < best) {
        best = d;
        best_query = q;
      }
    }
    memo_.emplace(live, std::make_pair(best, best_query));
    return best;
  }

  int emit(DecisionTree& tree, const DiagnosisProblem& problem, const std::vector<FunctionClass>& classes,
           Mask live) {
    if (std::popcount(live) == 1) {
      return tree.add_leaf(problem.faults[classes[std::countr_zero(live)].representative]);
    }
    const AssignmentIndex q = memo_.at(live).second;
    const int zero = emit(tree, problem, classes, live & ~ones_[q]);
    const int one = emit(tree, problem, classes, live & ones_[q]);
    return tree.add_query(q, zero, one);
  }

 private:
  // max(ceil(log2 |live|), packing bound): the path of each class must hit its
  // difference set with every other live class, and pairwise disjoint
  // difference sets need one query each.
  int lower(Mask live) {
    if (std::popcount(live) <= 1) return 0;
    if (auto it = lower_memo_.find(live); it != lower_memo_.end()) return it->second;
    int bound = std::bit_width(static_cast<std::uint64_t>(std::popcount(live)) - 1);
    std::vector<Mask> sets;
    for (Mask a = live; a != 0; a &= a - 1) {
      const std::size_t ca = static_cast<std::size_t>(std::countr_zero(a));
      sets.clear();
      for (Mask b = live; b != 0; b &= b - 1) {
        const std::size_t cb = static_cast<std::size_t>(std::countr_zero(b));
        if (cb != ca) sets.push_back(diff_[ca * k_ + cb]);
      }
      std::sort(sets.begin(), sets.end(),
                [](Mask x, Mask y) { return std::popcount(x) < std::popcount(y); });
      Mask used = 0;
      int packed = 0;
      for (Mask s : sets) {
        if ((s & used) == 0) {
          used |= s;
          ++packed;
        }
      }
      bound = std::max(bound, packed);
    }
    lower_memo_.emplace(live, bound);
    return bound;
  }

  std::size_t k_;
  AssignmentIndex queries_;
  std::vector<Mask> ones_;
  std::vector<Mask> diff_;
  std::unordered_map<Mask, std::pair<int, AssignmentIndex>> memo_;
  std::unordered_map<Mask, int> lower_memo_;
};

}  // namespace

DecisionTree build_tree_greedy(const DiagnosisProblem& problem, const TableOptions& options) {
  const auto classes = function_classes(problem, options);
  const int m = query_arity(problem, options.arity_cap);
  DecisionTree tree(m);
  std::vector<std::size_t> live(classes.size());
  for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;
  tree.set_root(greedy_build(tree, problem, classes, live, AssignmentIndex{1} << m));
  return tree;
}

DecisionTree build_tree_exact(const DiagnosisProblem& problem, const ExactOptions& options) {
  const int m = query_arity(problem, std::min(options.max_arity, 6));
  const auto classes = function_classes(problem);
  if (classes.size() > std::min<std::size_t>(options.max_classes, 64)) {
    throw Error(ErrorCode::resource, std::to_string(classes.size()) + " function classes exceed the exact-search cap of " +
                                         std::to_string(options.max_classes));
  }
  ExactSearch search(classes, m);
  search.solve(search.all());
  DecisionTree tree(m);
  tree.set_root(search.emit(tree, problem, classes, search.all()));
  return tree;
}

Fault run_tree(const DecisionTree& tree, const Oracle& oracle) {
  int node = tree.root();
  for (std::size_t steps = 0; steps <= tree.node_count(); ++steps) {
    if (node < 0 || static_cast<std::size_t>(node) >= tree.node_count()) {
      throw Error(ErrorCode::structure, "tree walk reached a missing node");
    }
    const auto& n = tree.node(node);
    if (!n.query) return n.fault;
    node = n.children[oracle(Assignment::from_index(*n.query, tree.arity())) ? 1 : 0];
  }
  throw Error(ErrorCode::structure, "tree walk does not terminate");
}

Oracle table_oracle(const BooleanFunction& f) {
  return [f](const Assignment& a) { return f(a); };
}

bool verify_tree(const DecisionTree& tree, const DiagnosisProblem& problem) {
  const auto classes = function_classes(problem);
  if (tree.arity() != problem.network.arity()) {
    throw Error(ErrorCode::arity, "tree queries " + std::to_string(tree.arity()) + "-tuples, network has " +
                                      std::to_string(problem.network.arity()) + " input variables");
  }
  tree.check_structure();
  for (const FunctionClass& c : classes) {
    const Fault out = run_tree(tree, table_oracle(c.function));
    if (!is_fault_of(problem.network, out, problem.fault_type)) return false;
    if (!equivalent(truth_table(problem.network, out), c.function)) return false;
  }
  return true;
}

}  // namespace swdiag
