#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "swdiag/network.hpp"

namespace swdiag {

inline constexpr int kDefaultArityCap = 20;

/// Complete truth table over 2^arity assignments, packed 64 per word.
/// Index bit j is the j-th canonical variable (first variable least significant).
class BooleanFunction {
 public:
  explicit BooleanFunction(int arity = 0);

  static BooleanFunction constant(int arity, bool value);

  template <typename Predicate>
  static BooleanFunction from_predicate(int arity, Predicate&& pred) {
    BooleanFunction f(arity);
    for (AssignmentIndex i = 0; i < f.size(); ++i) {
      if (pred(i)) f.set(i, true);
    }
    return f;
  }

  int arity() const noexcept { return arity_; }
  AssignmentIndex size() const noexcept { return AssignmentIndex{1} << arity_; }

  bool operator[](AssignmentIndex i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  bool operator()(const Assignment& a) const { return (*this)[a.index()]; }
  void set(AssignmentIndex i, bool value);

  std::size_t count_ones() const;
  bool is_constant(bool value) const;
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  /// Table as a bit string, index 0 first.
  std::string to_string() const;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  int arity_;
  std::vector<std::uint64_t> words_;
};

struct TableOptions {
  int arity_cap = kDefaultArityCap;
  unsigned jobs = 1;
};

BooleanFunction truth_table(const SwitchingNetwork& network, const Fault& fault,
                            const TableOptions& options = {});

/// Throws arity error on mismatched arities.
bool equivalent(const BooleanFunction& f, const BooleanFunction& g);

/// Ascending indices of the assignments where f and g disagree.
std::vector<AssignmentIndex> difference_set(const BooleanFunction& f, const BooleanFunction& g);

struct DistinguishingResult {
  std::size_t t = 0;
  std::vector<AssignmentIndex> witness;  // ascending
};

struct DistinguishingOptions {
  /// When every difference set is a single assignment, answer with the number
  /// of distinct singletons instead of searching.
  bool singleton_shortcut = true;
  std::uint64_t node_cap = 50'000'000;
};

/// Thrown when the exact search exceeds its node cap; carries the greedy
/// (upper-bound) witness.
class SearchCapExceeded : public Error {
 public:
  SearchCapExceeded(const std::string& message, DistinguishingResult greedy)
      : Error(ErrorCode::resource, message), greedy_(std::move(greedy)) {}

  const DistinguishingResult& greedy() const noexcept { return greedy_; }

 private:
  DistinguishingResult greedy_;
};

/// Minimum hitting set of the given sets (each nonempty, ascending).
DistinguishingResult min_hitting_set(std::vector<std::vector<AssignmentIndex>> sets,
                                     const DistinguishingOptions& options = {});

/// Greedy lower bound for a hitting set: size of a maximal family of pairwise
/// disjoint sets.
std::size_t disjoint_packing_bound(std::vector<std::vector<AssignmentIndex>> sets);

/// Smallest set of assignments on which f0 differs from every family member.
/// Precondition error if some member equals f0.
DistinguishingResult min_distinguishing_set(const BooleanFunction& f0,
                                            std::span<const BooleanFunction> family,
                                            const DistinguishingOptions& options = {});

}  // namespace swdiag
