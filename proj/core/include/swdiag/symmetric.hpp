#pragma once

#include <optional>
#include <vector>

#include "swdiag/boolfn.hpp"
#include "swdiag/network.hpp"

namespace swdiag {

/// Symmetric function of n variables as its value tuple (t_0, ..., t_n), where
/// t_i is the value on inputs with exactly i ones. Never identically 0.
class SymmetricSpec {
 public:
  explicit SymmetricSpec(std::vector<bool> values);

  int n() const noexcept { return static_cast<int>(values_.size()) - 1; }
  bool value_at_weight(int ones) const { return values_[static_cast<std::size_t>(ones)]; }
  const std::vector<bool>& values() const noexcept { return values_; }

  /// "0101" style, t_0 first.
  std::string to_string() const;
  static SymmetricSpec parse(std::string_view text);

 private:
  std::vector<bool> values_;
};

enum class SymmetricKind {
  at_least,       // ones >= threshold
  equal_mid,      // ones == ceil(n/2)
  not_equal_mid,  // ones != ceil(n/2)
};

SymmetricSpec symmetric_spec(SymmetricKind kind, int n, std::optional<int> threshold = std::nullopt);

/// Triangular ladder of n^2+n edges on variables x_1..x_n. Node (i,j) counts j
/// ones among x_1..x_i; terminal nodes with t_j = 1 are merged into pole_b.
SwitchingNetwork shannon_network(const SymmetricSpec& spec);

/// Truth table of the symmetric function over x_1..x_n.
BooleanFunction symmetric_function(const SymmetricSpec& spec);

inline int ceil_half(int n) { return (n + 1) / 2; }

}  // namespace swdiag
