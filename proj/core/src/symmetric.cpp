#include "swdiag/symmetric.hpp"

#include <algorithm>
#include <bit>

namespace swdiag {

SymmetricSpec::SymmetricSpec(std::vector<bool> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw Error(ErrorCode::range, "symmetric function needs n >= 1");
  if (std::none_of(values_.begin(), values_.end(), [](bool b) { return b; })) {
    throw Error(ErrorCode::range, "symmetric function must not be identically 0");
  }
}

std::string SymmetricSpec::to_string() const {
  std::string s;
  for (bool b : values_) s.push_back(b ? '1' : '0');
  return s;
}

SymmetricSpec SymmetricSpec::parse(std::string_view text) {
  std::vector<bool> values;
  for (char c : text) {
    if (c != '0' && c != '1') throw Error(ErrorCode::parse, "value tuple must be a string of 0/1");
    values.push_back(c == '1');
  }
  return SymmetricSpec(std::move(values));
}

SymmetricSpec symmetric_spec(SymmetricKind kind, int n, std::optional<int> threshold) {
  if (n < 1) throw Error(ErrorCode::range, "n must be at least 1");
  std::vector<bool> t(static_cast<std::size_t>(n) + 1, false);
  const int mid = ceil_half(n);
  switch (kind) {
    case SymmetricKind::at_least: {
      if (!threshold) throw Error(ErrorCode::range, "at_least needs a threshold");
      if (*threshold < 1 || *threshold > n) {
        throw Error(ErrorCode::range, "threshold must be in 1.." + std::to_string(n));
      }
      for (int i = *threshold; i <= n; ++i) t[i] = true;
      break;
    }
    case SymmetricKind::equal_mid:
      if (threshold) throw Error(ErrorCode::range, "equal_mid takes no threshold");
      t[mid] = true;
      break;
    case SymmetricKind::not_equal_mid:
      if (threshold) throw Error(ErrorCode::range, "not_equal_mid takes no threshold");
      for (int i = 0; i <= n; ++i) t[i] = i != mid;
      break;
  }
  return SymmetricSpec(std::move(t));
}

SwitchingNetwork shannon_network(const SymmetricSpec& spec) {
  const int n = spec.n();
  auto id = [](int level, int ones) { return level * (level + 1) / 2 + ones; };

  NodeId pole_b = -1;
  for (int j = 0; j <= n; ++j) {
    if (spec.value_at_weight(j)) {
      pole_b = id(n, j);
      break;
    }
  }
  auto resolve = [&](int level, int ones) {
    if (level == n && spec.value_at_weight(ones)) return pole_b;
    return id(level, ones);
  };

  std::vector<NodeId> nodes;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const NodeId node = resolve(i, j);
      if (node == id(i, j)) nodes.push_back(node);
    }
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n + 1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      const NodeId from = id(i, j);
      edges.push_back(Edge{static_cast<EdgeId>(edges.size()), from, resolve(i + 1, j), Literal{i + 1, true}});
      edges.push_back(Edge{static_cast<EdgeId>(edges.size()), from, resolve(i + 1, j + 1), Literal{i + 1, false}});
    }
  }
  return SwitchingNetwork(std::move(nodes), id(0, 0), pole_b, std::move(edges));
}

BooleanFunction symmetric_function(const SymmetricSpec& spec) {
  return BooleanFunction::from_predicate(spec.n(), [&spec](AssignmentIndex i) {
    return spec.value_at_weight(std::popcount(i));
  });
}

}  // namespace swdiag
