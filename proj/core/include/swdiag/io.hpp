#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "swdiag/constructions.hpp"
#include "swdiag/network.hpp"
#include "swdiag/treediag.hpp"

namespace swdiag {

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// {"format": "swdiag-network", "version": 1, "nodes": [...], "poles": [a, b],
///  "edges": [{"id", "u", "v", "var", "neg"}, ...]}
std::string serialize_network(const SwitchingNetwork& network);
/// Rejects unknown fields and networks that fail validate().
SwitchingNetwork parse_network(std::string_view text);

/// {"format": "swdiag-fault", "version": 1, "assign": [{"edge", "value"}, ...]}
std::string serialize_fault(const Fault& fault);
Fault parse_fault(std::string_view text);

/// {"format": "swdiag-faults", "version": 1, "type": "01" | "0" | "1",
///  "faults": [{"assign": [...]}, ...]}
struct FaultSet {
  FaultType type = FaultType::both();
  std::vector<Fault> faults;
};
std::string serialize_fault_set(const FaultSet& set);
FaultSet parse_fault_set(std::string_view text);

/// {"format": "swdiag-tree", "version": 1, "arity": m, "faults": [...],
///  "root": {"query": "0110", "children": [node0, node1]} | {"fault": index}}
std::string serialize_tree(const DecisionTree& tree);
DecisionTree parse_tree(std::string_view text);

/// {"n": 3, "edges": [[1, 2], [2, 3]]}
std::string serialize_graph(const SimpleGraph& graph);
SimpleGraph parse_graph(std::string_view text);

std::string tree_to_dot(const DecisionTree& tree);
std::string network_to_dot(const SwitchingNetwork& network);

/// Label such as "x3" or "~x3".
std::string literal_name(const Literal& literal);

}  // namespace swdiag
