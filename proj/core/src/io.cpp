#include "swdiag/io.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <map>
#include <sstream>

#include "json.hpp"

namespace swdiag {

using nlohmann::json;
using nlohmann::ordered_json;

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorCode::parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

constexpr int kFormatVersion = 1;

// Input iterator that reports how many characters the parser has consumed.
struct CountingIterator {
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  const char* ptr;
  std::size_t* consumed;

  reference operator*() const { return *ptr; }
  CountingIterator& operator++() {
    ++ptr;
    ++*consumed;
    return *this;
  }
  CountingIterator operator++(int) {
    auto copy = *this;
    ++*this;
    return copy;
  }
  bool operator==(const CountingIterator& o) const { return ptr == o.ptr; }
  bool operator!=(const CountingIterator& o) const { return ptr != o.ptr; }
};

/// JSON DOM plus the source offset of every value and object key, addressed
/// by slash-joined paths ("/edges/3/id").
class Document {
 public:
  explicit Document(std::string_view text) : text_(text) {
    std::size_t consumed = 0;
    std::size_t end_counter = 0;
    std::size_t last = 0;
    struct Frame {
      bool array;
      std::size_t next_index;
      std::string key;
    };
    std::vector<Frame> frames;

    auto current_path = [&frames] {
      std::string p;
      for (const Frame& f : frames) p += "/" + (f.array ? std::to_string(f.next_index) : f.key);
      return p;
    };
    auto token_start = [&] {
      std::size_t p = last;
      while (p < text_.size() && (std::isspace(static_cast<unsigned char>(text_[p])) || text_[p] == ',' || text_[p] == ':')) {
        ++p;
      }
      return p;
    };
    auto finish_value = [&frames] {
      if (!frames.empty() && frames.back().array) ++frames.back().next_index;
    };

    CountingIterator first{text_.data(), &consumed};
    CountingIterator end{text_.data() + text_.size(), &end_counter};
    try {
      root_ = json::parse(first, end, [&](int, json::parse_event_t event, json& parsed) {
        switch (event) {
          case json::parse_event_t::object_start:
          case json::parse_event_t::array_start:
            value_pos_[current_path()] = token_start();
            frames.push_back(Frame{event == json::parse_event_t::array_start, 0, {}});
            break;
          case json::parse_event_t::key:
            frames.back().key = parsed.get<std::string>();
            key_pos_[current_path()] = token_start();
            break;
          case json::parse_event_t::value:
            value_pos_[current_path()] = token_start();
            finish_value();
            break;
          case json::parse_event_t::object_end:
          case json::parse_event_t::array_end:
            frames.pop_back();
            finish_value();
            break;
        }
        last = consumed;
        return true;
      });
    } catch (const json::parse_error& e) {
      const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
      std::string what = e.what();
      if (auto colon = what.find("- "); colon != std::string::npos) what = what.substr(colon + 2);
      fail_offset(at, "syntax error: " + what);
    }
  }

  const json& root() const noexcept { return root_; }

  [[noreturn]] void fail_value(const std::string& path, const std::string& message) const {
    auto it = value_pos_.find(path);
    fail_offset(it == value_pos_.end() ? 0 : it->second, message);
  }

  [[noreturn]] void fail_key(const std::string& path, const std::string& message) const {
    auto it = key_pos_.find(path);
    fail_offset(it == key_pos_.end() ? 0 : it->second, message);
  }

  [[noreturn]] void fail_offset(std::size_t offset, const std::string& message) const {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(line, column, message);
  }

  const json& object(const json& node, const std::string& path, std::initializer_list<std::string_view> fields) const {
    if (!node.is_object()) fail_value(path, "expected an object");
    for (const auto& [key, value] : node.items()) {
      if (std::find(fields.begin(), fields.end(), key) == fields.end()) {
        fail_key(path + "/" + key, "unknown field '" + key + "'");
      }
    }
    for (std::string_view f : fields) {
      if (!node.contains(std::string(f))) fail_value(path, "missing field '" + std::string(f) + "'");
    }
    return node;
  }

  const json& array(const json& node, const std::string& path) const {
    if (!node.is_array()) fail_value(path, "expected an array");
    return node;
  }

  long long integer(const json& node, const std::string& path) const {
    if (!node.is_number_integer()) fail_value(path, "expected an integer");
    return node.get<long long>();
  }

  int small_int(const json& node, const std::string& path, long long lo = -(1LL << 30), long long hi = 1LL << 30) const {
    const long long v = integer(node, path);
    if (v < lo || v > hi) fail_value(path, "integer out of range");
    return static_cast<int>(v);
  }

  bool boolean(const json& node, const std::string& path) const {
    if (!node.is_boolean()) fail_value(path, "expected true or false");
    return node.get<bool>();
  }

  std::string string(const json& node, const std::string& path) const {
    if (!node.is_string()) fail_value(path, "expected a string");
    return node.get<std::string>();
  }

  void header(const json& node, std::string_view format) const {
    if (string(node["format"], "/format") != format) {
      fail_value("/format", "expected format '" + std::string(format) + "'");
    }
    if (integer(node["version"], "/version") != kFormatVersion) {
      fail_value("/version", "unsupported version, expected " + std::to_string(kFormatVersion));
    }
  }

 private:
  std::string_view text_;
  json root_;
  std::map<std::string, std::size_t> value_pos_;
  std::map<std::string, std::size_t> key_pos_;
};

ordered_json fault_assignments(const Fault& fault) {
  ordered_json list = ordered_json::array();
  for (const auto& [edge, constant] : fault.assignments()) {
    list.push_back(ordered_json{{"edge", edge}, {"value", constant ? 1 : 0}});
  }
  return list;
}

Fault read_assignments(const Document& doc, const json& node, const std::string& path) {
  Fault f;
  const json& list = doc.array(node, path);
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    const json& a = doc.object(list[i], p, {"edge", "value"});
    const int edge = doc.small_int(a["edge"], p + "/edge", 0);
    const int value = doc.small_int(a["value"], p + "/value", 0, 1);
    if (f.constant(edge)) doc.fail_value(p + "/edge", "edge " + std::to_string(edge) + " assigned twice");
    f.set(edge, value == 1);
  }
  return f;
}

std::string finish(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string literal_name(const Literal& literal) {
  return (literal.negated ? "~x" : "x") + std::to_string(literal.variable);
}

std::string serialize_network(const SwitchingNetwork& network) {
  ordered_json j;
  j["format"] = "swdiag-network";
  j["version"] = kFormatVersion;
  j["nodes"] = network.nodes();
  j["poles"] = {network.pole_a(), network.pole_b()};
  ordered_json edges = ordered_json::array();
  for (const Edge& e : network.edges()) {
    edges.push_back(ordered_json{{"id", e.id}, {"u", e.u}, {"v", e.v}, {"var", e.label.variable}, {"neg", e.label.negated}});
  }
  j["edges"] = std::move(edges);
  return finish(j);
}

SwitchingNetwork parse_network(std::string_view text) {
  const Document doc(text);
  const json& root = doc.object(doc.root(), "", {"format", "version", "nodes", "poles", "edges"});
  doc.header(root, "swdiag-network");

  std::vector<NodeId> nodes;
  const json& node_list = doc.array(root["nodes"], "/nodes");
  for (std::size_t i = 0; i < node_list.size(); ++i) {
    nodes.push_back(doc.small_int(node_list[i], "/nodes/" + std::to_string(i)));
  }
  const json& poles = doc.array(root["poles"], "/poles");
  if (poles.size() != 2) doc.fail_value("/poles", "expected exactly two poles");
  const NodeId a = doc.small_int(poles[0], "/poles/0");
  const NodeId b = doc.small_int(poles[1], "/poles/1");

  std::vector<Edge> edges;
  const json& edge_list = doc.array(root["edges"], "/edges");
  for (std::size_t i = 0; i < edge_list.size(); ++i) {
    const std::string p = "/edges/" + std::to_string(i);
    const json& e = doc.object(edge_list[i], p, {"id", "u", "v", "var", "neg"});
    edges.push_back(Edge{doc.small_int(e["id"], p + "/id"), doc.small_int(e["u"], p + "/u"),
                         doc.small_int(e["v"], p + "/v"),
                         Literal{doc.small_int(e["var"], p + "/var", 0), doc.boolean(e["neg"], p + "/neg")}});
  }

  SwitchingNetwork network(std::move(nodes), a, b, std::move(edges));
  if (auto diags = validate(network); !diags.empty()) {
    using K = Diagnostic::Kind;
    const Diagnostic& d = diags.front();
    std::string path = "/edges";
    if (d.kind == K::equal_poles) path = "/poles";
    if (d.kind == K::duplicate_node || d.kind == K::disconnected) path = "/nodes";
    doc.fail_value(path, std::string(diagnostic_kind_name(d.kind)) + ": " + d.message);
  }
  return network;
}

std::string serialize_fault(const Fault& fault) {
  ordered_json j;
  j["format"] = "swdiag-fault";
  j["version"] = kFormatVersion;
  j["assign"] = fault_assignments(fault);
  return finish(j);
}

Fault parse_fault(std::string_view text) {
  const Document doc(text);
  const json& root = doc.object(doc.root(), "", {"format", "version", "assign"});
  doc.header(root, "swdiag-fault");
  return read_assignments(doc, root["assign"], "/assign");
}

std::string serialize_fault_set(const FaultSet& set) {
  ordered_json j;
  j["format"] = "swdiag-faults";
  j["version"] = kFormatVersion;
  j["type"] = set.type.name();
  ordered_json faults = ordered_json::array();
  for (const Fault& f : set.faults) faults.push_back(ordered_json{{"assign", fault_assignments(f)}});
  j["faults"] = std::move(faults);
  return finish(j);
}

FaultSet parse_fault_set(std::string_view text) {
  const Document doc(text);
  const json& root = doc.object(doc.root(), "", {"format", "version", "type", "faults"});
  doc.header(root, "swdiag-faults");
  FaultSet set;
  try {
    set.type = FaultType::parse(doc.string(root["type"], "/type"));
  } catch (const Error& e) {
    doc.fail_value("/type", e.what());
  }
  const json& list = doc.array(root["faults"], "/faults");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = "/faults/" + std::to_string(i);
    const json& f = doc.object(list[i], p, {"assign"});
    set.faults.push_back(read_assignments(doc, f["assign"], p + "/assign"));
  }
  return set;
}

std::string serialize_tree(const DecisionTree& tree) {
  tree.check_structure();
  std::vector<Fault> table;
  auto fault_index = [&table](const Fault& f) {
    auto it = std::find(table.begin(), table.end(), f);
    if (it != table.end()) return static_cast<std::size_t>(it - table.begin());
    table.push_back(f);
    return table.size() - 1;
  };
  auto emit = [&](auto&& self, int node) -> ordered_json {
    const auto& n = tree.node(node);
    if (!n.query) return ordered_json{{"fault", fault_index(n.fault)}};
    ordered_json zero = self(self, n.children[0]);
    ordered_json one = self(self, n.children[1]);
    return ordered_json{{"query", Assignment::from_index(*n.query, tree.arity()).to_string()},
                        {"children", ordered_json::array({std::move(zero), std::move(one)})}};
  };
  ordered_json root = emit(emit, tree.root());

  ordered_json j;
  j["format"] = "swdiag-tree";
  j["version"] = kFormatVersion;
  j["arity"] = tree.arity();
  ordered_json faults = ordered_json::array();
  for (const Fault& f : table) faults.push_back(ordered_json{{"assign", fault_assignments(f)}});
  j["faults"] = std::move(faults);
  j["root"] = std::move(root);
  return finish(j);
}

DecisionTree parse_tree(std::string_view text) {
  const Document doc(text);
  const json& root = doc.object(doc.root(), "", {"format", "version", "arity", "faults", "root"});
  doc.header(root, "swdiag-tree");
  const int arity = doc.small_int(root["arity"], "/arity", 0, 63);

  std::vector<Fault> table;
  const json& faults = doc.array(root["faults"], "/faults");
  for (std::size_t i = 0; i < faults.size(); ++i) {
    const std::string p = "/faults/" + std::to_string(i);
    const json& f = doc.object(faults[i], p, {"assign"});
    table.push_back(read_assignments(doc, f["assign"], p + "/assign"));
  }

  DecisionTree tree(arity);
  auto read = [&](auto&& self, const json& node, const std::string& path, int depth) -> int {
    if (depth > 4096) doc.fail_value(path, "tree nesting too deep");
    if (node.is_object() && node.contains("fault")) {
      const json& leaf = doc.object(node, path, {"fault"});
      const int idx = doc.small_int(leaf["fault"], path + "/fault", 0);
      if (static_cast<std::size_t>(idx) >= table.size()) doc.fail_value(path + "/fault", "fault index out of range");
      return tree.add_leaf(table[static_cast<std::size_t>(idx)]);
    }
    const json& inner = doc.object(node, path, {"query", "children"});
    const std::string bits = doc.string(inner["query"], path + "/query");
    if (bits.size() != static_cast<std::size_t>(arity)) {
      doc.fail_value(path + "/query", "query must have " + std::to_string(arity) + " bits");
    }
    AssignmentIndex q = 0;
    try {
      q = Assignment::parse(bits).index();
    } catch (const Error& e) {
      doc.fail_value(path + "/query", e.what());
    }
    const json& children = doc.array(inner["children"], path + "/children");
    if (children.size() != 2) doc.fail_value(path + "/children", "an internal node needs exactly two children");
    const int zero = self(self, children[0], path + "/children/0", depth + 1);
    const int one = self(self, children[1], path + "/children/1", depth + 1);
    return tree.add_query(q, zero, one);
  };
  tree.set_root(read(read, root["root"], "/root", 0));
  tree.check_structure();
  return tree;
}

std::string serialize_graph(const SimpleGraph& graph) {
  ordered_json j;
  j["n"] = graph.vertex_count();
  ordered_json edges = ordered_json::array();
  for (auto [a, b] : graph.edges()) edges.push_back({a, b});
  j["edges"] = std::move(edges);
  return finish(j);
}

SimpleGraph parse_graph(std::string_view text) {
  const Document doc(text);
  const json& root = doc.object(doc.root(), "", {"n", "edges"});
  const int n = doc.small_int(root["n"], "/n", 1, 30);
  std::vector<std::pair<int, int>> edges;
  const json& list = doc.array(root["edges"], "/edges");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string p = "/edges/" + std::to_string(i);
    const json& e = doc.array(list[i], p);
    if (e.size() != 2) doc.fail_value(p, "an edge is a pair [i, j]");
    const int a = doc.small_int(e[0], p + "/0", 1, n);
    const int b = doc.small_int(e[1], p + "/1", 1, n);
    if (a == b) doc.fail_value(p, "self-loop");
    const auto key = std::minmax(a, b);
    if (std::find(edges.begin(), edges.end(), std::pair<int, int>(key.first, key.second)) != edges.end()) {
      doc.fail_value(p, "duplicate edge");
    }
    edges.emplace_back(key.first, key.second);
  }
  return SimpleGraph(n, std::move(edges));
}

std::string tree_to_dot(const DecisionTree& tree) {
  tree.check_structure();
  std::ostringstream out;
  out << "digraph decision_tree {\n";
  for (std::size_t i = 0; i < tree.node_count(); ++i) {
    const auto& n = tree.node(static_cast<int>(i));
    if (n.query) {
      out << "  n" << i << " [shape=box, label=\"" << Assignment::from_index(*n.query, tree.arity()).to_string()
          << "\"];\n";
      continue;
    }
    out << "  n" << i << " [shape=ellipse, label=\"";
    if (n.fault.is_empty()) {
      out << "lambda";
    } else {
      bool first = true;
      for (const auto& [edge, constant] : n.fault.assignments()) {
        out << (first ? "" : " ") << "e" << edge << "=" << (constant ? 1 : 0);
        first = false;
      }
    }
    out << "\"];\n";
  }
  for (std::size_t i = 0; i < tree.node_count(); ++i) {
    const auto& n = tree.node(static_cast<int>(i));
    if (!n.query) continue;
    out << "  n" << i << " -> n" << n.children[0] << " [label=\"0\"];\n";
    out << "  n" << i << " -> n" << n.children[1] << " [label=\"1\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string network_to_dot(const SwitchingNetwork& network) {
  std::ostringstream out;
  out << "graph switching_network {\n";
  for (NodeId v : network.nodes()) {
    const bool pole = v == network.pole_a() || v == network.pole_b();
    out << "  v" << v << (pole ? " [shape=doublecircle];\n" : " [shape=point];\n");
  }
  for (const Edge& e : network.edges()) {
    out << "  v" << e.u << " -- v" << e.v << " [label=\"" << literal_name(e.label) << "\", id=\"e" << e.id << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace swdiag
