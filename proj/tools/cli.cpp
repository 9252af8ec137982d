#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "swdiag/boolfn.hpp"
#include "swdiag/constructions.hpp"
#include "swdiag/io.hpp"
#include "swdiag/network.hpp"
#include "swdiag/symmetric.hpp"
#include "swdiag/treediag.hpp"

namespace swdiag::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename Parse>
auto load(const std::string& path, Parse parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

SwitchingNetwork load_network(const std::string& path) { return load(path, parse_network); }
Fault load_fault(const std::string& path) { return load(path, parse_fault); }
FaultSet load_fault_set(const std::string& path) { return load(path, parse_fault_set); }
DecisionTree load_tree(const std::string& path) { return load(path, parse_tree); }
SimpleGraph load_graph(const std::string& path) { return load(path, parse_graph); }

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json theorem1_json(const Theorem1Report& r) {
  ordered_json j;
  j["check"] = "theorem1";
  j["n"] = r.n;
  j["type"] = r.fault_type.name();
  j["network"] = r.uses_s1 ? "s1" : "s2";
  j["edges"] = r.edge_count;
  j["family_functions_ok"] = r.family_functions_ok;
  j["difference_sets_ok"] = r.difference_sets_ok;
  j["t"] = r.t;
  j["expected_t"] = r.expected_t;
  j["exact_t_confirmed"] = r.exact_t_confirmed ? ordered_json(*r.exact_t_confirmed) : ordered_json();
  j["exact_depth"] = r.exact_depth ? ordered_json(*r.exact_depth) : ordered_json();
  j["partial"] = r.partial;
  if (!r.note.empty()) j["note"] = r.note;
  j["ok"] = r.ok();
  return j;
}

ordered_json theorem2_json(const Theorem2Report& r) {
  ordered_json j;
  j["check"] = "theorem2";
  j["n"] = r.n;
  j["k"] = r.k;
  j["type"] = r.fault_type.name();
  j["base_ok"] = r.base_ok;
  ordered_json cases = ordered_json::array();
  for (const auto& c : r.cases) {
    cases.push_back(ordered_json{{"delta", c.delta.to_string()},
                                 {"assigned_edges", c.fault.size()},
                                 {"matches", c.matches}});
  }
  j["cases"] = std::move(cases);
  j["t"] = r.t;
  j["expected_t"] = r.expected_t;
  j["ok"] = r.ok();
  return j;
}

std::string bits_of(AssignmentIndex index, int arity) { return Assignment::from_index(index, arity).to_string(); }

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Constant-fault diagnosis for switching networks", "swdiag"};
    app.require_subcommand(1);
    app.add_flag("--meta", meta_, "Report run metadata (timestamp) on the error stream");
    app.add_option("-o,--output", output_path_, "Write the primary output to a file instead of stdout");
    register_gen(app);
    register_eval(app);
    register_table(app);
    register_equiv(app);
    register_faults(app);
    register_tree(app);
    register_bound(app);
    register_verify(app);
    register_reduce(app);
    register_export(app);

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out_ << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      err_ << "usage error: " << e.what() << "\n";
      return 2;
    }
    if (!action_) {
      err_ << "usage error: incomplete command\n";
      return 2;
    }

    if (meta_) {
      const auto now = std::chrono::system_clock::now();
      err_ << "meta: generated-at-unix " << std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count()
           << "\n";
    }
    try {
      std::ostringstream buffer;
      const int code = action_(buffer);
      emit(buffer.str());
      return code;
    } catch (const Error& e) {
      err_ << "error[" << error_code_name(e.code()) << "]: " << e.what() << "\n";
      return 1;
    }
  }

 private:
  using Action = std::function<int(std::ostream&)>;

  void emit(const std::string& text) {
    if (output_path_.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(output_path_, std::ios::binary);
    if (!file) throw Error(ErrorCode::io, "cannot write '" + output_path_ + "'");
    file << text;
  }

  void on(CLI::App* cmd, Action action) {
    cmd->callback([this, action = std::move(action)] { action_ = action; });
  }

  void register_gen(CLI::App& app) {
    auto* gen = app.add_subcommand("gen", "Generate a named network");
    gen->require_subcommand(1);
    auto write = [this](std::ostream& o, const SwitchingNetwork& net) {
      o << (dot_ ? network_to_dot(net) : serialize_network(net));
    };

    auto* s1 = gen->add_subcommand("s1", "Parallel pairs {x_i, ~x_i} in series");

    s1->add_flag("--dot", dot_, "Emit DOT instead of the network document");
    s1->add_option("--n", gen_n_, "Number of variables")->required();
    on(s1, [this, write](std::ostream& o) {
      write(o, s1_network(gen_n_));
      return 0;
    });
    auto* s2 = gen->add_subcommand("s2", "Series path x_1 ~x_1 ... x_n ~x_n");
    s2->add_flag("--dot", dot_, "Emit DOT instead of the network document");
    s2->add_option("--n", gen_n_, "Number of variables")->required();
    on(s2, [this, write](std::ostream& o) {
      write(o, s2_network(gen_n_));
      return 0;
    });

    auto* shannon = gen->add_subcommand("shannon", "Ladder network for a symmetric function");

    shannon->add_flag("--dot", dot_, "Emit DOT instead of the network document");
    shannon->add_option("--t", values_, "Value tuple t_0..t_n as a bit string");
    shannon->add_option("--kind", kind_, "at-least | equal-mid | not-equal-mid")
        ->check(CLI::IsMember({"at-least", "equal-mid", "not-equal-mid"}));
    shannon->add_option("--n", gen_n_, "Number of variables (with --kind)");
    shannon->add_option("--threshold", threshold_, "Minimum number of ones (with --kind at-least)");
    on(shannon, [this, write](std::ostream& o) {
      write(o, shannon_network(spec_from_flags()));
      return 0;
    });

    auto* psi = gen->add_subcommand("psi-g", "Clause-product network of a graph");

    psi->add_flag("--dot", dot_, "Emit DOT instead of the network document");
    psi->add_option("--graph", graph_path_, "Graph document")->required();
    on(psi, [this, write](std::ostream& o) {
      write(o, psi_g_network(load_graph(graph_path_)));
      return 0;
    });

    for (const char* name : {"q1", "q2"}) {
      auto* q = gen->add_subcommand(name, "Vertex-cover reduction gadget");
      q->add_flag("--dot", dot_, "Emit DOT instead of the network document");
      q->add_option("--graph", graph_path_, "Graph document")->required();
      q->add_option("--m", cover_m_, "Cover size bound")->required();
      q->add_option("--faults-out", faults_out_, "Also write R = {lambda, rho} to this file");
      const bool first = std::string(name) == "q1";
      on(q, [this, write, first](std::ostream& o) {
        const VcInstance instance(load_graph(graph_path_), cover_m_);
        const Gadget g = first ? q1_network(instance) : q2_network(instance);
        if (!faults_out_.empty()) {
          std::ofstream f(faults_out_, std::ios::binary);
          if (!f) throw Error(ErrorCode::io, "cannot write '" + faults_out_ + "'");
          f << serialize_fault_set(FaultSet{g.fault_type, {g.lambda, g.rho}});
        }
        write(o, g.network);
        return 0;
      });
    }
  }

  SymmetricSpec spec_from_flags() const {
    if (!values_.empty()) {
      if (!kind_.empty()) throw Error(ErrorCode::precondition, "give either --t or --kind, not both");
      return SymmetricSpec::parse(values_);
    }
    if (kind_.empty()) throw Error(ErrorCode::precondition, "one of --t or --kind is required");
    const SymmetricKind kind = kind_ == "at-least"    ? SymmetricKind::at_least
                               : kind_ == "equal-mid" ? SymmetricKind::equal_mid
                                                      : SymmetricKind::not_equal_mid;
    return symmetric_spec(kind, gen_n_, threshold_);
  }

  Fault optional_fault() const { return fault_path_.empty() ? Fault{} : load_fault(fault_path_); }

  void register_eval(CLI::App& app) {
    auto* cmd = app.add_subcommand("eval", "Evaluate a (faulty) network on one input");
    cmd->add_option("--network", network_path_, "Network document")->required();
    cmd->add_option("--fault", fault_path_, "Fault document (default: no fault)");
    cmd->add_option("--input", input_bits_, "Input bits, first variable leftmost")->required();
    auto* paths = cmd->add_flag("--paths", "Use simple-path enumeration instead of connectivity");
    on(cmd, [this, paths](std::ostream& o) {
      const SwitchingNetwork net = load_network(network_path_);
      const Assignment input = Assignment::parse(input_bits_);
      const Fault fault = optional_fault();
      const bool v = paths->count() > 0 ? path_dnf_eval(net, fault, input) : evaluate(net, fault, input);
      o << (v ? 1 : 0) << "\n";
      return 0;
    });
  }

  void register_table(CLI::App& app) {
    auto* cmd = app.add_subcommand("table", "Truth table of a (faulty) network");
    cmd->add_option("--network", network_path_, "Network document")->required();
    cmd->add_option("--fault", fault_path_, "Fault document (default: no fault)");
    cmd->add_option("--jobs", jobs_, "Worker threads")->check(CLI::Range(1u, 256u));
    on(cmd, [this](std::ostream& o) {
      const SwitchingNetwork net = load_network(network_path_);
      TableOptions options;
      options.jobs = jobs_;
      const BooleanFunction f = truth_table(net, optional_fault(), options);
      ordered_json j;
      j["variables"] = net.input_variables();
      j["table"] = f.to_string();
      o << dump(j);
      return 0;
    });
  }

  void register_equiv(CLI::App& app) {
    auto* cmd = app.add_subcommand("equiv", "Compare the functions induced by two faults");
    cmd->add_option("--network", network_path_, "Network document")->required();
    cmd->add_option("--fault-a", fault_path_, "First fault (default: no fault)");
    cmd->add_option("--fault-b", fault_b_path_, "Second fault (default: no fault)");
    on(cmd, [this](std::ostream& o) {
      const SwitchingNetwork net = load_network(network_path_);
      const Fault b = fault_b_path_.empty() ? Fault{} : load_fault(fault_b_path_);
      const BooleanFunction fa = truth_table(net, optional_fault());
      const BooleanFunction fb = truth_table(net, b);
      ordered_json j;
      j["equivalent"] = equivalent(fa, fb);
      ordered_json diff = ordered_json::array();
      for (AssignmentIndex a : difference_set(fa, fb)) diff.push_back(bits_of(a, net.arity()));
      j["differences"] = std::move(diff);
      o << dump(j);
      return 0;
    });
  }

  void register_faults(CLI::App& app) {
    auto* faults = app.add_subcommand("faults", "Fault sets");
    faults->require_subcommand(1);
    auto* cmd = faults->add_subcommand("enum", "Enumerate every C-fault of a network");
    cmd->add_option("--network", network_path_, "Network document")->required();
    cmd->add_option("--type", type_, "Fault type: 01, 0 or 1")->required();
    cmd->add_option("--max", max_faults_, "Refuse to enumerate more faults than this");
    auto* classes = cmd->add_flag("--classes", "Group the faults by induced function instead");
    cmd->add_option("--jobs", jobs_, "Worker threads for --classes")->check(CLI::Range(1u, 256u));
    on(cmd, [this, classes](std::ostream& o) {
      const SwitchingNetwork net = load_network(network_path_);
      const FaultType type = FaultType::parse(type_);
      std::vector<Fault> all = enumerate_faults(net, type, max_faults_);
      if (classes->count() == 0) {
        o << serialize_fault_set(FaultSet{type, std::move(all)});
        return 0;
      }
      o << dump(classes_json(net, all));
      return 0;
    });
  }

  // Tables are computed by `jobs_` workers over a strided split of the fault
  // list; grouping afterwards is sequential so output order is fixed.
  ordered_json classes_json(const SwitchingNetwork& net, const std::vector<Fault>& faults) const {
    std::vector<std::optional<BooleanFunction>> tables(faults.size());
    std::vector<std::optional<Error>> failures(jobs_);
    {
      std::vector<std::jthread> workers;
      for (unsigned w = 0; w < jobs_; ++w) {
        workers.emplace_back([&, w] {
          try {
            for (std::size_t i = w; i < faults.size(); i += jobs_) tables[i] = truth_table(net, faults[i]);
          } catch (const Error& e) {
            failures[w] = e;
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) throw *f;
    }
    ordered_json list = ordered_json::array();
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < faults.size(); ++i) {
      const std::string key = tables[i]->to_string();
      auto [it, inserted] = index.try_emplace(key, list.size());
      if (inserted) list.push_back(ordered_json{{"table", key}, {"count", 0}, {"representative", i}});
      list[it->second]["count"] = list[it->second]["count"].get<std::size_t>() + 1;
    }
    ordered_json j;
    j["faults"] = faults.size();
    j["classes"] = std::move(list);
    return j;
  }

  DiagnosisProblem load_problem() const {
    FaultSet set = load_fault_set(faults_path_);
    const FaultType type = type_.empty() ? set.type : FaultType::parse(type_);
    return DiagnosisProblem{load_network(network_path_), type, std::move(set.faults)};
  }

  void register_tree(CLI::App& app) {
    auto* tree = app.add_subcommand("tree", "Diagnostic decision trees");
    tree->require_subcommand(1);

    auto* build = tree->add_subcommand("build", "Build a tree solving the diagnosis problem");
    build->add_option("--network", network_path_, "Network document")->required();
    build->add_option("--faults", faults_path_, "Fault set document (R)")->required();
    build->add_option("--type", type_, "Override the fault set's type");
    auto* exact = build->add_flag("--exact", "Minimum-depth tree (small instances only)");
    on(build, [this, exact](std::ostream& o) {
      const DiagnosisProblem problem = load_problem();
      const DecisionTree t = exact->count() > 0 ? build_tree_exact(problem) : build_tree_greedy(problem);
      o << serialize_tree(t);
      return 0;
    });

    auto* run = tree->add_subcommand("run", "Run a tree against the network with a fault");
    run->add_option("--tree", tree_path_, "Tree document")->required();
    run->add_option("--network", network_path_, "Network document")->required();
    run->add_option("--fault", fault_path_, "Actual fault (default: no fault)");
    on(run, [this](std::ostream& o) {
      const DecisionTree t = load_tree(tree_path_);
      const SwitchingNetwork net = load_network(network_path_);
      const BooleanFunction f = truth_table(net, optional_fault());
      if (t.arity() != net.arity()) throw Error(ErrorCode::arity, "tree and network arities differ");
      o << serialize_fault(run_tree(t, table_oracle(f)));
      return 0;
    });

    auto* verify = tree->add_subcommand("verify", "Check that a tree solves the diagnosis problem");
    verify->add_option("--tree", tree_path_, "Tree document")->required();
    verify->add_option("--network", network_path_, "Network document")->required();
    verify->add_option("--faults", faults_path_, "Fault set document (R)")->required();
    verify->add_option("--type", type_, "Override the fault set's type");
    on(verify, [this](std::ostream& o) {
      const DecisionTree t = load_tree(tree_path_);
      const bool ok = verify_tree(t, load_problem());
      ordered_json j;
      j["verified"] = ok;
      j["depth"] = t.depth();
      j["nodes"] = t.node_count();
      o << dump(j);
      return ok ? 0 : 1;
    });

    auto* dot = tree->add_subcommand("export-dot", "Render a tree as DOT");
    dot->add_option("--tree", tree_path_, "Tree document")->required();
    on(dot, [this](std::ostream& o) {
      o << tree_to_dot(load_tree(tree_path_));
      return 0;
    });
  }

  void register_bound(CLI::App& app) {
    auto* bound = app.add_subcommand("bound", "Depth lower bounds");
    bound->require_subcommand(1);
    auto* lemma = bound->add_subcommand("lemma1", "Minimum distinguishing set of a base fault against a family");
    lemma->add_option("--network", network_path_, "Network document")->required();
    lemma->add_option("--base", fault_path_, "Base fault (default: no fault)");
    lemma->add_option("--family", faults_path_, "Fault set document")->required();
    auto* no_shortcut = lemma->add_flag("--no-shortcut", "Always run the exact hitting-set search");
    on(lemma, [this, no_shortcut](std::ostream& o) {
      const SwitchingNetwork net = load_network(network_path_);
      const BooleanFunction base = truth_table(net, optional_fault());
      std::vector<BooleanFunction> family;
      for (const Fault& f : load_fault_set(faults_path_).faults) family.push_back(truth_table(net, f));
      DistinguishingOptions options;
      options.singleton_shortcut = no_shortcut->count() == 0;
      ordered_json j;
      try {
        const DistinguishingResult r = min_distinguishing_set(base, family, options);
        j["t"] = r.t;
        j["exact"] = true;
        ordered_json w = ordered_json::array();
        for (AssignmentIndex a : r.witness) w.push_back(bits_of(a, net.arity()));
        j["witness"] = std::move(w);
      } catch (const SearchCapExceeded& e) {
        j["t_upper"] = e.greedy().t;
        j["exact"] = false;
        ordered_json w = ordered_json::array();
        for (AssignmentIndex a : e.greedy().witness) w.push_back(bits_of(a, net.arity()));
        j["witness"] = std::move(w);
        o << dump(j);
        throw;
      }
      o << dump(j);
      return 0;
    });
  }

  void register_verify(CLI::App& app) {
    auto* verify = app.add_subcommand("verify", "Reproduce the lower-bound constructions");
    verify->require_subcommand(1);

    auto* t1 = verify->add_subcommand("theorem1", "2^n lower bound on S1/S2");
    t1->add_option("--n", gen_n_, "Number of variables")->required();
    t1->add_option("--type", type_, "Fault type: 01, 0 or 1")->required();
    on(t1, [this](std::ostream& o) {
      const Theorem1Report r = theorem1_verify(gen_n_, FaultType::parse(type_));
      o << dump(theorem1_json(r));
      return r.ok() ? 0 : 1;
    });

    auto* t2 = verify->add_subcommand("theorem2", "Central-binomial lower bound for networks implementing psi");
    t2->add_option("--n", gen_n_, "Number of variables")->required();
    t2->add_option("--type", type_, "Fault type: 01, 0 or 1")->required();
    t2->add_option("--network", network_path_, "Network implementing the symmetric function (default: ladder)");
    on(t2, [this](std::ostream& o) {
      const FaultType type = FaultType::parse(type_);
      const SwitchingNetwork q = network_path_.empty() ? theorem2_network(gen_n_, type) : load_network(network_path_);
      const Theorem2Report r = theorem2_verify(gen_n_, type, q);
      o << dump(theorem2_json(r));
      return r.ok() ? 0 : 1;
    });

    auto* r1 = verify->add_subcommand("remark1", "Central binomial coefficient bounds");
    r1->add_option("--max-n", gen_n_, "Largest n")->required();
    on(r1, [this](std::ostream& o) {
      ordered_json rows = ordered_json::array();
      bool ok = true;
      for (const Remark1Row& row : remark1_check(gen_n_)) {
        const bool row_ok = row.bound_holds && row.central == row.largest;
        ok = ok && row_ok;
        rows.push_back(ordered_json{{"n", row.n}, {"central", row.central}, {"largest", row.largest},
                                    {"bound_holds", row.bound_holds}, {"ok", row_ok}});
      }
      o << dump(ordered_json{{"check", "remark1"}, {"rows", std::move(rows)}, {"ok", ok}});
      return ok ? 0 : 1;
    });
  }

  void register_reduce(CLI::App& app) {
    auto* reduce = app.add_subcommand("reduce", "Reductions");
    reduce->require_subcommand(1);
    auto* vc = reduce->add_subcommand("vc", "Decide vertex cover through a diagnosis problem");
    vc->add_option("--graph", graph_path_, "Graph document")->required();
    vc->add_option("--m", cover_m_, "Cover size bound")->required();
    vc->add_option("--variant", variant_, "q1 ({0}-faults) or q2 ({1}-faults)")
        ->check(CLI::IsMember({"q1", "q2"}));
    on(vc, [this](std::ostream& o) {
      const VcInstance instance(load_graph(graph_path_), cover_m_);
      const bool yes = vc_reduction_decide(instance, variant_ == "q2" ? ReductionVariant::q2 : ReductionVariant::q1);
      o << (yes ? "YES" : "NO") << "\n";
      return 0;
    });
  }

  void register_export(CLI::App& app) {
    auto* cmd = app.add_subcommand("export-dot", "Render a network as DOT");
    cmd->add_option("--network", network_path_, "Network document")->required();
    on(cmd, [this](std::ostream& o) {
      o << network_to_dot(load_network(network_path_));
      return 0;
    });
  }

  std::ostream& out_;
  std::ostream& err_;
  Action action_;

  bool meta_ = false;
  bool dot_ = false;
  std::string output_path_;
  int gen_n_ = 0;
  std::string values_;
  std::string kind_;
  std::optional<int> threshold_;
  std::string graph_path_;
  int cover_m_ = 0;
  std::string faults_out_;
  std::string network_path_;
  std::string fault_path_;
  std::string fault_b_path_;
  std::string faults_path_;
  std::string tree_path_;
  std::string input_bits_;
  std::string type_;
  std::string variant_ = "q1";
  unsigned jobs_ = 1;
  std::size_t max_faults_ = 1u << 20;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Cli(out, err).run(args);
}

}  // namespace swdiag::cli
