#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "unbreak/applications.hpp"
#include "unbreak/breakability.hpp"
#include "unbreak/connected_enum.hpp"
#include "unbreak/finite_state.hpp"
#include "unbreak/io.hpp"
#include "unbreak/oracle.hpp"
#include "unbreak/table_io.hpp"
#include "unbreak/universal.hpp"

namespace {

using namespace unbreak;

constexpr uint64_t kDefaultSeed = 20240601;

struct RunConfig {
  uint64_t seed = kDefaultSeed;
  int jobs = 1;
  std::string format = "human";
  int oracle_budget = 14;
};

bool structured(const RunConfig& cfg) { return cfg.format == "structured"; }

void emit_header(const RunConfig& cfg, const std::string& command) {
  if (structured(cfg)) std::cout << "unbreak.v1 " << command << "\n";
}

std::string join_ids(const VertexSet& s) {
  std::ostringstream os;
  bool first = true;
  for (Vertex v : s) {
    if (!first) os << " ";
    os << v;
    first = false;
  }
  return os.str();
}

void print_separation(const RunConfig& cfg, const Separation& sep) {
  VertexSet cut = set_intersection(sep.x_side, sep.y_side);
  if (structured(cfg)) {
    std::cout << "result witness\n";
    std::cout << "order " << sep.order << "\n";
    std::cout << "x " << join_ids(sep.x_side) << "\n";
    std::cout << "y " << join_ids(sep.y_side) << "\n";
    std::cout << "separator " << join_ids(cut) << "\n";
  } else {
    std::cout << "WITNESS\n";
    std::cout << "X: " << join_ids(sep.x_side) << "\n";
    std::cout << "Y: " << join_ids(sep.y_side) << "\n";
    std::cout << "separator: " << join_ids(cut) << "\n";
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

// default schedules used by the application harnesses
int default_mwcu_s(int k) { return 2 * k + 2; }

// pendant enumerates sets of size 3(s+t)-1, which must fit the exact
// treewidth budget of 16
int default_pendant_s(int k, int t) {
  return std::max(1, std::min(2 * k + 2, 5 - t));
}

int cmd_breakcheck(const RunConfig& cfg, const std::string& file, int s, int c) {
  Graph g = parse_graph_file(file);
  BreakOptions opts{cfg.seed, cfg.jobs};
  BreakOutcome outcome = break_alg(g, s, c, opts);
  emit_header(cfg, "breakcheck");
  if (outcome.unbreakable()) {
    if (structured(cfg)) {
      std::cout << "result unbreakable\ns " << s << "\nc " << c << "\n";
    } else {
      std::cout << "UNBREAKABLE " << s << " " << c << "\n";
    }
  } else {
    print_separation(cfg, *outcome.witness);
  }
  return 0;
}

int cmd_uset_build(const RunConfig& cfg, int n, int k, int p,
                   const std::string& out_file) {
  BuildOptions opts;
  opts.seed = cfg.seed;
  BuildReport report;
  UniversalFamily fam = build_universal_set(n, k, p, opts, &report);
  emit_header(cfg, "uset-build");
  if (structured(cfg)) {
    std::cout << "n " << n << "\nk " << k << "\np " << p << "\n";
    std::cout << "size " << fam.size() << "\nmethod " << report.method << "\n";
    std::cout << "verified " << (report.verified ? 1 : 0) << "\n";
    if (!report.verified) {
      std::cout << "failure_probability " << report.failure_probability << "\n";
    }
  } else {
    std::cout << "built (" << n << "," << k << "," << p << ")-universal set, "
              << fam.size() << " functions via " << report.method << "\n";
    if (!report.verified) {
      std::cout << "not exhaustively verified; failure probability <= "
                << report.failure_probability << "\n";
    }
  }
  if (!out_file.empty()) write_file(out_file, write_universal_family(fam));
  return 0;
}

int cmd_uset_verify(const RunConfig& cfg, const std::string& file) {
  UniversalFamily fam = parse_universal_family_file(file);
  auto violation = verify_universal_set(fam, cfg.jobs);
  emit_header(cfg, "uset-verify");
  if (!violation) {
    std::cout << (structured(cfg) ? "result ok\n" : "OK\n");
    return 0;
  }
  if (structured(cfg)) {
    std::cout << "result violated\nindices";
    for (int i : violation->indices) std::cout << " " << i;
    std::cout << "\nones";
    for (int i : violation->ones) std::cout << " " << i;
    std::cout << "\n";
  } else {
    std::cout << "VIOLATED on I = {";
    for (int i : violation->indices) std::cout << " " << i;
    std::cout << " }, ones = {";
    for (int i : violation->ones) std::cout << " " << i;
    std::cout << " }\n";
  }
  return 0;
}

int cmd_enumconn(const RunConfig& cfg, const std::string& file, int root, int p,
                 int q) {
  Graph g = parse_graph_file(file);
  auto sets = enum_connected_sets(g, ConnectedSetQuery{root, p, q});
  emit_header(cfg, "enumconn");
  if (structured(cfg)) std::cout << "count " << sets.size() << "\n";
  for (const VertexSet& u : sets) {
    if (structured(cfg)) std::cout << "set ";
    std::cout << join_ids(u) << "\n";
  }
  return 0;
}

int cmd_fsm_table(const RunConfig& cfg, const std::string& prop_name, int c,
                  int ubound, int cbound, const std::string& out_file) {
  const Property* prop = find_property(prop_name);
  if (!prop) throw ParseError("unknown property: " + prop_name, 0);
  RepresentativeTable table = compute_classes(*prop, 2 * c, ubound, cbound);
  emit_header(cfg, "fsm-table");
  if (structured(cfg)) {
    std::cout << "prop " << prop_name << "\nclasses " << table.size() << "\n";
    std::cout << "r " << table.max_code_length << "\n";
    std::cout << "maxrepv " << table.max_rep_vertices << "\n";
  } else {
    std::cout << "computed " << table.size() << " classes for " << prop_name
              << " (r = " << table.max_code_length << ")\n";
  }
  if (!out_file.empty()) write_file(out_file, write_table(table));
  return 0;
}

int understand_s_value(const RepresentativeTable& table, int c, int s_flag) {
  int schedule = table.schedule_s(c);
  return std::max(schedule, s_flag);
}

int cmd_fsm_understand(const RunConfig& cfg, const std::string& file,
                       const std::string& table_file, int s_flag) {
  RepresentativeTable table = parse_table_file(table_file);
  int c = table.label_budget / 2;
  BoundariedStructure a = parse_structure_file(file);
  const Property* prop = find_property(table.property);
  if (!prop) throw ParseError("table property not registered: " + table.property, 0);
  int s = understand_s_value(table, c, s_flag);
  BoundariedStructure rep = understand(a, table, direct_solver(*prop), s, c);
  emit_header(cfg, "fsm-understand");
  size_t idx = table.size();
  std::string code = canonical_code(rep);
  for (size_t i = 0; i < table.size(); ++i) {
    if (table.rep_codes[i] == code) idx = i;
  }
  if (structured(cfg)) {
    std::cout << "class " << idx << "\n";
  } else {
    std::cout << "class " << idx << "\n";
  }
  std::cout << serialize_structure(rep);
  return 0;
}

int cmd_fsm_solve(const RunConfig& cfg, const std::string& file,
                  const std::string& prop_name, const std::string& table_file,
                  int s_flag) {
  const Property* prop = find_property(prop_name);
  if (!prop) throw ParseError("unknown property: " + prop_name, 0);
  RepresentativeTable table = parse_table_file(table_file);
  if (table.property != prop_name) {
    throw ParseError("table was built for property " + table.property, 0);
  }
  int c = table.label_budget / 2;
  BoundariedStructure parsed = parse_structure_file(file);
  if (!parsed.bgraph.labels().empty()) {
    throw ParseError("solve expects a structure without boundary labels", 0);
  }
  Structure s0;
  s0.graph = parsed.graph();
  s0.elements = parsed.elements;
  int s = understand_s_value(table, c, s_flag);
  bool value = solve_cmso(s0, table, direct_solver(*prop), s, c);
  emit_header(cfg, "fsm-solve");
  if (structured(cfg)) {
    std::cout << "value " << (value ? "true" : "false") << "\n";
  } else {
    std::cout << (value ? "true" : "false") << "\n";
  }
  return 0;
}

int cmd_mwcu(const RunConfig& cfg, const std::string& file, int k, int s_flag) {
  auto parsed = parse_graph_with_annotations_file(file);
  MwcuInstance inst = mwcu_from_file(parsed, k);
  RbcuReduction red = mwcu_to_rbcu(inst);
  int s = s_flag > 0 ? s_flag : default_mwcu_s(k);
  BreakOptions opts{cfg.seed, cfg.jobs};
  BreakOutcome pre = break_alg(red.instance.graph, s, k, opts);
  RbcuSolveStats stats;
  auto solution = rbcu_solve_unbreakable(red.instance, s, &stats);
  emit_header(cfg, "mwcu");
  if (structured(cfg)) {
    std::cout << "unbreakable " << (pre.unbreakable() ? 1 : 0) << "\n";
    std::cout << "s " << s << "\nk " << k << "\n";
    std::cout << "answer " << (solution ? "yes" : "no") << "\n";
    if (solution) std::cout << "solution " << join_ids(*solution) << "\n";
    std::cout << "depth " << stats.max_depth << "\n";
  } else {
    if (solution) {
      std::cout << "YES " << join_ids(*solution) << "\n";
    } else {
      std::cout << "NO\n";
      if (!pre.unbreakable()) {
        std::cout << "note: graph is not (" << s << "," << k
                  << ")-unbreakable; a NO from the unbreakable-case solver is "
                  << "not conclusive here\n";
      }
    }
  }
  return 0;
}

int cmd_pendant(const RunConfig& cfg, const std::string& file, int k, int t,
                const std::string& prop_name, int s_flag) {
  Graph g = parse_graph_file(file);
  const Property* prop = find_property(prop_name);
  if (!prop) throw ParseError("unknown property: " + prop_name, 0);
  PendantInstance inst{g, k, t, prop};
  int s = s_flag > 0 ? s_flag : default_pendant_s(k, t);
  BreakOptions opts{cfg.seed, cfg.jobs};
  BreakOutcome pre = break_alg(g, s, k + t, opts);
  auto found = pendant_solve_unbreakable(inst, s);
  emit_header(cfg, "pendant");
  if (structured(cfg)) {
    std::cout << "unbreakable " << (pre.unbreakable() ? 1 : 0) << "\n";
    std::cout << "answer " << (found ? "yes" : "no") << "\n";
    if (found) std::cout << "set " << join_ids(*found) << "\n";
  } else {
    if (found) {
      std::cout << "YES " << join_ids(*found) << "\n";
    } else {
      std::cout << "NO\n";
      if (!pre.unbreakable()) {
        std::cout << "note: graph is not (" << s << "," << (k + t)
                  << ")-unbreakable; a NO from the unbreakable-case solver is "
                  << "not conclusive here\n";
      }
    }
  }
  return 0;
}

int cmd_oracle_breakable(const RunConfig& cfg, const std::string& file, int s,
                         int c) {
  Graph g = parse_graph_file(file);
  OracleBudget budget;
  budget.max_vertices = cfg.oracle_budget;
  auto sep = oracle_witnessing_separation(g, s, c, budget);
  emit_header(cfg, "oracle-breakable");
  if (sep) {
    print_separation(cfg, *sep);
  } else {
    if (structured(cfg)) {
      std::cout << "result unbreakable\ns " << s << "\nc " << c << "\n";
    } else {
      std::cout << "UNBREAKABLE " << s << " " << c << "\n";
    }
  }
  return 0;
}

int cmd_oracle_mwcu(const RunConfig& cfg, const std::string& file, int k) {
  auto parsed = parse_graph_with_annotations_file(file);
  MwcuInstance inst = mwcu_from_file(parsed, k);
  auto solution = oracle_mwcu(inst);
  emit_header(cfg, "oracle-mwcu");
  if (solution) {
    std::cout << (structured(cfg) ? "answer yes\nsolution " : "YES ")
              << join_ids(*solution) << "\n";
  } else {
    std::cout << (structured(cfg) ? "answer no" : "NO") << "\n";
  }
  return 0;
}

int cmd_oracle_connsets(const RunConfig& cfg, const std::string& file, int root,
                        int p, int q) {
  Graph g = parse_graph_file(file);
  auto sets = oracle_connected_sets(g, ConnectedSetQuery{root, p, q});
  emit_header(cfg, "oracle-connsets");
  if (structured(cfg)) std::cout << "count " << sets.size() << "\n";
  for (const VertexSet& u : sets) {
    if (structured(cfg)) std::cout << "set ";
    std::cout << join_ids(u) << "\n";
  }
  return 0;
}

int cmd_oracle_classes(const RunConfig& cfg, const std::string& prop_name, int c,
                       int ubound, int cbound) {
  const Property* prop = find_property(prop_name);
  if (!prop) throw ParseError("unknown property: " + prop_name, 0);
  auto classes = oracle_equivalence(*prop, 2 * c, ubound, cbound);
  emit_header(cfg, "oracle-classes");
  if (structured(cfg)) std::cout << "classes " << classes.size() << "\n";
  for (size_t i = 0; i < classes.size(); ++i) {
    if (structured(cfg)) {
      std::cout << "class " << i << " size " << classes[i].size() << "\n";
    } else {
      std::cout << "class " << i << ": " << classes[i].size() << " members\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph unbreakability toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  if (const char* env = std::getenv("UNBREAK_BUDGET")) {
    cfg.oracle_budget = std::atoi(env);
  }
  app.add_option("--seed", cfg.seed, "rng seed for randomized constructions");
  app.add_option("--jobs", cfg.jobs, "worker threads for parallel sweeps");
  app.add_option("--format", cfg.format, "output format: human|structured")
      ->check(CLI::IsMember({"human", "structured"}));

  std::string file, out_file, prop_name, table_file;
  int s = 1, c = 0, n = 1, k = 1, p = 1, q = 0, root = 0, t = 0;
  int ubound = 4, cbound = 4, s_flag = 0;

  auto* breakcheck = app.add_subcommand("breakcheck", "witness or certify unbreakability");
  breakcheck->add_option("file", file)->required();
  breakcheck->add_option("--s", s)->required();
  breakcheck->add_option("--c", c)->required();

  auto* uset = app.add_subcommand("uset", "universal set tools");
  uset->require_subcommand(1);
  auto* uset_build = uset->add_subcommand("build", "construct a universal set");
  uset_build->add_option("--n", n)->required();
  uset_build->add_option("--k", k)->required();
  uset_build->add_option("--p", p)->required();
  uset_build->add_option("--out", out_file);
  auto* uset_verify = uset->add_subcommand("verify", "check the covering property");
  uset_verify->add_option("file", file)->required();

  auto* enumconn = app.add_subcommand("enumconn", "connected sets with bounded neighborhood");
  enumconn->add_option("file", file)->required();
  enumconn->add_option("--root", root)->required();
  enumconn->add_option("--p", p)->required();
  enumconn->add_option("--q", q)->required();

  auto* fsm = app.add_subcommand("fsm", "finite-state machinery");
  fsm->require_subcommand(1);
  auto* fsm_table = fsm->add_subcommand("table", "compute a representative table");
  fsm_table->add_option("--prop", prop_name)->required();
  fsm_table->add_option("--c", c)->required();
  fsm_table->add_option("--ubound", ubound);
  fsm_table->add_option("--cbound", cbound);
  fsm_table->add_option("--out", out_file);
  auto* fsm_understand = fsm->add_subcommand("understand", "find the representative");
  fsm_understand->add_option("file", file)->required();
  fsm_understand->add_option("--table", table_file)->required();
  fsm_understand->add_option("--s", s_flag);
  auto* fsm_solve = fsm->add_subcommand("solve", "decide a property via understanding");
  fsm_solve->add_option("file", file)->required();
  fsm_solve->add_option("--prop", prop_name)->required();
  fsm_solve->add_option("--table", table_file)->required();
  fsm_solve->add_option("--s", s_flag);

  auto* mwcu = app.add_subcommand("mwcu", "vertex multiway cut-uncut");
  mwcu->add_option("file", file)->required();
  mwcu->add_option("--k", k)->required();
  mwcu->add_option("--s", s_flag);

  auto* pendant = app.add_subcommand("pendant", "bounded-treewidth pendant subgraph");
  pendant->add_option("file", file)->required();
  pendant->add_option("--k", k)->required();
  pendant->add_option("--t", t)->required();
  pendant->add_option("--prop", prop_name)->required();
  pendant->add_option("--s", s_flag);

  auto* oracle = app.add_subcommand("oracle", "brute-force reference answers");
  oracle->require_subcommand(1);
  auto* oracle_breakable = oracle->add_subcommand("breakable", "exhaustive witness search");
  oracle_breakable->add_option("file", file)->required();
  oracle_breakable->add_option("--s", s)->required();
  oracle_breakable->add_option("--c", c)->required();
  auto* oracle_mwcu_cmd = oracle->add_subcommand("mwcu", "exhaustive multiway cut-uncut");
  oracle_mwcu_cmd->add_option("file", file)->required();
  oracle_mwcu_cmd->add_option("--k", k)->required();
  auto* oracle_connsets = oracle->add_subcommand("connsets", "full-subset connected sets");
  oracle_connsets->add_option("file", file)->required();
  oracle_connsets->add_option("--root", root)->required();
  oracle_connsets->add_option("--p", p)->required();
  oracle_connsets->add_option("--q", q)->required();
  auto* oracle_classes = oracle->add_subcommand("classes", "double-enumerated classes");
  oracle_classes->add_option("--prop", prop_name)->required();
  oracle_classes->add_option("--c", c)->required();
  oracle_classes->add_option("--ubound", ubound);
  oracle_classes->add_option("--cbound", cbound);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*breakcheck) return cmd_breakcheck(cfg, file, s, c);
    if (*uset_build) return cmd_uset_build(cfg, n, k, p, out_file);
    if (*uset_verify) return cmd_uset_verify(cfg, file);
    if (*enumconn) return cmd_enumconn(cfg, file, root, p, q);
    if (*fsm_table) return cmd_fsm_table(cfg, prop_name, c, ubound, cbound, out_file);
    if (*fsm_understand) return cmd_fsm_understand(cfg, file, table_file, s_flag);
    if (*fsm_solve) return cmd_fsm_solve(cfg, file, prop_name, table_file, s_flag);
    if (*mwcu) return cmd_mwcu(cfg, file, k, s_flag);
    if (*pendant) return cmd_pendant(cfg, file, k, t, prop_name, s_flag);
    if (*oracle_breakable) return cmd_oracle_breakable(cfg, file, s, c);
    if (*oracle_mwcu_cmd) return cmd_oracle_mwcu(cfg, file, k);
    if (*oracle_connsets) return cmd_oracle_connsets(cfg, file, root, p, q);
    if (*oracle_classes) return cmd_oracle_classes(cfg, prop_name, c, ubound, cbound);
    std::cerr << "no command selected\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
