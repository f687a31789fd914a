// Command-line front end. Talks to the engine exclusively through the C API.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zxmw.h"

namespace {

// exit codes: 0 success, 1 verdict failure, 2 configuration error, 3 cap hit
int from_status(int rc) {
  switch (rc) {
    case ZXMW_OK: return 0;
    case ZXMW_ERR_INVALID: return 2;
    case ZXMW_ERR_CAP: return 3;
    default: return 2;
  }
}

int fail(int rc) {
  std::cerr << "error: " << zxmw_last_error() << "\n";
  return from_status(rc);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CLI::ValidationError("cannot open output file: " + path);
  f << text;
}

struct SystemSpec {
  std::string system = "string";
  std::string rules;
  int tm_states = 2, tm_colors = 2;
  bool tm_stay = false;
  int zx_max_in = 3, zx_max_out = 3;
  std::string zx_families;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--system", system, "string | set | tm | term | zx")
        ->check(CLI::IsMember({"string", "set", "tm", "term", "zx"}))
        ->capture_default_str();
    cmd->add_option("--rules", rules, "rule list (string/set/term systems)");
    cmd->add_option("--tm-states", tm_states, "Turing head-state count")
        ->capture_default_str();
    cmd->add_option("--tm-colors", tm_colors, "Turing tape-color count")
        ->capture_default_str();
    cmd->add_flag("--tm-stay", tm_stay, "include stationary-head Turing rules");
    cmd->add_option("--zx-max-in", zx_max_in, "ZX rule schema input-arity bound")
        ->capture_default_str();
    cmd->add_option("--zx-max-out", zx_max_out, "ZX rule schema output-arity bound")
        ->capture_default_str();
    cmd->add_option("--zx-families", zx_families,
                    "comma-separated ZX rule family filter (e.g. identity,fusion)");
  }

  int make(zxmw_system** out) const {
    if (system == "string") return zxmw_system_string(rules.c_str(), out);
    if (system == "set") return zxmw_system_set(rules.c_str(), out);
    if (system == "tm") return zxmw_system_tm(tm_states, tm_colors, tm_stay ? 1 : 0, out);
    if (system == "term") return zxmw_system_term(rules.c_str(), out);
    return zxmw_system_zx(zx_max_in, zx_max_out, zx_families.c_str(), out);
  }
};

struct EvolveSpec {
  std::vector<std::string> inits;
  int steps = 3;
  bool states_mode = false;
  long max_states = 0, max_events = 0;
  int workers = 0, branchial_window = 0;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--init", inits, "initial state(s)")->required();
    cmd->add_option("--steps", steps, "number of generations")->capture_default_str();
    cmd->add_flag("--states-graph", states_mode,
                  "merge states across generations (states graph)");
    cmd->add_option("--max-states", max_states, "state cap (0 = default)");
    cmd->add_option("--max-events", max_events, "event cap (0 = default)");
    cmd->add_option("--workers", workers, "worker threads (0 = default)");
    cmd->add_option("--branchial-window", branchial_window,
                    "common-ancestor window for branchial edges");
  }

  int run(zxmw_system* sys, zxmw_graph** out) const {
    std::vector<const char*> ptrs;
    for (const auto& s : inits) ptrs.push_back(s.c_str());
    return zxmw_evolve(sys, ptrs.data(), int(ptrs.size()), steps, states_mode ? 1 : 0,
                       max_states, max_events, workers, branchial_window, out);
  }
};

struct OutputSpec {
  std::string dot_path, json_path;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--dot", dot_path, "write Graphviz output here ('-' = stdout)");
    cmd->add_option("--json", json_path, "write JSON output here ('-' = stdout)");
  }
  bool wants_dot() const { return !dot_path.empty(); }
  bool wants_json() const { return !json_path.empty() || dot_path.empty(); }
};

struct StrGuard {
  char* p = nullptr;
  ~StrGuard() { zxmw_string_free(p); }
};

struct SysGuard {
  zxmw_system* p = nullptr;
  ~SysGuard() { zxmw_system_free(p); }
};

struct GraphGuard {
  zxmw_graph* p = nullptr;
  ~GraphGuard() { zxmw_graph_free(p); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiway rewriting and ZX-calculus workbench"};
  app.require_subcommand(1);

  // ---- evolve ---------------------------------------------------------
  auto* evolve_cmd = app.add_subcommand("evolve", "build a multiway graph");
  SystemSpec ev_sys;
  EvolveSpec ev_run;
  OutputSpec ev_out;
  ev_sys.add_options(evolve_cmd);
  ev_run.add_options(evolve_cmd);
  ev_out.add_options(evolve_cmd);
  evolve_cmd->callback([&] {
    SysGuard sys;
    if (int rc = ev_sys.make(&sys.p)) std::exit(fail(rc));
    GraphGuard g;
    if (int rc = ev_run.run(sys.p, &g.p)) std::exit(fail(rc));
    if (ev_out.wants_dot()) {
      StrGuard s;
      if (int rc = zxmw_graph_multiway_dot(g.p, &s.p)) std::exit(fail(rc));
      emit(s.p, ev_out.dot_path);
    }
    if (ev_out.wants_json()) {
      StrGuard s;
      if (int rc = zxmw_graph_multiway_json(g.p, &s.p)) std::exit(fail(rc));
      emit(s.p, ev_out.json_path);
    }
  });

  // ---- causal ---------------------------------------------------------
  auto* causal_cmd = app.add_subcommand("causal", "causal graph of an evolution");
  SystemSpec ca_sys;
  EvolveSpec ca_run;
  OutputSpec ca_out;
  bool ca_reduce = false;
  ca_sys.add_options(causal_cmd);
  ca_run.add_options(causal_cmd);
  ca_out.add_options(causal_cmd);
  causal_cmd->add_flag("--transitive-reduction", ca_reduce,
                       "drop causal edges implied by longer paths");
  causal_cmd->callback([&] {
    SysGuard sys;
    if (int rc = ca_sys.make(&sys.p)) std::exit(fail(rc));
    GraphGuard g;
    if (int rc = ca_run.run(sys.p, &g.p)) std::exit(fail(rc));
    if (ca_out.wants_dot()) {
      StrGuard s;
      if (int rc = zxmw_graph_causal_dot(g.p, ca_reduce ? 1 : 0, &s.p))
        std::exit(fail(rc));
      emit(s.p, ca_out.dot_path);
    }
    if (ca_out.wants_json()) {
      StrGuard s;
      if (int rc = zxmw_graph_causal_json(g.p, ca_reduce ? 1 : 0, &s.p))
        std::exit(fail(rc));
      emit(s.p, ca_out.json_path);
    }
  });

  // ---- branchial ------------------------------------------------------
  auto* br_cmd = app.add_subcommand("branchial", "branchial graph at a slice");
  SystemSpec br_sys;
  EvolveSpec br_run;
  OutputSpec br_out;
  int br_slice = -1;
  br_sys.add_options(br_cmd);
  br_run.add_options(br_cmd);
  br_out.add_options(br_cmd);
  br_cmd->add_option("--slice", br_slice, "foliation slice (-1 = last)")
      ->capture_default_str();
  br_cmd->callback([&] {
    SysGuard sys;
    if (int rc = br_sys.make(&sys.p)) std::exit(fail(rc));
    GraphGuard g;
    if (int rc = br_run.run(sys.p, &g.p)) std::exit(fail(rc));
    if (br_out.wants_dot()) {
      StrGuard s;
      if (int rc = zxmw_graph_branchial_dot(g.p, br_slice, &s.p)) std::exit(fail(rc));
      emit(s.p, br_out.dot_path);
    }
    if (br_out.wants_json()) {
      StrGuard s;
      if (int rc = zxmw_graph_branchial_json(g.p, br_slice, &s.p)) std::exit(fail(rc));
      emit(s.p, br_out.json_path);
    }
  });

  // ---- semantics ------------------------------------------------------
  auto* sem_cmd = app.add_subcommand("semantics", "matrix of a ZX operator expression");
  std::string sem_expr, sem_json;
  sem_cmd->add_option("expr", sem_expr,
                      "operator expression, e.g. Z[a,1,2,pi/2]*W[i1,a]*W[a,o1]*W[a,o2]")
      ->required();
  sem_cmd->add_option("--json", sem_json, "output file ('-' = stdout)");
  sem_cmd->callback([&] {
    StrGuard s;
    if (int rc = zxmw_semantics_json(sem_expr.c_str(), &s.p)) std::exit(fail(rc));
    emit(s.p, sem_json);
  });

  // ---- rules ----------------------------------------------------------
  auto* rules_cmd = app.add_subcommand("rules", "enumerate the ZX rule schema");
  int ru_in = 3, ru_out = 3;
  std::string ru_json;
  rules_cmd->add_option("--max-in", ru_in, "input-arity bound")->capture_default_str();
  rules_cmd->add_option("--max-out", ru_out, "output-arity bound")->capture_default_str();
  rules_cmd->add_option("--json", ru_json, "output file ('-' = stdout)");
  rules_cmd->callback([&] {
    StrGuard s;
    if (int rc = zxmw_rules_json(ru_in, ru_out, &s.p)) std::exit(fail(rc));
    emit(s.p, ru_json);
  });

  // ---- experiment -----------------------------------------------------
  auto* exp_cmd =
      app.add_subcommand("experiment", "monoidal-compatibility sweep over diagrams");
  int exp_tier = 1, exp_sample = 0, exp_steps = 2;
  unsigned exp_seed = 1;
  std::string exp_json;
  exp_cmd->add_option("--tier", exp_tier, "diagram-size tier (1-3)")
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  exp_cmd->add_option("--sample", exp_sample, "random sample size (0 = full tier)")
      ->capture_default_str();
  exp_cmd->add_option("--steps", exp_steps, "evolution steps")->capture_default_str();
  exp_cmd->add_option("--seed", exp_seed, "sampling seed")->capture_default_str();
  exp_cmd->add_option("--json", exp_json, "output file ('-' = stdout)");
  exp_cmd->callback([&] {
    StrGuard s;
    int all_pass = 0;
    if (int rc = zxmw_experiment_monoidal_json(exp_tier, exp_sample, exp_steps, exp_seed,
                                               &s.p, &all_pass))
      std::exit(fail(rc));
    emit(s.p, exp_json);
    if (!all_pass) std::exit(1);
  });

  // ---- quantum --------------------------------------------------------
  auto* q_cmd = app.add_subcommand("quantum", "root-NOT path-sum multiway toy");
  int q_steps = 8;
  std::string q_json;
  q_cmd->add_option("--steps", q_steps, "number of gate applications")
      ->capture_default_str();
  q_cmd->add_option("--json", q_json, "output file ('-' = stdout)");
  q_cmd->callback([&] {
    StrGuard s;
    int faithful = 0;
    if (int rc = zxmw_quantum_root_not_json(q_steps, &s.p, &faithful))
      std::exit(fail(rc));
    emit(s.p, q_json);
    if (!faithful) std::exit(1);
  });

  // ---- check ----------------------------------------------------------
  auto* chk_cmd = app.add_subcommand("check", "confluence / causal-invariance / "
                                              "complete-consistent analysis");
  SystemSpec chk_sys;
  std::vector<std::string> chk_inits;
  std::string chk_kind = "confluence", chk_json;
  int chk_depth = 3, chk_maxlen = 4;
  chk_sys.add_options(chk_cmd);
  chk_cmd->add_option("--init", chk_inits, "initial state(s)")->required();
  chk_cmd->add_option("--kind", chk_kind, "check to run")
      ->check(CLI::IsMember({"confluence", "causal-invariance", "complete-consistent"}))
      ->capture_default_str();
  chk_cmd->add_option("--depth", chk_depth, "search depth")->capture_default_str();
  chk_cmd->add_option("--max-len", chk_maxlen, "string length bound (completeness)")
      ->capture_default_str();
  chk_cmd->add_option("--json", chk_json, "output file ('-' = stdout)");
  chk_cmd->callback([&] {
    SysGuard sys;
    if (int rc = chk_sys.make(&sys.p)) std::exit(fail(rc));
    std::vector<const char*> ptrs;
    for (const auto& s : chk_inits) ptrs.push_back(s.c_str());
    StrGuard s;
    int verdict = -1;
    if (int rc = zxmw_check_json(sys.p, ptrs.data(), int(ptrs.size()), chk_kind.c_str(),
                                 chk_depth, chk_maxlen, &s.p, &verdict))
      std::exit(fail(rc));
    emit(s.p, chk_json);
    if (verdict != 1) std::exit(1);
  });

  // ---- complete -------------------------------------------------------
  auto* cmp_cmd = app.add_subcommand("complete", "critical-pair completion");
  SystemSpec cmp_sys;
  std::vector<std::string> cmp_inits;
  std::string cmp_json;
  int cmp_depth = 2, cmp_rounds = 8;
  bool cmp_oriented = false;
  cmp_sys.add_options(cmp_cmd);
  cmp_cmd->add_option("--init", cmp_inits, "initial state(s)")->required();
  cmp_cmd->add_option("--depth", cmp_depth, "evolution depth")->capture_default_str();
  cmp_cmd->add_option("--max-rounds", cmp_rounds, "completion iteration cap")
      ->capture_default_str();
  cmp_cmd->add_flag("--oriented", cmp_oriented, "add only shortlex-decreasing rules");
  cmp_cmd->add_option("--json", cmp_json, "output file ('-' = stdout)");
  cmp_cmd->callback([&] {
    SysGuard sys;
    if (int rc = cmp_sys.make(&sys.p)) std::exit(fail(rc));
    std::vector<const char*> ptrs;
    for (const auto& s : cmp_inits) ptrs.push_back(s.c_str());
    StrGuard s;
    int connected = 0;
    if (int rc = zxmw_complete_json(sys.p, ptrs.data(), int(ptrs.size()), cmp_depth,
                                    cmp_rounds, cmp_oriented ? 1 : 0, &s.p, &connected))
      std::exit(fail(rc));
    emit(s.p, cmp_json);
    if (!connected) std::exit(1);
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
