#include "zxmw.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "diagram.hpp"
#include "engine.hpp"
#include "exporters.hpp"
#include "rulial.hpp"
#include "rules.hpp"
#include "semantics.hpp"
#include "sets.hpp"
#include "strings.hpp"
#include "term.hpp"
#include "termsys.hpp"
#include "turing.hpp"

using namespace zxmw;

namespace {

thread_local std::string g_error;

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const ResourceCapError& e) {
    g_error = e.what();
    return ZXMW_ERR_CAP;
  } catch (const std::invalid_argument& e) {
    g_error = e.what();
    return ZXMW_ERR_INVALID;
  } catch (const std::domain_error& e) {
    g_error = e.what();
    return ZXMW_ERR_INVALID;
  } catch (const std::exception& e) {
    g_error = e.what();
    return ZXMW_ERR_INTERNAL;
  }
}

TMState parse_tm_state(const std::string& text) {
  // "q<state>@<head>:<c0>,<c1>,..."
  if (text.empty() || text[0] != 'q') throw std::invalid_argument("tm state: expected 'q'");
  std::size_t at = text.find('@');
  std::size_t colon = text.find(':');
  if (at == std::string::npos || colon == std::string::npos || colon < at)
    throw std::invalid_argument("tm state: expected q<s>@<head>:<tape>");
  TMState s;
  s.state = std::stoi(text.substr(1, at - 1));
  s.head = std::stoi(text.substr(at + 1, colon - at - 1));
  std::string tape = text.substr(colon + 1);
  std::stringstream ss(tape);
  std::string cell;
  while (std::getline(ss, cell, ','))
    if (!cell.empty()) s.tape.push_back(std::stoi(cell));
  if (s.tape.empty()) s.tape.push_back(0);
  return s;
}

}  // namespace

struct zxmw_system {
  std::shared_ptr<RewriteSystem> sys;
  std::string kind;
  std::function<std::any(const std::string&)> parse_init;
};

struct zxmw_graph {
  MultiwayGraph mw;
  EngineConfig cfg;
  std::shared_ptr<RewriteSystem> sys;
};

extern "C" {

const char* zxmw_last_error(void) { return g_error.c_str(); }

void zxmw_string_free(char* s) { std::free(s); }

int zxmw_system_string(const char* rules, zxmw_system** out) {
  return guarded([&] {
    if (!rules || !out) throw std::invalid_argument("null argument");
    auto s = new zxmw_system;
    s->sys = std::make_shared<StringSystem>(parse_string_rules(rules));
    s->kind = "string";
    s->parse_init = [](const std::string& t) { return std::any(t); };
    *out = s;
    return ZXMW_OK;
  });
}

int zxmw_system_set(const char* rules, zxmw_system** out) {
  return guarded([&] {
    if (!rules || !out) throw std::invalid_argument("null argument");
    std::vector<SetRule> parsed;
    std::string text = rules;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find_first_of(";\n", start);
      if (end == std::string::npos) end = text.size();
      std::string part = text.substr(start, end - start);
      if (part.find_first_not_of(" \t\r") != std::string::npos)
        parsed.push_back(parse_set_rule(part));
      start = end + 1;
    }
    if (parsed.empty()) throw std::invalid_argument("no set rules given");
    auto s = new zxmw_system;
    s->sys = std::make_shared<SetSystem>(std::move(parsed));
    s->kind = "set";
    s->parse_init = [](const std::string& t) { return std::any(parse_set_state(t)); };
    *out = s;
    return ZXMW_OK;
  });
}

int zxmw_system_tm(int states, int colors, int include_stay, zxmw_system** out) {
  return guarded([&] {
    if (!out) throw std::invalid_argument("null argument");
    auto s = new zxmw_system;
    s->sys = std::make_shared<TMSystem>(tm_rulial(states, colors, include_stay != 0));
    s->kind = "tm";
    s->parse_init = [](const std::string& t) { return std::any(parse_tm_state(t)); };
    *out = s;
    return ZXMW_OK;
  });
}

int zxmw_system_term(const char* rules, zxmw_system** out) {
  return guarded([&] {
    if (!rules || !out) throw std::invalid_argument("null argument");
    std::vector<std::string> parts;
    std::string text = rules;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find_first_of(";\n", start);
      if (end == std::string::npos) end = text.size();
      std::string part = text.substr(start, end - start);
      if (part.find_first_not_of(" \t\r") != std::string::npos) parts.push_back(part);
      start = end + 1;
    }
    auto s = new zxmw_system;
    s->sys = std::make_shared<TermSystem>(TermSystem::from_text(parts));
    s->kind = "term";
    s->parse_init = [](const std::string& t) {
      auto term = parse_term(t);
      if (!term) throw std::invalid_argument("bad term: " + t);
      return std::any(*term);
    };
    *out = s;
    return ZXMW_OK;
  });
}

int zxmw_system_zx(int max_in, int max_out, const char* families, zxmw_system** out) {
  return guarded([&] {
    if (!out) throw std::invalid_argument("null argument");
    std::vector<RuleInstance> rules = enumerate_rules(max_in, max_out);
    if (families && *families) {
      std::set<std::string> want;
      std::stringstream ss(families);
      for (std::string tok; std::getline(ss, tok, ',');)
        if (!tok.empty()) want.insert(tok);
      std::erase_if(rules, [&](const RuleInstance& r) {
        return !want.count(family_name(r.family));
      });
      if (rules.empty()) throw std::invalid_argument("no rules match the family filter");
    }
    auto s = new zxmw_system;
    s->sys = std::make_shared<ZXMultiwaySystem>(std::move(rules));
    s->kind = "zx";
    s->parse_init = [](const std::string& t) { return std::any(parse_diagram(t)); };
    *out = s;
    return ZXMW_OK;
  });
}

void zxmw_system_free(zxmw_system* s) { delete s; }

int zxmw_evolve(zxmw_system* s, const char* const* inits, int n_inits, int steps,
                int states_mode, long max_states, long max_events, int workers,
                int branchial_window, zxmw_graph** out) {
  return guarded([&] {
    if (!s || !inits || n_inits < 1 || !out) throw std::invalid_argument("null argument");
    EngineConfig cfg;
    if (max_states > 0) cfg.max_states = std::size_t(max_states);
    if (max_events > 0) cfg.max_events = std::size_t(max_events);
    if (workers > 0) cfg.workers = workers;
    if (branchial_window > 0) cfg.branchial_window = branchial_window;
    std::vector<std::any> init_states;
    for (int i = 0; i < n_inits; ++i) init_states.push_back(s->parse_init(inits[i]));
    auto g = std::make_unique<zxmw_graph>();
    g->mw = evolve(*s->sys, init_states, steps,
                   states_mode ? MultiwayMode::States : MultiwayMode::Evolution, cfg);
    g->cfg = cfg;
    g->sys = s->sys;
    *out = g.release();
    return ZXMW_OK;
  });
}

void zxmw_graph_free(zxmw_graph* g) { delete g; }

int zxmw_graph_state_count(const zxmw_graph* g, long* out) {
  return guarded([&] {
    if (!g || !out) throw std::invalid_argument("null argument");
    *out = long(g->mw.states.size());
    return ZXMW_OK;
  });
}

int zxmw_graph_event_count(const zxmw_graph* g, long* out) {
  return guarded([&] {
    if (!g || !out) throw std::invalid_argument("null argument");
    *out = long(g->mw.events.size());
    return ZXMW_OK;
  });
}

int zxmw_graph_multiway_dot(const zxmw_graph* g, char** out) {
  return guarded([&] {
    if (!g || !out) throw std::invalid_argument("null argument");
    *out = dup_string(multiway_dot(g->mw, g->sys.get()));
    return ZXMW_OK;
  });
}

int zxmw_graph_multiway_json(const zxmw_graph* g, char** out) {
  return guarded([&] {
    if (!g || !out) throw std::invalid_argument("null argument");
    *out = dup_string(multiway_json(g->mw, g->cfg, g->sys->name(), g->sys.get()));
    return ZXMW_OK;
  });
}

int zxmw_graph_causal_dot(const zxmw_graph* g, int transitive_reduction, char** out) {
  return guarded([&] {
    if (!g || !out) throw std::invalid_argument("null argument");
    CausalGraph cg = causal_graph(g->mw, transitive_reduction != 0);
    *out = dup_string(causal_dot(g->mw, cg, g->sys.get()));
    return ZXMW_OK;
  });
}

int zxmw_graph_causal_json(const zxmw_graph* g, int transitive_reduction, char** out) {
  return guarded([&] {
    if (!g || !out) throw std::invalid_argument("null argument");
    CausalGraph cg = causal_graph(g->mw, transitive_reduction != 0);
    *out = dup_string(causal_json(g->mw, cg, g->sys.get()));
    return ZXMW_OK;
  });
}

int zxmw_graph_branchial_dot(const zxmw_graph* g, int slice, char** out) {
  return guarded([&] {
    if (!g || !out) throw std::invalid_argument("null argument");
    int t = slice >= 0 ? slice : g->mw.max_generation();
    BranchialGraph bg = branchial(g->mw, t, g->cfg.branchial_window);
    *out = dup_string(branchial_dot(g->mw, bg));
    return ZXMW_OK;
  });
}

int zxmw_graph_branchial_json(const zxmw_graph* g, int slice, char** out) {
  return guarded([&] {
    if (!g || !out) throw std::invalid_argument("null argument");
    int t = slice >= 0 ? slice : g->mw.max_generation();
    BranchialGraph bg = branchial(g->mw, t, g->cfg.branchial_window);
    *out = dup_string(branchial_json(g->mw, bg, t, g->cfg.branchial_window));
    return ZXMW_OK;
  });
}

int zxmw_semantics_json(const char* zx_expr, char** out) {
  return guarded([&] {
    if (!zx_expr || !out) throw std::invalid_argument("null argument");
    ZXDiagram d = parse_diagram(zx_expr);
    CMatrix m = diagram_matrix(d);
    nlohmann::json j;
    j["expr"] = zx_expr;
    j["inputs"] = d.n_inputs;
    j["outputs"] = d.n_outputs;
    j["rows"] = m.rows;
    j["cols"] = m.cols;
    j["entries"] = nlohmann::json::array();
    for (const auto& v : m.a) j["entries"].push_back({v.real(), v.imag()});
    if (auto em = diagram_matrix_exact(d)) {
      j["exact"] = nlohmann::json::array();
      for (const auto& v : em->a) j["exact"].push_back(v.str());
    }
    *out = dup_string(j.dump(2) + "\n");
    return ZXMW_OK;
  });
}

int zxmw_rules_json(int max_in, int max_out, char** out) {
  return guarded([&] {
    if (!out) throw std::invalid_argument("null argument");
    auto rules = enumerate_rules(max_in, max_out);
    nlohmann::json j;
    j["max_in"] = max_in;
    j["max_out"] = max_out;
    j["count"] = rules.size();
    j["rules"] = nlohmann::json::array();
    auto render_pattern = [](const PatternDiagram& p) {
      std::vector<std::string> parts;
      std::vector<std::string> names(p.nodes.size());
      for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        const PatternNode& n = p.nodes[i];
        char prefix = n.kind == NodeKind::Z   ? 'z'
                      : n.kind == NodeKind::X ? 'x'
                      : n.kind == NodeKind::H ? 'h'
                                              : 'd';
        names[i] = std::string(1, prefix) + std::to_string(i + 1);
        int deg = 0;
        for (const auto& [a, b] : p.wires) {
          if (a.kind == Endpoint::Node && a.index == int(i)) ++deg;
          if (b.kind == Endpoint::Node && b.index == int(i)) ++deg;
        }
        std::ostringstream os;
        if (n.kind == NodeKind::Z || n.kind == NodeKind::X)
          os << (n.kind == NodeKind::Z ? "Z[" : "X[") << names[i] << ",0," << deg << ","
             << n.phase.str() << "]";
        else if (n.kind == NodeKind::H)
          os << "H[" << names[i] << "]";
        else
          os << "B[" << names[i] << "]";
        parts.push_back(os.str());
      }
      auto ep_name = [&](const Endpoint& e) {
        switch (e.kind) {
          case Endpoint::Node: return names[e.index];
          case Endpoint::Input: return "i" + std::to_string(e.index + 1);
          default: return "o" + std::to_string(e.index + 1);
        }
      };
      for (const auto& [a, b] : p.wires)
        parts.push_back("W[" + ep_name(a) + "," + ep_name(b) + "]");
      for (int l = 0; l < p.loops; ++l) parts.push_back("L");
      std::string s;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += "*";
        s += parts[i];
      }
      return s.empty() ? std::string("1") : s;
    };
    for (const auto& r : rules) {
      nlohmann::json row;
      row["id"] = r.id;
      row["family"] = family_name(r.family);
      row["color"] = r.color == NodeKind::Z ? "Z" : "X";
      row["inputs"] = r.lhs.n_inputs;
      row["outputs"] = r.lhs.n_outputs;
      row["lhs"] = render_pattern(r.lhs);
      row["rhs"] = render_pattern(r.rhs);
      row["vars"] = r.phase_vars;
      j["rules"].push_back(std::move(row));
    }
    *out = dup_string(j.dump(2) + "\n");
    return ZXMW_OK;
  });
}

int zxmw_experiment_monoidal_json(int tier, int sample, int steps, unsigned seed,
                                  char** out, int* all_pass) {
  return guarded([&] {
    if (!out) throw std::invalid_argument("null argument");
    if (tier < 1 || tier > 3) throw std::invalid_argument("tier must be 1, 2 or 3");
    std::vector<ZXDiagram> instances = experiment_tier(tier);
    std::vector<int> chosen(instances.size());
    for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i] = int(i);
    if (sample > 0 && sample < int(instances.size())) {
      std::mt19937 rng(seed);
      std::shuffle(chosen.begin(), chosen.end(), rng);
      chosen.resize(sample);
      std::sort(chosen.begin(), chosen.end());
    }
    InstantiateParams pid;
    pid.k = 0;  // input-arity-2 identity variant
    RuleInstance zid = instantiate(RuleFamily::S2Identity, NodeKind::Z, pid);
    RuleInstance xid = instantiate(RuleFamily::S2Identity, NodeKind::X, pid);
    nlohmann::json j;
    j["experiment"] = "monoidal";
    j["tier"] = tier;
    j["steps"] = steps;
    j["seed"] = seed;
    j["instances"] = instances.size();
    j["sampled"] = chosen.size();
    j["results"] = nlohmann::json::array();
    bool ok = true;
    for (int idx : chosen) {
      MonoidalReport rep = monoidal_experiment(instances[idx], zid, xid, steps);
      nlohmann::json row;
      row["instance"] = idx;
      row["init"] = render_diagram(instances[idx]);
      row["multiway_raw"] = rep.multiway_raw;
      row["multiway_quotiented"] = rep.multiway_quotiented;
      row["branchial_raw"] = rep.branchial_raw;
      row["branchial_quotiented"] = rep.branchial_quotiented;
      row["rulial_states"] = rep.rulial_states;
      row["stacked_states"] = rep.stacked_states;
      row["rulial_states_quotiented"] = rep.rulial_states_quotiented;
      row["stacked_states_quotiented"] = rep.stacked_states_quotiented;
      row["pass"] = rep.pass();
      ok = ok && rep.pass();
      j["results"].push_back(std::move(row));
    }
    j["all_pass"] = ok;
    if (all_pass) *all_pass = ok ? 1 : 0;
    *out = dup_string(j.dump(2) + "\n");
    return ZXMW_OK;
  });
}

int zxmw_quantum_root_not_json(int steps, char** out, int* faithful) {
  return guarded([&] {
    if (!out) throw std::invalid_argument("null argument");
    QGate gate = root_not_gate();
    std::array<ExactComplex, 2> init = equal_superposition();
    QuantumToy toy = quantum_toy(gate, init, steps);
    // independent oracle: exact matrix power applied to init
    std::array<ExactComplex, 2> vec = init;
    bool ok = toy.slice_amplitudes[0][0] == vec[0] && toy.slice_amplitudes[0][1] == vec[1];
    nlohmann::json j;
    j["gate"] = "root-not";
    j["steps"] = steps;
    j["slices"] = nlohmann::json::array();
    j["slices"].push_back(
        {{"t", 0}, {"amp0", vec[0].str()}, {"amp1", vec[1].str()}, {"exact", true}});
    for (int t = 1; t <= steps; ++t) {
      std::array<ExactComplex, 2> next;
      next[0] = gate[0][0] * vec[0] + gate[0][1] * vec[1];
      next[1] = gate[1][0] * vec[0] + gate[1][1] * vec[1];
      vec = next;
      bool match =
          toy.slice_amplitudes[t][0] == vec[0] && toy.slice_amplitudes[t][1] == vec[1];
      ok = ok && match;
      j["slices"].push_back({{"t", t},
                             {"amp0", toy.slice_amplitudes[t][0].str()},
                             {"amp1", toy.slice_amplitudes[t][1].str()},
                             {"exact", match}});
    }
    j["faithful"] = ok;
    j["dot"] = multiway_dot(toy.graph);
    if (faithful) *faithful = ok ? 1 : 0;
    *out = dup_string(j.dump(2) + "\n");
    return ZXMW_OK;
  });
}

int zxmw_check_json(zxmw_system* s, const char* const* inits, int n_inits,
                    const char* kind, int depth, int max_len, char** out, int* verdict) {
  return guarded([&] {
    if (!s || !inits || n_inits < 1 || !kind || !out)
      throw std::invalid_argument("null argument");
    std::string k = kind;
    nlohmann::json j;
    j["check"] = k;
    j["depth"] = depth;
    int v = -1;
    if (k == "confluence") {
      ConfluenceReport rep = check_confluence(*s->sys, s->parse_init(inits[0]), depth);
      j["pairs_checked"] = rep.pairs_checked;
      switch (rep.verdict) {
        case ConfluenceReport::Verdict::Confluent:
          j["verdict"] = "confluent";
          v = 1;
          break;
        case ConfluenceReport::Verdict::Counterexample:
          j["verdict"] = "counterexample";
          j["diverging_state"] = rep.diverging_state;
          j["branch_a"] = rep.branch_a;
          j["branch_b"] = rep.branch_b;
          v = 0;
          break;
        default:
          j["verdict"] = "inconclusive";
          v = -1;
      }
    } else if (k == "causal-invariance") {
      CausalInvarianceReport rep =
          check_causal_invariance(*s->sys, s->parse_init(inits[0]), depth);
      j["paths_checked"] = rep.paths_checked;
      switch (rep.verdict) {
        case CausalInvarianceReport::Verdict::Invariant:
          j["verdict"] = "invariant";
          v = 1;
          break;
        case CausalInvarianceReport::Verdict::Violated:
          j["verdict"] = "violated";
          v = 0;
          break;
        default:
          j["verdict"] = "inconclusive";
          v = -1;
      }
    } else if (k == "complete-consistent") {
      if (s->kind != "string")
        throw std::invalid_argument("complete-consistent requires a string system");
      CompletenessReport rep =
          check_complete_consistent(*s->sys, inits[0], depth, max_len);
      j["max_len"] = max_len;
      j["generated"] = rep.generated;
      j["consistent"] = !rep.inconsistent;
      j["complete"] = rep.complete;
      j["both"] = rep.both;
      j["neither"] = rep.neither;
      v = (!rep.inconsistent && rep.complete) ? 1 : 0;
      j["verdict"] = v ? "complete-consistent" : "fails";
    } else {
      throw std::invalid_argument("unknown check kind: " + k);
    }
    if (verdict) *verdict = v;
    *out = dup_string(j.dump(2) + "\n");
    return ZXMW_OK;
  });
}

int zxmw_complete_json(zxmw_system* s, const char* const* inits, int n_inits, int depth,
                       int max_rounds, int oriented, char** out, int* connected) {
  return guarded([&] {
    if (!s || !inits || n_inits < 1 || !out) throw std::invalid_argument("null argument");
    std::vector<std::any> init_states;
    for (int i = 0; i < n_inits; ++i) init_states.push_back(s->parse_init(inits[i]));

    auto components = [&](const RewriteSystem& sys) {
      MultiwayGraph mw = evolve(sys, init_states, depth, MultiwayMode::States);
      std::vector<int> parent(mw.states.size());
      for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = int(i);
      std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (const auto& e : mw.events) parent[find(e.input_state)] = find(e.output_state);
      std::set<int> roots;
      for (std::size_t i = 0; i < parent.size(); ++i) roots.insert(find(int(i)));
      return std::make_pair(int(roots.size()), int(mw.states.size()));
    };

    auto [before_components, before_states] = components(*s->sys);
    CompletedSystem cs(*s->sys);
    CompletionReport rep = complete(cs, init_states, depth, max_rounds, oriented != 0);
    auto [after_components, after_states] = components(cs);

    nlohmann::json j;
    j["depth"] = depth;
    j["oriented"] = oriented != 0;
    j["reached_fixpoint"] = rep.reached_fixpoint;
    j["added_rules"] = nlohmann::json::array();
    for (const auto& [from, to] : rep.added_rules)
      j["added_rules"].push_back({{"from", from}, {"to", to}});
    j["components_before"] = before_components;
    j["components_after"] = after_components;
    j["states_before"] = before_states;
    j["states_after"] = after_states;
    bool conn = after_components <= 1;
    j["connected"] = conn;
    if (connected) *connected = conn ? 1 : 0;
    *out = dup_string(j.dump(2) + "\n");
    return ZXMW_OK;
  });
}

}  // extern "C"
