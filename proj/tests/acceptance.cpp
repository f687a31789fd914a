// Acceptance gate: one line of output per criterion, nonzero exit on any
// failure. Each check computes its expected value from an independent oracle
// (direct matrix algebra, naive closures, brute-force enumeration) rather
// than from the code path under test.
#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "engine.hpp"
#include "exporters.hpp"
#include "rulial.hpp"
#include "rules.hpp"
#include "semantics.hpp"
#include "sets.hpp"
#include "strings.hpp"
#include "termsys.hpp"
#include "turing.hpp"

using namespace zxmw;

namespace {

int g_failures = 0;

void report(int criterion, const char* title, bool ok, const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, title,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

// ---- criterion 1: bialgebra verification identity -------------------------

std::string zc(const std::string& alpha) {
  return "Z[a,2,1," + alpha + "]*W[i1,a]*W[i2,a]*W[a,o1]";
}
std::string xc(const std::string& beta) {
  return "X[a,1,2," + beta + "]*W[i1,a]*W[a,o1]*W[a,o2]";
}

ZXDiagram bialgebra_lhs(const std::string& alpha, const std::string& beta) {
  ZXDiagram Z = parse_diagram(zc(alpha));
  ZXDiagram X = parse_diagram(xc(beta));
  ZXDiagram mid = stack(parse_diagram("W[i1,o1]"),
                        stack(parse_diagram("W[i1,o2]*W[i2,o1]"), parse_diagram("W[i1,o1]")));
  return stack(compose(compose(stack(X, X), mid), stack(Z, Z)), parse_diagram("B[d]"));
}
ZXDiagram bialgebra_rhs(const std::string& alpha, const std::string& beta) {
  return compose(parse_diagram(zc(alpha)), parse_diagram(xc(beta)));
}

void criterion1() {
  bool ok = true;
  for (auto [a, b] : {std::pair<const char*, const char*>{"0", "0"}, {"pi", "0"}, {"0", "pi"}}) {
    auto l = diagram_matrix_exact(bialgebra_lhs(a, b));
    auto r = diagram_matrix_exact(bialgebra_rhs(a, b));
    ok = ok && l && r && *l == *r;
  }
  auto l = diagram_matrix_exact(bialgebra_lhs("pi/2", "pi/2"));
  auto r = diagram_matrix_exact(bialgebra_rhs("pi/2", "pi/2"));
  ok = ok && l && r && !(*l == *r);
  report(1, "bialgebra verification identity (exact, with pi/2 negative control)", ok);
}

// ---- criterion 2: rule soundness sweep ------------------------------------

void criterion2() {
  std::vector<Phase> samples = {Phase::zero(), Phase(Rational(1, 2)), Phase::pi(),
                                Phase(Rational(3, 2))};
  std::mt19937 rng(23);
  for (int k = 0; k < 5; ++k) {
    std::int64_t den = 3 + rng() % 7;
    std::int64_t num = 1 + std::int64_t(rng() % std::uint32_t(2 * den - 1));
    samples.push_back(Phase(Rational(num, den)));
  }
  int checked = 0;
  std::string first_bad;
  for (const auto& rule : enumerate_rules(3, 3)) {
    std::vector<std::map<std::string, Phase>> binds{{}};
    for (const auto& v : rule.phase_vars) {
      std::vector<std::map<std::string, Phase>> next;
      for (const auto& base : binds)
        for (const auto& p : samples) {
          auto bb = base;
          bb[v] = p;
          next.push_back(std::move(bb));
        }
      binds = std::move(next);
    }
    for (const auto& binding : binds) {
      ++checked;
      if (verify_rule(rule, binding).kind != Verdict::Equal && first_bad.empty())
        first_bad = rule.id;
    }
  }
  report(2, "rule-soundness sweep over the arity-3 schema", first_bad.empty(),
         first_bad.empty() ? std::to_string(checked) + " instantiations, all equal (lambda 1)"
                           : "unsound: " + first_bad);
}

// ---- criterion 3: quantum faithfulness ------------------------------------

void criterion3() {
  QGate g = root_not_gate();
  auto init = equal_superposition();
  QuantumToy toy = quantum_toy(g, init, 8);
  bool ok = toy.slice_amplitudes.size() == 9;
  std::array<ExactComplex, 2> v = init;
  for (int t = 0; t <= 8 && ok; ++t) {
    ok = toy.slice_amplitudes[t][0] == v[0] && toy.slice_amplitudes[t][1] == v[1];
    std::array<ExactComplex, 2> next{};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) next[r] = next[r] + g[r][c] * v[c];
    v = next;
  }
  report(3, "root-NOT multiway amplitudes equal the exact gate power, t = 1..8", ok);
}

// ---- criterion 4: toy-calculus completeness/consistency --------------------

std::set<std::string> naive_closure(const std::vector<StringSystem::Rule>& rules,
                                    const std::string& init, int depth) {
  std::set<std::string> seen{init}, frontier{init};
  for (int d = 0; d < depth; ++d) {
    std::set<std::string> next;
    for (const auto& s : frontier)
      for (const auto& [lhs, rhs] : rules)
        for (std::size_t at = 0; at + lhs.size() <= s.size(); ++at)
          if (s.compare(at, lhs.size(), lhs) == 0) {
            std::string t = s.substr(0, at) + rhs + s.substr(at + lhs.size());
            if (seen.insert(t).second) next.insert(t);
          }
    frontier = std::move(next);
  }
  return seen;
}

void criterion4() {
  auto c1 = naive_closure(parse_string_rules("1->01,0->10"), "1", 10);
  bool incomplete_ok = !c1.count("111") && !c1.count("000");

  auto c2 = naive_closure(parse_string_rules("1->01,0->10,01->00"), "1", 10);
  bool inconsistent_ok = c2.count("010") && c2.count("101");

  StringSystem third(parse_string_rules("1->01,0->10,1->11"));
  auto rep = check_complete_consistent(third, "1", 12, 4);
  bool third_ok = !rep.inconsistent && rep.complete && rep.both.empty() && rep.neither.empty();

  report(4, "toy calculi: incomplete / inconsistent / complete-and-consistent",
         incomplete_ok && inconsistent_ok && third_ok);
}

// ---- criterion 5: confluence and causal invariance ------------------------

void criterion5() {
  SetSystem growth({parse_set_rule("{{x,y}}->{{x,y},{y,z}}")});
  std::any init = parse_set_state("{{0,0}}");
  // every branch pair within 2 steps joins after a single further step
  bool one_step = true;
  int pairs = 0;
  MultiwayGraph mw = evolve(growth, {init}, 2, MultiwayMode::States);
  for (const auto& st : mw.states)
    for (const auto& [sa, sb] : branch_pairs(growth, st.value)) {
      ++pairs;
      std::set<std::string> ka{sa.key}, kb{sb.key};
      for (const auto& t : growth.successors(sa.state)) ka.insert(t.key);
      for (const auto& t : growth.successors(sb.state)) kb.insert(t.key);
      bool met = false;
      for (const auto& k : ka) met = met || kb.count(k);
      one_step = one_step && met;
    }
  bool confluent =
      check_confluence(growth, init, 3).verdict == ConfluenceReport::Verdict::Confluent;

  SetSystem triangle({parse_set_rule("{{x,y},{z,y}}->{{x,w},{y,w},{z,w}}")});
  auto ci = check_causal_invariance(triangle, std::any(parse_set_state("{{0,1},{2,1}}")), 3);
  bool invariant = ci.verdict == CausalInvarianceReport::Verdict::Invariant;

  report(5, "growth rule confluent (single-step joins); triangle rule causal invariant",
         one_step && pairs > 0 && confluent && invariant,
         std::to_string(pairs) + " branch pairs, " + std::to_string(ci.paths_checked) +
             " paths");
}

// ---- criterion 6: monoidal compatibility ----------------------------------

void criterion6() {
  InstantiateParams p;
  p.k = 0;
  RuleInstance rz = instantiate(RuleFamily::S2Identity, NodeKind::Z, p);
  RuleInstance rx = instantiate(RuleFamily::S2Identity, NodeKind::X, p);

  auto tier1 = experiment_tier(1);
  int pass1 = 0;
  for (const auto& d : tier1)
    if (monoidal_experiment(d, rz, rx, 2).pass()) ++pass1;

  auto tier2 = experiment_tier(2);
  std::mt19937 rng(42);
  std::shuffle(tier2.begin(), tier2.end(), rng);
  tier2.resize(50);
  int pass2 = 0;
  for (const auto& d : tier2)
    if (monoidal_experiment(d, rz, rx, 2).pass()) ++pass2;

  bool ok = int(tier1.size()) == 23 && pass1 == int(tier1.size()) && pass2 == 50;
  report(6, "monoidal compatibility: full arity-1 tier and seeded 50-sample arity-2 tier",
         ok,
         std::to_string(pass1) + "/" + std::to_string(tier1.size()) + " and " +
             std::to_string(pass2) + "/50");
}

// ---- criterion 7: completion merging --------------------------------------

int components(const MultiwayGraph& mw) {
  std::vector<int> parent(mw.states.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = int(i);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& e : mw.events)
    if (e.input_state >= 0 && e.output_state >= 0)
      parent[find(e.input_state)] = find(e.output_state);
  std::set<int> roots;
  for (std::size_t i = 0; i < parent.size(); ++i) roots.insert(find(int(i)));
  return int(roots.size());
}

void criterion7() {
  InstantiateParams p;
  p.k = 0;
  std::vector<RuleInstance> rules;
  for (NodeKind c : {NodeKind::Z, NodeKind::X})
    for (int which = 0; which < 3; ++which) {
      InstantiateParams q;
      q.k = which;
      rules.push_back(instantiate(RuleFamily::S2Identity, c, q));
    }
  ZXMultiwaySystem sys(compose_rule_sets(rules, {}));
  std::vector<std::any> inits = {
      std::any(parse_diagram("X[x1,0,1,0]*Z[z1,1,2,0]*W[x1,z1]*W[z1,o1]*W[z1,o2]")),
      std::any(parse_diagram("Z[z1,0,1,0]*X[x1,1,2,0]*W[z1,x1]*W[x1,o1]*W[x1,o2]"))};

  MultiwayGraph before = evolve(sys, inits, 2, MultiwayMode::States);
  int comp_before = components(before);

  CompletedSystem completed(sys);
  CompletionReport rep = complete(completed, inits, 2);
  MultiwayGraph after = evolve(completed, inits, 2, MultiwayMode::States);
  int comp_after = components(after);

  bool ok = comp_before == 2 && comp_after == 1 && !rep.added_rules.empty();
  report(7, "completion joins the two-spider components into one states graph", ok,
         "components " + std::to_string(comp_before) + " -> " + std::to_string(comp_after) +
             ", " + std::to_string(rep.added_rules.size()) + " added rule(s)");
}

// ---- criterion 8: engine determinism --------------------------------------

void criterion8() {
  bool ok = true;
  auto run_all = [&](const RewriteSystem& sys, const std::any& init, int steps,
                     MultiwayMode mode) {
    std::vector<std::string> blobs;
    for (int workers : {1, 4, 8}) {
      EngineConfig cfg;
      cfg.workers = workers;
      MultiwayGraph mw = evolve(sys, {init}, steps, mode, cfg);
      std::string blob = multiway_json(mw, cfg, sys.name(), &sys);
      blob += multiway_dot(mw, &sys);
      blob += causal_json(mw, causal_graph(mw), &sys);
      blob += causal_dot(mw, causal_graph(mw, true), &sys);
      int t = std::min(steps, mw.max_generation());
      blob += branchial_dot(mw, branchial(mw, t));
      blob += branchial_json(mw, branchial(mw, t), t, cfg.branchial_window);
      blobs.push_back(std::move(blob));
    }
    ok = ok && blobs[1] == blobs[0] && blobs[2] == blobs[0];
  };

  StringSystem strings(parse_string_rules("1->01,0->10"));
  SetSystem sets({parse_set_rule("{{x,y},{z,y}}->{{x,w},{y,w},{z,w}}")});
  TMSystem tm = tm_rulial(2, 2);
  TermSystem term = TermSystem::from_text({"g[x_,g[y_,z_]]:>g[g[x_,y_],z_]"});
  InstantiateParams p;
  p.k = 0;
  ZXMultiwaySystem zx({instantiate(RuleFamily::S2Identity, NodeKind::Z, p),
                       instantiate(RuleFamily::S2Identity, NodeKind::X, p)});

  for (MultiwayMode mode : {MultiwayMode::Evolution, MultiwayMode::States}) {
    run_all(strings, std::any(std::string("1")), 5, mode);
    run_all(sets, std::any(parse_set_state("{{0,1},{2,1}}")), 3, mode);
    run_all(tm, std::any(TMState{}), 3, mode);
    run_all(term, std::any(*parse_term("g[a,g[b,g[c,d]]]")), 4, mode);
    run_all(zx, std::any(parse_diagram("X[x,0,1,0]*Z[z,1,2,0]*W[x,z]*W[z,o1]*W[z,o2]")), 2,
            mode);
  }
  report(8, "workers 1/4/8 produce byte-identical DOT and JSON artifacts", ok);
}

// ---- criterion 9: property suites -----------------------------------------

void criterion9() {
  bool canon_ok = true;
  {
    std::vector<std::string> corpus = {
        "Z[a,1,2,pi/2]*W[i1,a]*W[a,o1]*W[a,o2]",
        "X[x,0,1,0]*Z[z,1,2,0]*W[x,z]*W[z,o1]*W[z,o2]",
        "Z[a,1,1,pi/4]*X[b,1,1,pi]*W[i1,a]*W[a,b]*W[b,o1]",
        "Z[a,2,2,0]*X[b,2,2,3pi/2]*W[i1,a]*W[i2,a]*W[a,b]*W[a,b]*W[b,o1]*W[b,o2]",
        "Z[a,0,2,0]*Z[b,2,0,pi/2]*W[a,b]*W[a,b]*L",
    };
    std::mt19937 rng(9);
    for (const auto& text : corpus) {
      ZXDiagram d = parse_diagram(text);
      std::string key = diagram_key(d);
      std::vector<int> perm(d.nodes.size());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
      for (int trial = 0; trial < 100; ++trial) {
        std::shuffle(perm.begin(), perm.end(), rng);
        ZXDiagram q = d;
        q.nodes.assign(d.nodes.size(), ZXNode{});
        for (std::size_t i = 0; i < d.nodes.size(); ++i) q.nodes[perm[i]] = d.nodes[i];
        if (!d.splits.empty()) {
          q.splits.assign(d.nodes.size(), {0, 0});
          for (std::size_t i = 0; i < d.nodes.size(); ++i) q.splits[perm[i]] = d.splits[i];
        }
        for (auto& [ea, eb] : q.wires) {
          if (ea.kind == Endpoint::Node) ea.index = perm[ea.index];
          if (eb.kind == Endpoint::Node) eb.index = perm[eb.index];
          if (rng() & 1) std::swap(ea, eb);
        }
        std::shuffle(q.wires.begin(), q.wires.end(), rng);
        canon_ok = canon_ok && diagram_key(q) == key;
      }
    }
  }

  bool functor_ok = true;
  {
    ZXDiagram a = parse_diagram("Z[a,1,2,pi/2]*W[i1,a]*W[a,o1]*W[a,o2]");
    ZXDiagram b = parse_diagram("X[b,2,1,pi/4]*W[i1,b]*W[i2,b]*W[b,o1]");
    ZXDiagram c = parse_diagram("Z[c,1,1,pi]*W[i1,c]*W[c,o1]");
    functor_ok = functor_ok && approx_equal(diagram_matrix(stack(a, b)),
                                            kron(diagram_matrix(a), diagram_matrix(b)), 1e-10);
    functor_ok = functor_ok &&
                 approx_equal(diagram_matrix(compose(a, b)),
                              matmul(diagram_matrix(b), diagram_matrix(a)), 1e-10);
    functor_ok = functor_ok &&
                 approx_equal(diagram_matrix(compose(compose(a, b), c)),
                              matmul(diagram_matrix(c),
                                     matmul(diagram_matrix(b), diagram_matrix(a))),
                              1e-10);
  }

  bool fission_ok = true;
  for (auto [n, m] : {std::pair{2, 2}, {1, 3}, {3, 3}}) {
    std::set<std::string> keys;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= m; ++j) {
        InstantiateParams p;
        p.n1 = n;
        p.m1 = m;
        p.n2 = i;
        p.m2 = j;
        keys.insert(rule_key(instantiate(RuleFamily::S1Fission, NodeKind::Z, p)));
      }
    fission_ok = fission_ok && int(keys.size()) == (n + 1) * (m + 1);
  }

  bool paths_ok = true;
  {
    StringSystem sys(parse_string_rules("1->01,0->10"));
    for (int depth = 1; depth <= 6; ++depth) {
      MultiwayGraph mw =
          evolve(sys, {std::any(std::string("1"))}, depth, MultiwayMode::Evolution);
      auto in = mw.in_edges();
      std::function<std::uint64_t(int)> walk = [&](int v) -> std::uint64_t {
        bool root = std::find(mw.roots.begin(), mw.roots.end(), v) != mw.roots.end();
        std::uint64_t total = root ? 1 : 0;
        for (int u : in[v]) total += walk(u);
        return total;
      };
      auto weights = path_weights(mw);
      for (std::size_t v = 0; v < mw.states.size(); ++v)
        paths_ok = paths_ok && weights[v] == walk(int(v));
    }
  }

  report(9, "property suites: canonicalization, functoriality, fission count, path weights",
         canon_ok && functor_ok && fission_ok && paths_ok,
         std::string(canon_ok ? "" : "canonicalization ") +
             (functor_ok ? "" : "functoriality ") + (fission_ok ? "" : "fission ") +
             (paths_ok ? "" : "paths "));
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
