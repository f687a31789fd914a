#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diagram.hpp"
#include "engine.hpp"
#include "semantics.hpp"

namespace zxmw {

// Linear phase expression: sum of +/- variables plus an exact constant.
struct PhaseExpr {
  std::map<std::string, int> coeff;  // variable -> +1 / -1 (or small integers)
  Phase constant;

  static PhaseExpr of(const Phase& p) {
    PhaseExpr e;
    e.constant = p;
    return e;
  }
  static PhaseExpr var(const std::string& name, int c = 1) {
    PhaseExpr e;
    if (c != 0) e.coeff[name] = c;
    return e;
  }
  friend PhaseExpr operator+(const PhaseExpr& a, const PhaseExpr& b) {
    PhaseExpr e = a;
    e.constant = e.constant + b.constant;
    for (const auto& [v, c] : b.coeff) {
      e.coeff[v] += c;
      if (e.coeff[v] == 0) e.coeff.erase(v);
    }
    return e;
  }
  PhaseExpr operator-() const {
    PhaseExpr e;
    e.constant = -constant;
    for (const auto& [v, c] : coeff) e.coeff[v] = -c;
    return e;
  }
  bool is_constant() const { return coeff.empty(); }
  Phase eval(const std::map<std::string, Phase>& binding) const;
  std::string str() const;
};

// A diagram whose node phases may be expressions over shared variables.
struct PatternNode {
  NodeKind kind = NodeKind::Z;
  PhaseExpr phase;
};
struct PatternDiagram {
  std::vector<PatternNode> nodes;
  int n_inputs = 0;
  int n_outputs = 0;
  std::vector<std::pair<Endpoint, Endpoint>> wires;
  int loops = 0;

  int ports() const { return n_inputs + n_outputs; }
  ZXDiagram instantiate(const std::map<std::string, Phase>& binding) const;
};

enum class RuleFamily {
  S1Fusion,
  S1Fission,
  S2Identity,
  B1Copy,
  B2Bialgebra,
  B2PiX,
  B2PiZ,
  K1PiCopy,
  K2PhaseFlip,
  CColorChange,
  D1Cancel,
  D2Scalar,
};
std::string family_name(RuleFamily f);

struct RuleInstance {
  std::string id;         // deterministic, human-readable
  RuleFamily family = RuleFamily::S1Fusion;
  NodeKind color = NodeKind::Z;  // Z- or X-rooted variant
  PatternDiagram lhs, rhs;       // shared boundary signature and variables
  std::vector<std::string> phase_vars;
};

// Canonical key of the rule graph (LHS and RHS glued on shared ports);
// equal keys identify duplicate rules under renaming and regrouping.
std::string rule_key(const RuleInstance& r);

struct InstantiateParams {
  // S1Fusion: n1, m1, n2, m2, k; S1Fission: n, m, i, j; S2Identity: i, o;
  // B1Copy: m + phase_pi flag; K1PiCopy: m; CColorChange: n, m; others: none.
  int n1 = 0, m1 = 0, n2 = 0, m2 = 0, k = 1;
  bool phase_pi = false;
};
RuleInstance instantiate(RuleFamily family, NodeKind color, const InstantiateParams& p);

// Deterministic duplicate-free enumeration over all families and parameter
// tuples within the arity bounds, both colors.
std::vector<RuleInstance> enumerate_rules(int maxIn, int maxOut);

// Instantiated both sides at a phase binding (variables not bound are set to
// zero), then compared semantically.
Verdict verify_rule(const RuleInstance& rule, const std::map<std::string, Phase>& binding,
                    double tol = 1e-9);

// One subdiagram embedding of a pattern into a host diagram.
struct Embedding {
  std::vector<int> node_map;                 // pattern node -> host node
  std::map<std::string, Phase> binding;      // phase variable assignment
  // port -> host attachment; resolved during replacement
  std::vector<std::pair<int, int>> port_ends;  // (host wire index, end 0/1)
};

// Apply `rule` in the given direction (true = LHS->RHS) at every embedding.
// Results are canonicalized; duplicates by (consumed node set, result key)
// are removed. Each result carries node provenance for the engine.
struct ZXRewriteResult {
  ZXDiagram diagram;
  std::string key;
  std::vector<int> consumed;        // host node indices
  std::vector<int> inherited_from;  // canonical result node -> host node / -1
  std::string match_desc;
};
std::vector<ZXRewriteResult> apply_rule(const RuleInstance& rule, bool forward,
                                        const ZXDiagram& host);

// RewriteSystem over canonical ZX diagrams; every rule applies in both
// directions. Elements (for causal provenance) are the diagram nodes.
class ZXMultiwaySystem : public RewriteSystem {
 public:
  explicit ZXMultiwaySystem(std::vector<RuleInstance> rules, std::string name = "zx");

  std::string name() const override { return name_; }
  std::any canonical(const std::any& state) const override;
  std::string key(const std::any& state) const override;
  std::vector<Successor> successors(const std::any& state) const override;
  int element_count(const std::any& state) const override;
  std::size_t rule_count() const override { return rules_.size(); }
  std::string rule_label(int rule_id) const override;

  const std::vector<RuleInstance>& rules() const { return rules_; }

 private:
  std::vector<RuleInstance> rules_;
  std::string name_;
};

// Rule union with duplicate removal by canonical rule key.
std::vector<RuleInstance> compose_rule_sets(const std::vector<RuleInstance>& a,
                                            const std::vector<RuleInstance>& b);

}  // namespace zxmw
