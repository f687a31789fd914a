#pragma once

#include <array>

#include "diagram.hpp"
#include "engine.hpp"
#include "exact.hpp"
#include "graphiso.hpp"
#include "rules.hpp"

namespace zxmw {

// Rulial composition: the union of the rule sets of systems that share a
// state representation. Canonicalization delegates to the first component;
// rule ids are offset per component so labels stay attributable.
class RulialSystem : public RewriteSystem {
 public:
  explicit RulialSystem(std::vector<const RewriteSystem*> parts);

  std::string name() const override { return name_; }
  std::any canonical(const std::any& s) const override { return parts_[0]->canonical(s); }
  std::string key(const std::any& s) const override { return parts_[0]->key(s); }
  std::vector<Successor> successors(const std::any& s) const override;
  int element_count(const std::any& s) const override { return parts_[0]->element_count(s); }
  std::size_t rule_count() const override;
  std::string rule_label(int rule_id) const override;

 private:
  std::vector<const RewriteSystem*> parts_;
  std::vector<int> offset_;
  std::string name_;
};

// Vertex union quotiented by canonical vertex identity (state key, plus
// generation in evolution mode); event multiset union with deduplication.
// Element provenance ids come from the first graph defining a state and are
// only meaningful for connectivity-style analyses of the merged graph.
MultiwayGraph merge_multiway(const std::vector<const MultiwayGraph*>& graphs);

// Unlabeled shape extractors for isomorphism testing.
ColoredGraph multiway_shape(const MultiwayGraph& mw);
ColoredGraph branchial_shape(const BranchialGraph& bg);

struct MonoidalReport {
  bool multiway_raw = false;
  bool multiway_quotiented = false;
  bool branchial_raw = false;
  bool branchial_quotiented = false;
  int rulial_states = 0, stacked_states = 0;
  int rulial_states_quotiented = 0, stacked_states_quotiented = 0;
  bool pass() const { return multiway_quotiented && branchial_quotiented; }
};

// Compares (i) d evolved under the rulial composition of ruleA and ruleB with
// (ii) stack(d, color_invert(d)) evolved under ruleA alone. Multiway graphs
// are compared over the full evolution; branchial graphs at the final slice.
// The quotient identifies same-slice states whose color projections agree:
// each state is keyed by the pair of diagrams obtained by splicing out all
// phaseless degree-2 spiders of one color (then of the other), which makes
// Z- and X-identity insertions independent exactly as they are in the
// stacked product. For closed initial diagrams fixed by color inversion the
// key is additionally folded under inversion, mirroring the copy-swap
// symmetry of the stack. Raw and quotiented verdicts are both reported.
MonoidalReport monoidal_experiment(const ZXDiagram& d, const RuleInstance& ruleA,
                                   const RuleInstance& ruleB, int steps,
                                   const EngineConfig& cfg = {});

// Experiment instance tier: every connected diagram with one or two phaseless
// spiders and per-spider declared in/out arities <= bound, deduplicated by
// canonical form, deterministic order.
std::vector<ZXDiagram> experiment_tier(int bound);

using QGate = std::array<std::array<ExactComplex, 2>, 2>;

struct QuantumToy {
  MultiwayGraph graph;                       // evolution mode over basis labels
  std::vector<ExactComplex> edge_amplitude;  // parallel to graph.events
  std::vector<std::array<ExactComplex, 2>> slice_amplitudes;  // t = 0..steps
};

// Basis-state multiway graph of a single-qubit gate: edge |b> -> |b'| labeled
// gate[b'][b]; per-slice amplitudes are path sums of edge labels from the
// initial amplitudes (so they equal gate^t * init).
QuantumToy quantum_toy(const QGate& gate, const std::array<ExactComplex, 2>& init, int steps);

QGate root_not_gate();                          // (1/2)[[1+i,1-i],[1-i,1+i]]
std::array<ExactComplex, 2> equal_superposition();  // (1/sqrt2)(1,1)

}  // namespace zxmw
