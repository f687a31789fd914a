#include "rulial.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace zxmw {

RulialSystem::RulialSystem(std::vector<const RewriteSystem*> parts)
    : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("rulial composition of zero systems");
  int off = 0;
  for (const auto* p : parts_) {
    offset_.push_back(off);
    off += int(p->rule_count());
    if (!name_.empty()) name_ += "+";
    name_ += p->name();
  }
}

std::vector<Successor> RulialSystem::successors(const std::any& s) const {
  std::vector<Successor> out;
  for (std::size_t p = 0; p < parts_.size(); ++p) {
    for (auto& succ : parts_[p]->successors(s)) {
      succ.rule_id += offset_[p];
      out.push_back(std::move(succ));
    }
  }
  return out;
}

std::size_t RulialSystem::rule_count() const {
  std::size_t n = 0;
  for (const auto* p : parts_) n += p->rule_count();
  return n;
}

std::string RulialSystem::rule_label(int rule_id) const {
  for (std::size_t p = parts_.size(); p-- > 0;)
    if (rule_id >= offset_[p]) return parts_[p]->rule_label(rule_id - offset_[p]);
  return std::to_string(rule_id);
}

MultiwayGraph merge_multiway(const std::vector<const MultiwayGraph*>& graphs) {
  if (graphs.empty()) throw std::invalid_argument("merge of zero multiway graphs");
  MultiwayGraph out;
  out.mode = graphs[0]->mode;
  for (const auto* g : graphs)
    if (g->mode != out.mode) throw std::invalid_argument("merge: mixed multiway modes");

  auto vkey = [&](const MWState& s) {
    return out.mode == MultiwayMode::States ? s.key
                                            : std::to_string(s.generation) + "|" + s.key;
  };
  std::map<std::string, int> index;
  std::set<std::string> event_seen, root_seen;
  for (const auto* g : graphs) {
    std::vector<int> remap(g->states.size());
    for (std::size_t i = 0; i < g->states.size(); ++i) {
      std::string k = vkey(g->states[i]);
      auto [it, fresh] = index.emplace(k, int(out.states.size()));
      if (fresh) out.states.push_back(g->states[i]);
      remap[i] = it->second;
    }
    for (const auto& e : g->events) {
      MWEvent me = e;
      me.input_state = remap[e.input_state];
      me.output_state = remap[e.output_state];
      std::ostringstream ek;
      ek << me.input_state << ">" << me.output_state << ">" << me.rule_id << ">"
         << me.match_desc;
      if (event_seen.insert(ek.str()).second) out.events.push_back(std::move(me));
    }
    for (int r : g->roots) {
      int mr = remap[r];
      if (root_seen.insert(std::to_string(mr)).second) out.roots.push_back(mr);
    }
    out.steps = std::max(out.steps, g->steps);
  }
  return out;
}

ColoredGraph multiway_shape(const MultiwayGraph& mw) {
  ColoredGraph g;
  g.n = int(mw.states.size());
  g.directed = true;
  std::set<std::pair<int, int>> edges;
  for (const auto& e : mw.events) edges.emplace(e.input_state, e.output_state);
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

ColoredGraph branchial_shape(const BranchialGraph& bg) {
  ColoredGraph g;
  g.n = int(bg.vertices.size());
  g.directed = false;
  std::map<int, int> idx;
  for (int v : bg.vertices) idx.emplace(v, int(idx.size()));
  std::set<std::pair<int, int>> edges;
  for (const auto& [a, b] : bg.edges) {
    int x = idx.at(a), y = idx.at(b);
    edges.emplace(std::min(x, y), std::max(x, y));
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

namespace {

// A "bead" is a phaseless degree-2 Z or X spider: exactly what the identity
// rule inserts (a self-looped spider is excluded). The documented quotient
// classifies a state by the pair of single-color projections -- the state
// with every X-bead spliced out, and the state with every Z-bead spliced
// out -- which makes bead insertions of the two colors independent of one
// another. This is precisely the correspondence between the rulial
// composition of the two identity rules acting on one diagram and the
// Z-identity rule acting on the stacked product of the diagram with its
// color inversion.
bool is_bead(const ZXDiagram& d, int node) {
  const ZXNode& n = d.nodes[node];
  if (n.kind != NodeKind::Z && n.kind != NodeKind::X) return false;
  if (!(n.phase == Phase::zero())) return false;
  if (d.degree(node) != 2) return false;
  for (const auto& [a, b] : d.wires)
    if (a == b && a.kind == Endpoint::Node && a.index == node) return false;
  return true;
}

// Remove every bead of the given color, joining its two wires; closed bead
// cycles become plain loops.
ZXDiagram splice_beads(const ZXDiagram& d, NodeKind color) {
  std::vector<bool> drop(d.nodes.size(), false);
  for (std::size_t i = 0; i < d.nodes.size(); ++i)
    drop[i] = d.nodes[i].kind == color && is_bead(d, int(i));
  ZXDiagram out;
  out.n_inputs = d.n_inputs;
  out.n_outputs = d.n_outputs;
  out.loops = d.loops;
  std::vector<int> remap(d.nodes.size(), -1), jid(d.nodes.size(), -1);
  int nj = 0;
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    if (drop[i]) {
      jid[i] = nj++;
    } else {
      remap[i] = int(out.nodes.size());
      out.nodes.push_back(d.nodes[i]);
    }
  }
  auto glue = [&](Endpoint e) {
    GlueEp g;
    if (e.kind == Endpoint::Node && drop[e.index]) {
      g.junction = true;
      g.jid = jid[e.index];
    } else {
      if (e.kind == Endpoint::Node) e.index = remap[e.index];
      g.real = e;
    }
    return g;
  };
  std::vector<std::pair<GlueEp, GlueEp>> ws;
  for (const auto& [a, b] : d.wires) ws.emplace_back(glue(a), glue(b));
  out.loops += eliminate_junctions(ws, nj);
  for (const auto& [a, b] : ws) out.wires.emplace_back(a.real, b.real);
  return out;
}

std::string projection_key(const ZXDiagram& d) {
  return diagram_key(splice_beads(d, NodeKind::X)) + "|" +
         diagram_key(splice_beads(d, NodeKind::Z));
}

// Quotient key; the color-inversion involution is folded in when the stacked
// product has the copy-swap symmetry that the rulial side must mirror.
std::string quotient_state_key(const ZXDiagram& d, bool use_inversion) {
  std::string k = projection_key(d);
  if (use_inversion) k = std::min(k, projection_key(color_invert(d)));
  return k;
}

// Group same-slice states related by the documented trivial equivalences.
std::vector<int> inversion_groups(const MultiwayGraph& mw, bool use_inversion,
                                  int* ngroups) {
  std::map<std::pair<int, std::string>, int> ids;
  std::vector<int> gid(mw.states.size());
  for (std::size_t i = 0; i < mw.states.size(); ++i) {
    const ZXDiagram& d = std::any_cast<const ZXDiagram&>(mw.states[i].value);
    std::string okey = quotient_state_key(d, use_inversion);
    auto [it, fresh] =
        ids.emplace(std::make_pair(mw.states[i].generation, okey), int(ids.size()));
    gid[i] = it->second;
  }
  *ngroups = int(ids.size());
  return gid;
}

ColoredGraph quotient_multiway(const MultiwayGraph& mw, const std::vector<int>& gid,
                               int ngroups) {
  ColoredGraph g;
  g.n = ngroups;
  g.directed = true;
  std::set<std::pair<int, int>> edges;
  for (const auto& e : mw.events) edges.emplace(gid[e.input_state], gid[e.output_state]);
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

ColoredGraph quotient_branchial(const BranchialGraph& bg, const std::vector<int>& gid) {
  std::map<int, int> idx;
  for (int v : bg.vertices) idx.emplace(gid[v], 0);
  int k = 0;
  for (auto& [g, i] : idx) i = k++;
  ColoredGraph g;
  g.n = k;
  g.directed = false;
  std::set<std::pair<int, int>> edges;
  for (const auto& [a, b] : bg.edges) {
    int x = idx.at(gid[a]), y = idx.at(gid[b]);
    if (x != y) edges.emplace(std::min(x, y), std::max(x, y));
  }
  g.edges.assign(edges.begin(), edges.end());
  return g;
}

}  // namespace

MonoidalReport monoidal_experiment(const ZXDiagram& d, const RuleInstance& ruleA,
                                   const RuleInstance& ruleB, int steps,
                                   const EngineConfig& cfg) {
  ZXMultiwaySystem rulial({ruleA, ruleB}, "zx-rulial");
  ZXMultiwaySystem single({ruleA}, "zx-stacked");
  ZXDiagram left = canonicalize(d).diagram;
  ZXDiagram right = canonicalize(stack(d, color_invert(d))).diagram;
  MultiwayGraph g1 = evolve(rulial, {std::any(left)}, steps, MultiwayMode::States, cfg);
  MultiwayGraph g2 = evolve(single, {std::any(right)}, steps, MultiwayMode::States, cfg);

  MonoidalReport rep;
  rep.rulial_states = int(g1.states.size());
  rep.stacked_states = int(g2.states.size());
  rep.multiway_raw = graphs_isomorphic(multiway_shape(g1), multiway_shape(g2));

  // The copy-swap symmetry of stack(d, invert(d)) exists only when the two
  // copies are interchangeable: d must be closed (ordered boundary points pin
  // the copies apart otherwise) and color-inversion-symmetric.
  bool symmetric = left.n_inputs == 0 && left.n_outputs == 0 &&
                   projection_key(left) == projection_key(color_invert(left));
  int n1 = 0, n2 = 0;
  std::vector<int> gid1 = inversion_groups(g1, symmetric, &n1);
  std::vector<int> gid2 = inversion_groups(g2, symmetric, &n2);
  rep.rulial_states_quotiented = n1;
  rep.stacked_states_quotiented = n2;
  rep.multiway_quotiented =
      graphs_isomorphic(quotient_multiway(g1, gid1, n1), quotient_multiway(g2, gid2, n2));

  BranchialGraph b1 = branchial(g1, std::min(steps, g1.max_generation()), cfg.branchial_window);
  BranchialGraph b2 = branchial(g2, std::min(steps, g2.max_generation()), cfg.branchial_window);
  rep.branchial_raw = graphs_isomorphic(branchial_shape(b1), branchial_shape(b2));
  rep.branchial_quotiented =
      graphs_isomorphic(quotient_branchial(b1, gid1), quotient_branchial(b2, gid2));
  return rep;
}

std::vector<ZXDiagram> experiment_tier(int bound) {
  if (bound < 0) throw std::invalid_argument("experiment tier: negative bound");
  std::vector<ZXDiagram> out;
  std::set<std::string> seen;
  auto add = [&](ZXDiagram d) {
    if (seen.insert(diagram_key(d)).second) out.push_back(std::move(d));
  };
  const NodeKind kinds[2] = {NodeKind::Z, NodeKind::X};
  for (NodeKind k1 : kinds)
    for (int in1 = 0; in1 <= bound; ++in1)
      for (int out1 = 0; out1 <= bound; ++out1) {
        ZXDiagram d;
        d.nodes.push_back({k1, Phase::zero()});
        d.n_inputs = in1;
        d.n_outputs = out1;
        for (int t = 0; t < in1; ++t) d.wires.emplace_back(input_ep(t), node_ep(0));
        for (int t = 0; t < out1; ++t) d.wires.emplace_back(node_ep(0), output_ep(t));
        add(std::move(d));
      }
  for (NodeKind k1 : kinds)
    for (NodeKind k2 : kinds)
      for (int in1 = 0; in1 <= bound; ++in1)
        for (int out1 = 0; out1 <= bound; ++out1)
          for (int in2 = 0; in2 <= bound; ++in2)
            for (int out2 = 0; out2 <= bound; ++out2)
              for (int k = 1; out1 + k <= bound && in2 + k <= bound; ++k) {
                ZXDiagram d;
                d.nodes.push_back({k1, Phase::zero()});
                d.nodes.push_back({k2, Phase::zero()});
                d.n_inputs = in1 + in2;
                d.n_outputs = out1 + out2;
                for (int t = 0; t < in1; ++t) d.wires.emplace_back(input_ep(t), node_ep(0));
                for (int t = 0; t < out1; ++t)
                  d.wires.emplace_back(node_ep(0), output_ep(t));
                for (int t = 0; t < k; ++t) d.wires.emplace_back(node_ep(0), node_ep(1));
                for (int t = 0; t < in2; ++t)
                  d.wires.emplace_back(input_ep(in1 + t), node_ep(1));
                for (int t = 0; t < out2; ++t)
                  d.wires.emplace_back(node_ep(1), output_ep(out1 + t));
                add(std::move(d));
              }
  return out;
}

QuantumToy quantum_toy(const QGate& gate, const std::array<ExactComplex, 2>& init,
                       int steps) {
  if (steps < 0) throw std::invalid_argument("quantum toy: negative steps");
  QuantumToy toy;
  toy.graph.mode = MultiwayMode::Evolution;
  toy.graph.steps = steps;
  auto state_at = [&](int t, int b) { return 2 * t + b; };
  for (int t = 0; t <= steps; ++t)
    for (int b = 0; b < 2; ++b) {
      MWState s;
      s.key = b ? "|1>" : "|0>";
      s.value = std::string(b ? "1" : "0");
      s.generation = t;
      toy.graph.states.push_back(std::move(s));
    }
  toy.graph.roots = {state_at(0, 0), state_at(0, 1)};
  for (int t = 0; t < steps; ++t)
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp) {
        if (gate[bp][b].is_zero()) continue;
        MWEvent e;
        e.rule_id = 0;
        e.input_state = state_at(t, b);
        e.output_state = state_at(t + 1, bp);
        e.generation = t;
        e.match_desc = gate[bp][b].str();
        toy.graph.events.push_back(std::move(e));
        toy.edge_amplitude.push_back(gate[bp][b]);
      }
  // path-sum amplitudes over the graph edges
  std::vector<ExactComplex> amp(toy.graph.states.size());
  amp[state_at(0, 0)] = init[0];
  amp[state_at(0, 1)] = init[1];
  for (std::size_t e = 0; e < toy.graph.events.size(); ++e) {
    const MWEvent& ev = toy.graph.events[e];
    amp[ev.output_state] =
        amp[ev.output_state] + toy.edge_amplitude[e] * amp[ev.input_state];
  }
  for (int t = 0; t <= steps; ++t)
    toy.slice_amplitudes.push_back({amp[state_at(t, 0)], amp[state_at(t, 1)]});
  return toy;
}

QGate root_not_gate() {
  ExactComplex a(Rational(1, 2), Rational(1, 2));   // (1+i)/2
  ExactComplex b(Rational(1, 2), Rational(-1, 2));  // (1-i)/2
  return {{{a, b}, {b, a}}};
}

std::array<ExactComplex, 2> equal_superposition() {
  return {ExactComplex::inv_sqrt2(), ExactComplex::inv_sqrt2()};
}

}  // namespace zxmw
