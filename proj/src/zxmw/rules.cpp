#include "rules.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

#include "canon.hpp"

namespace zxmw {

namespace {

NodeKind opposite(NodeKind c) { return c == NodeKind::Z ? NodeKind::X : NodeKind::Z; }
char color_letter(NodeKind c) { return c == NodeKind::Z ? 'Z' : 'X'; }

Phase scaled(const Phase& p, int c) { return Phase(p.pi_multiple() * Rational(c)); }

}  // namespace

Phase PhaseExpr::eval(const std::map<std::string, Phase>& binding) const {
  Phase p = constant;
  for (const auto& [v, c] : coeff) {
    auto it = binding.find(v);
    if (it == binding.end()) continue;  // unbound variables read as zero
    p = p + scaled(it->second, c);
  }
  return p;
}

std::string PhaseExpr::str() const {
  std::string s;
  for (const auto& [v, c] : coeff) {
    if (c > 0 && !s.empty()) s += "+";
    if (c == -1) s += "-";
    else if (c != 1) s += std::to_string(c);
    s += v;
  }
  if (constant != Phase::zero() || s.empty()) {
    if (!s.empty()) s += "+";
    s += constant.str();
  }
  return s;
}

ZXDiagram PatternDiagram::instantiate(const std::map<std::string, Phase>& binding) const {
  ZXDiagram d;
  d.n_inputs = n_inputs;
  d.n_outputs = n_outputs;
  d.loops = loops;
  d.wires = wires;
  for (const auto& n : nodes) {
    ZXNode zn;
    zn.kind = n.kind;
    if (n.kind == NodeKind::Z || n.kind == NodeKind::X) zn.phase = n.phase.eval(binding);
    d.nodes.push_back(zn);
  }
  return d;
}

std::string family_name(RuleFamily f) {
  switch (f) {
    case RuleFamily::S1Fusion: return "fusion";
    case RuleFamily::S1Fission: return "fission";
    case RuleFamily::S2Identity: return "identity";
    case RuleFamily::B1Copy: return "copy";
    case RuleFamily::B2Bialgebra: return "bialgebra";
    case RuleFamily::B2PiX: return "bialgebra-pi-x";
    case RuleFamily::B2PiZ: return "bialgebra-pi-z";
    case RuleFamily::K1PiCopy: return "pi-copy";
    case RuleFamily::K2PhaseFlip: return "pi-phase";
    case RuleFamily::CColorChange: return "color-change";
    case RuleFamily::D1Cancel: return "scalar-cancel";
    default: return "scalar-loop";
  }
}

namespace {

struct PatternBuilder {
  PatternDiagram d;
  int spider(NodeKind k, PhaseExpr p = {}) {
    d.nodes.push_back({k, std::move(p)});
    return int(d.nodes.size()) - 1;
  }
  void wire(Endpoint a, Endpoint b) { d.wires.emplace_back(a, b); }
};

const PhaseExpr kA = PhaseExpr::var("a");
const PhaseExpr kB = PhaseExpr::var("b");

RuleInstance build_fusion(NodeKind color, int n1, int m1, int n2, int m2, int k) {
  if (k < 1 || n1 < 0 || m1 < 0 || n2 < 0 || m2 < 0)
    throw std::invalid_argument("fusion: bad parameters");
  RuleInstance r;
  r.family = RuleFamily::S1Fusion;
  r.color = color;
  r.phase_vars = {"a", "b"};
  PatternBuilder L, R;
  int s0 = L.spider(color, kA), s1 = L.spider(color, kB);
  for (int t = 0; t < n1; ++t) L.wire(input_ep(t), node_ep(s0));
  for (int t = 0; t < m1; ++t) L.wire(node_ep(s0), output_ep(t));
  for (int t = 0; t < k; ++t) L.wire(node_ep(s0), node_ep(s1));
  for (int t = 0; t < n2; ++t) L.wire(input_ep(n1 + t), node_ep(s1));
  for (int t = 0; t < m2; ++t) L.wire(node_ep(s1), output_ep(m1 + t));
  int s = R.spider(color, kA + kB);
  for (int t = 0; t < n1 + n2; ++t) R.wire(input_ep(t), node_ep(s));
  for (int t = 0; t < m1 + m2; ++t) R.wire(node_ep(s), output_ep(t));
  L.d.n_inputs = R.d.n_inputs = n1 + n2;
  L.d.n_outputs = R.d.n_outputs = m1 + m2;
  r.lhs = std::move(L.d);
  r.rhs = std::move(R.d);
  std::ostringstream id;
  id << "fusion-" << color_letter(color) << "-" << n1 << "." << m1 << "+" << n2 << "." << m2
     << "-k" << k;
  r.id = id.str();
  return r;
}

RuleInstance build_fission(NodeKind color, int n, int m, int i, int j) {
  if (i < 0 || j < 0 || i > n || j > m) throw std::invalid_argument("fission: bad parameters");
  RuleInstance r;
  r.family = RuleFamily::S1Fission;
  r.color = color;
  r.phase_vars = {"a"};
  PatternBuilder L, R;
  int s = L.spider(color, kA);
  for (int t = 0; t < n; ++t) L.wire(input_ep(t), node_ep(s));
  for (int t = 0; t < m; ++t) L.wire(node_ep(s), output_ep(t));
  int s0 = R.spider(color, kA), s1 = R.spider(color, PhaseExpr{});
  R.wire(node_ep(s0), node_ep(s1));
  for (int t = 0; t < n; ++t) R.wire(input_ep(t), node_ep(t < i ? s0 : s1));
  for (int t = 0; t < m; ++t) R.wire(node_ep(t < j ? s0 : s1), output_ep(t));
  L.d.n_inputs = R.d.n_inputs = n;
  L.d.n_outputs = R.d.n_outputs = m;
  r.lhs = std::move(L.d);
  r.rhs = std::move(R.d);
  std::ostringstream id;
  id << "fission-" << color_letter(color) << "-" << n << "." << m << "-" << i << "." << j;
  r.id = id.str();
  return r;
}

RuleInstance build_identity(NodeKind color, int which) {
  // which: 0 = both legs inputs, 1 = one of each, 2 = both outputs
  RuleInstance r;
  r.family = RuleFamily::S2Identity;
  r.color = color;
  PatternBuilder L, R;
  int in = which == 0 ? 2 : which == 1 ? 1 : 0;
  int out = 2 - in;
  std::vector<Endpoint> ports;
  for (int t = 0; t < in; ++t) ports.push_back(input_ep(t));
  for (int t = 0; t < out; ++t) ports.push_back(output_ep(t));
  int s = L.spider(color, PhaseExpr{});
  L.wire(ports[0], node_ep(s));
  L.wire(ports[1], node_ep(s));
  R.wire(ports[0], ports[1]);
  L.d.n_inputs = R.d.n_inputs = in;
  L.d.n_outputs = R.d.n_outputs = out;
  r.lhs = std::move(L.d);
  r.rhs = std::move(R.d);
  r.id = std::string("identity-") + color_letter(color);
  return r;
}

RuleInstance build_copy(NodeKind color, int m, bool phase_pi) {
  if (m < 0) throw std::invalid_argument("copy: bad parameters");
  RuleInstance r;
  r.family = RuleFamily::B1Copy;
  r.color = color;
  Phase p = phase_pi ? Phase::pi() : Phase::zero();
  PatternBuilder L, R;
  int st = L.spider(opposite(color), PhaseExpr::of(p));
  int c = L.spider(color, PhaseExpr{});
  L.wire(node_ep(st), node_ep(c));
  for (int t = 0; t < m; ++t) L.wire(node_ep(c), output_ep(t));
  for (int t = 0; t < std::max(m - 1, 0); ++t) L.spider(NodeKind::Diamond);
  for (int t = 0; t < m; ++t) {
    int rt = R.spider(opposite(color), PhaseExpr::of(p));
    R.wire(node_ep(rt), output_ep(t));
  }
  for (int t = 0; t < std::max(1 - m, 0); ++t) R.spider(NodeKind::Diamond);
  L.d.n_outputs = R.d.n_outputs = m;
  r.lhs = std::move(L.d);
  r.rhs = std::move(R.d);
  std::ostringstream id;
  id << "copy-" << color_letter(color) << "-m" << m << (phase_pi ? "-pi" : "-0");
  r.id = id.str();
  return r;
}

RuleInstance build_bialgebra(RuleFamily family, NodeKind color) {
  Phase alpha = family == RuleFamily::B2PiZ ? Phase::pi() : Phase::zero();
  Phase beta = family == RuleFamily::B2PiX ? Phase::pi() : Phase::zero();
  RuleInstance r;
  r.family = family;
  r.color = color;
  NodeKind other = opposite(color);
  PatternBuilder L, R;
  int za = L.spider(color, PhaseExpr::of(alpha)), zb = L.spider(color, PhaseExpr::of(alpha));
  int xa = L.spider(other, PhaseExpr::of(beta)), xb = L.spider(other, PhaseExpr::of(beta));
  L.spider(NodeKind::Diamond);
  L.wire(input_ep(0), node_ep(za));
  L.wire(input_ep(1), node_ep(zb));
  L.wire(node_ep(za), node_ep(xa));
  L.wire(node_ep(za), node_ep(xb));
  L.wire(node_ep(zb), node_ep(xa));
  L.wire(node_ep(zb), node_ep(xb));
  L.wire(node_ep(xa), output_ep(0));
  L.wire(node_ep(xb), output_ep(1));
  int x = R.spider(other, PhaseExpr::of(beta)), z = R.spider(color, PhaseExpr::of(alpha));
  R.wire(input_ep(0), node_ep(x));
  R.wire(input_ep(1), node_ep(x));
  R.wire(node_ep(x), node_ep(z));
  R.wire(node_ep(z), output_ep(0));
  R.wire(node_ep(z), output_ep(1));
  L.d.n_inputs = R.d.n_inputs = 2;
  L.d.n_outputs = R.d.n_outputs = 2;
  r.lhs = std::move(L.d);
  r.rhs = std::move(R.d);
  r.id = family_name(family) + "-" + color_letter(color);
  return r;
}

RuleInstance build_pi_copy(NodeKind color, int m) {
  if (m < 0) throw std::invalid_argument("pi-copy: bad parameters");
  RuleInstance r;
  r.family = RuleFamily::K1PiCopy;
  r.color = color;
  NodeKind other = opposite(color);
  PatternBuilder L, R;
  int pi = L.spider(other, PhaseExpr::of(Phase::pi()));
  int c = L.spider(color, PhaseExpr{});
  L.wire(input_ep(0), node_ep(pi));
  L.wire(node_ep(pi), node_ep(c));
  for (int t = 0; t < m; ++t) L.wire(node_ep(c), output_ep(t));
  int rc = R.spider(color, PhaseExpr{});
  R.wire(input_ep(0), node_ep(rc));
  for (int t = 0; t < m; ++t) {
    int pt = R.spider(other, PhaseExpr::of(Phase::pi()));
    R.wire(node_ep(rc), node_ep(pt));
    R.wire(node_ep(pt), output_ep(t));
  }
  L.d.n_inputs = R.d.n_inputs = 1;
  L.d.n_outputs = R.d.n_outputs = m;
  r.lhs = std::move(L.d);
  r.rhs = std::move(R.d);
  std::ostringstream id;
  id << "pi-copy-" << color_letter(color) << "-m" << m;
  r.id = id.str();
  return r;
}

RuleInstance build_pi_phase(NodeKind color) {
  RuleInstance r;
  r.family = RuleFamily::K2PhaseFlip;
  r.color = color;
  r.phase_vars = {"a"};
  NodeKind other = opposite(color);
  PatternBuilder L, R;
  int n = L.spider(other, PhaseExpr::of(Phase::pi()));
  int z = L.spider(color, kA);
  L.spider(NodeKind::Diamond);
  L.wire(input_ep(0), node_ep(n));
  L.wire(node_ep(n), node_ep(z));
  L.wire(node_ep(z), output_ep(0));
  int z2 = R.spider(color, -kA);
  int n2 = R.spider(other, PhaseExpr::of(Phase::pi()));
  R.wire(input_ep(0), node_ep(z2));
  R.wire(node_ep(z2), node_ep(n2));
  R.wire(node_ep(n2), output_ep(0));
  // closed gadget carrying the scalar sqrt(2)*e^{ia}
  int g1 = R.spider(color, kA);
  int g2 = R.spider(other, PhaseExpr::of(Phase::pi()));
  R.wire(node_ep(g1), node_ep(g2));
  L.d.n_inputs = R.d.n_inputs = 1;
  L.d.n_outputs = R.d.n_outputs = 1;
  r.lhs = std::move(L.d);
  r.rhs = std::move(R.d);
  r.id = std::string("pi-phase-") + color_letter(color);
  return r;
}

RuleInstance build_color_change(NodeKind color, int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("color-change: bad parameters");
  RuleInstance r;
  r.family = RuleFamily::CColorChange;
  r.color = color;
  r.phase_vars = {"a"};
  PatternBuilder L, R;
  int s = L.spider(color, kA);
  for (int t = 0; t < n; ++t) {
    int h = L.spider(NodeKind::H);
    L.wire(input_ep(t), node_ep(h));
    L.wire(node_ep(h), node_ep(s));
  }
  for (int t = 0; t < m; ++t) {
    int h = L.spider(NodeKind::H);
    L.wire(node_ep(s), node_ep(h));
    L.wire(node_ep(h), output_ep(t));
  }
  int rs = R.spider(opposite(color), kA);
  for (int t = 0; t < n; ++t) R.wire(input_ep(t), node_ep(rs));
  for (int t = 0; t < m; ++t) R.wire(node_ep(rs), output_ep(t));
  L.d.n_inputs = R.d.n_inputs = n;
  L.d.n_outputs = R.d.n_outputs = m;
  r.lhs = std::move(L.d);
  r.rhs = std::move(R.d);
  std::ostringstream id;
  id << "color-change-" << color_letter(color) << "-" << n << "." << m;
  r.id = id.str();
  return r;
}

RuleInstance build_cancel(NodeKind color) {
  RuleInstance r;
  r.family = RuleFamily::D1Cancel;
  r.color = color;
  PatternBuilder L, R;
  int a = L.spider(color, PhaseExpr{});
  int b = L.spider(opposite(color), PhaseExpr{});
  L.wire(node_ep(a), node_ep(b));
  R.spider(NodeKind::Diamond);
  r.lhs = std::move(L.d);
  r.rhs = std::move(R.d);
  r.id = "scalar-cancel";
  return r;
}

RuleInstance build_loop() {
  RuleInstance r;
  r.family = RuleFamily::D2Scalar;
  r.color = NodeKind::Z;
  PatternBuilder L, R;
  L.spider(NodeKind::Diamond);
  L.spider(NodeKind::Diamond);
  R.d.loops = 1;
  r.lhs = std::move(L.d);
  r.rhs = std::move(R.d);
  r.id = "scalar-loop";
  return r;
}

// global port id: inputs first, then outputs
int port_id(const PatternDiagram& p, const Endpoint& e) {
  return e.kind == Endpoint::Input ? e.index : p.n_inputs + e.index;
}

}  // namespace

RuleInstance instantiate(RuleFamily family, NodeKind color, const InstantiateParams& p) {
  switch (family) {
    case RuleFamily::S1Fusion: return build_fusion(color, p.n1, p.m1, p.n2, p.m2, p.k);
    case RuleFamily::S1Fission: return build_fission(color, p.n1, p.m1, p.n2, p.m2);
    case RuleFamily::S2Identity: return build_identity(color, p.k);
    case RuleFamily::B1Copy: return build_copy(color, p.m1, p.phase_pi);
    case RuleFamily::B2Bialgebra:
    case RuleFamily::B2PiX:
    case RuleFamily::B2PiZ: return build_bialgebra(family, color);
    case RuleFamily::K1PiCopy: return build_pi_copy(color, p.m1);
    case RuleFamily::K2PhaseFlip: return build_pi_phase(color);
    case RuleFamily::CColorChange: return build_color_change(color, p.n1, p.m1);
    case RuleFamily::D1Cancel: return build_cancel(color);
    default: return build_loop();
  }
}

std::string rule_key(const RuleInstance& r) {
  // Canonical certificate of the two-sided rule graph: shared ports are
  // singleton-colored by position, nodes are colored by a name-free
  // (side, kind, phase shape) descriptor, and phase variables become
  // anonymous vertices so that variable renaming does not matter.
  int P = r.lhs.ports();
  std::vector<std::string> vars;
  auto collect = [&](const PatternDiagram& d) {
    for (const auto& n : d.nodes)
      for (const auto& [v, c] : n.phase.coeff) vars.push_back(v);
  };
  collect(r.lhs);
  collect(r.rhs);
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::map<std::string, int> var_id;
  for (const auto& v : vars) var_id[v] = int(var_id.size());

  int nl = int(r.lhs.nodes.size()), nr = int(r.rhs.nodes.size());
  Structure st;
  st.n = P + nl + nr + int(vars.size());

  auto descriptor = [](int side, const PatternNode& n) {
    std::ostringstream os;
    os << side << "/" << int(n.kind) << "/" << n.phase.constant.str() << "/";
    std::vector<int> cs;
    for (const auto& [v, c] : n.phase.coeff) cs.push_back(c);
    std::sort(cs.begin(), cs.end());
    for (int c : cs) os << c << ",";
    return os.str();
  };
  std::vector<std::string> descs;
  for (const auto& n : r.lhs.nodes) descs.push_back(descriptor(0, n));
  for (const auto& n : r.rhs.nodes) descs.push_back(descriptor(1, n));
  std::vector<std::string> ranks = descs;
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  auto rank_of = [&](const std::string& d) {
    return int(std::lower_bound(ranks.begin(), ranks.end(), d) - ranks.begin());
  };

  st.colors.resize(st.n);
  for (int p = 0; p < P; ++p) st.colors[p] = p;
  for (int i = 0; i < nl + nr; ++i) st.colors[P + i] = P + rank_of(descs[i]);
  for (std::size_t v = 0; v < vars.size(); ++v)
    st.colors[P + nl + nr + v] = P + int(ranks.size());

  auto add_side = [&](const PatternDiagram& d, int base, int tag) {
    auto vid = [&](const Endpoint& e) {
      if (e.kind == Endpoint::Node) return base + e.index;
      return port_id(d, e);
    };
    for (const auto& [a, b] : d.wires) {
      st.facts.push_back({tag, {vid(a), vid(b)}});
      st.facts.push_back({tag, {vid(b), vid(a)}});
    }
    for (std::size_t i = 0; i < d.nodes.size(); ++i)
      for (const auto& [v, c] : d.nodes[i].phase.coeff)
        st.facts.push_back({100 + c, {P + nl + nr + var_id[v], base + int(i)}});
  };
  add_side(r.lhs, P, 1);
  add_side(r.rhs, P + nl, 2);

  std::ostringstream os;
  os << canonical_labeling(st).certificate << ";L" << r.lhs.loops << "," << r.rhs.loops;
  // ranks alone are relative to this rule's descriptor set; append the set
  // itself so rules differing only in absolute node content do not collide
  os << ";D";
  for (const auto& d : ranks) os << d << "|";
  return os.str();
}

std::vector<RuleInstance> enumerate_rules(int maxIn, int maxOut) {
  std::vector<RuleInstance> out;
  std::set<std::string> seen;
  auto push = [&](RuleInstance r) {
    if (seen.insert(rule_key(r)).second) out.push_back(std::move(r));
  };
  int kmax = std::max(maxIn, maxOut);
  for (NodeKind color : {NodeKind::Z, NodeKind::X}) {
    for (int n1 = 0; n1 <= maxIn; ++n1)
      for (int m1 = 0; m1 <= maxOut; ++m1)
        for (int n2 = 0; n2 + n1 <= maxIn; ++n2)
          for (int m2 = 0; m2 + m1 <= maxOut; ++m2)
            for (int k = 1; k <= kmax; ++k) {
              if (m1 + k > maxOut || n2 + k > maxIn) continue;
              push(build_fusion(color, n1, m1, n2, m2, k));
            }
    for (int n = 0; n <= maxIn; ++n)
      for (int m = 0; m <= maxOut; ++m)
        for (int i = 0; i <= n; ++i)
          for (int j = 0; j <= m; ++j) {
            if (j + 1 > maxOut || n - i + 1 > maxIn) continue;
            push(build_fission(color, n, m, i, j));
          }
    for (int which = 0; which < 3; ++which) push(build_identity(color, which));
    for (int m = 0; m <= maxOut; ++m)
      for (bool pi : {false, true}) push(build_copy(color, m, pi));
    if (maxIn >= 2 && maxOut >= 2)
      for (RuleFamily f : {RuleFamily::B2Bialgebra, RuleFamily::B2PiX, RuleFamily::B2PiZ})
        push(build_bialgebra(f, color));
    if (maxIn >= 1)
      for (int m = 0; m <= maxOut; ++m) push(build_pi_copy(color, m));
    if (maxIn >= 1 && maxOut >= 1) push(build_pi_phase(color));
    for (int n = 0; n <= maxIn; ++n)
      for (int m = 0; m <= maxOut; ++m) push(build_color_change(color, n, m));
    push(build_cancel(color));
    push(build_loop());
  }
  return out;
}

Verdict verify_rule(const RuleInstance& rule, const std::map<std::string, Phase>& binding,
                    double tol) {
  return verify_pair(rule.lhs.instantiate(binding), rule.rhs.instantiate(binding), tol);
}

namespace {

// Backtracking pattern matcher plus replacement gluing. All embeddings are
// enumerated; rewrite results are deduplicated by (consumed nodes, canonical
// result key).
struct Rewriter {
  const PatternDiagram& pat;
  const PatternDiagram& rep;
  const ZXDiagram& host;

  std::vector<std::pair<int, int>> internals;  // pattern node-node wires
  std::vector<std::pair<int, int>> portwires;  // pattern port-port wires (port ids)
  std::vector<std::vector<int>> node_legs;     // pattern node -> attached port ids
  std::vector<int> pat_deg;

  std::vector<int> host_deg;
  std::vector<std::vector<std::pair<int, int>>> host_inc;  // node -> (wire, end)

  std::vector<int> node_map;
  std::vector<char> host_node_used;
  std::map<std::string, Phase> binding;
  std::vector<char> wire_used;
  std::vector<char> wire_split;  // consumed by a port-port pattern wire
  std::vector<std::array<int, 2>> end_port;

  std::vector<ZXRewriteResult> results;
  std::set<std::string> dedup;

  Rewriter(const PatternDiagram& p, const PatternDiagram& r, const ZXDiagram& h)
      : pat(p), rep(r), host(h) {
    int np = int(pat.nodes.size());
    node_legs.resize(np);
    pat_deg.assign(np, 0);
    for (const auto& [a, b] : pat.wires) {
      if (a.kind == Endpoint::Node) pat_deg[a.index]++;
      if (b.kind == Endpoint::Node) pat_deg[b.index]++;
      if (a.kind == Endpoint::Node && b.kind == Endpoint::Node)
        internals.emplace_back(a.index, b.index);
      else if (a.kind != Endpoint::Node && b.kind != Endpoint::Node)
        portwires.emplace_back(port_id(pat, a), port_id(pat, b));
      else if (a.kind == Endpoint::Node)
        node_legs[a.index].push_back(port_id(pat, b));
      else
        node_legs[b.index].push_back(port_id(pat, a));
    }
    int nh = int(host.nodes.size());
    host_deg.assign(nh, 0);
    host_inc.resize(nh);
    for (std::size_t w = 0; w < host.wires.size(); ++w) {
      const auto& [a, b] = host.wires[w];
      if (a.kind == Endpoint::Node) {
        host_deg[a.index]++;
        host_inc[a.index].emplace_back(int(w), 0);
      }
      if (b.kind == Endpoint::Node) {
        host_deg[b.index]++;
        host_inc[b.index].emplace_back(int(w), 1);
      }
    }
    node_map.assign(np, -1);
    host_node_used.assign(nh, 0);
    wire_used.assign(host.wires.size(), 0);
    wire_split.assign(host.wires.size(), 0);
    end_port.assign(host.wires.size(), {-1, -1});
  }

  std::vector<ZXRewriteResult> run() {
    if (pat.loops <= host.loops) assign_node(0);
    return std::move(results);
  }

  // 0 = fail, 1 = matched, 2 = matched with a new binding (name in *bound)
  int try_phase(const PhaseExpr& e, const Phase& hp, std::string* bound) {
    Phase residual = hp - e.constant;
    const std::string* unbound = nullptr;
    int ucoeff = 0, ucount = 0;
    for (const auto& [v, c] : e.coeff) {
      auto it = binding.find(v);
      if (it != binding.end()) {
        residual = residual - scaled(it->second, c);
      } else {
        ++ucount;
        unbound = &v;
        ucoeff = c;
      }
    }
    if (ucount == 0) return residual == Phase::zero() ? 1 : 0;
    if (ucount > 1 || (ucoeff != 1 && ucoeff != -1)) return 0;
    binding[*unbound] = ucoeff == 1 ? residual : -residual;
    *bound = *unbound;
    return 2;
  }

  void assign_node(int pi) {
    if (pi == int(pat.nodes.size())) {
      match_internals();
      return;
    }
    const PatternNode& pn = pat.nodes[pi];
    for (int h = 0; h < int(host.nodes.size()); ++h) {
      if (host_node_used[h] || host.nodes[h].kind != pn.kind) continue;
      if (host_deg[h] != pat_deg[pi]) continue;
      std::string bound;
      int pm = 1;
      if (pn.kind == NodeKind::Z || pn.kind == NodeKind::X) {
        pm = try_phase(pn.phase, host.nodes[h].phase, &bound);
        if (pm == 0) continue;
      }
      node_map[pi] = h;
      host_node_used[h] = 1;
      assign_node(pi + 1);
      host_node_used[h] = 0;
      node_map[pi] = -1;
      if (pm == 2) binding.erase(bound);
    }
  }

  void match_internals() {
    // parallel wires between the same image pair are interchangeable, so
    // first-fit is exhaustive here
    std::vector<int> taken;
    bool ok = true;
    for (const auto& [u, v] : internals) {
      int a = node_map[u], b = node_map[v];
      bool found = false;
      for (std::size_t w = 0; w < host.wires.size(); ++w) {
        if (wire_used[w]) continue;
        const auto& [x, y] = host.wires[w];
        if (x.kind != Endpoint::Node || y.kind != Endpoint::Node) continue;
        bool match = (x.index == a && y.index == b) || (x.index == b && y.index == a);
        if (!match) continue;
        wire_used[w] = 1;
        taken.push_back(int(w));
        found = true;
        break;
      }
      if (!found) {
        ok = false;
        break;
      }
    }
    if (ok) assign_legs(0);
    for (int w : taken) wire_used[w] = 0;
  }

  void assign_legs(int ni) {
    if (ni == int(pat.nodes.size())) {
      assign_portwires(0);
      return;
    }
    const auto& legs = node_legs[ni];
    if (legs.empty()) {
      assign_legs(ni + 1);
      return;
    }
    std::vector<std::pair<int, int>> ends;
    for (const auto& [w, e] : host_inc[node_map[ni]])
      if (!wire_used[w] && end_port[w][e] < 0) ends.push_back({w, e});
    if (ends.size() != legs.size()) return;
    std::vector<int> idx(ends.size());
    std::iota(idx.begin(), idx.end(), 0);
    do {
      for (std::size_t j = 0; j < legs.size(); ++j)
        end_port[ends[idx[j]].first][ends[idx[j]].second] = legs[j];
      assign_legs(ni + 1);
      for (std::size_t j = 0; j < legs.size(); ++j)
        end_port[ends[idx[j]].first][ends[idx[j]].second] = -1;
    } while (std::next_permutation(idx.begin(), idx.end()));
  }

  void assign_portwires(std::size_t k) {
    if (k == portwires.size()) {
      emit();
      return;
    }
    auto [pa, pb] = portwires[k];
    for (std::size_t w = 0; w < host.wires.size(); ++w) {
      if (wire_used[w] || end_port[w][0] >= 0 || end_port[w][1] >= 0) continue;
      for (int o = 0; o < 2; ++o) {
        wire_used[w] = 1;
        wire_split[w] = 1;
        end_port[w][o] = pa;
        end_port[w][1 - o] = pb;
        assign_portwires(k + 1);
        wire_used[w] = 0;
        wire_split[w] = 0;
        end_port[w][0] = end_port[w][1] = -1;
      }
    }
  }

  void emit() {
    for (const auto& n : rep.nodes)
      for (const auto& [v, c] : n.phase.coeff)
        if (!binding.count(v)) return;  // replacement phase undetermined

    ZXDiagram out;
    out.n_inputs = host.n_inputs;
    out.n_outputs = host.n_outputs;
    std::vector<int> remap(host.nodes.size(), -1);
    std::vector<int> origins;
    std::vector<char> consumed_node(host.nodes.size(), 0);
    for (int h : node_map) consumed_node[h] = 1;
    for (std::size_t i = 0; i < host.nodes.size(); ++i) {
      if (consumed_node[i]) continue;
      remap[i] = int(out.nodes.size());
      out.nodes.push_back(host.nodes[i]);
      origins.push_back(int(i));
    }
    int rep_base = int(out.nodes.size());
    {
      ZXDiagram inst = rep.instantiate(binding);
      for (const auto& n : inst.nodes) {
        out.nodes.push_back(n);
        origins.push_back(-1);
      }
    }

    int nports = pat.ports();
    std::vector<std::pair<GlueEp, GlueEp>> gw;
    auto real_of = [&](Endpoint e) {
      if (e.kind == Endpoint::Node) e.index = remap[e.index];
      return GlueEp{false, 0, e};
    };
    auto junction = [](int j) { return GlueEp{true, j, {}}; };
    for (std::size_t w = 0; w < host.wires.size(); ++w) {
      if (wire_used[w] && !wire_split[w]) continue;  // internal, fully consumed
      const auto& [a, b] = host.wires[w];
      if (wire_split[w]) {
        gw.emplace_back(real_of(a), junction(end_port[w][0]));
        gw.emplace_back(real_of(b), junction(end_port[w][1]));
        continue;
      }
      GlueEp ga = end_port[w][0] >= 0 ? junction(end_port[w][0]) : real_of(a);
      GlueEp gb = end_port[w][1] >= 0 ? junction(end_port[w][1]) : real_of(b);
      gw.emplace_back(ga, gb);
    }
    for (const auto& [a, b] : rep.wires) {
      auto map_rep = [&](const Endpoint& e) {
        if (e.kind == Endpoint::Node) return GlueEp{false, 0, node_ep(rep_base + e.index)};
        return junction(port_id(rep, e));
      };
      gw.emplace_back(map_rep(a), map_rep(b));
    }
    out.loops = host.loops - pat.loops + rep.loops;
    out.loops += eliminate_junctions(gw, nports);
    for (const auto& [a, b] : gw) out.wires.emplace_back(a.real, b.real);

    CanonicalDiagram canon = canonicalize(out);
    ZXRewriteResult res;
    res.diagram = std::move(canon.diagram);
    res.key = std::move(canon.key);
    res.consumed = node_map;
    std::sort(res.consumed.begin(), res.consumed.end());
    res.inherited_from.assign(out.nodes.size(), -1);
    for (std::size_t i = 0; i < out.nodes.size(); ++i)
      res.inherited_from[canon.node_perm[i]] = origins[i];
    std::ostringstream md;
    md << "n[";
    for (std::size_t i = 0; i < node_map.size(); ++i) md << (i ? "," : "") << node_map[i];
    md << "]";
    if (!portwires.empty()) {
      md << "w[";
      bool first = true;
      for (std::size_t w = 0; w < host.wires.size(); ++w)
        if (wire_split[w]) {
          md << (first ? "" : ",") << w;
          first = false;
        }
      md << "]";
    }
    res.match_desc = md.str();

    std::ostringstream dk;
    for (int c : res.consumed) dk << c << ",";
    dk << "#" << res.key << "#" << res.match_desc;
    if (dedup.insert(dk.str()).second) results.push_back(std::move(res));
  }
};

}  // namespace

std::vector<ZXRewriteResult> apply_rule(const RuleInstance& rule, bool forward,
                                        const ZXDiagram& host) {
  const PatternDiagram& pat = forward ? rule.lhs : rule.rhs;
  const PatternDiagram& rep = forward ? rule.rhs : rule.lhs;
  return Rewriter(pat, rep, host).run();
}

ZXMultiwaySystem::ZXMultiwaySystem(std::vector<RuleInstance> rules, std::string name)
    : rules_(std::move(rules)), name_(std::move(name)) {}

std::any ZXMultiwaySystem::canonical(const std::any& state) const {
  return canonicalize(std::any_cast<const ZXDiagram&>(state)).diagram;
}

std::string ZXMultiwaySystem::key(const std::any& state) const {
  return diagram_key(std::any_cast<const ZXDiagram&>(state));
}

std::vector<Successor> ZXMultiwaySystem::successors(const std::any& state) const {
  const ZXDiagram& d = std::any_cast<const ZXDiagram&>(state);
  std::vector<Successor> out;
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    for (int dir = 0; dir < 2; ++dir) {
      for (auto& res : apply_rule(rules_[i], dir == 0, d)) {
        Successor s;
        s.state = std::move(res.diagram);
        s.key = std::move(res.key);
        s.rule_id = int(2 * i) + dir;
        s.match_desc = std::move(res.match_desc);
        s.consumed = std::move(res.consumed);
        s.inherited_from = std::move(res.inherited_from);
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

int ZXMultiwaySystem::element_count(const std::any& state) const {
  return int(std::any_cast<const ZXDiagram&>(state).nodes.size());
}

std::string ZXMultiwaySystem::rule_label(int rule_id) const {
  if (rule_id < 0 || rule_id >= int(2 * rules_.size())) return std::to_string(rule_id);
  return rules_[rule_id / 2].id + (rule_id % 2 ? "<-" : "->");
}

std::vector<RuleInstance> compose_rule_sets(const std::vector<RuleInstance>& a,
                                            const std::vector<RuleInstance>& b) {
  std::vector<RuleInstance> out;
  std::set<std::string> seen;
  for (const auto* src : {&a, &b})
    for (const auto& r : *src)
      if (seen.insert(rule_key(r)).second) out.push_back(r);
  return out;
}

}  // namespace zxmw
