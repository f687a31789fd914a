#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "diagram.hpp"

using namespace zxmw;

namespace {

// Relabel nodes by `perm` and shuffle wire order/orientation: semantics is
// untouched, so the canonical key must not move.
ZXDiagram permuted(const ZXDiagram& d, const std::vector<int>& perm, std::mt19937& rng) {
  ZXDiagram out = d;
  out.nodes.assign(d.nodes.size(), ZXNode{});
  for (std::size_t i = 0; i < d.nodes.size(); ++i) out.nodes[perm[i]] = d.nodes[i];
  if (!d.splits.empty()) {
    out.splits.assign(d.nodes.size(), {0, 0});
    for (std::size_t i = 0; i < d.nodes.size(); ++i) out.splits[perm[i]] = d.splits[i];
  }
  auto map_ep = [&](Endpoint e) {
    if (e.kind == Endpoint::Node) e.index = perm[e.index];
    return e;
  };
  for (auto& [a, b] : out.wires) {
    a = map_ep(a);
    b = map_ep(b);
    if (rng() & 1) std::swap(a, b);
  }
  std::shuffle(out.wires.begin(), out.wires.end(), rng);
  return out;
}

std::vector<std::string> corpus() {
  return {
      "Z[a,1,2,pi/2]*W[i1,a]*W[a,o1]*W[a,o2]",
      "X[x,0,1,0]*Z[z,1,2,0]*W[x,z]*W[z,o1]*W[z,o2]",
      "Z[a,1,1,pi/4]*X[b,1,1,pi]*W[i1,a]*W[a,b]*W[b,o1]",
      "H[h]*W[i1,h]*W[h,o1]",
      "Z[a,2,2,0]*X[b,2,2,3pi/2]*W[i1,a]*W[i2,a]*W[a,b]*W[a,b]*W[b,o1]*W[b,o2]",
      "Z[a,0,0,pi]*B[d]",
      "Z[a,0,2,0]*Z[b,2,0,pi/2]*W[a,b]*W[a,b]*L",
  };
}

}  // namespace

TEST_CASE("parse accepts the operator syntax and validates arities") {
  ZXDiagram d = parse_diagram("Z[a,1,2,pi/2]*W[i1,a]*W[a,o1]*W[a,o2]");
  CHECK(d.nodes.size() == 1);
  CHECK(d.n_inputs == 1);
  CHECK(d.n_outputs == 2);
  CHECK(d.degree(0) == 3);
  CHECK(d.nodes[0].phase == Phase(Rational(1, 2)));
  CHECK_THROWS_AS((void)parse_diagram("Z[a,1,2,pi/2]"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_diagram("H[h]*W[i1,h]"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_diagram("W[i1,o1]*W[i1,o2]"), std::invalid_argument);
}

TEST_CASE("unicode tensor symbol parses like the ASCII star") {
  ZXDiagram a = parse_diagram("Z[a,0,1,0]⊗W[a,o1]");
  ZXDiagram b = parse_diagram("Z[a,0,1,0]*W[a,o1]");
  CHECK(diagram_key(a) == diagram_key(b));
}

TEST_CASE("render/parse round-trip preserves the canonical form") {
  for (const auto& text : corpus()) {
    ZXDiagram d = parse_diagram(text);
    ZXDiagram back = parse_diagram(render_diagram(d));
    CHECK(diagram_key(back) == diagram_key(d));
  }
}

TEST_CASE("JSON round-trip preserves the canonical form") {
  for (const auto& text : corpus()) {
    ZXDiagram d = parse_diagram(text);
    ZXDiagram back = diagram_from_json(diagram_to_json(d));
    CHECK(diagram_key(back) == diagram_key(d));
    CHECK(back.n_inputs == d.n_inputs);
    CHECK(back.n_outputs == d.n_outputs);
    CHECK(back.loops == d.loops);
  }
}

TEST_CASE("canonical key is invariant under 100 relabelings per diagram") {
  std::mt19937 rng(11);
  for (const auto& text : corpus()) {
    ZXDiagram d = parse_diagram(text);
    std::string key = diagram_key(d);
    std::vector<int> perm(d.nodes.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
    for (int trial = 0; trial < 100; ++trial) {
      std::shuffle(perm.begin(), perm.end(), rng);
      ZXDiagram p = permuted(d, perm, rng);
      validate(p);
      CHECK(diagram_key(p) == key);
    }
  }
}

TEST_CASE("canonical keys separate inequivalent diagrams") {
  CHECK(diagram_key(parse_diagram("Z[a,1,1,0]*W[i1,a]*W[a,o1]")) !=
        diagram_key(parse_diagram("X[a,1,1,0]*W[i1,a]*W[a,o1]")));
  CHECK(diagram_key(parse_diagram("Z[a,1,1,0]*W[i1,a]*W[a,o1]")) !=
        diagram_key(parse_diagram("Z[a,1,1,pi]*W[i1,a]*W[a,o1]")));
  // boundary order matters
  CHECK(diagram_key(parse_diagram("Z[a,1,2,0]*X[b,1,0,0]*W[i1,a]*W[a,o1]*W[a,o2]*W[i2,b]")) !=
        diagram_key(parse_diagram("Z[a,1,2,0]*X[b,1,0,0]*W[i2,a]*W[a,o1]*W[a,o2]*W[i1,b]")));
}

TEST_CASE("canonicalize reports a usable node permutation") {
  ZXDiagram d = parse_diagram("X[x,0,1,0]*Z[z,1,2,0]*W[x,z]*W[z,o1]*W[z,o2]");
  CanonicalDiagram c = canonicalize(d);
  REQUIRE(c.node_perm.size() == d.nodes.size());
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    CHECK(c.diagram.nodes[c.node_perm[i]].kind == d.nodes[i].kind);
    CHECK(c.diagram.nodes[c.node_perm[i]].phase == d.nodes[i].phase);
  }
  CHECK(c.key == diagram_key(d));
}

TEST_CASE("stack concatenates boundaries in order") {
  ZXDiagram a = parse_diagram("Z[a,1,1,0]*W[i1,a]*W[a,o1]");
  ZXDiagram b = parse_diagram("X[b,2,1,pi]*W[i1,b]*W[i2,b]*W[b,o1]");
  ZXDiagram s = stack(a, b);
  validate(s);
  CHECK(s.n_inputs == 3);
  CHECK(s.n_outputs == 2);
  CHECK(s.nodes.size() == 2);
  // stacking is not commutative on ordered boundaries
  CHECK(diagram_key(stack(a, b)) != diagram_key(stack(b, a)));
}

TEST_CASE("compose plugs outputs into inputs and checks arity") {
  ZXDiagram a = parse_diagram("Z[a,1,2,0]*W[i1,a]*W[a,o1]*W[a,o2]");
  ZXDiagram b = parse_diagram("X[b,2,1,0]*W[i1,b]*W[i2,b]*W[b,o1]");
  ZXDiagram c = compose(a, b);
  validate(c);
  CHECK(c.n_inputs == 1);
  CHECK(c.n_outputs == 1);
  CHECK(c.nodes.size() == 2);
  CHECK_THROWS_AS((void)compose(b, b), std::invalid_argument);
}

TEST_CASE("composing two bare-wire identities yields a bare wire") {
  ZXDiagram wire = parse_diagram("W[i1,o1]");
  ZXDiagram c = compose(wire, wire);
  CHECK(diagram_key(c) == diagram_key(wire));
  CHECK(c.loops == 0);
}

TEST_CASE("color inversion swaps spider kinds and is an involution") {
  ZXDiagram d = parse_diagram("X[x,0,1,0]*Z[z,1,2,pi/2]*W[x,z]*W[z,o1]*W[z,o2]");
  ZXDiagram inv = color_invert(d);
  CHECK(inv.nodes[0].kind == (d.nodes[0].kind == NodeKind::Z ? NodeKind::X : NodeKind::Z));
  CHECK(diagram_key(color_invert(inv)) == diagram_key(d));
  CHECK(diagram_key(inv) != diagram_key(d));
}

TEST_CASE("junction elimination contracts chains and counts closed cycles") {
  // chain: real A - j0 - j1 - real B collapses to one wire A-B
  std::vector<std::pair<GlueEp, GlueEp>> ws;
  GlueEp A{false, 0, input_ep(0)}, B{false, 0, output_ep(0)};
  GlueEp j0a{true, 0, {}}, j0b{true, 0, {}}, j1a{true, 1, {}}, j1b{true, 1, {}};
  ws.push_back({A, j0a});
  ws.push_back({j0b, j1a});
  ws.push_back({j1b, B});
  CHECK(eliminate_junctions(ws, 2) == 0);
  REQUIRE(ws.size() == 1);
  CHECK(!ws[0].first.junction);
  CHECK(!ws[0].second.junction);
  std::vector<Endpoint> ends{ws[0].first.real, ws[0].second.real};
  std::sort(ends.begin(), ends.end());
  CHECK(ends == std::vector<Endpoint>{input_ep(0), output_ep(0)});

  // pure junction cycle becomes one counted loop and no wires
  std::vector<std::pair<GlueEp, GlueEp>> cyc;
  cyc.push_back({GlueEp{true, 0, {}}, GlueEp{true, 1, {}}});
  cyc.push_back({GlueEp{true, 1, {}}, GlueEp{true, 0, {}}});
  CHECK(eliminate_junctions(cyc, 2) == 1);
  CHECK(cyc.empty());
}

TEST_CASE("validate rejects malformed structure") {
  ZXDiagram d;
  d.nodes.push_back({NodeKind::H, Phase::zero()});
  d.n_inputs = 1;
  d.wires.push_back({input_ep(0), node_ep(0)});
  CHECK_THROWS_AS(validate(d), std::invalid_argument);  // H needs degree 2
  d.wires.push_back({node_ep(0), node_ep(0)});
  CHECK_THROWS_AS(validate(d), std::invalid_argument);  // now degree 3
  ZXDiagram bad;
  bad.n_inputs = 1;  // dangling boundary point
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  ZXDiagram oob;
  oob.wires.push_back({node_ep(0), node_ep(0)});
  CHECK_THROWS_AS(validate(oob), std::invalid_argument);
}
