#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phase.hpp"

namespace zxmw {

enum class NodeKind { Z, X, H, Diamond };

struct ZXNode {
  NodeKind kind = NodeKind::Z;
  Phase phase;  // meaningful for Z/X only (H and Diamond carry none)
};

// Wire endpoint: an internal node or an ordered boundary point.
struct Endpoint {
  enum Kind { Node, Input, Output } kind = Node;
  int index = 0;

  friend bool operator==(const Endpoint& a, const Endpoint& b) {
    return a.kind == b.kind && a.index == b.index;
  }
  friend bool operator<(const Endpoint& a, const Endpoint& b) {
    return a.kind != b.kind ? a.kind < b.kind : a.index < b.index;
  }
};

inline Endpoint node_ep(int i) { return Endpoint{Endpoint::Node, i}; }
inline Endpoint input_ep(int i) { return Endpoint{Endpoint::Input, i}; }
inline Endpoint output_ep(int i) { return Endpoint{Endpoint::Output, i}; }

// Open multigraph of spiders, Hadamard boxes, and diamonds. Wires are
// undirected; self-loops are allowed; fully closed loops of bare wire are
// counted in `loops`. Boundary points are ordered and semantically
// significant. `splits` records the declared (in, out) leg split per node for
// printing; it is presentation only and excluded from canonical equality.
struct ZXDiagram {
  std::vector<ZXNode> nodes;
  int n_inputs = 0;
  int n_outputs = 0;
  std::vector<std::pair<Endpoint, Endpoint>> wires;
  int loops = 0;
  std::vector<std::pair<int, int>> splits;  // parallel to nodes; may be empty

  int degree(int node) const;
  int boundary_degree(const Endpoint& b) const;
};

// Throws std::invalid_argument on: boundary degree != 1, H degree != 2,
// Diamond degree != 0, declared split inconsistent with actual degree,
// endpoint indices out of range.
void validate(const ZXDiagram& d);

struct CanonicalDiagram {
  ZXDiagram diagram;
  std::string key;            // stable hash/serialization of the canonical form
  std::vector<int> node_perm;  // input node index -> canonical node index
};
CanonicalDiagram canonicalize(const ZXDiagram& d);
std::string diagram_key(const ZXDiagram& d);

// Monoidal product: disjoint union; boundary order d1's then d2's.
ZXDiagram stack(const ZXDiagram& d1, const ZXDiagram& d2);
// Sequential composition: d1's outputs plugged into d2's inputs, in order.
// Throws on arity mismatch.
ZXDiagram compose(const ZXDiagram& d1, const ZXDiagram& d2);
// Swap Z and X node kinds throughout.
ZXDiagram color_invert(const ZXDiagram& d);

// Operator-expression text: Z[name,in,out,phase], X[...], H[name], B[name],
// W[a,b] joined by ⊗ (ASCII "*" also accepted), parenthesized nesting;
// boundary names i1..iN / o1..oM.
ZXDiagram parse_diagram(const std::string& text);
std::string render_diagram(const ZXDiagram& d);

// JSON schema (nodes, wires, boundary, loops); round-trips with parse.
std::string diagram_to_json(const ZXDiagram& d);
ZXDiagram diagram_from_json(const std::string& json_text);

// Gluing utility used by compose() and by rule replacement: wire endpoints
// may temporarily be "junctions" (points where two diagrams are fused).
struct GlueEp {
  bool junction = false;
  int jid = 0;
  Endpoint real{};
};
// Each junction id in [0, njunctions) must occur exactly twice among the wire
// ends. Contracts junction chains into direct wires (in place); returns the
// number of closed junction cycles, each of which is one extra loop.
int eliminate_junctions(std::vector<std::pair<GlueEp, GlueEp>>& wires, int njunctions);

}  // namespace zxmw
