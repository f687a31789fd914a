#pragma once

#include <string>
#include <utility>
#include <vector>

namespace zxmw {

// A colored incidence structure: n vertices with integer colors plus a
// multiset of tagged ordered tuples over the vertices. Covers directed
// ordered hypergraphs (relations as tuples) and multigraphs (edges as pairs).
struct Structure {
  int n = 0;
  std::vector<int> colors;                              // size n
  std::vector<std::pair<int, std::vector<int>>> facts;  // (tag, vertex tuple)
};

struct CanonResult {
  std::vector<int> relabel;  // old vertex id -> canonical id
  std::string certificate;   // equal iff structures are isomorphic
};

// Exact canonical labeling by color refinement with individualization
// (McKay-style search without automorphism pruning). Intended for structures
// up to a few hundred vertices.
CanonResult canonical_labeling(const Structure& s);

}  // namespace zxmw
