#include "graphiso.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace zxmw {

namespace {

struct Adj {
  std::vector<std::vector<int>> out, in;
  std::vector<std::vector<int>> out_multi, in_multi;  // multiplicity matrices (sparse via maps below)
  std::vector<std::map<int, int>> outm, inm;

  explicit Adj(const ColoredGraph& g) {
    out.resize(g.n);
    in.resize(g.n);
    outm.resize(g.n);
    inm.resize(g.n);
    for (auto [u, v] : g.edges) {
      out[u].push_back(v);
      in[v].push_back(u);
      outm[u][v]++;
      inm[v][u]++;
      if (!g.directed && u != v) {
        out[v].push_back(u);
        in[u].push_back(v);
        outm[v][u]++;
        inm[u][v]++;
      }
    }
  }
};

// Iterative refinement: vertex signature = (color, sorted multiset of
// neighbor classes with direction and multiplicity). Stable partition used
// both as an invariant filter and as candidate pruning.
std::vector<int> refine(const ColoredGraph& g, const Adj& adj) {
  std::vector<int> cls(g.n, 0);
  if (!g.colors.empty()) cls = g.colors;
  for (int round = 0; round < g.n + 2; ++round) {
    // class ids are ranks of sorted signatures, so that two isomorphic graphs
    // refine to identical id assignments regardless of vertex numbering
    std::vector<std::vector<int>> sigs(g.n);
    for (int v = 0; v < g.n; ++v) {
      std::vector<int>& sig = sigs[v];
      sig.push_back(cls[v]);
      std::vector<int> nb;
      for (auto& [u, m] : adj.outm[v]) {
        nb.push_back(cls[u] * 2);
        nb.push_back(m);
      }
      for (auto& [u, m] : adj.inm[v]) {
        nb.push_back(cls[u] * 2 + 1);
        nb.push_back(m);
      }
      std::sort(nb.begin(), nb.end());
      sig.push_back(-1);
      sig.insert(sig.end(), nb.begin(), nb.end());
    }
    std::map<std::vector<int>, int> sig_ids;
    for (const auto& s : sigs) sig_ids.emplace(s, 0);
    int rank = 0;
    for (auto& [s, id] : sig_ids) id = rank++;
    std::vector<int> next(g.n);
    for (int v = 0; v < g.n; ++v) next[v] = sig_ids.at(sigs[v]);
    if (next == cls) break;
    cls = next;
  }
  return cls;
}

struct Matcher {
  const ColoredGraph& a;
  const ColoredGraph& b;
  const Adj& aa;
  const Adj& ab;
  std::vector<int> cls_a, cls_b;
  std::vector<int> map_ab;  // a-vertex -> b-vertex or -1
  std::vector<bool> used_b;

  bool compatible(int va, int vb) const {
    if (cls_a[va] != cls_b[vb]) return false;
    // edges to already-mapped vertices must correspond with multiplicity
    for (auto& [u, m] : aa.outm[va]) {
      if (map_ab[u] < 0 && u != va) continue;
      int target = (u == va) ? vb : map_ab[u];
      auto it = ab.outm[vb].find(target);
      if (it == ab.outm[vb].end() || it->second != m) return false;
    }
    for (auto& [u, m] : aa.inm[va]) {
      if (map_ab[u] < 0 && u != va) continue;
      int target = (u == va) ? vb : map_ab[u];
      auto it = ab.inm[vb].find(target);
      if (it == ab.inm[vb].end() || it->second != m) return false;
    }
    // and the reverse direction: mapped neighbors of vb must be hit from va
    for (auto& [u, m] : ab.outm[vb]) {
      int src = -1;
      for (int w = 0; w < a.n; ++w)
        if (map_ab[w] == u) { src = w; break; }
      if (u == vb) src = va;
      if (src < 0) continue;
      auto it = aa.outm[va].find(src);
      if (it == aa.outm[va].end() || it->second != m) return false;
    }
    for (auto& [u, m] : ab.inm[vb]) {
      int src = -1;
      for (int w = 0; w < a.n; ++w)
        if (map_ab[w] == u) { src = w; break; }
      if (u == vb) src = va;
      if (src < 0) continue;
      auto it = aa.inm[va].find(src);
      if (it == aa.inm[va].end() || it->second != m) return false;
    }
    return true;
  }

  bool search(std::size_t idx, const std::vector<int>& order) {
    if (idx == order.size()) return true;
    int va = order[idx];
    for (int vb = 0; vb < b.n; ++vb) {
      if (used_b[vb] || !compatible(va, vb)) continue;
      map_ab[va] = vb;
      used_b[vb] = true;
      if (search(idx + 1, order)) return true;
      map_ab[va] = -1;
      used_b[vb] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> graph_isomorphism(const ColoredGraph& a,
                                                  const ColoredGraph& b,
                                                  int max_vertices) {
  if (a.n > max_vertices || b.n > max_vertices)
    throw std::runtime_error("graph_isomorphism: size cap exceeded");
  if (a.n != b.n || a.directed != b.directed) return std::nullopt;
  std::size_t ea = a.edges.size(), eb = b.edges.size();
  if (ea != eb) return std::nullopt;

  Adj aa(a), ab(b);
  std::vector<int> ca = refine(a, aa), cb = refine(b, ab);
  // class size histograms must agree
  std::map<int, int> ha, hb;
  for (int c : ca) ha[c]++;
  for (int c : cb) hb[c]++;
  if (ha != hb) return std::nullopt;

  // order a-vertices: rare classes first, then by degree
  std::vector<int> order(a.n);
  for (int i = 0; i < a.n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (ha[ca[x]] != ha[ca[y]]) return ha[ca[x]] < ha[ca[y]];
    auto dx = aa.out[x].size() + aa.in[x].size();
    auto dy = aa.out[y].size() + aa.in[y].size();
    if (dx != dy) return dx > dy;
    return x < y;
  });

  Matcher m{a, b, aa, ab, std::move(ca), std::move(cb),
            std::vector<int>(a.n, -1), std::vector<bool>(b.n, false)};
  if (m.search(0, order)) return m.map_ab;
  return std::nullopt;
}

bool graphs_isomorphic(const ColoredGraph& a, const ColoredGraph& b, int max_vertices) {
  return graph_isomorphism(a, b, max_vertices).has_value();
}

}  // namespace zxmw
