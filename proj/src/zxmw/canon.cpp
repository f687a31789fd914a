#include "canon.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace zxmw {

namespace {

// Incidence index: for each vertex, the list of (fact index, position).
struct Incidence {
  std::vector<std::vector<std::pair<int, int>>> at;
  explicit Incidence(const Structure& s) {
    at.resize(s.n);
    for (std::size_t f = 0; f < s.facts.size(); ++f)
      for (std::size_t p = 0; p < s.facts[f].second.size(); ++p)
        at[s.facts[f].second[p]].emplace_back(int(f), int(p));
  }
};

// Refine `colors` to a stable partition. New color ids are assigned by sorted
// signature order, which keeps the refinement isomorphism-invariant.
void refine(const Structure& s, const Incidence& inc, std::vector<int>& colors) {
  for (int round = 0; round < s.n + 2; ++round) {
    std::vector<std::vector<int>> sigs(s.n);
    for (int v = 0; v < s.n; ++v) {
      std::vector<std::vector<int>> parts;
      for (auto [f, p] : inc.at[v]) {
        std::vector<int> part;
        part.push_back(s.facts[f].first);
        part.push_back(p);
        for (int u : s.facts[f].second) part.push_back(colors[u]);
        parts.push_back(std::move(part));
      }
      std::sort(parts.begin(), parts.end());
      std::vector<int> sig{colors[v]};
      for (auto& part : parts) {
        sig.push_back(-1);
        sig.insert(sig.end(), part.begin(), part.end());
      }
      sigs[v] = std::move(sig);
    }
    std::map<std::vector<int>, int> ids;
    for (int v = 0; v < s.n; ++v) ids.emplace(sigs[v], 0);
    int next = 0;
    for (auto& [sig, id] : ids) id = next++;
    std::vector<int> out(s.n);
    for (int v = 0; v < s.n; ++v) out[v] = ids[sigs[v]];
    if (out == colors) return;
    colors = std::move(out);
  }
}

std::string certify(const Structure& s, const std::vector<int>& relabel) {
  std::vector<int> orig_color(s.n);
  for (int v = 0; v < s.n; ++v) orig_color[relabel[v]] = s.colors.empty() ? 0 : s.colors[v];
  std::vector<std::pair<int, std::vector<int>>> facts;
  facts.reserve(s.facts.size());
  for (const auto& [tag, tuple] : s.facts) {
    std::vector<int> t;
    t.reserve(tuple.size());
    for (int v : tuple) t.push_back(relabel[v]);
    facts.emplace_back(tag, std::move(t));
  }
  std::sort(facts.begin(), facts.end());
  std::ostringstream os;
  for (int c : orig_color) os << c << ",";
  os << "|";
  for (const auto& [tag, tuple] : facts) {
    os << tag << ":";
    for (int v : tuple) os << v << ",";
    os << ";";
  }
  return os.str();
}

struct Search {
  const Structure& s;
  const Incidence& inc;
  std::optional<std::string> best;
  std::vector<int> best_relabel;

  void leaf(const std::vector<int>& colors) {
    // discrete partition: canonical id = color id
    std::vector<int> relabel(s.n);
    for (int v = 0; v < s.n; ++v) relabel[v] = colors[v];
    std::string cert = certify(s, relabel);
    if (!best || cert < *best) {
      best = std::move(cert);
      best_relabel = std::move(relabel);
    }
  }

  void descend(std::vector<int> colors) {
    refine(s, inc, colors);
    // first non-singleton color class
    std::vector<int> count(s.n, 0);
    for (int c : colors) count[c]++;
    int target = -1;
    for (int c = 0; c < s.n; ++c)
      if (count[c] > 1) {
        target = c;
        break;
      }
    if (target < 0) {
      leaf(colors);
      return;
    }
    for (int v = 0; v < s.n; ++v) {
      if (colors[v] != target) continue;
      std::vector<int> next = colors;
      // individualize v: split it off below its class
      for (int u = 0; u < s.n; ++u)
        if (next[u] > target || (next[u] == target && u != v)) next[u]++;
      descend(std::move(next));
    }
  }
};

}  // namespace

CanonResult canonical_labeling(const Structure& s) {
  if (s.n == 0) {
    Structure empty = s;
    return CanonResult{{}, certify(empty, {})};
  }
  Incidence inc(s);
  Search search{s, inc, std::nullopt, {}};
  std::vector<int> colors = s.colors;
  if (colors.empty()) colors.assign(s.n, 0);
  else {
    // compress initial colors to a dense range, preserving order
    std::map<int, int> ids;
    for (int c : colors) ids.emplace(c, 0);
    int next = 0;
    for (auto& [c, id] : ids) id = next++;
    for (int& c : colors) c = ids[c];
  }
  search.descend(std::move(colors));
  return CanonResult{std::move(search.best_relabel), std::move(*search.best)};
}

}  // namespace zxmw
