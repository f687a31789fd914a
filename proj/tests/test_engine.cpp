#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "engine.hpp"
#include "exporters.hpp"
#include "sets.hpp"
#include "strings.hpp"

using namespace zxmw;

namespace {

StringSystem growth() { return StringSystem(parse_string_rules("1->01,0->10")); }

// Count root-to-state paths by explicit depth-first enumeration.
std::vector<std::uint64_t> brute_paths(const MultiwayGraph& mw) {
  auto in = mw.in_edges();
  std::vector<std::uint64_t> count(mw.states.size(), 0);
  std::function<std::uint64_t(int)> walk = [&](int v) -> std::uint64_t {
    bool root = std::find(mw.roots.begin(), mw.roots.end(), v) != mw.roots.end();
    std::uint64_t total = root ? 1 : 0;
    for (int u : in[v]) total += walk(u);
    return total;
  };
  for (std::size_t v = 0; v < mw.states.size(); ++v) count[v] = walk(int(v));
  return count;
}

}  // namespace

TEST_CASE("evolution mode layers states by generation") {
  StringSystem sys = growth();
  MultiwayGraph mw = evolve(sys, {std::any(std::string("1"))}, 4, MultiwayMode::Evolution);
  for (const auto& e : mw.events) {
    CHECK(mw.states[e.output_state].generation == mw.states[e.input_state].generation + 1);
    CHECK(e.generation == mw.states[e.input_state].generation);
  }
  // within a slice, keys are unique
  for (int t = 0; t <= mw.max_generation(); ++t) {
    auto sl = mw.slice(t);
    std::set<std::string> keys;
    for (int v : sl) keys.insert(mw.states[v].key);
    CHECK(keys.size() == sl.size());
  }
}

TEST_CASE("states mode deduplicates across generations") {
  SetSystem sys({parse_set_rule("{{x,y}}->{{y,x}}")});
  MultiwayGraph mw =
      evolve(sys, {std::any(parse_set_state("{{0,1}}"))}, 5, MultiwayMode::States);
  CHECK(mw.states.size() == 1);  // the swap is invisible up to isomorphism
  std::set<std::string> keys;
  for (const auto& s : mw.states) keys.insert(s.key);
  CHECK(keys.size() == mw.states.size());
}

TEST_CASE("path weights match brute-force path enumeration") {
  StringSystem sys = growth();
  for (int depth = 1; depth <= 6; ++depth) {
    MultiwayGraph mw =
        evolve(sys, {std::any(std::string("1"))}, depth, MultiwayMode::Evolution);
    CHECK(path_weights(mw) == brute_paths(mw));
  }
}

TEST_CASE("causal edges are exactly the element-id overlaps") {
  StringSystem sys = growth();
  MultiwayGraph mw = evolve(sys, {std::any(std::string("1"))}, 4, MultiwayMode::Evolution);
  CausalGraph cg = causal_graph(mw);
  REQUIRE(cg.n == int(mw.events.size()));
  // each element is attributed to its first producing event (events that
  // rediscover an existing state reuse that state's element ids)
  std::map<std::int64_t, int> producer;
  for (int a = 0; a < int(mw.events.size()); ++a)
    for (auto x : mw.events[a].out_ids) producer.emplace(x, a);
  std::set<std::pair<int, int>> expected;
  for (int b = 0; b < int(mw.events.size()); ++b)
    for (auto x : mw.events[b].in_ids) {
      auto it = producer.find(x);
      if (it != producer.end() && it->second != b) expected.insert({it->second, b});
    }
  std::set<std::pair<int, int>> got(cg.edges.begin(), cg.edges.end());
  CHECK(got == expected);
}

TEST_CASE("transitive reduction preserves reachability and is minimal") {
  StringSystem sys = growth();
  MultiwayGraph mw = evolve(sys, {std::any(std::string("1"))}, 4, MultiwayMode::Evolution);
  CausalGraph full = causal_graph(mw, false);
  CausalGraph red = causal_graph(mw, true);
  auto reach = [](const CausalGraph& g) {
    std::vector<std::set<int>> r(g.n);
    auto adj = g.adjacency();
    std::function<void(int, int)> dfs = [&](int start, int v) {
      for (int w : adj[v])
        if (r[start].insert(w).second) dfs(start, w);
    };
    for (int v = 0; v < g.n; ++v) dfs(v, v);
    return r;
  };
  auto rf = reach(full), rr = reach(red);
  CHECK(rf == rr);
  CHECK(red.edges.size() <= full.edges.size());
  // minimality: no kept edge is implied by a longer path
  auto adj = red.adjacency();
  for (auto [a, b] : red.edges) {
    bool implied = false;
    for (int mid : adj[a])
      if (mid != b && rr[mid].count(b)) implied = true;
    CHECK(!implied);
  }
}

TEST_CASE("branchial edges match the common-ancestor definition") {
  StringSystem sys = growth();
  MultiwayGraph mw = evolve(sys, {std::any(std::string("1"))}, 4, MultiwayMode::Evolution);
  auto in = mw.in_edges();
  auto ancestors_within = [&](int v, int window) {
    std::set<int> anc;
    std::vector<int> frontier{v};
    for (int d = 0; d < window; ++d) {
      std::vector<int> next;
      for (int x : frontier)
        for (int p : in[x])
          if (anc.insert(p).second) next.push_back(p);
      frontier = next;
    }
    return anc;
  };
  for (int window : {1, 2}) {
    BranchialGraph bg = branchial(mw, 4, window);
    std::set<std::pair<int, int>> expected;
    auto sl = mw.slice(4);
    for (std::size_t i = 0; i < sl.size(); ++i)
      for (std::size_t j = i + 1; j < sl.size(); ++j) {
        auto a = ancestors_within(sl[i], window);
        auto b = ancestors_within(sl[j], window);
        bool common = false;
        for (int x : a)
          if (b.count(x)) common = true;
        if (common)
          expected.insert({std::min(sl[i], sl[j]), std::max(sl[i], sl[j])});
      }
    std::set<std::pair<int, int>> got;
    for (auto [a, b] : bg.edges) got.insert({std::min(a, b), std::max(a, b)});
    CHECK(got == expected);
  }
}

TEST_CASE("resource caps throw the dedicated error") {
  StringSystem sys = growth();
  EngineConfig cfg;
  cfg.max_states = 5;
  CHECK_THROWS_AS(
      (void)evolve(sys, {std::any(std::string("1"))}, 8, MultiwayMode::Evolution, cfg),
      ResourceCapError);
  EngineConfig cfg2;
  cfg2.max_events = 3;
  CHECK_THROWS_AS(
      (void)evolve(sys, {std::any(std::string("1"))}, 8, MultiwayMode::Evolution, cfg2),
      ResourceCapError);
}

TEST_CASE("worker count never changes exported artifacts") {
  StringSystem sys = growth();
  SetSystem sets({parse_set_rule("{{x,y},{z,y}}->{{x,w},{y,w},{z,w}}")});
  for (int mode = 0; mode < 2; ++mode) {
    std::vector<std::string> mjson, mdot, cjson, bdot;
    for (int workers : {1, 4, 8}) {
      EngineConfig cfg;
      cfg.workers = workers;
      MultiwayGraph mw = evolve(sys, {std::any(std::string("1"))}, 5,
                                mode ? MultiwayMode::States : MultiwayMode::Evolution, cfg);
      mjson.push_back(multiway_json(mw, cfg, sys.name(), &sys));
      mdot.push_back(multiway_dot(mw, &sys));
      cjson.push_back(causal_json(mw, causal_graph(mw), &sys));
      int t = std::min(5, mw.max_generation());
      bdot.push_back(branchial_dot(mw, branchial(mw, t)));
    }
    for (int i = 1; i < 3; ++i) {
      CHECK(mjson[i] == mjson[0]);
      CHECK(mdot[i] == mdot[0]);
      CHECK(cjson[i] == cjson[0]);
      CHECK(bdot[i] == bdot[0]);
    }
  }
}

TEST_CASE("multiple initial conditions become multiple roots") {
  StringSystem sys = growth();
  MultiwayGraph mw = evolve(sys, {std::any(std::string("1")), std::any(std::string("0"))},
                            2, MultiwayMode::States);
  CHECK(mw.roots.size() == 2);
  CHECK(mw.states[mw.roots[0]].key != mw.states[mw.roots[1]].key);
}
