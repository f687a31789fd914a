#include "engine.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "graphiso.hpp"

namespace zxmw {

std::vector<std::vector<int>> MultiwayGraph::out_edges() const {
  std::vector<std::vector<int>> adj(states.size());
  for (const auto& e : events) adj[e.input_state].push_back(e.output_state);
  return adj;
}

std::vector<std::vector<int>> MultiwayGraph::in_edges() const {
  std::vector<std::vector<int>> adj(states.size());
  for (const auto& e : events) adj[e.output_state].push_back(e.input_state);
  return adj;
}

int MultiwayGraph::max_generation() const {
  int g = 0;
  for (const auto& s : states) g = std::max(g, s.generation);
  return g;
}

std::vector<int> MultiwayGraph::slice(int t) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].generation == t) out.push_back(int(i));
  return out;
}

int MultiwayGraph::find_state(const std::string& key) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i].key == key) return int(i);
  return -1;
}

namespace {

std::string vertex_key(MultiwayMode mode, const std::string& key, int generation) {
  if (mode == MultiwayMode::States) return key;
  return std::to_string(generation) + "|" + key;
}

}  // namespace

MultiwayGraph evolve(const RewriteSystem& system, const std::vector<std::any>& init,
                     int steps, MultiwayMode mode, const EngineConfig& cfg) {
  if (steps < 0) throw std::invalid_argument("steps must be >= 0");
  MultiwayGraph mw;
  mw.mode = mode;
  mw.steps = steps;

  std::unordered_map<std::string, int> index;  // vertex key -> state index
  std::int64_t next_element_id = 0;

  auto add_state = [&](const std::any& canon, const std::string& key, int generation,
                       std::vector<std::int64_t> ids) {
    if (mw.states.size() >= cfg.max_states)
      throw ResourceCapError("state cap exceeded (" + std::to_string(cfg.max_states) + ")");
    mw.states.push_back(MWState{key, canon, generation, std::move(ids)});
    return int(mw.states.size() - 1);
  };

  std::vector<int> frontier;
  for (const auto& s0 : init) {
    std::any canon = system.canonical(s0);
    std::string key = system.key(canon);
    std::string vk = vertex_key(mode, key, 0);
    if (index.count(vk)) continue;  // duplicate initial state
    int ne = system.element_count(canon);
    std::vector<std::int64_t> ids(ne);
    for (auto& id : ids) id = next_element_id++;
    int idx = add_state(canon, key, 0, std::move(ids));
    index.emplace(vk, idx);
    mw.roots.push_back(idx);
    frontier.push_back(idx);
  }

  for (int gen = 0; gen < steps && !frontier.empty(); ++gen) {
    // Expand the frontier in parallel; the merge below walks results in
    // frontier order, so the outcome is independent of worker count.
    std::vector<std::vector<Successor>> results(frontier.size());
    int workers = std::max(1, cfg.workers);
    if (workers == 1 || frontier.size() < 2) {
      for (std::size_t i = 0; i < frontier.size(); ++i)
        results[i] = system.successors(mw.states[frontier[i]].value);
    } else {
      std::atomic<std::size_t> cursor{0};
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(workers);
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          try {
            for (std::size_t i = cursor.fetch_add(1); i < frontier.size();
                 i = cursor.fetch_add(1))
              results[i] = system.successors(mw.states[frontier[i]].value);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }

    std::vector<int> next_frontier;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      int src = frontier[i];
      for (const auto& succ : results[i]) {
        std::string vk = vertex_key(mode, succ.key, gen + 1);
        auto it = index.find(vk);
        int dst;
        bool fresh_vertex = false;
        if (it != index.end()) {
          dst = it->second;
        } else {
          std::vector<std::int64_t> ids;
          if (!succ.inherited_from.empty() || system.element_count(succ.state) == 0) {
            ids.reserve(succ.inherited_from.size());
            for (int from : succ.inherited_from) {
              if (from >= 0 && std::size_t(from) < mw.states[src].element_ids.size())
                ids.push_back(mw.states[src].element_ids[from]);
              else
                ids.push_back(next_element_id++);
            }
          } else {
            int ne = system.element_count(succ.state);
            ids.resize(ne);
            for (auto& id : ids) id = next_element_id++;
          }
          dst = add_state(succ.state, succ.key, gen + 1, std::move(ids));
          index.emplace(vk, dst);
          fresh_vertex = true;
        }
        if (mw.events.size() >= cfg.max_events)
          throw ResourceCapError("event cap exceeded (" + std::to_string(cfg.max_events) + ")");
        MWEvent ev;
        ev.rule_id = succ.rule_id;
        ev.input_state = src;
        ev.output_state = dst;
        ev.match_desc = succ.match_desc;
        ev.generation = gen;
        for (int c : succ.consumed)
          if (c >= 0 && std::size_t(c) < mw.states[src].element_ids.size())
            ev.in_ids.push_back(mw.states[src].element_ids[c]);
        for (std::size_t p = 0; p < succ.inherited_from.size(); ++p)
          if (succ.inherited_from[p] < 0)
            ev.out_ids.push_back(mw.states[dst].element_ids[p]);
        mw.events.push_back(std::move(ev));
        if (fresh_vertex) next_frontier.push_back(dst);
      }
    }
    frontier = std::move(next_frontier);
  }
  return mw;
}

std::vector<std::vector<int>> CausalGraph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) adj[u].push_back(v);
  return adj;
}

CausalGraph causal_graph(const MultiwayGraph& mw, bool transitive_reduction) {
  CausalGraph cg;
  cg.n = int(mw.events.size());
  // index: element id -> producing event
  std::unordered_map<std::int64_t, int> producer;
  for (std::size_t e = 0; e < mw.events.size(); ++e)
    for (auto id : mw.events[e].out_ids) producer.emplace(id, int(e));
  std::set<std::pair<int, int>> edge_set;
  for (std::size_t b = 0; b < mw.events.size(); ++b)
    for (auto id : mw.events[b].in_ids) {
      auto it = producer.find(id);
      if (it != producer.end() && it->second != int(b))
        edge_set.emplace(it->second, int(b));
    }
  cg.edges.assign(edge_set.begin(), edge_set.end());
  if (transitive_reduction && cg.n > 0) {
    auto adj = cg.adjacency();
    // reachability by repeated DFS; graphs here are small
    auto reaches = [&](int from, int to, int skip_direct) {
      std::vector<int> stack{from};
      std::vector<bool> seen(cg.n, false);
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[v]) {
          if (v == from && w == to && skip_direct) continue;
          if (w == to) return true;
          if (!seen[w]) {
            seen[w] = true;
            stack.push_back(w);
          }
        }
      }
      return false;
    };
    std::vector<std::pair<int, int>> reduced;
    for (auto [u, v] : cg.edges)
      if (!reaches(u, v, 1)) reduced.emplace_back(u, v);
    cg.edges = std::move(reduced);
  }
  return cg;
}

std::pair<std::set<int>, std::set<int>> causal_cones(const CausalGraph& cg, int event) {
  if (event < 0 || event >= cg.n) throw std::invalid_argument("unknown event");
  std::vector<std::vector<int>> out(cg.n), in(cg.n);
  for (auto [u, v] : cg.edges) {
    out[u].push_back(v);
    in[v].push_back(u);
  }
  auto closure = [&](const std::vector<std::vector<int>>& adj) {
    std::set<int> seen;
    std::vector<int> stack{event};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (seen.insert(w).second) stack.push_back(w);
    }
    seen.erase(event);
    return seen;
  };
  return {closure(out), closure(in)};
}

BranchialGraph branchial(const MultiwayGraph& mw, int t, int window) {
  if (t < 0 || t > mw.max_generation())
    throw std::invalid_argument("branchial slice out of range");
  BranchialGraph bg;
  bg.vertices = mw.slice(t);
  auto in_adj = mw.in_edges();
  // ancestors within `window` slices, per vertex
  std::vector<std::set<int>> anc(bg.vertices.size());
  for (std::size_t i = 0; i < bg.vertices.size(); ++i) {
    std::vector<int> layer{bg.vertices[i]};
    for (int d = 0; d < window; ++d) {
      std::vector<int> prev;
      for (int v : layer)
        for (int p : in_adj[v])
          if (anc[i].insert(p).second) prev.push_back(p);
      layer = std::move(prev);
    }
  }
  for (std::size_t i = 0; i < bg.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < bg.vertices.size(); ++j) {
      bool common = false;
      for (int p : anc[i])
        if (anc[j].count(p)) {
          common = true;
          break;
        }
      if (common) bg.edges.emplace_back(bg.vertices[i], bg.vertices[j]);
    }
  return bg;
}

std::vector<std::uint64_t> path_weights(const MultiwayGraph& mw) {
  if (mw.mode != MultiwayMode::Evolution)
    throw std::invalid_argument("path weights require evolution (DAG) mode");
  std::vector<std::uint64_t> w(mw.states.size(), 0);
  for (int r : mw.roots) w[r] = 1;
  // layered DAG: process by generation
  std::vector<int> order(mw.states.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return mw.states[a].generation < mw.states[b].generation;
  });
  auto out = mw.out_edges();
  for (int v : order)
    for (const auto& e : mw.events)
      if (e.input_state == v) w[e.output_state] += w[v];
  return w;
}

ConfluenceReport check_confluence(const RewriteSystem& system, const std::any& init,
                                  int depth, const EngineConfig& cfg) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  ConfluenceReport rep{ConfluenceReport::Verdict::Confluent, "", "", "", 0};
  MultiwayGraph mw;
  try {
    mw = evolve(system, {init}, depth, MultiwayMode::States, cfg);
  } catch (const ResourceCapError&) {
    rep.verdict = ConfluenceReport::Verdict::Inconclusive;
    return rep;
  }
  // key -> set of keys reachable within `depth` steps
  std::unordered_map<std::string, std::set<std::string>> closures;
  auto closure_of = [&](const std::any& state, const std::string& key) {
    auto it = closures.find(key);
    if (it != closures.end()) return it->second;
    MultiwayGraph sub = evolve(system, {state}, depth, MultiwayMode::States, cfg);
    std::set<std::string> keys;
    for (const auto& s : sub.states) keys.insert(s.key);
    closures.emplace(key, keys);
    return keys;
  };
  for (const auto& st : mw.states) {
    auto succs = system.successors(st.value);
    for (std::size_t i = 0; i < succs.size(); ++i)
      for (std::size_t j = i + 1; j < succs.size(); ++j) {
        if (succs[i].key == succs[j].key) continue;
        rep.pairs_checked++;
        auto ca = closure_of(succs[i].state, succs[i].key);
        auto cb = closure_of(succs[j].state, succs[j].key);
        bool joined = false;
        for (const auto& k : ca)
          if (cb.count(k)) {
            joined = true;
            break;
          }
        if (!joined) {
          rep.verdict = ConfluenceReport::Verdict::Counterexample;
          rep.diverging_state = st.key;
          rep.branch_a = succs[i].key;
          rep.branch_b = succs[j].key;
          return rep;
        }
      }
  }
  return rep;
}

namespace {

struct PathEvent {
  std::vector<std::int64_t> in_ids, out_ids;
};

void enumerate_paths(const RewriteSystem& system, const std::any& state,
                     std::vector<std::int64_t>& ids, std::int64_t& next_id, int depth,
                     std::vector<PathEvent>& current,
                     std::vector<std::vector<PathEvent>>& out, std::size_t max_paths) {
  if (out.size() >= max_paths) return;
  auto succs = system.successors(state);
  if (depth == 0 || succs.empty()) {
    out.push_back(current);
    return;
  }
  for (const auto& s : succs) {
    PathEvent ev;
    std::vector<std::int64_t> new_ids;
    new_ids.reserve(s.inherited_from.size());
    for (int c : s.consumed)
      if (c >= 0 && std::size_t(c) < ids.size()) ev.in_ids.push_back(ids[c]);
    for (int from : s.inherited_from) {
      if (from >= 0 && std::size_t(from) < ids.size())
        new_ids.push_back(ids[from]);
      else {
        new_ids.push_back(next_id);
        ev.out_ids.push_back(next_id);
        ++next_id;
      }
    }
    current.push_back(ev);
    std::swap(ids, new_ids);
    enumerate_paths(system, s.state, ids, next_id, depth - 1, current, out, max_paths);
    std::swap(ids, new_ids);
    current.pop_back();
    if (out.size() >= max_paths) return;
  }
}

ColoredGraph path_causal_graph(const std::vector<PathEvent>& path) {
  ColoredGraph g;
  g.n = int(path.size());
  g.directed = true;
  for (int b = 0; b < g.n; ++b)
    for (int a = 0; a < b; ++a) {
      bool dep = false;
      for (auto id : path[b].in_ids)
        if (std::find(path[a].out_ids.begin(), path[a].out_ids.end(), id) !=
            path[a].out_ids.end()) {
          dep = true;
          break;
        }
      if (dep) g.edges.emplace_back(a, b);
    }
  return g;
}

}  // namespace

CausalInvarianceReport check_causal_invariance(const RewriteSystem& system,
                                               const std::any& init, int depth,
                                               std::size_t max_paths,
                                               const EngineConfig& cfg) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  (void)cfg;
  std::any canon = system.canonical(init);
  int ne = system.element_count(canon);
  std::vector<std::int64_t> ids(ne);
  std::int64_t next_id = 0;
  for (auto& id : ids) id = next_id++;
  std::vector<PathEvent> current;
  std::vector<std::vector<PathEvent>> paths;
  enumerate_paths(system, canon, ids, next_id, depth, current, paths, max_paths + 1);

  CausalInvarianceReport rep{CausalInvarianceReport::Verdict::Invariant, paths.size()};
  bool truncated = paths.size() > max_paths;
  if (truncated) paths.resize(max_paths);
  if (paths.size() <= 1) {
    rep.verdict = truncated ? CausalInvarianceReport::Verdict::Inconclusive
                            : CausalInvarianceReport::Verdict::Invariant;
    return rep;
  }
  ColoredGraph first = path_causal_graph(paths[0]);
  for (std::size_t i = 1; i < paths.size(); ++i) {
    ColoredGraph g = path_causal_graph(paths[i]);
    if (!graphs_isomorphic(first, g)) {
      rep.verdict = CausalInvarianceReport::Verdict::Violated;
      return rep;
    }
  }
  if (truncated) rep.verdict = CausalInvarianceReport::Verdict::Inconclusive;
  return rep;
}

std::vector<std::pair<Successor, Successor>> branch_pairs(const RewriteSystem& system,
                                                          const std::any& state) {
  auto succs = system.successors(system.canonical(state));
  std::vector<std::pair<Successor, Successor>> out;
  for (std::size_t i = 0; i < succs.size(); ++i)
    for (std::size_t j = i + 1; j < succs.size(); ++j)
      if (succs[i].key != succs[j].key) out.emplace_back(succs[i], succs[j]);
  return out;
}

void CompletedSystem::add_rule(const std::any& from, const std::any& to) {
  std::any cf = base_.canonical(from);
  std::any ct = base_.canonical(to);
  added_.emplace_back(base_.key(cf), base_.key(ct));
  rules_.emplace_back(std::move(cf), std::move(ct));
}

std::vector<Successor> CompletedSystem::successors(const std::any& s) const {
  auto out = base_.successors(s);
  std::string k = base_.key(s);
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (base_.key(rules_[i].first) != k) continue;
    Successor succ;
    succ.state = rules_[i].second;
    succ.key = base_.key(rules_[i].second);
    succ.rule_id = int(base_.rule_count() + i);
    succ.match_desc = "completion";
    out.push_back(std::move(succ));
  }
  return out;
}

std::string CompletedSystem::rule_label(int rule_id) const {
  if (rule_id < int(base_.rule_count())) return base_.rule_label(rule_id);
  return "completion" + std::to_string(rule_id - int(base_.rule_count()));
}

CompletionReport complete(CompletedSystem& system, const std::vector<std::any>& init,
                          int depth, int max_rounds, bool oriented,
                          const EngineConfig& cfg) {
  CompletionReport rep;
  auto joinable = [&](const std::any& a, const std::any& b) {
    MultiwayGraph ga = evolve(system, {a}, depth, MultiwayMode::States, cfg);
    MultiwayGraph gb = evolve(system, {b}, depth, MultiwayMode::States, cfg);
    std::unordered_set<std::string> ka;
    for (const auto& s : ga.states) ka.insert(s.key);
    for (const auto& s : gb.states)
      if (ka.count(s.key)) return true;
    return false;
  };
  auto add_pair = [&](const std::any& a, const std::any& b) {
    std::string ka = system.key(system.canonical(a));
    std::string kb = system.key(system.canonical(b));
    if (oriented) {
      // orient toward the shortlex-smaller state
      bool a_smaller = ka.size() < kb.size() || (ka.size() == kb.size() && ka < kb);
      if (a_smaller)
        system.add_rule(b, a);
      else
        system.add_rule(a, b);
    } else {
      system.add_rule(a, b);
      system.add_rule(b, a);
    }
    rep.added_rules.emplace_back(ka, kb);
  };

  for (int round = 0; round < max_rounds; ++round) {
    bool changed = false;
    // root pairs (multiple initial conditions count as a divergence)
    for (std::size_t i = 0; i < init.size(); ++i)
      for (std::size_t j = i + 1; j < init.size(); ++j) {
        if (system.key(system.canonical(init[i])) == system.key(system.canonical(init[j])))
          continue;
        if (!joinable(init[i], init[j])) {
          add_pair(init[i], init[j]);
          changed = true;
        }
      }
    // branch pairs within the depth-bounded evolution
    MultiwayGraph mw = evolve(system, init, depth, MultiwayMode::States, cfg);
    for (const auto& st : mw.states) {
      for (const auto& [a, b] : branch_pairs(system, st.value)) {
        if (!joinable(a.state, b.state)) {
          add_pair(a.state, b.state);
          changed = true;
        }
      }
    }
    if (!changed) {
      rep.reached_fixpoint = true;
      break;
    }
  }
  return rep;
}

}  // namespace zxmw
