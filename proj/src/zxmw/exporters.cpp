#include "exporters.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include <nlohmann/json.hpp>

namespace zxmw {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex8(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(8, '0');
  for (int i = 7; i >= 0; --i) {
    s[i] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// state order: (generation, key, index); returns sorted index -> state index
std::vector<int> state_order(const MultiwayGraph& mw) {
  std::vector<int> order(mw.states.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const MWState& x = mw.states[a];
    const MWState& y = mw.states[b];
    if (x.generation != y.generation) return x.generation < y.generation;
    if (x.key != y.key) return x.key < y.key;
    return a < b;
  });
  return order;
}

std::vector<int> position_of(const std::vector<int>& order) {
  std::vector<int> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = int(i);
  return pos;
}

struct EventRow {
  int from, to, rule_id;
  std::string label, match;
  int orig;
};

std::vector<EventRow> event_rows(const MultiwayGraph& mw, const std::vector<int>& pos,
                                 const RewriteSystem* sys) {
  std::vector<EventRow> rows;
  for (std::size_t e = 0; e < mw.events.size(); ++e) {
    const MWEvent& ev = mw.events[e];
    rows.push_back({pos[ev.input_state], pos[ev.output_state], ev.rule_id,
                    sys ? sys->rule_label(ev.rule_id) : std::to_string(ev.rule_id),
                    ev.match_desc, int(e)});
  }
  std::sort(rows.begin(), rows.end(), [](const EventRow& a, const EventRow& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    if (a.rule_id != b.rule_id) return a.rule_id < b.rule_id;
    if (a.match != b.match) return a.match < b.match;
    return a.orig < b.orig;
  });
  return rows;
}

}  // namespace

std::string dot_label(const std::string& text) {
  const std::size_t limit = 64;
  if (text.size() <= limit) return text;
  std::size_t cut = limit;
  // do not split a UTF-8 sequence
  while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xc0) == 0x80) --cut;
  return text.substr(0, cut) + "#" + hex8(fnv1a(text));
}

std::string multiway_dot(const MultiwayGraph& mw, const RewriteSystem* sys) {
  std::vector<int> order = state_order(mw);
  std::vector<int> pos = position_of(order);
  std::ostringstream os;
  os << "digraph multiway {\n  rankdir=TB;\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const MWState& s = mw.states[order[i]];
    os << "  s" << i << " [label=\"" << dot_escape(dot_label(s.key)) << "\"];\n";
  }
  for (const auto& row : event_rows(mw, pos, sys))
    os << "  s" << row.from << " -> s" << row.to << " [label=\""
       << dot_escape(dot_label(row.label)) << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string causal_dot(const MultiwayGraph& mw, const CausalGraph& cg,
                       const RewriteSystem* sys) {
  std::ostringstream os;
  os << "digraph causal {\n  rankdir=TB;\n";
  for (int e = 0; e < cg.n; ++e) {
    std::string label = std::to_string(e);
    if (e < int(mw.events.size())) {
      const MWEvent& ev = mw.events[e];
      label = (sys ? sys->rule_label(ev.rule_id) : std::to_string(ev.rule_id)) + "@" +
              ev.match_desc;
    }
    os << "  e" << e << " [label=\"" << dot_escape(dot_label(label)) << "\"];\n";
  }
  std::vector<std::pair<int, int>> edges = cg.edges;
  std::sort(edges.begin(), edges.end());
  for (const auto& [a, b] : edges) os << "  e" << a << " -> e" << b << ";\n";
  os << "}\n";
  return os.str();
}

std::string branchial_dot(const MultiwayGraph& mw, const BranchialGraph& bg) {
  // vertices sorted by canonical key
  std::vector<int> verts = bg.vertices;
  std::sort(verts.begin(), verts.end(), [&](int a, int b) {
    if (mw.states[a].key != mw.states[b].key) return mw.states[a].key < mw.states[b].key;
    return a < b;
  });
  std::vector<int> pos(mw.states.size(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = int(i);
  std::ostringstream os;
  os << "graph branchial {\n";
  for (std::size_t i = 0; i < verts.size(); ++i)
    os << "  b" << i << " [label=\"" << dot_escape(dot_label(mw.states[verts[i]].key))
       << "\"];\n";
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, b] : bg.edges) {
    int x = pos[a], y = pos[b];
    edges.emplace_back(std::min(x, y), std::max(x, y));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [a, b] : edges) os << "  b" << a << " -- b" << b << ";\n";
  os << "}\n";
  return os.str();
}

std::string multiway_json(const MultiwayGraph& mw, const EngineConfig& cfg,
                          const std::string& system_name, const RewriteSystem* sys) {
  std::vector<int> order = state_order(mw);
  std::vector<int> pos = position_of(order);
  nlohmann::json j;
  j["system"] = system_name;
  j["mode"] = mw.mode == MultiwayMode::States ? "states" : "evolution";
  j["steps"] = mw.steps;
  j["config"] = {{"max_states", cfg.max_states},
                 {"max_events", cfg.max_events},
                 {"branchial_window", cfg.branchial_window},
                 {"foliation", "generation"}};
  j["roots"] = nlohmann::json::array();
  {
    std::vector<int> roots;
    for (int r : mw.roots) roots.push_back(pos[r]);
    std::sort(roots.begin(), roots.end());
    for (int r : roots) j["roots"].push_back(r);
  }
  j["states"] = nlohmann::json::array();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const MWState& s = mw.states[order[i]];
    j["states"].push_back(
        {{"id", int(i)}, {"key", s.key}, {"generation", s.generation}});
  }
  j["events"] = nlohmann::json::array();
  for (const auto& row : event_rows(mw, pos, sys))
    j["events"].push_back({{"from", row.from},
                           {"to", row.to},
                           {"rule", row.rule_id},
                           {"label", row.label},
                           {"match", row.match}});
  return j.dump(2) + "\n";
}

std::string causal_json(const MultiwayGraph& mw, const CausalGraph& cg,
                        const RewriteSystem* sys) {
  nlohmann::json j;
  j["events"] = nlohmann::json::array();
  for (int e = 0; e < cg.n; ++e) {
    nlohmann::json row;
    row["id"] = e;
    if (e < int(mw.events.size())) {
      const MWEvent& ev = mw.events[e];
      row["rule"] = ev.rule_id;
      row["label"] = sys ? sys->rule_label(ev.rule_id) : std::to_string(ev.rule_id);
      row["match"] = ev.match_desc;
      row["generation"] = ev.generation;
    }
    j["events"].push_back(std::move(row));
  }
  std::vector<std::pair<int, int>> edges = cg.edges;
  std::sort(edges.begin(), edges.end());
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : edges) j["edges"].push_back({a, b});
  return j.dump(2) + "\n";
}

std::string branchial_json(const MultiwayGraph& mw, const BranchialGraph& bg, int slice,
                           int window) {
  std::vector<int> verts = bg.vertices;
  std::sort(verts.begin(), verts.end(), [&](int a, int b) {
    if (mw.states[a].key != mw.states[b].key) return mw.states[a].key < mw.states[b].key;
    return a < b;
  });
  std::vector<int> pos(mw.states.size(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) pos[verts[i]] = int(i);
  nlohmann::json j;
  j["slice"] = slice;
  j["window"] = window;
  j["states"] = nlohmann::json::array();
  for (int v : verts) j["states"].push_back(mw.states[v].key);
  std::vector<std::pair<int, int>> edges;
  for (const auto& [a, b] : bg.edges) {
    int x = pos[a], y = pos[b];
    edges.emplace_back(std::min(x, y), std::max(x, y));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : edges) j["edges"].push_back({a, b});
  return j.dump(2) + "\n";
}

}  // namespace zxmw
