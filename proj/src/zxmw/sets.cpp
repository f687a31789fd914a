#include "sets.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "canon.hpp"

namespace zxmw {

namespace {

std::vector<int> vertices_of(const SetState& s) {
  std::set<int> vs;
  for (const auto& rel : s.relations)
    for (int v : rel) vs.insert(v);
  return {vs.begin(), vs.end()};
}

}  // namespace

CanonicalSetState canonicalize_set(const SetState& s) {
  std::vector<int> verts = vertices_of(s);
  std::map<int, int> index;
  for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = int(i);

  Structure st;
  st.n = int(verts.size());
  st.colors.assign(st.n, 0);
  for (const auto& rel : s.relations) {
    std::vector<int> tuple;
    tuple.reserve(rel.size());
    for (int v : rel) tuple.push_back(index[v]);
    st.facts.emplace_back(int(rel.size()), std::move(tuple));
  }
  CanonResult canon = canonical_labeling(st);

  std::vector<std::pair<std::vector<int>, int>> tagged;
  tagged.reserve(s.relations.size());
  for (std::size_t i = 0; i < s.relations.size(); ++i) {
    std::vector<int> rel;
    rel.reserve(s.relations[i].size());
    for (int v : s.relations[i]) rel.push_back(canon.relabel[index[v]]);
    tagged.emplace_back(std::move(rel), int(i));
  }
  std::stable_sort(tagged.begin(), tagged.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  CanonicalSetState out;
  out.perm.resize(s.relations.size());
  for (std::size_t j = 0; j < tagged.size(); ++j) {
    out.state.relations.push_back(tagged[j].first);
    out.perm[tagged[j].second] = int(j);
  }
  return out;
}

std::string set_key(const SetState& s) {
  std::ostringstream os;
  for (const auto& rel : s.relations) {
    os << "{";
    for (std::size_t i = 0; i < rel.size(); ++i) {
      if (i) os << ",";
      os << rel[i];
    }
    os << "}";
  }
  return os.str();
}

namespace {

struct SetParser {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  void expect(char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c)
      throw std::invalid_argument("set syntax: expected '" + std::string(1, c) + "' in " + s);
    ++pos;
  }
  bool peek(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }
  std::string atom() {
    skip_ws();
    std::string out;
    while (pos < s.size()) {
      char c = s[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
        out += c;
        ++pos;
      } else {
        break;
      }
    }
    if (out.empty()) throw std::invalid_argument("set syntax: expected atom in " + s);
    return out;
  }
  std::vector<std::vector<std::string>> relation_list() {
    expect('{');
    std::vector<std::vector<std::string>> rels;
    if (!peek('}')) {
      while (true) {
        expect('{');
        std::vector<std::string> rel;
        while (true) {
          rel.push_back(atom());
          if (peek(',')) {
            ++pos;
            continue;
          }
          break;
        }
        expect('}');
        rels.push_back(std::move(rel));
        if (peek(',')) {
          ++pos;
          continue;
        }
        break;
      }
    }
    expect('}');
    return rels;
  }
};

}  // namespace

SetRule parse_set_rule(const std::string& text) {
  std::size_t arrow = text.find("->");
  if (arrow == std::string::npos)
    throw std::invalid_argument("set rule missing '->': " + text);
  std::string lhs = text.substr(0, arrow), rhs = text.substr(arrow + 2);
  SetParser pl{lhs}, pr{rhs};
  SetRule rule{pl.relation_list(), pr.relation_list()};
  if (rule.lhs.empty()) throw std::invalid_argument("set rule with empty LHS");
  return rule;
}

SetState parse_set_state(const std::string& text) {
  SetParser p{text};
  SetState state;
  for (const auto& rel : p.relation_list()) {
    std::vector<int> r;
    for (const auto& a : rel) {
      std::size_t used = 0;
      int v = std::stoi(a, &used);
      if (used != a.size())
        throw std::invalid_argument("set state atoms must be integers: " + a);
      r.push_back(v);
    }
    state.relations.push_back(std::move(r));
  }
  return state;
}

std::vector<SetMatch> find_set_matches(const SetRule& rule, const SetState& state) {
  std::vector<SetMatch> out;
  std::set<std::string> seen;
  std::vector<int> chosen;
  std::vector<bool> used(state.relations.size(), false);
  std::map<std::string, int> binding;

  std::function<void(std::size_t)> go = [&](std::size_t pi) {
    if (pi == rule.lhs.size()) {
      SetMatch m{chosen, binding};
      std::sort(m.relation_indices.begin(), m.relation_indices.end());
      std::ostringstream os;
      for (int i : m.relation_indices) os << i << ";";
      for (const auto& [k, v] : m.binding) os << k << "=" << v << ";";
      if (seen.insert(os.str()).second) out.push_back(std::move(m));
      return;
    }
    const auto& pat = rule.lhs[pi];
    for (std::size_t r = 0; r < state.relations.size(); ++r) {
      if (used[r] || state.relations[r].size() != pat.size()) continue;
      std::vector<std::pair<std::string, int>> added;
      bool ok = true;
      for (std::size_t k = 0; k < pat.size(); ++k) {
        auto it = binding.find(pat[k]);
        if (it == binding.end()) {
          binding.emplace(pat[k], state.relations[r][k]);
          added.emplace_back(pat[k], state.relations[r][k]);
        } else if (it->second != state.relations[r][k]) {
          ok = false;
          break;
        }
      }
      if (ok) {
        used[r] = true;
        chosen.push_back(int(r));
        go(pi + 1);
        chosen.pop_back();
        used[r] = false;
      }
      for (const auto& [k, v] : added) binding.erase(k);
    }
  };
  go(0);
  return out;
}

SetSystem::SetSystem(std::vector<SetRule> rules, std::string name)
    : rules_(std::move(rules)), name_(std::move(name)) {}

std::any SetSystem::canonical(const std::any& state) const {
  return canonicalize_set(std::any_cast<const SetState&>(state)).state;
}

std::string SetSystem::key(const std::any& state) const {
  return set_key(std::any_cast<const SetState&>(state));
}

int SetSystem::element_count(const std::any& state) const {
  return int(std::any_cast<const SetState&>(state).relations.size());
}

std::string SetSystem::rule_label(int rule_id) const {
  const auto& rule = rules_.at(rule_id);
  auto fmt = [](const std::vector<std::vector<std::string>>& rels) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < rels.size(); ++i) {
      if (i) os << ",";
      os << "{";
      for (std::size_t k = 0; k < rels[i].size(); ++k) {
        if (k) os << ",";
        os << rels[i][k];
      }
      os << "}";
    }
    os << "}";
    return os.str();
  };
  return fmt(rule.lhs) + "->" + fmt(rule.rhs);
}

std::vector<Successor> SetSystem::successors(const std::any& state) const {
  const auto& s = std::any_cast<const SetState&>(state);
  std::set<int> used_verts;
  for (const auto& rel : s.relations)
    for (int v : rel) used_verts.insert(v);

  std::vector<Successor> out;
  for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
    const auto& rule = rules_[ri];
    for (const auto& m : find_set_matches(rule, s)) {
      // fresh vertices: lowest unused naturals, in RHS first-appearance order
      std::map<std::string, int> binding = m.binding;
      int next_fresh = 0;
      auto alloc = [&] {
        while (used_verts.count(next_fresh)) ++next_fresh;
        return next_fresh++;
      };
      SetState raw;
      std::vector<int> origin;  // input relation index or -1
      std::set<int> consumed(m.relation_indices.begin(), m.relation_indices.end());
      for (std::size_t i = 0; i < s.relations.size(); ++i) {
        if (consumed.count(int(i))) continue;
        raw.relations.push_back(s.relations[i]);
        origin.push_back(int(i));
      }
      for (const auto& pat : rule.rhs) {
        std::vector<int> rel;
        for (const auto& name : pat) {
          auto it = binding.find(name);
          if (it == binding.end()) it = binding.emplace(name, alloc()).first;
          rel.push_back(it->second);
        }
        raw.relations.push_back(std::move(rel));
        origin.push_back(-1);
      }
      CanonicalSetState canon = canonicalize_set(raw);
      Successor succ;
      succ.key = set_key(canon.state);
      succ.state = std::move(canon.state);
      succ.rule_id = int(ri);
      {
        std::ostringstream os;
        for (std::size_t i = 0; i < m.relation_indices.size(); ++i) {
          if (i) os << ",";
          os << m.relation_indices[i];
        }
        succ.match_desc = "@" + os.str();
      }
      succ.consumed = m.relation_indices;
      succ.inherited_from.assign(raw.relations.size(), -1);
      for (std::size_t j = 0; j < raw.relations.size(); ++j)
        succ.inherited_from[canon.perm[j]] = origin[j];
      out.push_back(std::move(succ));
    }
  }
  return out;
}

}  // namespace zxmw
