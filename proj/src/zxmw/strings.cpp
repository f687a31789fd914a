#include "strings.hpp"

#include <stdexcept>
#include <unordered_set>

namespace zxmw {

StringSystem::StringSystem(std::vector<Rule> rules, std::string name)
    : rules_(std::move(rules)), name_(std::move(name)) {
  for (const auto& [lhs, rhs] : rules_)
    if (lhs.empty()) throw std::invalid_argument("string rule with empty LHS");
}

std::any StringSystem::canonical(const std::any& state) const {
  return std::any_cast<std::string>(state);
}

std::string StringSystem::key(const std::any& state) const {
  return std::any_cast<std::string>(state);
}

int StringSystem::element_count(const std::any& state) const {
  return int(std::any_cast<const std::string&>(state).size());
}

std::vector<Successor> StringSystem::successors(const std::any& state) const {
  const auto& s = std::any_cast<const std::string&>(state);
  std::vector<Successor> out;
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    const auto& [lhs, rhs] = rules_[r];
    for (std::size_t p = 0; p + lhs.size() <= s.size(); ++p) {
      if (s.compare(p, lhs.size(), lhs) != 0) continue;
      Successor succ;
      std::string next = s.substr(0, p) + rhs + s.substr(p + lhs.size());
      succ.key = next;
      succ.state = std::move(next);
      succ.rule_id = int(r);
      succ.match_desc = "@" + std::to_string(p);
      for (std::size_t i = 0; i < lhs.size(); ++i) succ.consumed.push_back(int(p + i));
      for (std::size_t i = 0; i < p; ++i) succ.inherited_from.push_back(int(i));
      for (std::size_t i = 0; i < rhs.size(); ++i) succ.inherited_from.push_back(-1);
      for (std::size_t i = p + lhs.size(); i < s.size(); ++i)
        succ.inherited_from.push_back(int(i));
      out.push_back(std::move(succ));
    }
  }
  return out;
}

std::string StringSystem::rule_label(int rule_id) const {
  const auto& [lhs, rhs] = rules_.at(rule_id);
  return lhs + "->" + rhs;
}

std::vector<StringSystem::Rule> parse_string_rules(const std::string& text) {
  std::vector<StringSystem::Rule> rules;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find(',', pos);
    std::string part = text.substr(pos, end == std::string::npos ? end : end - pos);
    if (!part.empty()) {
      std::size_t arrow = part.find("->");
      if (arrow == std::string::npos)
        throw std::invalid_argument("rule missing '->': " + part);
      rules.emplace_back(part.substr(0, arrow), part.substr(arrow + 2));
    }
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  if (rules.empty()) throw std::invalid_argument("no rules in: " + text);
  return rules;
}

std::string negation(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c == '0')
      c = '1';
    else if (c == '1')
      c = '0';
    else
      throw std::invalid_argument("negation requires a binary string");
  }
  return out;
}

CompletenessReport check_complete_consistent(const RewriteSystem& system,
                                             const std::string& init, int depth,
                                             int maxLen, const EngineConfig& cfg) {
  MultiwayGraph mw = evolve(system, {std::any(init)}, depth, MultiwayMode::States, cfg);
  std::unordered_set<std::string> generated;
  for (const auto& st : mw.states) generated.insert(st.key);

  CompletenessReport rep;
  rep.generated = generated.size();
  // enumerate binary strings of length 1..maxLen
  for (int len = 1; len <= maxLen; ++len) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << len); ++bits) {
      std::string s(len, '0');
      for (int i = 0; i < len; ++i)
        if (bits & (std::uint64_t(1) << i)) s[i] = '1';
      std::string neg = negation(s);
      bool has_s = generated.count(s) > 0;
      bool has_n = generated.count(neg) > 0;
      if (has_s && has_n) {
        rep.inconsistent = true;
        rep.both.push_back(s);
      } else if (!has_s && !has_n) {
        rep.complete = false;
        rep.neither.push_back(s);
      }
    }
  }
  return rep;
}

}  // namespace zxmw
