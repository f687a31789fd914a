#include "termsys.hpp"

#include <sstream>
#include <stdexcept>

namespace zxmw {

TermSystem::TermSystem(std::vector<Rule> rules, std::string name)
    : rules_(std::move(rules)), name_(std::move(name)) {}

TermSystem TermSystem::from_text(const std::vector<std::string>& rules,
                                 std::string name) {
  std::vector<Rule> parsed;
  for (const auto& text : rules) {
    std::size_t arrow = text.find(":>");
    if (arrow == std::string::npos)
      throw std::invalid_argument("term rule missing ':>': " + text);
    auto lhs = parse_term(text.substr(0, arrow));
    auto rhs = parse_term(text.substr(arrow + 2));
    if (!lhs || !rhs) throw std::invalid_argument("unparsable term rule: " + text);
    parsed.emplace_back(*lhs, *rhs);
  }
  return TermSystem(std::move(parsed), std::move(name));
}

std::any TermSystem::canonical(const std::any& state) const {
  return std::any_cast<TermPtr>(state);
}

std::string TermSystem::key(const std::any& state) const {
  return std::any_cast<const TermPtr&>(state)->str();
}

std::string TermSystem::rule_label(int rule_id) const {
  const auto& [lhs, rhs] = rules_.at(rule_id);
  return lhs->str() + ":>" + rhs->str();
}

std::vector<Successor> TermSystem::successors(const std::any& state) const {
  const auto& t = std::any_cast<const TermPtr&>(state);
  std::vector<Successor> out;
  for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
    const auto& [lhs, rhs] = rules_[ri];
    for (const auto& [pos, binding] : find_matches(lhs, t)) {
      Successor succ;
      TermPtr next = rewrite_at(t, pos, lhs, rhs, binding);
      succ.key = next->str();
      succ.state = std::move(next);
      succ.rule_id = int(ri);
      std::ostringstream os;
      os << "@";
      for (std::size_t i = 0; i < pos.size(); ++i) {
        if (i) os << ".";
        os << pos[i];
      }
      succ.match_desc = os.str();
      out.push_back(std::move(succ));
    }
  }
  return out;
}

}  // namespace zxmw
