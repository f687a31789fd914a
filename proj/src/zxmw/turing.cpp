#include "turing.hpp"

#include <sstream>
#include <stdexcept>

namespace zxmw {

TMState tm_canonical(const TMState& s) {
  TMState out = s;
  if (out.tape.empty()) {
    out.tape.push_back(0);
    out.head = 0;
  }
  if (out.head < 0 || out.head >= int(out.tape.size()))
    throw std::invalid_argument("tm head outside tape window");
  int lo = 0, hi = int(out.tape.size()) - 1;
  while (lo < out.head && out.tape[lo] == 0) ++lo;
  while (hi > out.head && out.tape[hi] == 0) --hi;
  TMState trimmed;
  trimmed.state = out.state;
  trimmed.tape.assign(out.tape.begin() + lo, out.tape.begin() + hi + 1);
  trimmed.head = out.head - lo;
  return trimmed;
}

std::string tm_key(const TMState& s) {
  TMState c = tm_canonical(s);
  std::ostringstream os;
  os << "q" << c.state << "@" << c.head << ":";
  for (std::size_t i = 0; i < c.tape.size(); ++i) {
    if (i) os << ",";
    os << c.tape[i];
  }
  return os.str();
}

TMSystem::TMSystem(std::vector<TMRule> rules, std::string name)
    : rules_(std::move(rules)), name_(std::move(name)) {}

std::any TMSystem::canonical(const std::any& state) const {
  return tm_canonical(std::any_cast<const TMState&>(state));
}

std::string TMSystem::key(const std::any& state) const {
  return tm_key(std::any_cast<const TMState&>(state));
}

std::string TMSystem::rule_label(int rule_id) const {
  const TMRule& r = rules_.at(rule_id);
  const char* dir = r.move < 0 ? "L" : (r.move > 0 ? "R" : "S");
  std::ostringstream os;
  os << "(" << r.state << "," << r.color << ")->(" << r.next_state << "," << r.write
     << "," << dir << ")";
  return os.str();
}

std::vector<Successor> TMSystem::successors(const std::any& state) const {
  const auto& s = std::any_cast<const TMState&>(state);
  std::vector<Successor> out;
  for (std::size_t ri = 0; ri < rules_.size(); ++ri) {
    const TMRule& r = rules_[ri];
    int reading = s.tape.empty() ? 0 : s.tape[s.head];
    if (r.state != s.state || r.color != reading) continue;
    TMState next = s;
    if (next.tape.empty()) {
      next.tape.push_back(0);
      next.head = 0;
    }
    next.state = r.next_state;
    next.tape[next.head] = r.write;
    next.head += r.move;
    if (next.head < 0) {
      next.tape.insert(next.tape.begin(), 0);
      next.head = 0;
    } else if (next.head >= int(next.tape.size())) {
      next.tape.push_back(0);
    }
    Successor succ;
    TMState canon = tm_canonical(next);
    succ.key = tm_key(canon);
    succ.state = std::move(canon);
    succ.rule_id = int(ri);
    succ.match_desc = rule_label(int(ri));
    out.push_back(std::move(succ));
  }
  return out;
}

TMSystem tm_rulial(int states, int colors, bool include_stay) {
  if (states < 1 || colors < 1)
    throw std::invalid_argument("tm_rulial requires states, colors >= 1");
  std::vector<TMRule> rules;
  for (int s = 1; s <= states; ++s)
    for (int c = 0; c < colors; ++c)
      for (int s2 = 1; s2 <= states; ++s2)
        for (int c2 = 0; c2 < colors; ++c2)
          for (int d : include_stay ? std::vector<int>{-1, 0, 1} : std::vector<int>{-1, 1})
            rules.push_back(TMRule{s, c, s2, c2, d});
  std::ostringstream name;
  name << "tm-rulial-" << states << "x" << colors;
  return TMSystem(std::move(rules), name.str());
}

}  // namespace zxmw
