#pragma once

#include <string>
#include <vector>

#include "engine.hpp"

namespace zxmw {

// Turing-machine configuration: finite tape window over colors with blank
// (color 0) extension on both sides. Canonical form trims blank margins
// except under the head.
struct TMState {
  int state = 1;             // head state, 1-based
  std::vector<int> tape;     // window; may be empty (all-blank tape)
  int head = 0;              // index into tape
};

TMState tm_canonical(const TMState& s);
std::string tm_key(const TMState& s);

struct TMRule {
  int state = 1, color = 0;       // read (s, c)
  int next_state = 1, write = 0;  // write (s', c')
  int move = 1;                   // -1 = L, 0 = S, +1 = R
};

class TMSystem : public RewriteSystem {
 public:
  explicit TMSystem(std::vector<TMRule> rules, std::string name = "tm");

  std::string name() const override { return name_; }
  std::any canonical(const std::any& state) const override;
  std::string key(const std::any& state) const override;
  std::vector<Successor> successors(const std::any& state) const override;
  std::size_t rule_count() const override { return rules_.size(); }
  std::string rule_label(int rule_id) const override;

  const std::vector<TMRule>& rules() const { return rules_; }

 private:
  std::vector<TMRule> rules_;
  std::string name_;
};

// Parallel composition of all single-case transitions for an s-state,
// k-color machine: (s,c) -> (s',c',d), d over {L,R} (S included on request).
TMSystem tm_rulial(int states, int colors, bool include_stay = false);

}  // namespace zxmw
