#pragma once

#include <string>
#include <utility>
#include <vector>

#include "engine.hpp"
#include "term.hpp"

namespace zxmw {

// Rewrite system over terms: each rule is an LHS pattern and RHS template,
// applied at every matching subterm position.
class TermSystem : public RewriteSystem {
 public:
  using Rule = std::pair<TermPtr, TermPtr>;

  explicit TermSystem(std::vector<Rule> rules, std::string name = "term");
  // Rules given as "lhs:>rhs" strings, e.g. "g[x_,g[y_,z_]]:>g[g[x_,y_],z_]".
  static TermSystem from_text(const std::vector<std::string>& rules,
                              std::string name = "term");

  std::string name() const override { return name_; }
  std::any canonical(const std::any& state) const override;
  std::string key(const std::any& state) const override;
  std::vector<Successor> successors(const std::any& state) const override;
  std::size_t rule_count() const override { return rules_.size(); }
  std::string rule_label(int rule_id) const override;

 private:
  std::vector<Rule> rules_;
  std::string name_;
};

}  // namespace zxmw
