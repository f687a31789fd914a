#pragma once

#include <string>
#include <utility>
#include <vector>

#include "engine.hpp"

namespace zxmw {

// String substitution system: rules rewrite any occurrence (all start offsets,
// overlapping allowed). State = std::string; each character is one tracked
// element for causal provenance.
class StringSystem : public RewriteSystem {
 public:
  using Rule = std::pair<std::string, std::string>;  // lhs -> rhs, lhs nonempty

  explicit StringSystem(std::vector<Rule> rules, std::string name = "string");

  std::string name() const override { return name_; }
  std::any canonical(const std::any& state) const override;
  std::string key(const std::any& state) const override;
  std::vector<Successor> successors(const std::any& state) const override;
  int element_count(const std::any& state) const override;
  std::size_t rule_count() const override { return rules_.size(); }
  std::string rule_label(int rule_id) const override;

  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
  std::string name_;
};

// Parse inline rule syntax "1->01,0->10".
std::vector<StringSystem::Rule> parse_string_rules(const std::string& text);

// Bitwise flip of a binary string; throws on non-binary symbols.
std::string negation(const std::string& s);

struct CompletenessReport {
  bool inconsistent = false;   // some s with both s and ~s generated
  bool complete = true;        // every s of length <= maxLen has s or ~s
  std::vector<std::string> both;         // witnesses of inconsistency
  std::vector<std::string> neither;      // witnesses of incompleteness
  std::size_t generated = 0;             // distinct states within depth
};

// Classify every binary string of length <= maxLen against the depth-bounded
// closure of `system` from `init`.
CompletenessReport check_complete_consistent(const RewriteSystem& system,
                                             const std::string& init, int depth,
                                             int maxLen, const EngineConfig& cfg = {});

}  // namespace zxmw
