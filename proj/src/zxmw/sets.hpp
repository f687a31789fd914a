#pragma once

#include <string>
#include <utility>
#include <vector>

#include "engine.hpp"

namespace zxmw {

// State of a set substitution system: a multiset of ordered relations
// (directed hyperedges) over integer vertex atoms.
struct SetState {
  std::vector<std::vector<int>> relations;
};

// Canonical form: relations relabeled by canonical vertex ids and sorted.
// `perm[i]` gives the index in the canonical relation list of input relation i.
struct CanonicalSetState {
  SetState state;
  std::vector<int> perm;
};
CanonicalSetState canonicalize_set(const SetState& s);
std::string set_key(const SetState& s);

// One rule: LHS/RHS relation patterns over named variables; variables
// appearing only on the RHS denote fresh vertices.
struct SetRule {
  std::vector<std::vector<std::string>> lhs;
  std::vector<std::vector<std::string>> rhs;
};

// Parse "{{x,y},{y,z}}->{{w,y},{y,z},{z,w},{x,w}}".
SetRule parse_set_rule(const std::string& text);
// Parse "{{0,0},{0,0}}" into a concrete state.
SetState parse_set_state(const std::string& text);

class SetSystem : public RewriteSystem {
 public:
  explicit SetSystem(std::vector<SetRule> rules, std::string name = "set");

  std::string name() const override { return name_; }
  std::any canonical(const std::any& state) const override;
  std::string key(const std::any& state) const override;
  std::vector<Successor> successors(const std::any& state) const override;
  int element_count(const std::any& state) const override;
  std::size_t rule_count() const override { return rules_.size(); }
  std::string rule_label(int rule_id) const override;

  const std::vector<SetRule>& rules() const { return rules_; }

 private:
  std::vector<SetRule> rules_;
  std::string name_;
};

// All distinct LHS matches of `rule` in `state`: (sorted matched relation
// indices, variable binding). Vertex bindings may be non-injective.
struct SetMatch {
  std::vector<int> relation_indices;
  std::map<std::string, int> binding;
};
std::vector<SetMatch> find_set_matches(const SetRule& rule, const SetState& state);

}  // namespace zxmw
