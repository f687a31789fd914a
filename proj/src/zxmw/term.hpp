#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace zxmw {

// Rooted ordered tree of operator applications. Immutable; subtrees are
// shared. A leaf whose head ends in '_' is a pattern variable.
class Term {
 public:
  using Ptr = std::shared_ptr<const Term>;

  static Ptr make(std::string head, std::vector<Ptr> children = {}) {
    return std::make_shared<const Term>(std::move(head), std::move(children));
  }
  Term(std::string head, std::vector<Ptr> children)
      : head_(std::move(head)), children_(std::move(children)) {}

  const std::string& head() const { return head_; }
  const std::vector<Ptr>& children() const { return children_; }
  bool is_variable() const { return children_.empty() && !head_.empty() && head_.back() == '_'; }
  // variable name without the trailing underscore
  std::string var_name() const { return head_.substr(0, head_.size() - 1); }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.head_ != b.head_ || a.children_.size() != b.children_.size()) return false;
    for (std::size_t i = 0; i < a.children_.size(); ++i)
      if (!(*a.children_[i] == *b.children_[i])) return false;
    return true;
  }

  std::string str() const;

 private:
  std::string head_;
  std::vector<Ptr> children_;
};

using TermPtr = Term::Ptr;
// Path of child indices from the root; empty path is the root itself.
using TermPos = std::vector<int>;
// Variable name -> bound subterm.
using Binding = std::map<std::string, TermPtr>;

// One-sided matching at the root. Repeated variables must bind equal subterms.
std::optional<Binding> match(const TermPtr& pattern, const TermPtr& term);

// All (position, binding) pairs in depth-first preorder.
std::vector<std::pair<TermPos, Binding>> find_matches(const TermPtr& pattern,
                                                      const TermPtr& term);

// Replace every variable in `pattern` via `binding`; throws std::runtime_error
// on an unbound variable.
TermPtr substitute(const TermPtr& pattern, const Binding& binding);

TermPtr subterm_at(const TermPtr& term, const TermPos& pos);

// Replace the subterm at `pos` with substitute(rhs, binding). Verifies that the
// subterm matches `lhs` under `binding` and throws on mismatch.
TermPtr rewrite_at(const TermPtr& term, const TermPos& pos, const TermPtr& lhs,
                   const TermPtr& rhs, const Binding& binding);

// Text syntax: head[child, child, ...]; variables written `name_`.
std::optional<TermPtr> parse_term(const std::string& text);

}  // namespace zxmw
