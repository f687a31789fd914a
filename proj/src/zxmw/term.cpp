#include "term.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace zxmw {

std::string Term::str() const {
  if (children_.empty()) return head_;
  std::ostringstream os;
  os << head_ << "[";
  for (std::size_t i = 0; i < children_.size(); ++i) {
    if (i) os << ",";
    os << children_[i]->str();
  }
  os << "]";
  return os.str();
}

namespace {

bool match_into(const TermPtr& pattern, const TermPtr& term, Binding& b) {
  if (pattern->is_variable()) {
    auto [it, inserted] = b.emplace(pattern->var_name(), term);
    return inserted || *it->second == *term;
  }
  if (pattern->head() != term->head()) return false;
  if (pattern->children().size() != term->children().size()) return false;
  for (std::size_t i = 0; i < pattern->children().size(); ++i)
    if (!match_into(pattern->children()[i], term->children()[i], b)) return false;
  return true;
}

void find_rec(const TermPtr& pattern, const TermPtr& term, TermPos& pos,
              std::vector<std::pair<TermPos, Binding>>& out) {
  if (auto b = match(pattern, term)) out.emplace_back(pos, std::move(*b));
  for (std::size_t i = 0; i < term->children().size(); ++i) {
    pos.push_back(int(i));
    find_rec(pattern, term->children()[i], pos, out);
    pos.pop_back();
  }
}

}  // namespace

std::optional<Binding> match(const TermPtr& pattern, const TermPtr& term) {
  Binding b;
  if (match_into(pattern, term, b)) return b;
  return std::nullopt;
}

std::vector<std::pair<TermPos, Binding>> find_matches(const TermPtr& pattern,
                                                      const TermPtr& term) {
  std::vector<std::pair<TermPos, Binding>> out;
  TermPos pos;
  find_rec(pattern, term, pos, out);
  return out;
}

TermPtr substitute(const TermPtr& pattern, const Binding& binding) {
  if (pattern->is_variable()) {
    auto it = binding.find(pattern->var_name());
    if (it == binding.end())
      throw std::runtime_error("unbound variable: " + pattern->var_name());
    return it->second;
  }
  if (pattern->children().empty()) return pattern;
  std::vector<TermPtr> children;
  children.reserve(pattern->children().size());
  for (const auto& c : pattern->children()) children.push_back(substitute(c, binding));
  return Term::make(pattern->head(), std::move(children));
}

TermPtr subterm_at(const TermPtr& term, const TermPos& pos) {
  TermPtr cur = term;
  for (int i : pos) {
    if (i < 0 || std::size_t(i) >= cur->children().size())
      throw std::runtime_error("invalid term position");
    cur = cur->children()[i];
  }
  return cur;
}

namespace {

TermPtr replace_at(const TermPtr& term, const TermPos& pos, std::size_t depth,
                   const TermPtr& replacement) {
  if (depth == pos.size()) return replacement;
  int i = pos[depth];
  if (i < 0 || std::size_t(i) >= term->children().size())
    throw std::runtime_error("invalid term position");
  std::vector<TermPtr> children = term->children();
  children[i] = replace_at(children[i], pos, depth + 1, replacement);
  return Term::make(term->head(), std::move(children));
}

}  // namespace

TermPtr rewrite_at(const TermPtr& term, const TermPos& pos, const TermPtr& lhs,
                   const TermPtr& rhs, const Binding& binding) {
  TermPtr sub = subterm_at(term, pos);
  if (!(*substitute(lhs, binding) == *sub))
    throw std::runtime_error("binding does not reproduce the matched subterm");
  return replace_at(term, pos, 0, substitute(rhs, binding));
}

namespace {

struct Parser {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  std::optional<TermPtr> term() {
    skip_ws();
    std::string head;
    while (pos < s.size()) {
      char c = s[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '+' ||
          c == '.' || c == '/') {
        head += c;
        ++pos;
      } else {
        break;
      }
    }
    if (head.empty()) return std::nullopt;
    skip_ws();
    std::vector<TermPtr> children;
    if (pos < s.size() && s[pos] == '[') {
      ++pos;
      skip_ws();
      if (pos < s.size() && s[pos] == ']') {
        ++pos;
      } else {
        while (true) {
          auto c = term();
          if (!c) return std::nullopt;
          children.push_back(*c);
          skip_ws();
          if (pos < s.size() && s[pos] == ',') {
            ++pos;
            continue;
          }
          if (pos < s.size() && s[pos] == ']') {
            ++pos;
            break;
          }
          return std::nullopt;
        }
      }
    }
    return Term::make(std::move(head), std::move(children));
  }
};

}  // namespace

std::optional<TermPtr> parse_term(const std::string& text) {
  Parser p{text};
  auto t = p.term();
  if (!t) return std::nullopt;
  p.skip_ws();
  if (p.pos != text.size()) return std::nullopt;
  return t;
}

}  // namespace zxmw
