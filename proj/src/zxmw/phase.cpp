#include "phase.hpp"

#include <cctype>

namespace zxmw {

std::string Phase::str() const {
  if (r_.is_zero()) return "0";
  std::string num;
  if (r_.num == 1)
    num = "pi";
  else if (r_.num == -1)
    num = "-pi";
  else
    num = std::to_string(r_.num) + "pi";
  if (r_.den == 1) return num;
  return num + "/" + std::to_string(r_.den);
}

std::optional<Phase> Phase::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += std::tolower(static_cast<unsigned char>(c));
  if (s.empty()) return std::nullopt;
  bool neg = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = s[pos] == '-';
    ++pos;
  }
  std::int64_t num = 1;
  bool have_digits = false;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    if (!have_digits) num = 0;
    have_digits = true;
    num = num * 10 + (s[pos] - '0');
    ++pos;
  }
  bool have_pi = false;
  if (s.compare(pos, 2, "pi") == 0) {
    have_pi = true;
    pos += 2;
  } else if (pos < s.size() && (s[pos] == '\xcf')) {  // UTF-8 pi
    if (s.compare(pos, 2, "\xcf\x80") == 0) {
      have_pi = true;
      pos += 2;
    }
  }
  if (!have_digits && !have_pi) return std::nullopt;
  std::int64_t den = 1;
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) return std::nullopt;
    den = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      den = den * 10 + (s[pos] - '0');
      ++pos;
    }
  }
  if (pos != s.size() || den == 0) return std::nullopt;
  Rational r(neg ? -num : num, den);
  return Phase(r);
}

}  // namespace zxmw
