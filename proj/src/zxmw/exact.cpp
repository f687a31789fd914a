#include "exact.hpp"

#include <sstream>

namespace zxmw {

ExactComplex ExactComplex::inverse() const {
  // 1/(a + b s) = (a - b s) / (a^2 - 2 b^2), with a, b in Q(i), s = sqrt2.
  // a^2 - 2 b^2 = 0 over Q(i) only when a = b = 0.
  ExactComplex a(ar, ai), b(br, bi);
  ExactComplex conj_part = a - b * sqrt2();
  ExactComplex denom = a * a - ExactComplex(Rational(2)) * b * b;  // pure Q(i)
  if (denom.is_zero()) throw std::domain_error("exact complex division by zero");
  // denom = dr + i di, invert in Q(i).
  Rational dr = denom.ar, di = denom.ai;
  Rational n = dr * dr + di * di;
  ExactComplex denom_inv(dr / n, -(di / n));
  return conj_part * denom_inv;
}

std::string ExactComplex::str() const {
  std::ostringstream os;
  os << "(" << ar.str();
  if (!ai.is_zero()) os << (ai.num > 0 ? "+" : "") << ai.str() << "i";
  if (!br.is_zero() || !bi.is_zero()) {
    os << "+(" << br.str();
    if (!bi.is_zero()) os << (bi.num > 0 ? "+" : "") << bi.str() << "i";
    os << ")sqrt2";
  }
  os << ")";
  return os.str();
}

}  // namespace zxmw
