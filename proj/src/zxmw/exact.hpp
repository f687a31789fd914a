#pragma once

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace zxmw {

// Exact rational with int64 components. Arithmetic normalizes eagerly;
// overflow throws rather than wrapping.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                    checked_mul(a.den, b.den));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num, b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::domain_error("rational division by zero");
    return Rational(checked_mul(a.num, b.den), checked_mul(a.den, b.num));
  }
  Rational operator-() const { return Rational(-num, den); }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return checked_mul(a.num, b.den) < checked_mul(b.num, a.den);
  }

  bool is_zero() const { return num == 0; }
  double to_double() const { return double(num) / double(den); }
  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }

  static std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
    return r;
  }
  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow");
    return r;
  }
};

// Element of Q(i)[sqrt2]: (ar + i*ai) + (br + i*bi) * sqrt(2).
// Closed under +,-,*,/ and contains every entry arising from spider tensors
// whose phases are multiples of pi/2, together with 1/sqrt2 and sqrt2.
struct ExactComplex {
  Rational ar, ai, br, bi;

  ExactComplex() = default;
  ExactComplex(Rational re) : ar(re) {}
  ExactComplex(Rational re, Rational im) : ar(re), ai(im) {}

  static ExactComplex zero() { return ExactComplex(); }
  static ExactComplex one() { return ExactComplex(Rational(1)); }
  static ExactComplex i() { return ExactComplex(Rational(0), Rational(1)); }
  static ExactComplex sqrt2() {
    ExactComplex e;
    e.br = Rational(1);
    return e;
  }
  static ExactComplex inv_sqrt2() {
    ExactComplex e;
    e.br = Rational(1, 2);
    return e;
  }
  // e^{i pi k/2}
  static ExactComplex unit_phase_quarter(int k) {
    switch (((k % 4) + 4) % 4) {
      case 0: return one();
      case 1: return i();
      case 2: return ExactComplex(Rational(-1));
      default: return ExactComplex(Rational(0), Rational(-1));
    }
  }

  friend ExactComplex operator+(const ExactComplex& x, const ExactComplex& y) {
    ExactComplex r;
    r.ar = x.ar + y.ar;
    r.ai = x.ai + y.ai;
    r.br = x.br + y.br;
    r.bi = x.bi + y.bi;
    return r;
  }
  friend ExactComplex operator-(const ExactComplex& x, const ExactComplex& y) {
    ExactComplex r;
    r.ar = x.ar - y.ar;
    r.ai = x.ai - y.ai;
    r.br = x.br - y.br;
    r.bi = x.bi - y.bi;
    return r;
  }
  ExactComplex operator-() const {
    ExactComplex r;
    r.ar = -ar;
    r.ai = -ai;
    r.br = -br;
    r.bi = -bi;
    return r;
  }
  friend ExactComplex operator*(const ExactComplex& x, const ExactComplex& y) {
    // (a1 + b1 s)(a2 + b2 s) = (a1 a2 + 2 b1 b2) + (a1 b2 + a2 b1) s, s = sqrt2,
    // with a, b complex rationals.
    auto cmul_r = [](Rational xr, Rational xi, Rational yr, Rational yi) {
      return xr * yr - xi * yi;
    };
    auto cmul_i = [](Rational xr, Rational xi, Rational yr, Rational yi) {
      return xr * yi + xi * yr;
    };
    ExactComplex r;
    r.ar = cmul_r(x.ar, x.ai, y.ar, y.ai) + Rational(2) * cmul_r(x.br, x.bi, y.br, y.bi);
    r.ai = cmul_i(x.ar, x.ai, y.ar, y.ai) + Rational(2) * cmul_i(x.br, x.bi, y.br, y.bi);
    r.br = cmul_r(x.ar, x.ai, y.br, y.bi) + cmul_r(y.ar, y.ai, x.br, x.bi);
    r.bi = cmul_i(x.ar, x.ai, y.br, y.bi) + cmul_i(y.ar, y.ai, x.br, x.bi);
    return r;
  }
  friend bool operator==(const ExactComplex& x, const ExactComplex& y) {
    return x.ar == y.ar && x.ai == y.ai && x.br == y.br && x.bi == y.bi;
  }
  friend bool operator!=(const ExactComplex& x, const ExactComplex& y) { return !(x == y); }

  bool is_zero() const {
    return ar.is_zero() && ai.is_zero() && br.is_zero() && bi.is_zero();
  }

  ExactComplex inverse() const;
  friend ExactComplex operator/(const ExactComplex& x, const ExactComplex& y) {
    return x * y.inverse();
  }

  std::complex<double> to_complex() const {
    const double s = 1.4142135623730950488;
    return {ar.to_double() + s * br.to_double(), ai.to_double() + s * bi.to_double()};
  }
  std::string str() const;
};

}  // namespace zxmw
