#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "exact.hpp"

namespace zxmw {

// Spider phase: exact rational multiple of pi, reduced mod 2*pi into [0, 2pi).
// Stored as the rational r with phase = r * pi, 0 <= r < 2.
class Phase {
 public:
  Phase() : r_(0) {}
  explicit Phase(Rational multiple_of_pi) : r_(multiple_of_pi) { reduce(); }
  static Phase pi() { return Phase(Rational(1)); }
  static Phase zero() { return Phase(); }

  Rational pi_multiple() const { return r_; }
  bool is_zero() const { return r_.is_zero(); }
  bool is_pi() const { return r_ == Rational(1); }
  // k with phase == k*pi/2, when the phase is a quarter-turn multiple.
  std::optional<int> quarter_turns() const {
    Rational q = r_ * Rational(2);
    if (q.den != 1) return std::nullopt;
    return int(q.num);
  }

  friend Phase operator+(const Phase& a, const Phase& b) { return Phase(a.r_ + b.r_); }
  friend Phase operator-(const Phase& a, const Phase& b) { return Phase(a.r_ - b.r_); }
  Phase operator-() const { return Phase(-r_); }
  friend bool operator==(const Phase& a, const Phase& b) { return a.r_ == b.r_; }
  friend bool operator!=(const Phase& a, const Phase& b) { return !(a == b); }
  friend bool operator<(const Phase& a, const Phase& b) { return a.r_ < b.r_; }

  double radians() const { return r_.to_double() * M_PI; }

  // e^{i phase}, exactly when the phase is a quarter-turn multiple.
  std::optional<ExactComplex> exact_unit() const {
    auto k = quarter_turns();
    if (!k) return std::nullopt;
    return ExactComplex::unit_phase_quarter(*k);
  }

  // "0", "pi", "pi/2", "3pi/2", "-..." never appears (normalized).
  std::string str() const;
  // Accepts "0", "pi", "-pi", "pi/2", "3pi/4", "2", "1/2" (bare rationals are
  // multiples of pi), with optional leading sign.
  static std::optional<Phase> parse(const std::string& text);

 private:
  void reduce() {
    // bring into [0, 2)
    std::int64_t whole = r_.num / r_.den;
    std::int64_t twos = whole / 2;
    r_ = r_ - Rational(2 * twos);
    if (r_.num < 0) r_ = r_ + Rational(2);
  }
  Rational r_;
};

}  // namespace zxmw
