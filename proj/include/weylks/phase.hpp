#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "weylks/common.hpp"

namespace weylks {

// A unit complex number e^{i*pi*q} with q an exact rational, kept reduced and
// canonical in [0, 2). The phases form an abelian group: multiplying the
// complex values adds the exponents mod 2. Nothing in the phase algebra ever
// touches floating point; value() is a convenience bridge for the numerical
// oracles.
class PhaseExp {
 public:
  PhaseExp() : q_(0) {}
  explicit PhaseExp(const Rat& q) : q_(normalize_mod2(q)) {}
  explicit PhaseExp(long num, long den = 1) : q_(normalize_mod2(make_rat(num, den))) {}

  const Rat& q() const { return q_; }
  bool is_zero() const { return q_ == 0; }

  std::complex<double> value() const {
    const double arg = std::numbers::pi * q_.get_d();
    return {std::cos(arg), std::sin(arg)};
  }

  friend bool operator==(const PhaseExp& a, const PhaseExp& b) { return a.q_ == b.q_; }
  friend bool operator!=(const PhaseExp& a, const PhaseExp& b) { return !(a == b); }

 private:
  Rat q_;
};

inline PhaseExp phase_mul(const PhaseExp& a, const PhaseExp& b) {
  return PhaseExp(a.q() + b.q());
}

inline PhaseExp phase_inv(const PhaseExp& a) { return PhaseExp(-a.q()); }

inline PhaseExp phase_pow(const PhaseExp& a, const Int& k) {
  return PhaseExp(Rat(k) * a.q());
}

inline PhaseExp operator+(const PhaseExp& a, const PhaseExp& b) { return phase_mul(a, b); }
inline PhaseExp operator-(const PhaseExp& a, const PhaseExp& b) {
  return phase_mul(a, phase_inv(b));
}

// "+1", "-1", "+i", "-i" for the quarter turns, else "exp(i*pi*p/q)".
inline std::string phase_to_string(const PhaseExp& p) {
  const Rat& q = p.q();
  if (q == 0) return "+1";
  if (q == 1) return "-1";
  if (q == make_rat(1, 2)) return "+i";
  if (q == make_rat(3, 2)) return "-i";
  return "exp(i*pi*" + rational_to_string(q) + ")";
}

inline PhaseExp parse_phase(const std::string& text) {
  if (text == "1" || text == "+1") return PhaseExp();
  if (text == "-1") return PhaseExp(1);
  if (text == "i" || text == "+i") return PhaseExp(1, 2);
  if (text == "-i") return PhaseExp(3, 2);
  const std::string head = "exp(i*pi*";
  if (text.size() > head.size() + 1 && text.compare(0, head.size(), head) == 0 &&
      text.back() == ')') {
    return PhaseExp(parse_rational(text.substr(head.size(), text.size() - head.size() - 1)));
  }
  throw parse_error("bad phase '" + text + "'");
}

}  // namespace weylks
