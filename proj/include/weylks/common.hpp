#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>

namespace weylks {

// Exact integer / rational backing for exponents and phases. mpq_class keeps
// values reduced with positive denominator after canonicalize().
using Int = mpz_class;
using Rat = mpq_class;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed text or JSON input.
struct parse_error : error {
  using error::error;
};

// A context (or operation) that requires commuting operands got a
// non-commuting pair. Carries the offending symplectic phase in the message.
struct commutation_error : error {
  using error::error;
};

// Grid/binding incompatibilities: odd N, incommensurate a*b, dof mismatch.
struct binding_error : error {
  using error::error;
};

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p" or "p/q", optionally signed. Used for theta entries and phase
// exponents in certificate files.
inline Rat parse_rational(std::string text) {
  if (!text.empty() && text[0] == '+') text.erase(0, 1);  // GMP rejects a leading '+'
  if (text.empty()) throw parse_error("empty rational");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+'))
      throw parse_error("bad rational '" + text + "'");
  }
  Rat r;
  if (r.set_str(text, 10) != 0) throw parse_error("bad rational '" + text + "'");
  r.canonicalize();
  if (r.get_den() == 0) throw parse_error("zero denominator in '" + text + "'");
  return r;
}

inline std::string rational_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Reduce x into [0, 2). The phase group is the rationals mod 2 (exponents of
// e^{i*pi*x}), so every phase computation funnels through here.
inline Rat normalize_mod2(const Rat& x) {
  Int fl;
  // floor(x/2): fdiv rounds toward -infinity.
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), Int(2 * x.get_den()).get_mpz_t());
  Rat out = x - 2 * Rat(fl);
  out.canonicalize();
  return out;
}

}  // namespace weylks
