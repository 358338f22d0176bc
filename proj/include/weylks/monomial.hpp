#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "weylks/dof_system.hpp"
#include "weylks/phase.hpp"

namespace weylks {

// ---------------------------------------------------------------------------
// Normal form and sign conventions (the single authoritative statement).
//
// A WeylMonomial with phase exponent p and per-dof exponents (m_j, n_j)
// denotes the operator
//
//     e^{i*pi*p} * PROD_j U_j^{m_j} V_j^{n_j}
//
// with the dof blocks in ascending j and, inside each block, the U power to
// the left of the V power. Generators of distinct dofs commute. Within dof j
// the reordering rule is
//
//     V_j^{n} U_j^{m} = e^{i*pi*(n*m*theta_j)} U_j^{m} V_j^{n}
//
// i.e. moving a U power left across a V power multiplies the phase exponent
// by +n*m*theta_j. Equivalently U_j V_j = e^{-i*pi*theta_j} V_j U_j, so for
// theta_j = 1 the generator pair anticommutes. All phase arithmetic is exact
// (rational exponents of e^{i*pi}); exponents are arbitrary-precision
// integers, so there is no overflow regime anywhere in the algebra.
// ---------------------------------------------------------------------------

class WeylMonomial {
 public:
  WeylMonomial(DofSystemPtr system, PhaseExp phase, std::vector<Int> m, std::vector<Int> n)
      : system_(std::move(system)), phase_(phase), m_(std::move(m)), n_(std::move(n)) {
    if (!system_) throw error("monomial needs a DofSystem");
    if (m_.size() != system_->n_dof() || n_.size() != system_->n_dof())
      throw error("exponent vectors must match n_dof");
  }

  static WeylMonomial identity(const DofSystemPtr& system) {
    return WeylMonomial(system, PhaseExp(),
                        std::vector<Int>(system->n_dof(), 0),
                        std::vector<Int>(system->n_dof(), 0));
  }

  // U_j^k and V_j^k with 0-based dof index j.
  static WeylMonomial u_gen(const DofSystemPtr& system, std::size_t j, const Int& k = 1) {
    WeylMonomial w = identity(system);
    w.m_.at(j) = k;
    return w;
  }
  static WeylMonomial v_gen(const DofSystemPtr& system, std::size_t j, const Int& k = 1) {
    WeylMonomial w = identity(system);
    w.n_.at(j) = k;
    return w;
  }

  const DofSystemPtr& system() const { return system_; }
  const PhaseExp& phase() const { return phase_; }
  const std::vector<Int>& m() const { return m_; }
  const std::vector<Int>& n() const { return n_; }
  std::size_t n_dof() const { return m_.size(); }

  bool exponents_zero() const {
    for (const auto& e : m_)
      if (e != 0) return false;
    for (const auto& e : n_)
      if (e != 0) return false;
    return true;
  }
  bool is_identity() const { return phase_.is_zero() && exponents_zero(); }
  bool is_phase_free() const { return phase_.is_zero(); }

  WeylMonomial with_phase(PhaseExp p) const { return WeylMonomial(system_, p, m_, n_); }
  WeylMonomial phase_free() const { return with_phase(PhaseExp()); }

  // Exponents interleaved (m_1, n_1, m_2, n_2, ...); the lexicographic key
  // used everywhere a deterministic order or a class representative is needed.
  std::vector<Int> exponent_key() const {
    std::vector<Int> key;
    key.reserve(2 * m_.size());
    for (std::size_t j = 0; j < m_.size(); ++j) {
      key.push_back(m_[j]);
      key.push_back(n_[j]);
    }
    return key;
  }

  friend bool operator==(const WeylMonomial& a, const WeylMonomial& b) {
    return same_system(a.system_, b.system_) && a.phase_ == b.phase_ && a.m_ == b.m_ &&
           a.n_ == b.n_;
  }
  friend bool operator!=(const WeylMonomial& a, const WeylMonomial& b) { return !(a == b); }

 private:
  DofSystemPtr system_;
  PhaseExp phase_;
  std::vector<Int> m_, n_;
};

namespace detail {
inline void require_same_system(const WeylMonomial& a, const WeylMonomial& b,
                                const char* op) {
  if (!same_system(a.system(), b.system()))
    throw error(std::string(op) + ": operands live in different DofSystems");
}
}  // namespace detail

// Product in normal form. B's U powers cross A's V powers, nothing else moves:
// phase picks up sum_j theta_j * n_j(A) * m_j(B).
inline WeylMonomial monomial_mul(const WeylMonomial& A, const WeylMonomial& B) {
  detail::require_same_system(A, B, "monomial_mul");
  const DofSystem& sys = *A.system();
  Rat crossing(0);
  std::vector<Int> m(sys.n_dof()), n(sys.n_dof());
  for (std::size_t j = 0; j < sys.n_dof(); ++j) {
    crossing += sys.theta(j) * Rat(A.n()[j] * B.m()[j]);
    m[j] = A.m()[j] + B.m()[j];
    n[j] = A.n()[j] + B.n()[j];
  }
  PhaseExp phase = A.phase() + B.phase() + PhaseExp(crossing);
  return WeylMonomial(A.system(), phase, std::move(m), std::move(n));
}

inline WeylMonomial operator*(const WeylMonomial& A, const WeylMonomial& B) {
  return monomial_mul(A, B);
}

// (e^{i*pi*p} U^m V^n)^-1 = e^{-i*pi*p} V^-n U^-m; normal-ordering the right
// side costs the correction sum_j theta_j * m_j * n_j.
inline WeylMonomial inverse(const WeylMonomial& A) {
  const DofSystem& sys = *A.system();
  Rat correction(0);
  std::vector<Int> m(sys.n_dof()), n(sys.n_dof());
  for (std::size_t j = 0; j < sys.n_dof(); ++j) {
    correction += sys.theta(j) * Rat(A.m()[j] * A.n()[j]);
    m[j] = -A.m()[j];
    n[j] = -A.n()[j];
  }
  PhaseExp phase = phase_inv(A.phase()) + PhaseExp(correction);
  return WeylMonomial(A.system(), phase, std::move(m), std::move(n));
}

// The commutation exponent c with A B = e^{i*pi*c} B A. Phases drop out;
// c depends only on the exponents through the symplectic form
// sum_j theta_j * (n_j(A) m_j(B) - m_j(A) n_j(B)), reduced mod 2.
inline PhaseExp symplectic_phase(const WeylMonomial& A, const WeylMonomial& B) {
  detail::require_same_system(A, B, "symplectic_phase");
  const DofSystem& sys = *A.system();
  Rat c(0);
  for (std::size_t j = 0; j < sys.n_dof(); ++j)
    c += sys.theta(j) * Rat(A.n()[j] * B.m()[j] - A.m()[j] * B.n()[j]);
  return PhaseExp(c);
}

inline bool commute(const WeylMonomial& A, const WeylMonomial& B) {
  return symplectic_phase(A, B).is_zero();
}

inline WeylMonomial monomial_pow(const WeylMonomial& A, const Int& k) {
  if (k == 0) return WeylMonomial::identity(A.system());
  WeylMonomial base = k < 0 ? inverse(A) : A;
  Int reps = abs(k);
  WeylMonomial acc = base;
  for (Int i = 1; i < reps; ++i) acc = monomial_mul(acc, base);
  return acc;
}

// Deterministic total order on exponent keys; phases break remaining ties.
inline bool lex_less(const WeylMonomial& a, const WeylMonomial& b) {
  const auto ka = a.exponent_key(), kb = b.exponent_key();
  if (ka != kb) return ka < kb;
  return a.phase().q() < b.phase().q();
}

// Representative of the {W, W^-1} exponent class of a phase-free monomial:
// negate the exponents unless the first nonzero entry of the interleaved key
// is already positive. Returns the representative and the sign (+1 if A's
// exponents equal the representative's, -1 if they are the negation).
inline std::pair<WeylMonomial, int> class_representative(const WeylMonomial& A) {
  const auto key = A.exponent_key();
  int sign = 1;
  for (const auto& e : key) {
    if (e == 0) continue;
    sign = e > 0 ? 1 : -1;
    break;
  }
  if (sign > 0) return {A.phase_free(), 1};
  std::vector<Int> m(A.n_dof()), n(A.n_dof());
  for (std::size_t j = 0; j < A.n_dof(); ++j) {
    m[j] = -A.m()[j];
    n[j] = -A.n()[j];
  }
  return {WeylMonomial(A.system(), PhaseExp(), std::move(m), std::move(n)), -1};
}

// --- text form --------------------------------------------------------------
//
// <phase> * U1^-1 U2 V1^-1 V2^-1   (phase omitted when +1, "^1" omitted,
//                                   bare phase for pure-phase monomials)
//
// Parsing multiplies the written factors left to right, so non-normal-ordered
// input like "V1 U1" is accepted and lands in normal form with the crossing
// phase applied. print -> parse is exact.

inline std::string to_string(const WeylMonomial& A) {
  std::string factors;
  for (std::size_t j = 0; j < A.n_dof(); ++j) {
    const auto append = [&](char g, const Int& e) {
      if (e == 0) return;
      if (!factors.empty()) factors += ' ';
      factors += g;
      factors += std::to_string(j + 1);
      if (e != 1) factors += "^" + e.get_str();
    };
    append('U', A.m()[j]);
    append('V', A.n()[j]);
  }
  if (factors.empty()) return phase_to_string(A.phase());
  if (A.phase().is_zero()) return factors;
  return phase_to_string(A.phase()) + " * " + factors;
}

inline WeylMonomial parse_monomial(const std::string& text, const DofSystemPtr& system) {
  std::istringstream in(text);
  std::vector<std::string> tokens;
  for (std::string tok; in >> tok;) tokens.push_back(tok);
  if (tokens.empty()) throw parse_error("empty monomial text");

  WeylMonomial acc = WeylMonomial::identity(system);
  std::size_t i = 0;
  const char first = tokens[0][0];
  if (first != 'U' && first != 'V') {
    acc = acc.with_phase(parse_phase(tokens[0]));
    ++i;
    if (i < tokens.size() && tokens[i] == "*") ++i;
    if (i == tokens.size()) return acc;  // pure phase
  }
  for (; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    if (tok[0] != 'U' && tok[0] != 'V')
      throw parse_error("expected generator factor, got '" + tok + "'");
    const std::size_t caret = tok.find('^');
    const std::string idx_part = tok.substr(1, caret == std::string::npos ? caret : caret - 1);
    if (idx_part.empty() ||
        idx_part.find_first_not_of("0123456789") != std::string::npos)
      throw parse_error("bad generator index in '" + tok + "'");
    const unsigned long idx = std::stoul(idx_part);
    if (idx < 1 || idx > system->n_dof())
      throw parse_error("generator index out of range in '" + tok + "'");
    Int exp = 1;
    if (caret != std::string::npos) {
      const std::string exp_part = tok.substr(caret + 1);
      if (exp_part.empty() || exp_part.find_first_not_of("-0123456789") != std::string::npos ||
          mpz_set_str(exp.get_mpz_t(), exp_part.c_str(), 10) != 0)
        throw parse_error("bad exponent in '" + tok + "'");
    }
    const WeylMonomial factor = tok[0] == 'U' ? WeylMonomial::u_gen(system, idx - 1, exp)
                                              : WeylMonomial::v_gen(system, idx - 1, exp);
    acc = monomial_mul(acc, factor);
  }
  return acc;
}

}  // namespace weylks
