#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weylks/certificate.hpp"
#include "weylks/snf.hpp"

namespace weylks {

// Compilation of a certificate into an affine parity system
//
// Every distinct phase-free monomial appearing as a member or as a context
// product gets one unknown y, read as "this observable takes the value
// e^{i*pi*y}". Columns are numbered by first appearance while walking the
// contexts in order, members before the product.
//
// Each context {M_1..M_k} with operator product e^{i*pi*Q} * W contributes
//
//   y(W) - sum_i y(W_i)  ==  sum_i q_i - Q   (mod 2)
//
// where M_i = e^{i*pi*q_i} * W_i; a pure scalar product drops the y(W) term.
// Multiplicativity on commuting operators is exactly this relation, so a
// value assignment exists iff the system is solvable over the reals mod 2.
//
// Inverses stay separate columns. Whenever two columns are mutual inverses
// as operators, W * W' = e^{-i*pi*t} * 1 forces the extra linear row
//
//   y(W) + y(W')  ==  -t   (mod 2)
//
// appended after the context rows, ordered by column pair. Keeping the pair
// explicit instead of merging the columns makes every row of the system a
// statement about operators, which keeps witnesses self-explanatory.

struct CompiledRow {
  enum class Kind { context, inverse_link };
  Kind kind;
  std::size_t context_index = 0;     // valid for context rows
  std::size_t col_a = 0, col_b = 0;  // valid for inverse_link rows
};

struct CompiledSystem {
  DofSystemPtr system;
  std::vector<WeylMonomial> columns;          // phase-free class representatives
  std::vector<WeylMonomial> context_products; // one per context, phase included
  IntMat E;                                   // rows x columns
  std::vector<Rat> phi;                       // right-hand sides, each in [0,2)
  std::vector<CompiledRow> rows;
  std::size_t n_contexts = 0;
};

inline CompiledSystem compile_certificate(const Certificate& cert) {
  if (!cert.system) throw error("certificate has no degree-of-freedom system");
  CompiledSystem out;
  out.system = cert.system;
  out.n_contexts = cert.contexts.size();

  std::map<std::vector<Int>, std::size_t> col_of;
  const auto column_for = [&](const WeylMonomial& w) {
    auto key = w.exponent_key();
    auto it = col_of.find(key);
    if (it != col_of.end()) return it->second;
    const std::size_t idx = out.columns.size();
    col_of.emplace(std::move(key), idx);
    out.columns.push_back(w.phase_free());
    return idx;
  };

  // rows are accumulated sparse until the column count settles
  std::vector<std::map<std::size_t, Int>> sparse_rows;

  for (std::size_t ci = 0; ci < cert.contexts.size(); ++ci) {
    const auto& ids = cert.contexts[ci];
    if (ids.empty()) throw error("context " + std::to_string(ci + 1) + " is empty");

    std::vector<const WeylMonomial*> members;
    members.reserve(ids.size());
    for (const auto& id : ids) members.push_back(&cert.monomial(id));
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const PhaseExp c = symplectic_phase(*members[i], *members[j]);
        if (!c.is_zero())
          throw commutation_error("context " + std::to_string(ci + 1) + ": members '" + ids[i] +
                                  "' and '" + ids[j] + "' do not commute (reordering phase " +
                                  phase_to_string(c) + ")");
      }

    WeylMonomial product = *members[0];
    for (std::size_t i = 1; i < members.size(); ++i) product = product * *members[i];
    out.context_products.push_back(product);

    std::map<std::size_t, Int> row;
    Rat rhs = -product.phase().q();
    for (const auto* mem : members) {
      rhs += mem->phase().q();
      if (!mem->exponents_zero()) row[column_for(*mem)] -= 1;
    }
    if (!product.exponents_zero()) row[column_for(product)] += 1;

    sparse_rows.push_back(std::move(row));
    out.phi.push_back(normalize_mod2(rhs));
    out.rows.push_back({CompiledRow::Kind::context, ci, 0, 0});
  }

  // link every mutually-inverse column pair
  for (std::size_t a = 0; a < out.columns.size(); ++a) {
    const WeylMonomial inv = inverse(out.columns[a]);
    auto it = col_of.find(inv.phase_free().exponent_key());
    if (it == col_of.end() || it->second <= a) continue;
    const std::size_t b = it->second;
    std::map<std::size_t, Int> row;
    row[a] += 1;
    row[b] += 1;
    sparse_rows.push_back(std::move(row));
    out.phi.push_back(normalize_mod2(-inv.phase().q()));
    out.rows.push_back({CompiledRow::Kind::inverse_link, 0, a, b});
  }

  out.E = IntMat(sparse_rows.size(), out.columns.size());
  for (std::size_t r = 0; r < sparse_rows.size(); ++r)
    for (const auto& [c, v] : sparse_rows[r]) out.E.at(r, c) = v;
  return out;
}

// An integer combination of rows whose left side cancels while the right
// side stays odd: a finite, checkable obstruction to any value assignment.
struct Witness {
  std::vector<Int> row_coeffs;  // one per compiled row
  PhaseExp accumulated;         // sum of coeff * phi, never zero for a witness
};

struct WitnessCheck {
  bool in_left_kernel = false;
  PhaseExp accumulated;
  bool valid() const { return in_left_kernel && !accumulated.is_zero(); }
};

inline WitnessCheck verify_witness(const CompiledSystem& cs, const std::vector<Int>& coeffs) {
  WitnessCheck res;
  if (coeffs.size() != cs.E.rows) return res;
  res.in_left_kernel = true;
  for (std::size_t c = 0; c < cs.E.cols; ++c) {
    Int s = 0;
    for (std::size_t r = 0; r < cs.E.rows; ++r) s += coeffs[r] * cs.E.at(r, c);
    if (s != 0) {
      res.in_left_kernel = false;
      break;
    }
  }
  Rat acc = 0;
  for (std::size_t r = 0; r < cs.E.rows; ++r) acc += coeffs[r] * cs.phi[r];
  res.accumulated = PhaseExp(acc);
  return res;
}

struct Analysis {
  bool contradiction = false;
  std::optional<Witness> witness;          // present iff contradiction
  std::optional<std::vector<Rat>> values;  // y per column iff consistent, each in [0,2)
};

namespace detail {

// normalize sign, then order by (support, support pattern, coefficients);
// used to pick the most readable witness among equivalent ones
inline std::vector<Int> canonical_sign(std::vector<Int> v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

inline bool witness_less(const std::vector<Int>& a, const std::vector<Int>& b) {
  const std::size_t sa = support_size(a), sb = support_size(b);
  if (sa != sb) return sa < sb;
  std::vector<std::size_t> ra, rb;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) ra.push_back(i);
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] != 0) rb.push_back(i);
  if (ra != rb) return ra < rb;
  return a < b;
}

}  // namespace detail

inline Analysis analyze(const CompiledSystem& cs) {
  Analysis out;
  const SmithResult s = smith_diagonalize(cs.E);
  const std::size_t m = cs.E.rows;

  std::vector<Rat> u_phi(m, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t r = 0; r < m; ++r)
      if (s.U.at(i, r) != 0) u_phi[i] += s.U.at(i, r) * cs.phi[r];

  std::vector<std::vector<Int>> kernel;
  for (std::size_t i = s.rank; i < m; ++i) {
    if (PhaseExp(u_phi[i]).is_zero()) continue;
    out.contradiction = true;
  }

  if (!out.contradiction) {
    // back-substitute through the diagonal form: y = V z
    std::vector<Rat> z(cs.E.cols, Rat(0));
    for (std::size_t i = 0; i < s.rank; ++i) z[i] = u_phi[i] / Rat(s.D.at(i, i));
    std::vector<Rat> y(cs.E.cols, Rat(0));
    for (std::size_t c = 0; c < cs.E.cols; ++c) {
      for (std::size_t k = 0; k < cs.E.cols; ++k)
        if (s.V.at(c, k) != 0) y[c] += s.V.at(c, k) * z[k];
      y[c] = normalize_mod2(y[c]);
    }
    for (std::size_t r = 0; r < m; ++r) {  // substitution check, belt and braces
      Rat lhs = -cs.phi[r];
      for (std::size_t c = 0; c < cs.E.cols; ++c)
        if (cs.E.at(r, c) != 0) lhs += cs.E.at(r, c) * y[c];
      if (!PhaseExp(lhs).is_zero()) throw error("internal: assignment fails row substitution");
    }
    out.values = std::move(y);
    return out;
  }

  for (std::size_t i = s.rank; i < m; ++i) {
    std::vector<Int> v(m);
    for (std::size_t r = 0; r < m; ++r) v[r] = s.U.at(i, r);
    kernel.push_back(std::move(v));
  }
  kernel = reduce_kernel_basis(std::move(kernel));

  // candidates: reduced basis plus pairwise sums and differences
  std::vector<std::vector<Int>> cands = kernel;
  for (std::size_t i = 0; i < kernel.size(); ++i)
    for (std::size_t j = i + 1; j < kernel.size(); ++j) {
      std::vector<Int> sum(m), diff(m);
      for (std::size_t r = 0; r < m; ++r) {
        sum[r] = kernel[i][r] + kernel[j][r];
        diff[r] = kernel[i][r] - kernel[j][r];
      }
      cands.push_back(std::move(sum));
      cands.push_back(std::move(diff));
    }

  std::optional<std::vector<Int>> best;
  for (auto& cand : cands) {
    Rat acc = 0;
    for (std::size_t r = 0; r < m; ++r) acc += cand[r] * cs.phi[r];
    if (PhaseExp(acc).is_zero()) continue;
    auto v = detail::canonical_sign(std::move(cand));
    if (!best || detail::witness_less(v, *best)) best = std::move(v);
  }
  if (!best) throw error("internal: odd kernel parity lost during witness search");

  Witness w;
  w.row_coeffs = std::move(*best);
  Rat acc = 0;
  for (std::size_t r = 0; r < m; ++r) acc += w.row_coeffs[r] * cs.phi[r];
  w.accumulated = PhaseExp(acc);
  out.witness = std::move(w);
  return out;
}

}  // namespace weylks
