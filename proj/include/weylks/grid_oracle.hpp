#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "weylks/certificate.hpp"
#include "weylks/matrix_oracle.hpp"
#include "weylks/monomial.hpp"
#include "weylks/tolerances.hpp"

namespace weylks {

// Cyclic position lattice: N points per degree of freedom, axis j of a state
// indexed 0..N-1 with dof 1 slowest (row-major). The physical period L only
// rescales labels: displacement a = 2 pi k/L against position x = idx * L/N
// always multiplies by e^{-2 pi i * k * idx / N}, so L never enters the math
// and defaults to N.
struct GridSpec {
  std::size_t n_dof = 1;
  std::size_t N = 8;
  double L = 0.0;  // 0 means "use N"

  std::size_t size() const {
    std::size_t s = 1;
    for (std::size_t j = 0; j < n_dof; ++j) s *= N;
    return s;
  }
  double period() const { return L > 0 ? L : static_cast<double>(N); }
};

inline void validate_spec(const GridSpec& spec) {
  if (spec.n_dof == 0) throw error("grid needs at least one degree of freedom");
  if (spec.N < 2 || spec.N % 2 != 0)
    throw error("grid size must be even and at least 2, got " + std::to_string(spec.N));
}

struct GridState {
  std::vector<std::complex<double>> amp;

  double max_abs() const {
    double m = 0;
    for (const auto& a : amp) m = std::max(m, std::abs(a));
    return m;
  }
  double norm() const {
    double s = 0;
    for (const auto& a : amp) s += std::norm(a);
    return std::sqrt(s);
  }
};

// Ties abstract generators to lattice operators: U_j multiplies by
// e^{-2 pi i k_j idx/N} (a displacement a_j = 2 pi k_j/L), V_j shifts axis j
// forward by m_j points (a displacement b_j = m_j L/N). The pair realizes the
// twist theta_j = p_j/q_j exactly when a_j b_j = pi theta_j, i.e.
//
//   2 k_j m_j q_j == p_j N
//
// which is checked on construction rather than approximated.
struct GridBinding {
  DofSystemPtr system;
  GridSpec spec;
  std::vector<long> k, m;
};

inline GridBinding make_binding(DofSystemPtr system, GridSpec spec, std::vector<long> k,
                                std::vector<long> m) {
  validate_spec(spec);
  if (spec.n_dof != system->n_dof())
    throw binding_error("grid axes (" + std::to_string(spec.n_dof) +
                        ") do not match degrees of freedom (" + std::to_string(system->n_dof()) +
                        ")");
  if (k.size() != spec.n_dof || m.size() != spec.n_dof)
    throw binding_error("need one (k, m) pair per degree of freedom");
  for (std::size_t j = 0; j < spec.n_dof; ++j) {
    const Int lhs = Int(2) * Int(k[j]) * Int(m[j]) * system->theta(j).get_den();
    const Int rhs = system->theta(j).get_num() * Int(static_cast<unsigned long>(spec.N));
    if (lhs != rhs)
      throw binding_error("axis " + std::to_string(j + 1) + ": displacements (k=" +
                          std::to_string(k[j]) + ", m=" + std::to_string(m[j]) +
                          ") do not realize twist " + rational_to_string(system->theta(j)) +
                          " on " + std::to_string(spec.N) + " points");
  }
  GridBinding b;
  b.system = std::move(system);
  b.spec = spec;
  b.k = std::move(k);
  b.m = std::move(m);
  return b;
}

// smallest k >= 1 admitting an integral shift count m = p N / (2 k q)
inline GridBinding default_binding(DofSystemPtr system, GridSpec spec) {
  validate_spec(spec);
  std::vector<long> k(spec.n_dof, 0), m(spec.n_dof, 0);
  for (std::size_t j = 0; j < system->n_dof() && j < spec.n_dof; ++j) {
    const Int num = system->theta(j).get_num() * Int(static_cast<unsigned long>(spec.N));
    bool ok = false;
    for (long kk = 1; kk <= static_cast<long>(spec.N); ++kk) {
      const Int den = Int(2) * Int(kk) * system->theta(j).get_den();
      if (num % den == 0) {
        Int mm = num / den;
        if (!mm.fits_slong_p()) continue;
        k[j] = kk;
        m[j] = mm.get_si();
        ok = true;
        break;
      }
    }
    if (!ok)
      throw binding_error("no commensurate displacement pair realizes twist " +
                          rational_to_string(system->theta(j)) + " on " + std::to_string(spec.N) +
                          " points; try a different grid size");
  }
  return make_binding(std::move(system), spec, std::move(k), std::move(m));
}

namespace detail {

inline long mod_long(long v, long n) {
  long r = v % n;
  return r < 0 ? r + n : r;
}

// walk all indices of one axis while the others stay fixed
template <typename F>
void for_each_axis_line(const GridSpec& spec, std::size_t axis, F&& f) {
  const std::size_t n = spec.N;
  std::size_t stride = 1;
  for (std::size_t j = axis + 1; j < spec.n_dof; ++j) stride *= n;
  const std::size_t block = stride * n;
  const std::size_t total = spec.size();
  for (std::size_t base = 0; base < total; base += block)
    for (std::size_t off = 0; off < stride; ++off) f(base + off, stride);
}

}  // namespace detail

inline void apply_u(const GridBinding& b, std::size_t axis, const Int& power, GridState& st) {
  const long n = static_cast<long>(b.spec.N);
  const long r = detail::mod_long(
      static_cast<long>(detail::mod_exp(power * Int(b.k[axis]), b.spec.N)), n);
  if (r == 0) return;
  const double two_pi = 2.0 * std::acos(-1.0);
  std::vector<std::complex<double>> factor(b.spec.N);
  for (long j = 0; j < n; ++j) {
    const double ang = -two_pi * static_cast<double>(detail::mod_long(r * j, n)) /
                       static_cast<double>(n);
    factor[static_cast<std::size_t>(j)] = {std::cos(ang), std::sin(ang)};
  }
  detail::for_each_axis_line(b.spec, axis, [&](std::size_t base, std::size_t stride) {
    for (std::size_t j = 0; j < b.spec.N; ++j) st.amp[base + j * stride] *= factor[j];
  });
}

inline void apply_v(const GridBinding& b, std::size_t axis, const Int& power, GridState& st) {
  const long n = static_cast<long>(b.spec.N);
  const long s = detail::mod_long(
      static_cast<long>(detail::mod_exp(power * Int(b.m[axis]), b.spec.N)), n);
  if (s == 0) return;
  std::vector<std::complex<double>> line(b.spec.N);
  detail::for_each_axis_line(b.spec, axis, [&](std::size_t base, std::size_t stride) {
    for (long j = 0; j < n; ++j)
      line[static_cast<std::size_t>(j)] = st.amp[base + static_cast<std::size_t>(detail::mod_long(j - s, n)) * stride];
    for (std::size_t j = 0; j < b.spec.N; ++j) st.amp[base + j * stride] = line[j];
  });
}

// phase * prod_j U_j^{m_j} V_j^{n_j} acting right to left: all shifts first,
// then all position phases, then the scalar
inline GridState apply_monomial(const GridBinding& b, const WeylMonomial& w, GridState st) {
  if (!same_system(b.system, w.system()))
    throw error("apply_monomial: monomial belongs to a different degree-of-freedom system");
  if (st.amp.size() != b.spec.size())
    throw error("apply_monomial: state has " + std::to_string(st.amp.size()) +
                " amplitudes, grid wants " + std::to_string(b.spec.size()));
  for (std::size_t j = 0; j < b.spec.n_dof; ++j) apply_v(b, j, w.n()[j], st);
  for (std::size_t j = 0; j < b.spec.n_dof; ++j) apply_u(b, j, w.m()[j], st);
  const std::complex<double> ph = w.phase().value();
  if (ph != std::complex<double>(1.0, 0.0))
    for (auto& a : st.amp) a *= ph;
  return st;
}

// eigenvalue fitted at the largest amplitude, residual in the max norm
struct EigenFit {
  std::complex<double> value;
  double residual;
};

inline EigenFit check_eigenstate(const GridBinding& b, const WeylMonomial& w,
                                 const GridState& st) {
  const double peak = st.max_abs();
  if (peak == 0) throw error("check_eigenstate: zero state");
  GridState out = apply_monomial(b, w, st);
  std::size_t imax = 0;
  double best = -1;
  for (std::size_t i = 0; i < st.amp.size(); ++i)
    if (std::abs(st.amp[i]) > best) {
      best = std::abs(st.amp[i]);
      imax = i;
    }
  EigenFit fit;
  fit.value = out.amp[imax] / st.amp[imax];
  double r = 0;
  for (std::size_t i = 0; i < st.amp.size(); ++i)
    r = std::max(r, std::abs(out.amp[i] - fit.value * st.amp[i]));
  fit.residual = r / peak;
  return fit;
}

// normalized ridge state concentrated on x_1 - x_2 == x0 (mod N)
inline GridState make_epr_delta(const GridSpec& spec, long x0) {
  validate_spec(spec);
  if (spec.n_dof != 2) throw error("the ridge state lives on exactly 2 axes");
  GridState st;
  st.amp.assign(spec.size(), 0.0);
  const long n = static_cast<long>(spec.N);
  const double w = 1.0 / std::sqrt(static_cast<double>(spec.N));
  for (long j2 = 0; j2 < n; ++j2) {
    const long j1 = detail::mod_long(j2 + x0, n);
    st.amp[static_cast<std::size_t>(j1) * spec.N + static_cast<std::size_t>(j2)] = w;
  }
  return st;
}

// unitary discrete Fourier transform, axis by axis (direct evaluation; the
// grids here are tiny)
inline GridState dft(const GridSpec& spec, const GridState& st) {
  validate_spec(spec);
  GridState cur = st;
  const std::size_t n = spec.N;
  const double two_pi = 2.0 * std::acos(-1.0);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<std::complex<double>> line(n), out(n);
  for (std::size_t axis = 0; axis < spec.n_dof; ++axis) {
    detail::for_each_axis_line(spec, axis, [&](std::size_t base, std::size_t stride) {
      for (std::size_t j = 0; j < n; ++j) line[j] = cur.amp[base + j * stride];
      for (std::size_t q = 0; q < n; ++q) {
        std::complex<double> acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
          const double ang = -two_pi * static_cast<double>((q * j) % n) / static_cast<double>(n);
          acc += line[j] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[q] = acc * scale;
      }
      for (std::size_t q = 0; q < n; ++q) cur.amp[base + q * stride] = out[q];
    });
  }
  return cur;
}

// squared-mass fraction of a 2-axis momentum state lying off q1 + q2 == 0
inline double momentum_mass_off_antidiagonal(const GridSpec& spec, const GridState& momentum) {
  if (spec.n_dof != 2) throw error("antidiagonal support check needs exactly 2 axes");
  double off = 0, total = 0;
  const std::size_t n = spec.N;
  for (std::size_t q1 = 0; q1 < n; ++q1)
    for (std::size_t q2 = 0; q2 < n; ++q2) {
      const double w = std::norm(momentum.amp[q1 * n + q2]);
      total += w;
      if ((q1 + q2) % n != 0) off += w;
    }
  if (total == 0) throw error("antidiagonal support check: zero state");
  return off / total;
}

// dense matrix of a monomial's grid action, for handing to the eigensolver
inline Mat materialize(const GridBinding& b, const WeylMonomial& w) {
  const std::size_t dim = b.spec.size();
  Mat out(dim, dim);
  GridState basis;
  basis.amp.assign(dim, 0.0);
  for (std::size_t c = 0; c < dim; ++c) {
    basis.amp[c] = 1.0;
    GridState col = apply_monomial(b, w, basis);
    for (std::size_t r = 0; r < dim; ++r) out(static_cast<Eigen::Index>(r),
                                              static_cast<Eigen::Index>(c)) = col.amp[r];
    basis.amp[c] = 0.0;
  }
  return out;
}

// joint eigenvectors of several commuting monomials realized on the grid
inline EigenstateSet grid_common_eigenstates(const GridBinding& b,
                                             const std::vector<WeylMonomial>& words,
                                             unsigned seed = 20240801) {
  if (words.empty()) throw error("grid_common_eigenstates: no monomials given");
  std::vector<Mat> ops;
  ops.reserve(words.size());
  for (const auto& w : words) ops.push_back(materialize(b, w));
  return common_eigenstates(ops, seed);
}

// A joint eigenstate of the four commuting triple products from the
// three-party argument, with the fitted eigenvalue and max-norm residual per
// product. Since T1 T2 T3 T4 = -I, the four eigenvalues always multiply to -1:
// these states are the lattice counterparts of GHZ states.
struct GhzAnalogue {
  GridState state;
  std::vector<std::complex<double>> eigenvalues;  // per triple product, in T1..T4 order
  double max_residual = 0;
};

inline std::vector<GhzAnalogue> find_ghz_analogues(const GridBinding& b, unsigned seed = 20240801,
                                                   double tol = tol::kEigen) {
  if (!b.system || b.system->n_dof() != 3)
    throw error("find_ghz_analogues needs a 3-dof binding");
  for (std::size_t j = 0; j < 3; ++j)
    if (b.system->theta(j) != 1)
      throw binding_error("find_ghz_analogues needs unit twists; dof " + std::to_string(j + 1) +
                          " has theta = " + rational_to_string(b.system->theta(j)));

  const Certificate cert = builtin_mermin3(b.system->thetas());
  const std::vector<WeylMonomial> words = {cert.monomial("T1"), cert.monomial("T2"),
                                           cert.monomial("T3"), cert.monomial("T4")};
  const EigenstateSet eig = grid_common_eigenstates(b, words, seed);

  std::vector<GhzAnalogue> out;
  const auto dim = static_cast<std::size_t>(eig.vectors.rows());
  for (Eigen::Index c = 0; c < eig.vectors.cols(); ++c) {
    GhzAnalogue g;
    g.state.amp.resize(dim);
    for (std::size_t r = 0; r < dim; ++r)
      g.state.amp[r] = eig.vectors(static_cast<Eigen::Index>(r), c);
    std::complex<double> prod = 1.0;
    for (std::size_t op = 0; op < words.size(); ++op) {
      const EigenFit fit = check_eigenstate(b, words[op], g.state);
      g.eigenvalues.push_back(fit.value);
      g.max_residual = std::max(g.max_residual, fit.residual);
      prod *= fit.value;
    }
    if (g.max_residual > tol) continue;  // not genuinely joint, drop it
    if (std::abs(prod + 1.0) > 16 * tol)
      throw error("internal: joint eigenvalue product strayed from -1");
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace weylks
