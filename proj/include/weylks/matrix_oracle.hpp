#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "weylks/monomial.hpp"
#include "weylks/tolerances.hpp"

namespace weylks {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Finite-dimensional unitary model of the twisted relations
//
// For twists theta_j = p_j/q_j let L = lcm(q_j) and d = 2L. On C^d take the
// clock matrix Z (diagonal powers of omega = e^{2 pi i/d}) and the cyclic
// shift S. Then Z S^k = omega^k S^k Z, so with
//
//   U_j -> Z,   V_j -> S^{k_j},   k_j = -p_j L / q_j  (mod d)
//
// each pair obeys U V = e^{-i pi theta} V U on its own tensor factor and
// different factors commute. Everything the phase algebra proves about words
// in the generators can be cross-checked against d^n-dimensional matrices.
struct MatrixRep {
  DofSystemPtr system;
  std::size_t d = 0;                   // single-factor dimension
  std::vector<std::size_t> shift_pow;  // k_j per degree of freedom
  std::vector<Mat> z_pow, s_pow;       // Z^e and S^e for e in [0, d)

  std::size_t dim() const {
    std::size_t n = 1;
    for (std::size_t j = 0; j < system->n_dof(); ++j) n *= d;
    return n;
  }
};

namespace detail {

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// exponent mod d as a nonnegative machine integer
inline std::size_t mod_exp(const Int& e, std::size_t d) {
  Int r;
  Int dd(static_cast<unsigned long>(d));
  mpz_fdiv_r(r.get_mpz_t(), e.get_mpz_t(), dd.get_mpz_t());
  return static_cast<std::size_t>(r.get_ui());
}

}  // namespace detail

inline MatrixRep build_rep(const DofSystemPtr& system, std::size_t max_dim = 20000) {
  MatrixRep rep;
  rep.system = system;

  Int lcm_den(1);
  for (std::size_t j = 0; j < system->n_dof(); ++j) {
    Int den = system->theta(j).get_den();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
  }
  Int d_big = 2 * lcm_den;
  if (!d_big.fits_ulong_p()) throw error("matrix model dimension does not fit a machine word");
  rep.d = static_cast<std::size_t>(d_big.get_ui());

  double dim_est = 1.0;
  for (std::size_t j = 0; j < system->n_dof(); ++j) dim_est *= static_cast<double>(rep.d);
  if (dim_est > static_cast<double>(max_dim))
    throw error("matrix model dimension " + std::to_string(dim_est) + " exceeds cap " +
                std::to_string(max_dim));

  for (std::size_t j = 0; j < system->n_dof(); ++j) {
    // k_j = -p_j * (L / q_j) mod d
    Int k = -system->theta(j).get_num() * (lcm_den / system->theta(j).get_den());
    rep.shift_pow.push_back(detail::mod_exp(k, rep.d));
  }

  const double two_pi = 2.0 * std::acos(-1.0);
  Mat z = Mat::Zero(rep.d, rep.d), s = Mat::Zero(rep.d, rep.d);
  for (std::size_t j = 0; j < rep.d; ++j) {
    const double ang = two_pi * static_cast<double>(j) / static_cast<double>(rep.d);
    z(j, j) = std::complex<double>(std::cos(ang), std::sin(ang));
    s((j + 1) % rep.d, j) = 1.0;
  }
  Mat zp = Mat::Identity(rep.d, rep.d), sp = zp;
  for (std::size_t e = 0; e < rep.d; ++e) {
    rep.z_pow.push_back(zp);
    rep.s_pow.push_back(sp);
    zp = zp * z;
    sp = sp * s;
  }
  return rep;
}

inline Mat evaluate(const MatrixRep& rep, const WeylMonomial& w) {
  if (!same_system(rep.system, w.system()))
    throw error("evaluate: monomial belongs to a different degree-of-freedom system");
  Mat out = Mat::Identity(1, 1);
  for (std::size_t j = 0; j < rep.system->n_dof(); ++j) {
    const std::size_t me = detail::mod_exp(w.m()[j], rep.d);
    const std::size_t ne = detail::mod_exp(w.n()[j] * Int(static_cast<unsigned long>(rep.shift_pow[j])), rep.d);
    out = detail::kron(out, Mat(rep.z_pow[me] * rep.s_pow[ne]));
  }
  return w.phase().value() * out;
}

// Joint eigenvectors of a commuting family of unitaries
//
// A random real combination of the Hermitian and anti-Hermitian parts of all
// operators is diagonalized once; its eigenspaces are then split further by
// each operator in turn until every block is one-dimensional or genuinely
// shared. Restrictions of a unitary to an invariant subspace are unitary, so
// a Schur step inside each block is enough to diagonalize it there.
struct EigenstateSet {
  Mat vectors;  // dim x n_states, orthonormal columns
  std::vector<std::vector<std::complex<double>>> eigenvalues;  // [op][state]
};

inline double commutator_norm(const Mat& a, const Mat& b) {
  return (a * b - b * a).cwiseAbs().maxCoeff();
}

inline EigenstateSet common_eigenstates(const std::vector<Mat>& ops, unsigned seed = 20240801,
                                        double tol = tol::kEigen) {
  if (ops.empty()) throw error("common_eigenstates: no operators given");
  const Eigen::Index n = ops[0].rows();
  for (const auto& a : ops)
    if (a.rows() != n || a.cols() != n)
      throw error("common_eigenstates: operators differ in shape");
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (commutator_norm(ops[i], ops[j]) > tol::kAlgebraic * static_cast<double>(n))
        throw error("common_eigenstates: operators " + std::to_string(i) + " and " +
                    std::to_string(j) + " do not commute numerically");

  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat h = Mat::Zero(n, n);
  for (const auto& a : ops) {
    const double cr = gauss(rng), ci = gauss(rng);
    h += cr * Mat(0.5 * (a + a.adjoint()));
    h += ci * Mat(std::complex<double>(0.0, -0.5) * (a - a.adjoint()));
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Mat basis = es.eigenvectors();

  // blocks of columns not yet known to be distinguished
  std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;  // [begin, end)
  {
    const auto& ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    Eigen::Index b = 0;
    for (Eigen::Index i = 1; i <= n; ++i)
      if (i == n || std::abs(ev(i) - ev(i - 1)) > tol * scale) {
        blocks.emplace_back(b, i);
        b = i;
      }
  }

  for (const auto& op : ops) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> next;
    for (const auto& [b, e] : blocks) {
      const Eigen::Index w = e - b;
      if (w == 1) {
        next.emplace_back(b, e);
        continue;
      }
      Mat sub = basis.middleCols(b, w);
      Mat restr = sub.adjoint() * op * sub;
      Eigen::ComplexSchur<Mat> schur(restr);
      Mat refined = sub * schur.matrixU();
      // Schur returns the block eigenvalues in no particular order; sort the
      // columns so equal values sit together before splitting
      std::vector<Eigen::Index> perm(w);
      std::iota(perm.begin(), perm.end(), 0);
      const Mat& t = schur.matrixT();
      std::sort(perm.begin(), perm.end(), [&](Eigen::Index x, Eigen::Index y) {
        const std::complex<double> a = t(x, x), bb = t(y, y);
        if (std::abs(a.real() - bb.real()) > tol) return a.real() < bb.real();
        if (std::abs(a.imag() - bb.imag()) > tol) return a.imag() < bb.imag();
        return x < y;
      });
      std::vector<std::complex<double>> diag(w);
      for (Eigen::Index i = 0; i < w; ++i) {
        basis.col(b + i) = refined.col(perm[i]);
        diag[i] = t(perm[i], perm[i]);
      }
      Eigen::Index bb = b;
      for (Eigen::Index i = 1; i <= w; ++i)
        if (i == w || std::abs(diag[i] - diag[i - 1]) > tol) {
          next.emplace_back(bb, b + i);
          bb = b + i;
        }
    }
    blocks = std::move(next);
  }

  EigenstateSet out;
  out.eigenvalues.assign(ops.size(), {});

  // deterministic presentation: fix each vector's overall phase by its
  // largest component, then sort states by their eigenvalue tuples
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index imax = 0;
    basis.col(c).cwiseAbs().maxCoeff(&imax);
    std::complex<double> piv = basis(imax, c);
    if (std::abs(piv) > 0) basis.col(c) *= std::abs(piv) / piv;
  }
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<std::complex<double>>> vals(ops.size(),
                                                      std::vector<std::complex<double>>(n));
  for (std::size_t k = 0; k < ops.size(); ++k)
    for (Eigen::Index c = 0; c < n; ++c)
      vals[k][c] = basis.col(c).dot(ops[k] * basis.col(c));  // Eigen's dot conjugates lhs
  const auto key_less = [&](Eigen::Index x, Eigen::Index y) {
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const auto &a = vals[k][x], &b = vals[k][y];
      if (std::abs(a.real() - b.real()) > tol) return a.real() < b.real();
      if (std::abs(a.imag() - b.imag()) > tol) return a.imag() < b.imag();
    }
    return x < y;
  };
  std::sort(order.begin(), order.end(), key_less);

  out.vectors = Mat(n, n);
  for (std::size_t k = 0; k < ops.size(); ++k) out.eigenvalues[k].resize(n);
  for (Eigen::Index c = 0; c < n; ++c) {
    out.vectors.col(c) = basis.col(order[c]);
    for (std::size_t k = 0; k < ops.size(); ++k) out.eigenvalues[k][c] = vals[k][order[c]];
  }
  return out;
}

// max-norm residual of A v = c v with c the Rayleigh quotient
inline double eigen_residual(const Mat& a, const Vec& v, std::complex<double>& c_out) {
  const double nv = v.cwiseAbs().maxCoeff();
  if (nv == 0) throw error("eigen_residual: zero vector");
  c_out = v.dot(a * v) / v.squaredNorm();
  return (a * v - c_out * v).cwiseAbs().maxCoeff() / nv;
}

}  // namespace weylks
