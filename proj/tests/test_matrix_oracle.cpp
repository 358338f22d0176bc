#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "weylks/certificate.hpp"
#include "weylks/matrix_oracle.hpp"
#include "weylks/tolerances.hpp"

using namespace weylks;

namespace {

double matdiff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("unit twist lands on the 2-dimensional clock and shift") {
  auto sys = make_system({Rat(1)});
  const MatrixRep rep = build_rep(sys);
  REQUIRE(rep.d == 2);
  const Mat mu = evaluate(rep, WeylMonomial::u_gen(sys, 0));
  const Mat mv = evaluate(rep, WeylMonomial::v_gen(sys, 0));

  // involutions that anticommute: the qubit Z/X pair up to basis convention
  CHECK(matdiff(mu * mu, Mat::Identity(2, 2)) < tol::kRepExact);
  CHECK(matdiff(mv * mv, Mat::Identity(2, 2)) < tol::kRepExact);
  CHECK((mu * mv + mv * mu).cwiseAbs().maxCoeff() < tol::kRepExact);
  CHECK(symplectic_phase(WeylMonomial::u_gen(sys, 0), WeylMonomial::v_gen(sys, 0)) ==
        PhaseExp(1));
}

TEST_CASE("rational twist picks the doubled denominator dimension") {
  auto sys = make_system({make_rat(1, 3)});
  const MatrixRep rep = build_rep(sys);
  REQUIRE(rep.d == 6);
  const auto u = WeylMonomial::u_gen(sys, 0);
  const auto v = WeylMonomial::v_gen(sys, 0);
  const Mat mu = evaluate(rep, u), mv = evaluate(rep, v);

  // exact Weyl relation with the algebra's orientation: V U = e^{i*pi/3} U V
  const std::complex<double> w = PhaseExp(make_rat(1, 3)).value();
  CHECK(matdiff(mv * mu, w * (mu * mv)) < tol::kRepExact);

  Mat acc = Mat::Identity(6, 6);
  for (int k = 0; k < 6; ++k) acc = acc * mu;
  CHECK(matdiff(acc, Mat::Identity(6, 6)) < tol::kRepExact);
}

TEST_CASE("representation is a homomorphism on sampled pairs") {
  auto sys = make_system({Rat(1), Rat(1)});
  const MatrixRep rep = build_rep(sys);
  std::mt19937 rng(20240801);
  std::uniform_int_distribution<long> e(-2, 2);
  std::uniform_int_distribution<int> ph(0, 3);
  const Rat phases[] = {Rat(0), Rat(1), make_rat(1, 2), make_rat(3, 2)};

  const auto rand_mono = [&] {
    std::vector<Int> m = {e(rng), e(rng)}, n = {e(rng), e(rng)};
    return WeylMonomial(sys, PhaseExp(phases[ph(rng)]), std::move(m), std::move(n));
  };

  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = rand_mono(), b = rand_mono();
    worst = std::max(worst, matdiff(evaluate(rep, a * b), evaluate(rep, a) * evaluate(rep, b)));
  }
  CHECK(worst < tol::kAlgebraic);
}

TEST_CASE("scalar products land on scalar matrices") {
  {
    const Certificate cert = builtin_peres2();
    const MatrixRep rep = build_rep(cert.system);
    const Mat fg = evaluate(rep, cert.monomial("F")) * evaluate(rep, cert.monomial("G"));
    CHECK(matdiff(fg, -Mat::Identity(fg.rows(), fg.cols())) < tol::kAlgebraic);
  }
  {
    const Certificate cert = builtin_mermin3();
    const MatrixRep rep = build_rep(cert.system);
    Mat t = evaluate(rep, cert.monomial("T1"));
    t = t * evaluate(rep, cert.monomial("T2"));
    t = t * evaluate(rep, cert.monomial("T3"));
    t = t * evaluate(rep, cert.monomial("T4"));
    CHECK(matdiff(t, -Mat::Identity(t.rows(), t.cols())) < tol::kAlgebraic);
  }
}

TEST_CASE("joint eigenstates of the triple products multiply to -1") {
  const Certificate cert = builtin_mermin3();
  const MatrixRep rep = build_rep(cert.system);
  std::vector<Mat> ops;
  for (const char* id : {"T1", "T2", "T3", "T4"}) ops.push_back(evaluate(rep, cert.monomial(id)));

  const EigenstateSet eig = common_eigenstates(ops);
  REQUIRE(eig.vectors.cols() > 0);
  CHECK(eig.vectors.cols() == 8);  // full basis for the 2^3-dimensional model

  for (Eigen::Index s = 0; s < eig.vectors.cols(); ++s) {
    std::complex<double> prod = 1.0;
    for (std::size_t op = 0; op < ops.size(); ++op) {
      const auto lambda = eig.eigenvalues[op][static_cast<std::size_t>(s)];
      CHECK(std::abs(std::abs(lambda) - 1.0) < tol::kEigen);
      // residual against the actual operator
      const auto col = eig.vectors.col(s);
      CHECK((ops[op] * col - lambda * col).cwiseAbs().maxCoeff() < tol::kEigen);
      prod *= lambda;
    }
    CHECK(std::abs(prod + 1.0) < tol::kEigen);
  }
}

TEST_CASE("common eigenstates demand commuting input") {
  auto sys = make_system({Rat(1)});
  const MatrixRep rep = build_rep(sys);
  const Mat mu = evaluate(rep, WeylMonomial::u_gen(sys, 0));
  const Mat mv = evaluate(rep, WeylMonomial::v_gen(sys, 0));
  CHECK_THROWS_AS(common_eigenstates({mu, mv}), error);
  CHECK_THROWS_AS(common_eigenstates({}), error);
}

TEST_CASE("eigensolver output is deterministic for a fixed seed") {
  const Certificate cert = builtin_mermin3();
  const MatrixRep rep = build_rep(cert.system);
  std::vector<Mat> ops;
  for (const char* id : {"T1", "T2", "T3", "T4"}) ops.push_back(evaluate(rep, cert.monomial(id)));
  const EigenstateSet a = common_eigenstates(ops, 123);
  const EigenstateSet b = common_eigenstates(ops, 123);
  CHECK(matdiff(a.vectors, b.vectors) == 0.0);
  CHECK(a.eigenvalues == b.eigenvalues);
}

TEST_CASE("oversized models are refused") {
  auto sys = make_system({make_rat(1, 101), make_rat(1, 103)});
  CHECK_THROWS_AS(build_rep(sys, 10000), error);
}
