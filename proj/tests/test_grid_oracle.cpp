#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "weylks/grid_oracle.hpp"

using namespace weylks;

namespace {

GridState random_state(std::mt19937& rng, std::size_t dim) {
  std::normal_distribution<double> gauss;
  GridState st;
  st.amp.resize(dim);
  for (auto& a : st.amp) a = {gauss(rng), gauss(rng)};
  const double n = st.norm();
  for (auto& a : st.amp) a /= n;
  return st;
}

double state_diff(const GridState& a, const GridState& b) {
  double r = 0;
  for (std::size_t i = 0; i < a.amp.size(); ++i) r = std::max(r, std::abs(a.amp[i] - b.amp[i]));
  return r;
}

GridState scaled(GridState st, std::complex<double> c) {
  for (auto& a : st.amp) a *= c;
  return st;
}

}  // namespace

TEST_CASE("commensurate bindings are found or refused exactly") {
  {
    auto sys = make_system({Rat(1), Rat(1)});
    GridSpec spec;
    spec.n_dof = 2;
    spec.N = 8;
    const GridBinding b = default_binding(sys, spec);
    CHECK(b.k == std::vector<long>{1, 1});
    CHECK(b.m == std::vector<long>{4, 4});
  }
  {
    auto sys = make_system({Rat(1), Rat(1), Rat(1)});
    GridSpec spec;
    spec.n_dof = 3;
    spec.N = 4;
    const GridBinding b = default_binding(sys, spec);
    CHECK(b.k == std::vector<long>{1, 1, 1});
    CHECK(b.m == std::vector<long>{2, 2, 2});
  }
  {
    // 2 k m / 3 = 8 has no integral solution with k, m in range
    auto sys = make_system({make_rat(1, 3)});
    GridSpec spec;
    spec.n_dof = 1;
    spec.N = 8;
    CHECK_THROWS_AS(default_binding(sys, spec), binding_error);
  }
  {
    // but N = 12 works: 2 * 1 * 2 * 3 = 12
    auto sys = make_system({make_rat(1, 3)});
    GridSpec spec;
    spec.n_dof = 1;
    spec.N = 12;
    const GridBinding b = default_binding(sys, spec);
    CHECK(2 * b.k[0] * b.m[0] * 3 == 12);
  }
}

TEST_CASE("grid operators satisfy the exact Weyl relation") {
  auto sys = make_system({Rat(1)});
  GridSpec spec;
  spec.n_dof = 1;
  spec.N = 8;
  const GridBinding b = default_binding(sys, spec);
  const auto u = WeylMonomial::u_gen(sys, 0);
  const auto v = WeylMonomial::v_gen(sys, 0);

  std::mt19937 rng(20240801);
  for (int trial = 0; trial < 20; ++trial) {
    const GridState psi = random_state(rng, spec.N);
    const GridState uv = apply_monomial(b, u, apply_monomial(b, v, psi));
    const GridState vu = apply_monomial(b, v, apply_monomial(b, u, psi));
    // V U = e^{i*pi*theta} U V, the algebra's orientation
    CHECK(state_diff(vu, scaled(uv, PhaseExp(1).value())) < tol::kRepExact);
  }
}

TEST_CASE("monomial application matches member-by-member application") {
  const Certificate cert = builtin_peres2();
  GridSpec spec;
  spec.n_dof = 2;
  spec.N = 8;
  const GridBinding b = default_binding(cert.system, spec);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const GridState psi = random_state(rng, spec.N * spec.N);
    for (const auto& ctx : cert.contexts) {
      WeylMonomial prod = cert.monomial(ctx[0]);
      for (std::size_t i = 1; i < ctx.size(); ++i) prod = prod * cert.monomial(ctx[i]);
      GridState seq = psi;
      for (std::size_t i = ctx.size(); i-- > 0;)
        seq = apply_monomial(b, cert.monomial(ctx[i]), seq);
      CHECK(state_diff(seq, apply_monomial(b, prod, psi)) < tol::kAlgebraic);
    }
  }
}

TEST_CASE("the two scalar products negate every state") {
  std::mt19937 rng(20240801);
  {
    const Certificate cert = builtin_peres2();
    GridSpec spec;
    spec.n_dof = 2;
    spec.N = 8;
    const GridBinding b = default_binding(cert.system, spec);
    const auto FG = cert.monomial("F") * cert.monomial("G");
    for (int trial = 0; trial < 100; ++trial) {
      const GridState psi = random_state(rng, spec.N * spec.N);
      CHECK(state_diff(apply_monomial(b, FG, psi), scaled(psi, -1.0)) < tol::kAlgebraic);
    }
  }
  {
    const Certificate cert = builtin_mermin3();
    GridSpec spec;
    spec.n_dof = 3;
    spec.N = 4;
    const GridBinding b = default_binding(cert.system, spec);
    const auto T = cert.monomial("T1") * cert.monomial("T2") * cert.monomial("T3") *
                   cert.monomial("T4");
    for (int trial = 0; trial < 100; ++trial) {
      const GridState psi = random_state(rng, spec.N * spec.N * spec.N);
      CHECK(state_diff(apply_monomial(b, T, psi), scaled(psi, -1.0)) < tol::kAlgebraic);
    }
  }
}

TEST_CASE("the delta ridge is a joint eigenstate of both pair products") {
  const Certificate cert = builtin_peres2();
  GridSpec spec;
  spec.n_dof = 2;
  spec.N = 8;
  const GridBinding b = default_binding(cert.system, spec);

  for (long x0 = 0; x0 < static_cast<long>(spec.N); ++x0) {
    const GridState delta = make_epr_delta(spec, x0);
    const EigenFit f = check_eigenstate(b, cert.monomial("F"), delta);
    const EigenFit g = check_eigenstate(b, cert.monomial("G"), delta);
    CHECK(f.residual < tol::kAlgebraic);
    CHECK(g.residual < tol::kAlgebraic);
    CHECK(std::abs(f.value * g.value + 1.0) < tol::kAlgebraic);
    if (x0 == 0) {
      CHECK(std::abs(f.value - 1.0) < tol::kAlgebraic);
      CHECK(std::abs(g.value + 1.0) < tol::kAlgebraic);
    }
  }
}

TEST_CASE("the cross pairing has no ridge eigenstate") {
  const Certificate cert = builtin_peres2();
  GridSpec spec;
  spec.n_dof = 2;
  spec.N = 8;
  const GridBinding b = default_binding(cert.system, spec);
  const GridState delta = make_epr_delta(spec, 0);
  // U1 V2 shifts the ridge off itself, so the fit misses by a full unit
  const EigenFit miss = check_eigenstate(b, cert.monomial("B"), delta);
  CHECK(miss.residual > 0.5);
}

TEST_CASE("the ridge concentrates on the momentum antidiagonal") {
  GridSpec spec;
  spec.n_dof = 2;
  spec.N = 8;
  const GridState delta = make_epr_delta(spec, 0);
  const GridState momentum = dft(spec, delta);
  CHECK(momentum_mass_off_antidiagonal(spec, momentum) < tol::kRepExact);
  CHECK(std::abs(momentum.norm() - 1.0) < tol::kRepExact);

  // a generic state is nowhere near the antidiagonal
  std::mt19937 rng(3);
  const GridState noise = random_state(rng, spec.N * spec.N);
  CHECK(momentum_mass_off_antidiagonal(spec, dft(spec, noise)) > 0.5);
}

TEST_CASE("fourier transform is unitary and invertible on the grid") {
  GridSpec spec;
  spec.n_dof = 2;
  spec.N = 4;
  std::mt19937 rng(99);
  const GridState psi = random_state(rng, spec.N * spec.N);
  const GridState q = dft(spec, psi);
  CHECK(std::abs(q.norm() - 1.0) < tol::kRepExact);
  // applying the transform four times returns to the start
  const GridState round = dft(spec, dft(spec, dft(spec, q)));
  CHECK(state_diff(round, psi) < tol::kRepExact);
}

TEST_CASE("GHZ analogue scan returns a full certified set") {
  auto sys = make_system({Rat(1), Rat(1), Rat(1)});
  GridSpec spec;
  spec.n_dof = 3;
  spec.N = 4;
  const GridBinding b = default_binding(sys, spec);
  const auto states = find_ghz_analogues(b);
  REQUIRE(!states.empty());
  CHECK(states.size() == 64);  // a complete joint eigenbasis of the N^3 grid

  for (const auto& g : states) {
    CHECK(g.max_residual <= tol::kEigen);
    REQUIRE(g.eigenvalues.size() == 4);
    std::complex<double> prod = 1.0;
    for (const auto& e : g.eigenvalues) prod *= e;
    CHECK(std::abs(prod + 1.0) < tol::kEigen);
  }
}

TEST_CASE("GHZ scan rejects wrong shapes") {
  {
    auto sys = make_system({Rat(1), Rat(1)});
    GridSpec spec;
    spec.n_dof = 2;
    spec.N = 4;
    CHECK_THROWS_AS(find_ghz_analogues(default_binding(sys, spec)), error);
  }
  {
    auto sys = make_system({Rat(1), Rat(1), Rat(3)});
    GridSpec spec;
    spec.n_dof = 3;
    spec.N = 4;
    // theta (1,1,3) binds fine but is not the unit-twist triple the scan wants
    CHECK_THROWS_AS(find_ghz_analogues(default_binding(sys, spec)), binding_error);
  }
}
