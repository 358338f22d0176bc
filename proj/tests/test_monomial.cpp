#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "weylks/monomial.hpp"

using namespace weylks;

namespace {

WeylMonomial random_monomial(const DofSystemPtr& sys, std::mt19937& rng) {
  std::uniform_int_distribution<long> exp_dist(-3, 3);
  std::uniform_int_distribution<int> phase_dist(0, 3);
  const Rat phases[] = {Rat(0), Rat(1), make_rat(1, 2), make_rat(4, 3)};
  std::vector<Int> m(sys->n_dof()), n(sys->n_dof());
  for (auto& e : m) e = exp_dist(rng);
  for (auto& e : n) e = exp_dist(rng);
  return WeylMonomial(sys, PhaseExp(phases[phase_dist(rng)]), std::move(m), std::move(n));
}

}  // namespace

TEST_CASE("reordering V past U costs the twist phase") {
  auto sys = make_system({Rat(1)});
  const auto u = WeylMonomial::u_gen(sys, 0);
  const auto v = WeylMonomial::v_gen(sys, 0);
  // V U = e^{i*pi*theta} U V, so the normal form of v*u carries phase -1
  const auto vu = v * u;
  CHECK(vu.phase() == PhaseExp(1));
  CHECK(vu.phase_free() == (u * v).phase_free());
  CHECK((u * v).phase().is_zero());

  auto sys3 = make_system({make_rat(1, 3)});
  const auto w = WeylMonomial::v_gen(sys3, 0) * WeylMonomial::u_gen(sys3, 0);
  CHECK(w.phase() == PhaseExp(make_rat(1, 3)));
}

TEST_CASE("higher powers accumulate n*m crossings") {
  auto sys = make_system({Rat(1)});
  const auto u2 = WeylMonomial::u_gen(sys, 0, 2);
  const auto v3 = WeylMonomial::v_gen(sys, 0, 3);
  // V^3 U^2 = e^{i*pi*6} U^2 V^3: an even crossing count, the phase cancels
  CHECK((v3 * u2).phase().is_zero());
  auto sys5 = make_system({make_rat(1, 5)});
  const auto a = WeylMonomial::v_gen(sys5, 0, 3) * WeylMonomial::u_gen(sys5, 0, 2);
  CHECK(a.phase() == PhaseExp(make_rat(6, 5)));
}

TEST_CASE("generators on distinct dofs commute freely") {
  auto sys = make_system({Rat(1), Rat(1), Rat(1)});
  const auto u1 = WeylMonomial::u_gen(sys, 0);
  const auto v2 = WeylMonomial::v_gen(sys, 1);
  CHECK(u1 * v2 == v2 * u1);
  CHECK(symplectic_phase(u1, v2).is_zero());
  CHECK(commute(u1, v2));
}

TEST_CASE("group laws hold exactly") {
  auto sys = make_system({Rat(1), make_rat(1, 3)});
  std::mt19937 rng(20240801);
  const auto id = WeylMonomial::identity(sys);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_monomial(sys, rng);
    const auto b = random_monomial(sys, rng);
    const auto c = random_monomial(sys, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * id == a);
    CHECK(id * a == a);
    CHECK(a * inverse(a) == id);
    CHECK(inverse(a) * a == id);
    CHECK(inverse(a * b) == inverse(b) * inverse(a));
  }
}

TEST_CASE("symplectic phase matches the exchange identity") {
  auto sys = make_system({Rat(1), make_rat(2, 5)});
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_monomial(sys, rng);
    const auto b = random_monomial(sys, rng);
    const PhaseExp c = symplectic_phase(a, b);
    // a b = e^{i*pi*c} b a, all of it exact
    CHECK(a * b == (b * a).with_phase(phase_mul((b * a).phase(), c)));
    CHECK(phase_mul(c, symplectic_phase(b, a)).is_zero());
  }
  const auto u = WeylMonomial::u_gen(sys, 0);
  const auto v = WeylMonomial::v_gen(sys, 0);
  CHECK(symplectic_phase(u, v) == PhaseExp(1));
}

TEST_CASE("powers reduce to repeated multiplication") {
  auto sys = make_system({make_rat(3, 7)});
  std::mt19937 rng(11);
  const auto a = random_monomial(sys, rng);
  WeylMonomial acc = a;
  for (int k = 2; k <= 5; ++k) {
    acc = acc * a;
    CHECK(monomial_pow(a, k) == acc);
  }
  CHECK(monomial_pow(a, 0) == WeylMonomial::identity(sys));
  CHECK(monomial_pow(a, -3) == inverse(a * a * a));
}

TEST_CASE("the pair-of-degrees products hit the -1 scalar") {
  auto sys = make_system({Rat(1), Rat(1)});
  const auto u1 = WeylMonomial::u_gen(sys, 0), u2 = WeylMonomial::u_gen(sys, 1);
  const auto v1 = WeylMonomial::v_gen(sys, 0), v2 = WeylMonomial::v_gen(sys, 1);
  const auto A = inverse(u1) * u2;
  const auto B = u1 * v2;
  const auto C = v1 * inverse(u2);
  const auto D = inverse(v1) * inverse(v2);
  const auto F = A * D;
  const auto G = B * C;
  CHECK(commute(A, D));
  CHECK(commute(B, C));
  CHECK(commute(F, G));
  const auto FG = F * G;
  CHECK(FG.exponents_zero());
  CHECK(FG.phase() == PhaseExp(1));  // F G = -1
}

TEST_CASE("the three-party quadruple multiplies to -1") {
  auto sys = make_system({Rat(1), Rat(1), Rat(1)});
  const auto u = [&](std::size_t j, long k) { return WeylMonomial::u_gen(sys, j, k); };
  const auto v = [&](std::size_t j, long k) { return WeylMonomial::v_gen(sys, j, k); };
  const auto T1 = u(0, 1) * v(1, -1) * v(2, -1);
  const auto T2 = v(0, -1) * u(1, 1) * v(2, 1);
  const auto T3 = v(0, 1) * v(1, 1) * u(2, 1);
  const auto T4 = u(0, -1) * u(1, -1) * u(2, -1);
  const WeylMonomial Ts[] = {T1, T2, T3, T4};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) CHECK(commute(Ts[i], Ts[j]));
  const auto prod = T1 * T2 * T3 * T4;
  CHECK(prod.exponents_zero());
  CHECK(prod.phase() == PhaseExp(1));
}

TEST_CASE("printing then parsing is exact") {
  auto sys = make_system({Rat(1), make_rat(1, 3)});
  std::mt19937 rng(20240801);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_monomial(sys, rng);
    CHECK(parse_monomial(to_string(a), sys) == a);
  }
  CHECK(to_string(WeylMonomial::identity(sys)) == "+1");
  CHECK(parse_monomial("+1", sys) == WeylMonomial::identity(sys));
}

TEST_CASE("parser accepts non-normal-ordered input") {
  auto sys = make_system({Rat(1)});
  const auto left = parse_monomial("V1 U1", sys);
  const auto right = WeylMonomial::v_gen(sys, 0) * WeylMonomial::u_gen(sys, 0);
  CHECK(left == right);
  CHECK(left.phase() == PhaseExp(1));
  CHECK(parse_monomial("-1 * U1 V1", sys) == left);
  // crossing U1^-2 back past V1^-1 costs e^{i*pi*2}, which is no phase at all
  CHECK(parse_monomial("i * U1^2 V1^-1 U1^-2", sys) == parse_monomial("i * V1^-1", sys));
}

TEST_CASE("malformed monomial text is rejected") {
  auto sys = make_system({Rat(1), Rat(1)});
  CHECK_THROWS_AS(parse_monomial("", sys), parse_error);
  CHECK_THROWS_AS(parse_monomial("U0", sys), parse_error);
  CHECK_THROWS_AS(parse_monomial("U3", sys), parse_error);
  CHECK_THROWS_AS(parse_monomial("W1", sys), parse_error);
  CHECK_THROWS_AS(parse_monomial("U1^", sys), parse_error);
  CHECK_THROWS_AS(parse_monomial("U1^x", sys), parse_error);
  CHECK_THROWS_AS(parse_monomial("U1 * * V1", sys), parse_error);
  CHECK_THROWS_AS(parse_monomial("2 * U1", sys), parse_error);
}

TEST_CASE("operands must live on equal systems") {
  auto a = make_system({Rat(1)});
  auto b = make_system({Rat(1), Rat(1)});
  CHECK_THROWS_AS(WeylMonomial::u_gen(a, 0) * WeylMonomial::u_gen(b, 0), error);
  // equal by value is enough: distinct shared_ptrs to the same twists work
  auto a2 = make_system({Rat(1)});
  CHECK(WeylMonomial::u_gen(a, 0) * WeylMonomial::v_gen(a2, 0) ==
        WeylMonomial::u_gen(a, 0) * WeylMonomial::v_gen(a, 0));
}
