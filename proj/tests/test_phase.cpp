#include <catch2/catch_amalgamated.hpp>

#include "weylks/phase.hpp"

using namespace weylks;

TEST_CASE("exponents are canonical in [0, 2)") {
  CHECK(PhaseExp(make_rat(5, 2)).q() == make_rat(1, 2));
  CHECK(PhaseExp(make_rat(-1, 2)).q() == make_rat(3, 2));
  CHECK(PhaseExp(Rat(2)).is_zero());
  CHECK(PhaseExp(Rat(-7)).q() == 1);
  CHECK(PhaseExp(make_rat(-13, 3)).q() == make_rat(5, 3));
  CHECK(PhaseExp().is_zero());
}

TEST_CASE("abelian group laws") {
  const PhaseExp a(make_rat(3, 4)), b(make_rat(7, 5)), c(make_rat(1, 3));
  CHECK(phase_mul(a, b) == phase_mul(b, a));
  CHECK(phase_mul(phase_mul(a, b), c) == phase_mul(a, phase_mul(b, c)));
  CHECK(phase_mul(a, phase_inv(a)).is_zero());
  CHECK(phase_mul(a, PhaseExp()) == a);
  CHECK(a - b == phase_mul(a, phase_inv(b)));
}

TEST_CASE("powers repeat multiplication") {
  const PhaseExp a(make_rat(2, 3));
  PhaseExp acc;
  for (int i = 0; i < 5; ++i) acc = phase_mul(acc, a);
  CHECK(phase_pow(a, 5) == acc);
  CHECK(phase_pow(a, 0).is_zero());
  CHECK(phase_pow(a, -2) == phase_inv(phase_mul(a, a)));
  CHECK(phase_pow(a, 3).is_zero());  // (e^{i*pi*2/3})^3 = e^{2*pi*i}
}

TEST_CASE("quarter turns get short names") {
  CHECK(phase_to_string(PhaseExp()) == "+1");
  CHECK(phase_to_string(PhaseExp(1)) == "-1");
  CHECK(phase_to_string(PhaseExp(1, 2)) == "+i");
  CHECK(phase_to_string(PhaseExp(3, 2)) == "-i");
  CHECK(phase_to_string(PhaseExp(make_rat(1, 3))) == "exp(i*pi*1/3)");
  CHECK(phase_to_string(PhaseExp(make_rat(-1, 3))) == "exp(i*pi*5/3)");
}

TEST_CASE("printing then parsing is exact") {
  const Rat qs[] = {Rat(0), Rat(1), make_rat(1, 2), make_rat(3, 2), make_rat(7, 6),
                    make_rat(-22, 7), make_rat(1, 997)};
  for (const Rat& q : qs) {
    const PhaseExp p(q);
    CHECK(parse_phase(phase_to_string(p)) == p);
  }
  CHECK(parse_phase("1") == PhaseExp());
  CHECK(parse_phase("i") == PhaseExp(1, 2));
}

TEST_CASE("malformed phase text is rejected") {
  CHECK_THROWS_AS(parse_phase(""), parse_error);
  CHECK_THROWS_AS(parse_phase("2"), parse_error);
  CHECK_THROWS_AS(parse_phase("exp(i*pi*)"), parse_error);
  CHECK_THROWS_AS(parse_phase("exp(i*pi*1/2"), parse_error);
  CHECK_THROWS_AS(parse_phase("e^(i pi)"), parse_error);
}

TEST_CASE("numeric bridge lands on the unit circle") {
  CHECK(std::abs(PhaseExp(1).value() - std::complex<double>(-1, 0)) < 1e-15);
  CHECK(std::abs(PhaseExp(1, 2).value() - std::complex<double>(0, 1)) < 1e-15);
  const PhaseExp p(make_rat(5, 7));
  CHECK(std::abs(std::abs(p.value()) - 1.0) < 1e-15);
  CHECK(std::abs(p.value() - std::polar(1.0, std::numbers::pi * 5 / 7)) < 1e-15);
}
