#include <catch2/catch_amalgamated.hpp>

#include "weylks/json_io.hpp"
#include "weylks/search.hpp"

using namespace weylks;

namespace {

// the exact-algebra double check a reported certificate must survive
void require_genuine_contradiction(const Certificate& cert, const Witness& w) {
  const CompiledSystem cs = compile_certificate(cert);
  const Analysis an = analyze(cs);
  REQUIRE(an.contradiction);
  const WitnessCheck chk = verify_witness(cs, w.row_coeffs);
  CHECK(chk.valid());
}

}  // namespace

TEST_CASE("class enumeration counts and invariants") {
  {
    auto sys = make_system({Rat(1)});
    const auto classes = enumerate_monomial_classes(sys, 1);
    CHECK(classes.size() == 5);  // identity + (3^2 - 1) / 2 representatives
    const auto u_classes = enumerate_monomial_classes(sys, 1, true);
    CHECK(u_classes.size() == 2);  // identity + U1
  }
  {
    auto sys = make_system({Rat(1), Rat(1)});
    const auto classes = enumerate_monomial_classes(sys, 1);
    CHECK(classes.size() == 41);  // identity + (3^4 - 1) / 2
    for (const auto& w : classes) {
      CHECK(w.phase() == PhaseExp());
      // the interleaved exponent list starts nonnegative, so each inverse
      // pair appears exactly once
      bool seen = false;
      for (std::size_t j = 0; j < 2 && !seen; ++j)
        for (const Int* e : {&w.m()[j], &w.n()[j]}) {
          if (*e == 0) continue;
          if (!seen) CHECK(*e > 0);
          seen = true;
          break;
        }
    }
    CHECK(enumerate_monomial_classes(sys, 1, true).size() == 5);
  }
  CHECK_THROWS_AS(enumerate_monomial_classes(make_system({Rat(1)}), 0), error);
}

TEST_CASE("one degree of freedom admits no odd-scalar context") {
  SearchParams p;
  p.n_dof = 1;
  const SearchResult res = search_obstruction(p);
  CHECK(res.status == SearchStatus::absent);
  CHECK(res.stats.pool_size == 8);
  CHECK(res.stats.seeds == 0);
  CHECK(res.stats.nodes == 0);
  CHECK(!res.certificate);
  CHECK(!res.witness);
}

TEST_CASE("position-only monomials admit no odd-scalar context") {
  SearchParams p;
  p.n_dof = 2;
  p.u_only = true;
  const SearchResult res = search_obstruction(p);
  CHECK(res.status == SearchStatus::absent);
  CHECK(res.stats.pool_size == 8);  // four U-axis classes, both orientations
  CHECK(res.stats.seeds == 0);
}

TEST_CASE("default two-dof search finds a six-context obstruction") {
  SearchParams p;
  p.n_dof = 2;
  const SearchResult res = search_obstruction(p);
  REQUIRE(res.status == SearchStatus::found);
  CHECK(res.stats.pool_size == 80);
  CHECK(res.stats.class_count == 40);
  CHECK(res.stats.seeds == 264);
  CHECK(res.stats.seeds_after_symmetry == 14);
  CHECK(!res.stats.node_budget_hit);
  CHECK(!res.stats.time_budget_hit);
  CHECK(res.stats.nodes > 0);
  CHECK(res.stats.nodes < 10000);

  REQUIRE(res.certificate);
  REQUIRE(res.witness);
  const Certificate& cert = *res.certificate;
  CHECK(res.contexts_used == 6);
  CHECK(cert.contexts.size() == 6);
  CHECK(cert.monomials.size() == 18);

  for (const auto& ctx : cert.contexts) {
    CHECK(ctx.size() >= 3);
    CHECK(ctx.size() <= 4);
    WeylMonomial prod = cert.monomial(ctx[0]);
    for (std::size_t i = 1; i < ctx.size(); ++i) prod = prod * cert.monomial(ctx[i]);
    CHECK(prod.exponents_zero());
  }
  require_genuine_contradiction(cert, *res.witness);
}

TEST_CASE("two runs with equal parameters agree bit for bit") {
  SearchParams p;
  p.n_dof = 2;
  const SearchResult a = search_obstruction(p);
  const SearchResult b = search_obstruction(p);
  CHECK(a.status == b.status);
  CHECK(a.contexts_used == b.contexts_used);
  CHECK(a.stats.nodes == b.stats.nodes);
  CHECK(a.stats.seeds == b.stats.seeds);
  REQUIRE(a.certificate);
  REQUIRE(b.certificate);
  CHECK(certificate_to_json(*a.certificate).dump() == certificate_to_json(*b.certificate).dump());
  CHECK(a.witness->row_coeffs == b.witness->row_coeffs);
}

TEST_CASE("symmetry reduction changes the work, not the answer") {
  SearchParams p;
  p.n_dof = 2;
  p.use_symmetry = false;
  const SearchResult res = search_obstruction(p);
  REQUIRE(res.status == SearchStatus::found);
  CHECK(res.contexts_used == 6);
  CHECK(res.stats.seeds == 264);
  CHECK(res.stats.seeds_after_symmetry == 264);  // nothing filtered

  SearchParams q;
  q.n_dof = 2;
  const SearchResult sym = search_obstruction(q);
  CHECK(res.stats.nodes > sym.stats.nodes);
  require_genuine_contradiction(*res.certificate, *res.witness);
}

TEST_CASE("three degrees of freedom still complete within the defaults") {
  SearchParams p;
  p.n_dof = 3;
  const SearchResult res = search_obstruction(p);
  REQUIRE(res.status == SearchStatus::found);
  CHECK(res.contexts_used == 5);
  require_genuine_contradiction(*res.certificate, *res.witness);
}

TEST_CASE("budgets cut the search off with an honest status") {
  {
    SearchParams p;
    p.n_dof = 2;
    p.node_budget = 5;
    const SearchResult res = search_obstruction(p);
    CHECK(res.status == SearchStatus::exhausted);
    CHECK(res.stats.node_budget_hit);
    CHECK(!res.certificate);
  }
  {
    SearchParams p;
    p.n_dof = 2;
    p.time_budget_seconds = 1e-9;
    const SearchResult res = search_obstruction(p);
    CHECK(res.status == SearchStatus::exhausted);
    CHECK(res.stats.time_budget_hit);
  }
}

TEST_CASE("parameter validation refuses what it cannot search") {
  {
    SearchParams p;
    p.n_dof = 7;
    CHECK_THROWS_AS(search_obstruction(p), error);
  }
  {
    SearchParams p;
    p.n_dof = 2;
    p.max_exponent = 4;
    CHECK_THROWS_AS(search_obstruction(p), error);
  }
  {
    SearchParams p;
    p.n_dof = 2;
    p.max_context_size = 1;
    CHECK_THROWS_AS(search_obstruction(p), error);
  }
  {
    SearchParams p;
    p.n_dof = 2;
    p.theta = {make_rat(1, 3), Rat(1)};
    CHECK_THROWS_WITH(search_obstruction(p),
                      Catch::Matchers::ContainsSubstring("integer twists"));
  }
  {
    SearchParams p;
    p.n_dof = 2;
    p.theta = {Rat(1)};
    CHECK_THROWS_AS(search_obstruction(p), error);
  }
  {
    SearchParams p;
    p.n_dof = 6;
    p.max_exponent = 3;
    CHECK_THROWS_WITH(search_obstruction(p), Catch::Matchers::ContainsSubstring("too large"));
  }
}
