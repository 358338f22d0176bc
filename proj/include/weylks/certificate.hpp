#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "weylks/monomial.hpp"

namespace weylks {

// A named family of monomials together with the contexts (sets of mutually
// commuting members) whose value constraints the assignment compiler turns
// into linear equations. Member order inside a context and context order in
// the list are preserved: they fix the column numbering downstream.
struct Certificate {
  DofSystemPtr system;
  std::map<std::string, WeylMonomial> monomials;
  std::vector<std::vector<std::string>> contexts;

  const WeylMonomial& monomial(const std::string& id) const {
    auto it = monomials.find(id);
    if (it == monomials.end()) throw error("certificate has no monomial named '" + id + "'");
    return it->second;
  }
};

// Pair-of-degrees certificate built from the eight generator powers
// U1^±1, U2^±1, V1^±1, V2^±1 and the six products they generate:
//
//   A = U1^-1 U2    B = U1 V2    C = V1 U2^-1    D = V1^-1 V2^-1
//   F = A*D         G = B*C
//
// grouped into seven contexts ending with {F, G}. Against the default
// twists (1, 1) the final product F*G is the scalar -1, so no +-1 value
// assignment survives; the twist vector is a parameter so the same shape
// can be compiled against other commutation patterns.
inline Certificate builtin_peres2(std::vector<Rat> theta = {}) {
  if (theta.empty()) theta = {Rat(1), Rat(1)};
  auto sys = make_system(std::move(theta));
  if (sys->n_dof() != 2) throw error("builtin_peres2 needs exactly 2 degrees of freedom");

  Certificate cert;
  cert.system = sys;
  auto& m = cert.monomials;
  m.emplace("u1", WeylMonomial::u_gen(sys, 0, 1));
  m.emplace("u1inv", WeylMonomial::u_gen(sys, 0, -1));
  m.emplace("u2", WeylMonomial::u_gen(sys, 1, 1));
  m.emplace("u2inv", WeylMonomial::u_gen(sys, 1, -1));
  m.emplace("v1", WeylMonomial::v_gen(sys, 0, 1));
  m.emplace("v1inv", WeylMonomial::v_gen(sys, 0, -1));
  m.emplace("v2", WeylMonomial::v_gen(sys, 1, 1));
  m.emplace("v2inv", WeylMonomial::v_gen(sys, 1, -1));
  m.emplace("A", m.at("u1inv") * m.at("u2"));
  m.emplace("B", m.at("u1") * m.at("v2"));
  m.emplace("C", m.at("v1") * m.at("u2inv"));
  m.emplace("D", m.at("v1inv") * m.at("v2inv"));
  m.emplace("F", m.at("A") * m.at("D"));
  m.emplace("G", m.at("B") * m.at("C"));

  cert.contexts = {
      {"u1inv", "u2"}, {"u1", "v2"},   {"v1", "u2inv"}, {"v1inv", "v2inv"},
      {"A", "D"},      {"B", "C"},     {"F", "G"},
  };
  return cert;
}

// Triple-of-degrees certificate: four three-fold products of generator
// powers plus the context holding all four of them.
//
//   T1 = U1 V2^-1 V3^-1    T2 = V1^-1 U2 V3
//   T3 = V1 V2 U3          T4 = U1^-1 U2^-1 U3^-1
//
// With twists (1, 1, 1) each Ti is a product of three commuting factors and
// T1*T2*T3*T4 = -1, a five-context obstruction.
inline Certificate builtin_mermin3(std::vector<Rat> theta = {}) {
  if (theta.empty()) theta = {Rat(1), Rat(1), Rat(1)};
  auto sys = make_system(std::move(theta));
  if (sys->n_dof() != 3) throw error("builtin_mermin3 needs exactly 3 degrees of freedom");

  Certificate cert;
  cert.system = sys;
  auto& m = cert.monomials;
  const char* uname[3] = {"u1", "u2", "u3"};
  const char* uinv[3] = {"u1inv", "u2inv", "u3inv"};
  const char* vname[3] = {"v1", "v2", "v3"};
  const char* vinv[3] = {"v1inv", "v2inv", "v3inv"};
  for (std::size_t j = 0; j < 3; ++j) {
    m.emplace(uname[j], WeylMonomial::u_gen(sys, j, 1));
    m.emplace(uinv[j], WeylMonomial::u_gen(sys, j, -1));
    m.emplace(vname[j], WeylMonomial::v_gen(sys, j, 1));
    m.emplace(vinv[j], WeylMonomial::v_gen(sys, j, -1));
  }
  m.emplace("T1", m.at("u1") * m.at("v2inv") * m.at("v3inv"));
  m.emplace("T2", m.at("v1inv") * m.at("u2") * m.at("v3"));
  m.emplace("T3", m.at("v1") * m.at("v2") * m.at("u3"));
  m.emplace("T4", m.at("u1inv") * m.at("u2inv") * m.at("u3inv"));

  cert.contexts = {
      {"u1", "v2inv", "v3inv"},
      {"v1inv", "u2", "v3"},
      {"v1", "v2", "u3"},
      {"u1inv", "u2inv", "u3inv"},
      {"T1", "T2", "T3", "T4"},
  };
  return cert;
}

}  // namespace weylks
