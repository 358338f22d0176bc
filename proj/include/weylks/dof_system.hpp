#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "weylks/common.hpp"

namespace weylks {

// The ambient degrees of freedom. Each dof j carries one U generator and one
// V generator whose commutation is fixed by the rational parameter theta_j:
//
//     U_j V_j = e^{-i*pi*theta_j} V_j U_j
//
// theta_j = 1 is the anticommuting case and the default. theta_j = 0 is
// rejected: a commuting-by-construction generator pair is modeled by simply
// not using it. Only rationals are representable, which is what keeps every
// phase in the engine exact.
class DofSystem {
 public:
  explicit DofSystem(std::size_t n_dof) : theta_(n_dof, Rat(1)) { validate(); }

  explicit DofSystem(std::vector<Rat> theta) : theta_(std::move(theta)) {
    for (auto& t : theta_) t.canonicalize();
    validate();
  }

  std::size_t n_dof() const { return theta_.size(); }
  const Rat& theta(std::size_t j) const { return theta_.at(j); }
  const std::vector<Rat>& thetas() const { return theta_; }

  bool all_theta_odd_integer() const {
    for (const auto& t : theta_) {
      if (t.get_den() != 1 || mpz_even_p(t.get_num().get_mpz_t())) return false;
    }
    return true;
  }

  friend bool operator==(const DofSystem& a, const DofSystem& b) {
    return a.theta_ == b.theta_;
  }
  friend bool operator!=(const DofSystem& a, const DofSystem& b) { return !(a == b); }

 private:
  void validate() const {
    if (theta_.empty()) throw error("DofSystem needs at least one dof");
    for (const auto& t : theta_) {
      if (t == 0) throw error("theta_j must be nonzero; drop the dof instead");
    }
  }

  std::vector<Rat> theta_;
};

using DofSystemPtr = std::shared_ptr<const DofSystem>;

inline DofSystemPtr make_system(std::size_t n_dof) {
  return std::make_shared<const DofSystem>(n_dof);
}

inline DofSystemPtr make_system(std::vector<Rat> theta) {
  return std::make_shared<const DofSystem>(std::move(theta));
}

// Monomial operations accept operands from distinct shared_ptrs as long as
// the systems are equal by value; serialization round-trips rely on that.
inline bool same_system(const DofSystemPtr& a, const DofSystemPtr& b) {
  return a == b || (a && b && *a == *b);
}

}  // namespace weylks
