#pragma once

// Numeric tolerances used across the oracles. Exact structure (unitarity of
// the representation matrices, grid shifts) is held to near machine epsilon;
// products of several matrices get an order of magnitude of slack; anything
// downstream of an eigensolver gets two.
namespace weylks::tol {

inline constexpr double kRepExact = 1e-12;
inline constexpr double kAlgebraic = 1e-10;
inline constexpr double kEigen = 1e-8;

}  // namespace weylks::tol
