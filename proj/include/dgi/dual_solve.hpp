#pragma once

#include "dgi/dual_inverses.hpp"

namespace dgi {

/// Consistency of the system m * x = b via the dual Drazin inverse:
/// the system is solvable iff m * m^D * b = b.
/// Throws NoDdgi when the dual Drazin inverse of m does not exist.
bool is_consistent(const DualMatrix& m, const DualVector& b, const Tolerances& tol = {});

/// The unique solution lying in the range of m^k, namely m^D * b.
/// Throws NoDdgi / Inconsistent.
DualVector solve_unique(const DualMatrix& m, const DualVector& b, const Tolerances& tol = {});

/// m^D b + (m^(k-1) - m^D m^k) z. For k = 0 the homogeneous term vanishes.
/// Throws NoDdgi / Inconsistent.
DualVector general_solution(const DualMatrix& m, const DualVector& b, const DualVector& z,
                            const Tolerances& tol = {});

/// Membership of w in the range of m^k over the dual numbers, decided by two
/// real rank tests (w.real against R(A^k), then the dual part against the
/// span of A^k and D restricted to the null space of A^k).
bool in_range_power(const DualMatrix& m, const DualVector& w, const Tolerances& tol = {});

/// Membership of w in the null space of m^k: A^k w.real = 0 and
/// A^k w.dual + D w.real = 0.
bool in_null_power(const DualMatrix& m, const DualVector& w, const Tolerances& tol = {});

}  // namespace dgi
