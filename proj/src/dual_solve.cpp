#include "dgi/dual_solve.hpp"

namespace dgi {

namespace {

void require_system_shapes(const DualMatrix& m, const DualVector& b) {
  require_square(m.real, "dual system");
  if (m.rows() != b.size()) {
    throw ShapeMismatch("dual system: matrix is " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + " but right-hand side has length " +
                        std::to_string(b.size()));
  }
}

InverseResult require_ddgi(const DualMatrix& m, const Tolerances& tol) {
  InverseResult res = ddgi(m, tol);
  if (!res.exists) {
    throw NoDdgi("dual Drazin inverse does not exist (max residual " +
                 std::to_string(res.report.max_residual()) + ")");
  }
  return res;
}

// Residual normalized against the right-hand side, so b = 0 is always
// consistent.
double consistency_residual(const DualMatrix& m, const InverseResult& inv,
                            const DualVector& b) {
  const DualVector proj = multiply(multiply(m, *inv.inverse), b);
  return dual_distance(b, proj);
}

}  // namespace

bool is_consistent(const DualMatrix& m, const DualVector& b, const Tolerances& tol) {
  require_system_shapes(m, b);
  const InverseResult inv = require_ddgi(m, tol);
  return consistency_residual(m, inv, b) <= tol.resid_rel;
}

DualVector solve_unique(const DualMatrix& m, const DualVector& b, const Tolerances& tol) {
  require_system_shapes(m, b);
  const InverseResult inv = require_ddgi(m, tol);
  const double resid = consistency_residual(m, inv, b);
  if (resid > tol.resid_rel) {
    throw Inconsistent("system is inconsistent: residual " + std::to_string(resid));
  }
  return multiply(*inv.inverse, b);
}

DualVector general_solution(const DualMatrix& m, const DualVector& b, const DualVector& z,
                            const Tolerances& tol) {
  require_system_shapes(m, b);
  if (m.rows() != z.size()) {
    throw ShapeMismatch("general_solution: parameter vector length " +
                        std::to_string(z.size()) + " does not match");
  }
  const InverseResult inv = require_ddgi(m, tol);
  const double resid = consistency_residual(m, inv, b);
  if (resid > tol.resid_rel) {
    throw Inconsistent("system is inconsistent: residual " + std::to_string(resid));
  }
  const DualVector particular = multiply(*inv.inverse, b);
  if (inv.k == 0) return particular;
  const DualMatrix homogeneous =
      subtract(power(m, inv.k - 1), multiply(*inv.inverse, power(m, inv.k)));
  return add(particular, multiply(homogeneous, z));
}

bool in_range_power(const DualMatrix& m, const DualVector& w, const Tolerances& tol) {
  require_system_shapes(m, w);
  const int n = static_cast<int>(m.rows());
  const int k = index(m.real, tol);
  const RealMatrix ak = matrix_power(m.real, k);
  const RealMatrix d = graded_dual_part(m.real, m.dual, k);

  // Real part first: w.real must lie in R(A^k).
  RealMatrix aug(n, n + 1);
  aug.leftCols(n) = ak;
  aug.col(n) = w.real;
  const int rank_ak = numerical_rank(ak, tol);
  if (numerical_rank(aug, tol) != rank_ak) return false;

  // Dual part: with x0 a particular preimage, the remaining freedom is
  // D restricted to N(A^k), so test against [A^k | D (I - (A^k)^+ A^k)].
  const RealMatrix akp = mp_inverse(ak, tol);
  const RealVector x0 = akp * w.real;
  RealMatrix span(n, 2 * n);
  span.leftCols(n) = ak;
  span.rightCols(n) = d * (RealMatrix::Identity(n, n) - akp * ak);
  const int rank_span = numerical_rank(span, tol);
  RealMatrix span_aug(n, 2 * n + 1);
  span_aug.leftCols(2 * n) = span;
  span_aug.col(2 * n) = w.dual - d * x0;
  return numerical_rank(span_aug, tol) == rank_span;
}

bool in_null_power(const DualMatrix& m, const DualVector& w, const Tolerances& tol) {
  require_system_shapes(m, w);
  const int k = index(m.real, tol);
  const RealMatrix ak = matrix_power(m.real, k);
  const RealMatrix d = graded_dual_part(m.real, m.dual, k);
  const double r_real =
      (ak * w.real).norm() / (1.0 + ak.norm() * w.real.norm());
  const double r_dual = (ak * w.dual + d * w.real).norm() /
                        (1.0 + ak.norm() * w.dual.norm() + d.norm() * w.real.norm());
  return r_real <= tol.resid_rel && r_dual <= tol.resid_rel;
}

}  // namespace dgi
