#include "dgi/real_inverses.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>

namespace dgi {

void Tolerances::validate() const {
  const bool ok = rank_rel > 0.0 && rank_rel < 1.0 && resid_rel > 0.0 && resid_rel < 1.0;
  if (!ok) {
    throw Error("tolerances must lie strictly inside (0, 1): rank_rel=" +
                std::to_string(rank_rel) + " resid_rel=" + std::to_string(resid_rel));
  }
}

double relative_residual(const RealMatrix& lhs, const RealMatrix& rhs) {
  return (lhs - rhs).norm() / (1.0 + lhs.norm() + rhs.norm());
}

RealMatrix matrix_power(const RealMatrix& a, int k) {
  require_square(a, "matrix_power");
  RealMatrix out = RealMatrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

int numerical_rank(const RealMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  const double cut = tol.rank_rel * s(0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

int numerical_rank_scaled(const RealMatrix& m, double scale, const Tolerances& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double cut = tol.rank_rel * std::max(s(0), scale);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++r;
  return r;
}

int index(const RealMatrix& a, const Tolerances& tol) {
  require_square(a, "index");
  const int n = static_cast<int>(a.rows());
  RealMatrix p = RealMatrix::Identity(n, n);
  int rank_prev = n;
  for (int k = 0; k <= n; ++k) {
    RealMatrix next = p * a;
    const int rank_next = numerical_rank(next, tol);
    if (rank_next == rank_prev) return k;
    p = std::move(next);
    rank_prev = rank_next;
  }
  return n;
}

RealMatrix mp_inverse(const RealMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return RealMatrix(m.cols(), m.rows());
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cut = s.size() > 0 ? tol.rank_rel * s(0) : 0.0;
  RealVector inv = RealVector::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

DrazinResult drazin_inverse(const RealMatrix& a, const Tolerances& tol) {
  require_square(a, "drazin_inverse");
  const int k = index(a, tol);
  const RealMatrix ak = matrix_power(a, k);
  const RealMatrix mid = mp_inverse(matrix_power(a, 2 * k + 1), tol);
  return DrazinResult{ak * mid * ak, k};
}

RealMatrix group_inverse(const RealMatrix& a, const Tolerances& tol) {
  require_square(a, "group_inverse");
  if (numerical_rank(a, tol) != numerical_rank(a * a, tol)) {
    throw NoGroupInverse("group inverse does not exist: rank(A) != rank(A^2)");
  }
  return drazin_inverse(a, tol).inverse;
}

RealMatrix core_inverse(const RealMatrix& a, const Tolerances& tol) {
  require_square(a, "core_inverse");
  if (numerical_rank(a, tol) != numerical_rank(a * a, tol)) {
    throw NoCoreInverse("core inverse does not exist: rank(A) != rank(A^2)");
  }
  return drazin_inverse(a, tol).inverse * a * mp_inverse(a, tol);
}

CoreNilpotent core_nilpotent(const RealMatrix& a, const Tolerances& tol) {
  require_square(a, "core_nilpotent");
  const int n = static_cast<int>(a.rows());
  const int k = index(a, tol);
  const RealMatrix ak = matrix_power(a, k);
  const int r = numerical_rank(ak, tol);

  // Columns of P: orthonormal basis of R(A^k) followed by one of N(A^k).
  // Both subspaces are A-invariant and complementary, so P^-1 A P is block
  // diagonal up to rounding.
  Eigen::JacobiSVD<RealMatrix> svd(ak, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealMatrix p(n, n);
  p.leftCols(r) = svd.matrixU().leftCols(r);
  p.rightCols(n - r) = svd.matrixV().rightCols(n - r);

  Eigen::FullPivLU<RealMatrix> lu(p);
  if (!lu.isInvertible()) {
    throw DecompositionFailure("core_nilpotent: basis of R(A^k) + N(A^k) is singular");
  }
  const RealMatrix similar = lu.solve(a * p);

  CoreNilpotent out;
  out.P = p;
  out.C = similar.topLeftCorner(r, r);
  out.N = similar.bottomRightCorner(n - r, n - r);
  out.r = r;
  out.k = k;

  RealMatrix block = RealMatrix::Zero(n, n);
  block.topLeftCorner(r, r) = out.C;
  block.bottomRightCorner(n - r, n - r) = out.N;
  const RealMatrix recon = p * block * lu.inverse();
  if (relative_residual(recon, a) > tol.resid_rel) {
    throw DecompositionFailure("core_nilpotent: reconstruction residual " +
                               std::to_string(relative_residual(recon, a)) +
                               " exceeds threshold");
  }
  return out;
}

}  // namespace dgi
