#pragma once

#include "dgi/types.hpp"

namespace dgi {

/// Matrix over the dual numbers, A + eps*B with eps^2 = 0.
/// Both parts always share one shape.
struct DualMatrix {
  RealMatrix real;
  RealMatrix dual;

  DualMatrix() = default;
  DualMatrix(RealMatrix re, RealMatrix du);

  static DualMatrix from_real(RealMatrix re);
  static DualMatrix identity(Eigen::Index n);
  static DualMatrix zero(Eigen::Index rows, Eigen::Index cols);

  Eigen::Index rows() const { return real.rows(); }
  Eigen::Index cols() const { return real.cols(); }
  bool is_square() const { return real.rows() == real.cols(); }
};

/// Vector over the dual numbers.
struct DualVector {
  RealVector real;
  RealVector dual;

  DualVector() = default;
  DualVector(RealVector re, RealVector du);

  static DualVector from_real(RealVector re);
  static DualVector zero(Eigen::Index n);

  Eigen::Index size() const { return real.size(); }
};

/// (A + eB)(C + eD) = AC + e(AD + BC).
DualMatrix multiply(const DualMatrix& lhs, const DualMatrix& rhs);
DualVector multiply(const DualMatrix& lhs, const DualVector& rhs);

/// A^k with the graded dual part sum_{i<k} A^(k-1-i) B A^i; k = 0 gives I.
DualMatrix power(const DualMatrix& m, int k);

DualMatrix add(const DualMatrix& lhs, const DualMatrix& rhs);
DualMatrix subtract(const DualMatrix& lhs, const DualMatrix& rhs);
DualMatrix scale(double c, const DualMatrix& m);
DualMatrix transpose(const DualMatrix& m);

DualVector add(const DualVector& lhs, const DualVector& rhs);
DualVector subtract(const DualVector& lhs, const DualVector& rhs);

inline DualMatrix operator*(const DualMatrix& l, const DualMatrix& r) { return multiply(l, r); }
inline DualVector operator*(const DualMatrix& l, const DualVector& r) { return multiply(l, r); }
inline DualMatrix operator+(const DualMatrix& l, const DualMatrix& r) { return add(l, r); }
inline DualMatrix operator-(const DualMatrix& l, const DualMatrix& r) { return subtract(l, r); }

/// Part-wise max Frobenius norm.
double dual_norm(const DualMatrix& m);
double dual_norm(const DualVector& v);

/// Equality oracle: max over the two parts of
/// ||L.part - R.part||_F / (1 + ||L.part||_F).
double dual_distance(const DualMatrix& lhs, const DualMatrix& rhs);
double dual_distance(const DualVector& lhs, const DualVector& rhs);

/// Residual of the dual equation L = R, each part normalized by
/// 1 + the part norms of both sides.
double dual_eq_residual(const DualMatrix& lhs, const DualMatrix& rhs);

}  // namespace dgi
