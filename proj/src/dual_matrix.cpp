#include "dgi/dual_matrix.hpp"

#include <algorithm>
#include <utility>

namespace dgi {

namespace {

void require_same_shape(const RealMatrix& a, const RealMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch(std::string(what) + ": parts are " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
  }
}

}  // namespace

DualMatrix::DualMatrix(RealMatrix re, RealMatrix du)
    : real(std::move(re)), dual(std::move(du)) {
  require_same_shape(real, dual, "DualMatrix");
}

DualMatrix DualMatrix::from_real(RealMatrix re) {
  RealMatrix zero = RealMatrix::Zero(re.rows(), re.cols());
  return DualMatrix(std::move(re), std::move(zero));
}

DualMatrix DualMatrix::identity(Eigen::Index n) {
  return DualMatrix(RealMatrix::Identity(n, n), RealMatrix::Zero(n, n));
}

DualMatrix DualMatrix::zero(Eigen::Index rows, Eigen::Index cols) {
  return DualMatrix(RealMatrix::Zero(rows, cols), RealMatrix::Zero(rows, cols));
}

DualVector::DualVector(RealVector re, RealVector du)
    : real(std::move(re)), dual(std::move(du)) {
  if (real.size() != dual.size()) {
    throw ShapeMismatch("DualVector: parts have lengths " + std::to_string(real.size()) +
                        " vs " + std::to_string(dual.size()));
  }
}

DualVector DualVector::from_real(RealVector re) {
  RealVector zero = RealVector::Zero(re.size());
  return DualVector(std::move(re), std::move(zero));
}

DualVector DualVector::zero(Eigen::Index n) {
  return DualVector(RealVector::Zero(n), RealVector::Zero(n));
}

DualMatrix multiply(const DualMatrix& lhs, const DualMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw ShapeMismatch("multiply: inner dimensions " + std::to_string(lhs.cols()) + " vs " +
                        std::to_string(rhs.rows()));
  }
  return DualMatrix(lhs.real * rhs.real, lhs.real * rhs.dual + lhs.dual * rhs.real);
}

DualVector multiply(const DualMatrix& lhs, const DualVector& rhs) {
  if (lhs.cols() != rhs.size()) {
    throw ShapeMismatch("multiply: matrix cols " + std::to_string(lhs.cols()) +
                        " vs vector length " + std::to_string(rhs.size()));
  }
  return DualVector(lhs.real * rhs.real, lhs.real * rhs.dual + lhs.dual * rhs.real);
}

DualMatrix power(const DualMatrix& m, int k) {
  if (!m.is_square()) throw ShapeMismatch("power: matrix must be square");
  if (k < 0) throw Error("power: negative exponent");
  DualMatrix out = DualMatrix::identity(m.rows());
  for (int i = 0; i < k; ++i) out = multiply(out, m);
  return out;
}

DualMatrix add(const DualMatrix& lhs, const DualMatrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw ShapeMismatch("add: shapes differ");
  return DualMatrix(lhs.real + rhs.real, lhs.dual + rhs.dual);
}

DualMatrix subtract(const DualMatrix& lhs, const DualMatrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw ShapeMismatch("subtract: shapes differ");
  return DualMatrix(lhs.real - rhs.real, lhs.dual - rhs.dual);
}

DualMatrix scale(double c, const DualMatrix& m) {
  return DualMatrix(c * m.real, c * m.dual);
}

DualMatrix transpose(const DualMatrix& m) {
  return DualMatrix(m.real.transpose(), m.dual.transpose());
}

DualVector add(const DualVector& lhs, const DualVector& rhs) {
  if (lhs.size() != rhs.size()) throw ShapeMismatch("add: vector lengths differ");
  return DualVector(lhs.real + rhs.real, lhs.dual + rhs.dual);
}

DualVector subtract(const DualVector& lhs, const DualVector& rhs) {
  if (lhs.size() != rhs.size()) throw ShapeMismatch("subtract: vector lengths differ");
  return DualVector(lhs.real - rhs.real, lhs.dual - rhs.dual);
}

double dual_norm(const DualMatrix& m) {
  return std::max(m.real.norm(), m.dual.norm());
}

double dual_norm(const DualVector& v) {
  return std::max(v.real.norm(), v.dual.norm());
}

double dual_distance(const DualMatrix& lhs, const DualMatrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw ShapeMismatch("dual_distance: shapes differ");
  const double dr = (lhs.real - rhs.real).norm() / (1.0 + lhs.real.norm());
  const double dd = (lhs.dual - rhs.dual).norm() / (1.0 + lhs.dual.norm());
  return std::max(dr, dd);
}

double dual_distance(const DualVector& lhs, const DualVector& rhs) {
  if (lhs.size() != rhs.size()) throw ShapeMismatch("dual_distance: lengths differ");
  const double dr = (lhs.real - rhs.real).norm() / (1.0 + lhs.real.norm());
  const double dd = (lhs.dual - rhs.dual).norm() / (1.0 + lhs.dual.norm());
  return std::max(dr, dd);
}

double dual_eq_residual(const DualMatrix& lhs, const DualMatrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw ShapeMismatch("dual_eq_residual: shapes differ");
  const double rr =
      (lhs.real - rhs.real).norm() / (1.0 + lhs.real.norm() + rhs.real.norm());
  const double rd =
      (lhs.dual - rhs.dual).norm() / (1.0 + lhs.dual.norm() + rhs.dual.norm());
  return std::max(rr, rd);
}

}  // namespace dgi
