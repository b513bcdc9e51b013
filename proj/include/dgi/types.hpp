#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace dgi {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Thresholds governing every rank and existence decision.
/// rank_rel is the relative singular-value cutoff, resid_rel the relative
/// residual cutoff. Both must lie strictly inside (0, 1).
struct Tolerances {
  double rank_rel = 1e-10;
  double resid_rel = 1e-8;

  void validate() const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NoGroupInverse : public Error {
 public:
  using Error::Error;
};

class NoCoreInverse : public Error {
 public:
  using Error::Error;
};

class DecompositionFailure : public Error {
 public:
  using Error::Error;
};

class NoDggi : public Error {
 public:
  using Error::Error;
};

class NoDcgi : public Error {
 public:
  using Error::Error;
};

class NoDdgi : public Error {
 public:
  using Error::Error;
};

class Inconsistent : public Error {
 public:
  using Error::Error;
};

class HypothesisFailed : public Error {
 public:
  using Error::Error;
};

class BadShapeParams : public Error {
 public:
  using Error::Error;
};

inline void require_square(const RealMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw ShapeMismatch(std::string(what) + ": expected a square matrix, got " +
                        std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace dgi
