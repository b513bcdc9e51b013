#pragma once

#include "dgi/types.hpp"

namespace dgi {

/// Similarity decomposition A = P * blockdiag(C, N) * P^-1 with C nonsingular
/// (r x r) and N nilpotent. r equals rank(A^k) for k = index(A); k is the
/// nilpotency index of N (0 when N is empty).
struct CoreNilpotent {
  RealMatrix P;
  RealMatrix C;
  RealMatrix N;
  int r = 0;
  int k = 0;
};

struct DrazinResult {
  RealMatrix inverse;
  int k = 0;
};

/// Number of singular values above rank_rel times the largest one.
int numerical_rank(const RealMatrix& m, const Tolerances& tol = {});

/// Rank of a computed product whose exact value may be zero: singular values
/// are measured against rank_rel * max(sigma_max, scale), where scale is the
/// natural size of the product (for example the product of factor norms).
/// A plain relative cutoff would count rounding noise as rank there.
int numerical_rank_scaled(const RealMatrix& m, double scale, const Tolerances& tol = {});

/// Smallest k >= 0 with rank(A^k) = rank(A^(k+1)), taking A^0 = I.
int index(const RealMatrix& a, const Tolerances& tol = {});

/// Moore-Penrose inverse via SVD with singular values below the rank
/// threshold treated as zero. Defined for any shape.
RealMatrix mp_inverse(const RealMatrix& m, const Tolerances& tol = {});

/// Group inverse A^#. Throws NoGroupInverse when rank(A) != rank(A^2).
RealMatrix group_inverse(const RealMatrix& a, const Tolerances& tol = {});

/// Drazin inverse computed as A^k * (A^(2k+1))^+ * A^k with k = index(A).
DrazinResult drazin_inverse(const RealMatrix& a, const Tolerances& tol = {});

/// Core inverse A^# * A * A^+. Throws NoCoreInverse when rank(A) != rank(A^2).
RealMatrix core_inverse(const RealMatrix& a, const Tolerances& tol = {});

/// Core-nilpotent decomposition built from an orthonormal basis of the range
/// of A^k completed by a basis of its null space. Serves as an independent
/// route to the Drazin inverse (P * blockdiag(C^-1, 0) * P^-1).
/// Throws DecompositionFailure when the reconstruction residual exceeds
/// tol.resid_rel.
CoreNilpotent core_nilpotent(const RealMatrix& a, const Tolerances& tol = {});

/// Integer power with A^0 = I; k >= 0.
RealMatrix matrix_power(const RealMatrix& a, int k);

/// ||L - R||_F / (1 + ||L||_F + ||R||_F).
double relative_residual(const RealMatrix& lhs, const RealMatrix& rhs);

}  // namespace dgi
