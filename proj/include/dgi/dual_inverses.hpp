#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dgi/dual_matrix.hpp"
#include "dgi/real_inverses.hpp"

namespace dgi {

enum class InverseKind { MPDGI, DMPGI, DGGI, DCGI, DDGI, DDMPGI };

const char* to_string(InverseKind kind);
std::optional<InverseKind> inverse_kind_from_string(std::string_view name);

/// Named nonnegative residuals, one per defining equation or existence
/// condition checked. Insertion order is preserved for reporting.
struct ResidualReport {
  std::vector<std::pair<std::string, double>> entries;

  void add(std::string name, double value);
  double max_residual() const;
  const double* find(std::string_view name) const;
  bool all_within(double threshold) const;
};

/// Outcome of a dual-inverse construction. The invariant holds by
/// construction: exists is true iff the inverse is present iff every
/// residual in the report is within resid_rel.
struct InverseResult {
  InverseKind kind = InverseKind::DDGI;
  bool exists = false;
  std::optional<DualMatrix> inverse;
  int k = 0;
  ResidualReport report;
};

/// The graded dual part of (A + eB)^k: sum_{i<k} A^(k-1-i) B A^i.
RealMatrix graded_dual_part(const RealMatrix& a, const RealMatrix& b, int k);

/// A^+ - e A^+ B A^+. Always defined; not a dual inverse in general.
DualMatrix mpdgi(const DualMatrix& m, const Tolerances& tol = {});

/// Dual Moore-Penrose inverse. Exists iff (I - AA^+) B (I - A^+A) = 0,
/// equivalently rank([[B, A], [A, 0]]) = 2 rank(A); both are checked.
InverseResult dmpgi(const DualMatrix& m, const Tolerances& tol = {});

/// Dual group inverse; requires index(A) <= 1 and the projector condition
/// (I - AA^#) B (I - AA^#) = 0.
InverseResult dggi(const DualMatrix& m, const Tolerances& tol = {});

/// Dual core inverse: the candidate's dual part is assembled from the core,
/// group and Moore-Penrose inverses of A; existence is decided by checking
/// the three defining equations of the candidate.
InverseResult dcgi(const DualMatrix& m, const Tolerances& tol = {});

/// Dual Drazin inverse with k = index(A).
/// Exists iff (I - AA^D) D (A^D A - I) = 0 where D is the graded dual part
/// of (A + eB)^k; the value is A^D + eR with
/// R = -A^D B A^D + (A^D)^(k+1) D (I - AA^D) + (I - AA^D) D (A^D)^(k+1).
InverseResult ddgi(const DualMatrix& m, const Tolerances& tol = {});

/// Existence test via rank([[D, A^k], [A^k, 0]]) = 2 rank(A^k).
bool ddgi_exists_rank(const DualMatrix& m, const Tolerances& tol = {});

/// Existence test via the DMPGI of A^k + eD.
bool ddgi_exists_aux(const DualMatrix& m, const Tolerances& tol = {});

/// Shortcut A^D - e A^D D A^D, valid when AA^D D = D AA^D = D.
/// Throws HypothesisFailed when that premise does not hold.
InverseResult ddgi_absorbed(const DualMatrix& m, const Tolerances& tol = {});

/// Dual Drazin/Moore-Penrose composite A^D_hat * A_hat * A^+_hat; exists iff
/// both factors do.
InverseResult ddmpgi(const DualMatrix& m, const Tolerances& tol = {});

/// Residuals of the defining equations of `kind` for the candidate inverse x
/// of m. For DGGI and DDGI the characterizing equations relating the dual
/// parts are included as well. k is the index used by DDGI (ignored by the
/// other kinds).
ResidualReport verify_inverse(InverseKind kind, const DualMatrix& m, const DualMatrix& x,
                              int k, const Tolerances& tol = {});

}  // namespace dgi
