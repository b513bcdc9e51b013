#pragma once

#include "dgi/dual_inverses.hpp"

namespace dgi {

/// Which real generalized inverse backs a particular-form dual inverse.
enum class RealInverseKind { MoorePenrose, Group, Drazin, Core };

const char* to_string(RealInverseKind kind);
std::optional<RealInverseKind> real_inverse_kind_from_string(std::string_view name);

struct LawCheck {
  std::string name;
  double residual = 0.0;
  bool holds = false;
};

/// Outcome of an order-law or absorption check. Hypothesis flags are reported
/// separately from the conclusion: the theorems give sufficient conditions
/// only, so a law may hold with hypotheses false.
struct LawReport {
  std::vector<LawCheck> hypotheses;
  bool reverse_holds = false;
  bool forward_holds = false;
  std::vector<std::pair<std::string, double>> distances;

  bool all_hypotheses_hold() const;
};

/// The particular form A^c - e A^c B A^c for c in {+, #, D, core}.
/// Throws NoGroupInverse / NoCoreInverse when the real inverse is missing.
DualMatrix particular_form(RealInverseKind kind, const DualMatrix& m,
                           const Tolerances& tol = {});

/// Evaluates the commutation hypotheses for the requested kind and whether
/// the reverse and forward order laws hold for the particular form of the
/// product against the product of particular forms.
LawReport check_order_law(RealInverseKind kind, const DualMatrix& a, const DualMatrix& c,
                          const Tolerances& tol = {});

/// Absorption identity A^D_hat (A_hat + C_hat) C^D_hat = A^D_hat + C^D_hat
/// for particular-form dual Drazin inverses. Hypotheses: A equals the dual
/// part of C_hat, R(A) = R(C) and N(A) = N(C). Both law flags carry the
/// single conclusion.
LawReport absorption_check(const DualMatrix& a, const DualMatrix& c,
                           const Tolerances& tol = {});

/// D-group order via the general-formula dual group inverse of x:
/// x^# x = x^# y and x x^# = y x^#. Throws NoDggi.
bool d_group_leq(const DualMatrix& x, const DualMatrix& y, const Tolerances& tol = {});

/// Real-matrix characterization of the D-group order: the sharp order of the
/// real parts plus two dual-part equalities. Throws NoGroupInverse.
bool d_group_leq_char(const DualMatrix& x, const DualMatrix& y, const Tolerances& tol = {});

/// D-core order via the dual core inverse of x. Throws NoDcgi.
bool d_core_leq(const DualMatrix& x, const DualMatrix& y, const Tolerances& tol = {});

/// Real-matrix characterization of the D-core order. Throws NoCoreInverse.
bool d_core_leq_char(const DualMatrix& x, const DualMatrix& y, const Tolerances& tol = {});

}  // namespace dgi
