#include "dgi/order_laws.hpp"

namespace dgi {

const char* to_string(RealInverseKind kind) {
  switch (kind) {
    case RealInverseKind::MoorePenrose: return "mp";
    case RealInverseKind::Group: return "group";
    case RealInverseKind::Drazin: return "drazin";
    case RealInverseKind::Core: return "core";
  }
  return "?";
}

std::optional<RealInverseKind> real_inverse_kind_from_string(std::string_view name) {
  if (name == "mp") return RealInverseKind::MoorePenrose;
  if (name == "group") return RealInverseKind::Group;
  if (name == "drazin") return RealInverseKind::Drazin;
  if (name == "core") return RealInverseKind::Core;
  return std::nullopt;
}

bool LawReport::all_hypotheses_hold() const {
  for (const auto& h : hypotheses)
    if (!h.holds) return false;
  return true;
}

namespace {

RealMatrix real_inverse(RealInverseKind kind, const RealMatrix& a, const Tolerances& tol) {
  switch (kind) {
    case RealInverseKind::MoorePenrose: return mp_inverse(a, tol);
    case RealInverseKind::Group: return group_inverse(a, tol);
    case RealInverseKind::Drazin: return drazin_inverse(a, tol).inverse;
    case RealInverseKind::Core: return core_inverse(a, tol);
  }
  throw Error("unreachable");
}

LawCheck commute_check(std::string name, const RealMatrix& l, const RealMatrix& r,
                       const Tolerances& tol) {
  const double resid = relative_residual(l * r, r * l);
  return LawCheck{std::move(name), resid, resid <= tol.resid_rel};
}

}  // namespace

DualMatrix particular_form(RealInverseKind kind, const DualMatrix& m, const Tolerances& tol) {
  const RealMatrix inv = real_inverse(kind, m.real, tol);
  return DualMatrix(inv, -(inv * m.dual * inv));
}

LawReport check_order_law(RealInverseKind kind, const DualMatrix& a, const DualMatrix& c,
                          const Tolerances& tol) {
  const RealMatrix a_inv = real_inverse(kind, a.real, tol);
  const RealMatrix c_inv = real_inverse(kind, c.real, tol);

  LawReport rep;
  rep.hypotheses.push_back(commute_check("AC_commute", a.real, c.real, tol));
  if (kind == RealInverseKind::MoorePenrose || kind == RealInverseKind::Core) {
    rep.hypotheses.push_back(
        commute_check("At_C_commute", RealMatrix(a.real.transpose()), c.real, tol));
  }
  rep.hypotheses.push_back(commute_check("Cinv_B_commute", c_inv, a.dual, tol));
  rep.hypotheses.push_back(commute_check("Ainv_D_commute", a_inv, c.dual, tol));

  const DualMatrix product = multiply(a, c);
  const DualMatrix product_pf = particular_form(kind, product, tol);
  const DualMatrix a_pf(a_inv, -(a_inv * a.dual * a_inv));
  const DualMatrix c_pf(c_inv, -(c_inv * c.dual * c_inv));
  const DualMatrix forward = multiply(a_pf, c_pf);
  const DualMatrix reverse = multiply(c_pf, a_pf);

  const double d_forward = dual_distance(product_pf, forward);
  const double d_reverse = dual_distance(product_pf, reverse);
  rep.distances.emplace_back("forward", d_forward);
  rep.distances.emplace_back("reverse", d_reverse);
  rep.distances.emplace_back("factors", dual_distance(forward, reverse));
  rep.forward_holds = d_forward <= tol.resid_rel;
  rep.reverse_holds = d_reverse <= tol.resid_rel;
  return rep;
}

LawReport absorption_check(const DualMatrix& a, const DualMatrix& c, const Tolerances& tol) {
  require_square(a.real, "absorption_check");
  if (a.rows() != c.rows() || a.cols() != c.cols())
    throw ShapeMismatch("absorption_check: operands differ in shape");
  const int n = static_cast<int>(a.rows());

  LawReport rep;
  const double hyp_ad = relative_residual(a.real, c.dual);
  rep.hypotheses.push_back({"A_eq_dual_of_C", hyp_ad, hyp_ad <= tol.resid_rel});

  const int ra = numerical_rank(a.real, tol);
  const int rc = numerical_rank(c.real, tol);
  RealMatrix cols(n, 2 * n);
  cols.leftCols(n) = a.real;
  cols.rightCols(n) = c.real;
  const int gap_range = std::abs(numerical_rank(cols, tol) - ra) + std::abs(ra - rc);
  rep.hypotheses.push_back(
      {"range_equal", static_cast<double>(gap_range), gap_range == 0});
  RealMatrix rows(2 * n, n);
  rows.topRows(n) = a.real;
  rows.bottomRows(n) = c.real;
  const int gap_null = std::abs(numerical_rank(rows, tol) - ra) + std::abs(ra - rc);
  rep.hypotheses.push_back({"null_equal", static_cast<double>(gap_null), gap_null == 0});

  const DualMatrix a_pf = particular_form(RealInverseKind::Drazin, a, tol);
  const DualMatrix c_pf = particular_form(RealInverseKind::Drazin, c, tol);
  const DualMatrix lhs = multiply(multiply(a_pf, add(a, c)), c_pf);
  const DualMatrix rhs = add(a_pf, c_pf);
  const double dist = dual_distance(lhs, rhs);
  rep.distances.emplace_back("absorption", dist);
  rep.forward_holds = rep.reverse_holds = dist <= tol.resid_rel;
  return rep;
}

bool d_group_leq(const DualMatrix& x, const DualMatrix& y, const Tolerances& tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw ShapeMismatch("d_group_leq: operands differ in shape");
  const InverseResult inv = dggi(x, tol);
  if (!inv.exists) {
    throw NoDggi("d_group_leq: dual group inverse of the left operand does not exist");
  }
  const DualMatrix& xsh = *inv.inverse;
  const double left = dual_eq_residual(multiply(xsh, x), multiply(xsh, y));
  const double right = dual_eq_residual(multiply(x, xsh), multiply(y, xsh));
  return left <= tol.resid_rel && right <= tol.resid_rel;
}

bool d_group_leq_char(const DualMatrix& x, const DualMatrix& y, const Tolerances& tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw ShapeMismatch("d_group_leq_char: operands differ in shape");
  const RealMatrix xs = group_inverse(x.real, tol);
  const int n = static_cast<int>(x.rows());
  const RealMatrix i = RealMatrix::Identity(n, n);
  const RealMatrix q = i - x.real * xs;
  const RealMatrix r = -xs * x.dual * xs + xs * xs * x.dual * q + q * x.dual * xs * xs;

  const double sharp_left = relative_residual(xs * x.real, xs * y.real);
  const double sharp_right = relative_residual(x.real * xs, y.real * xs);
  const double dual_left =
      relative_residual(xs * x.dual + r * x.real, xs * y.dual + r * y.real);
  const double dual_right =
      relative_residual(x.real * r + x.dual * xs, y.real * r + y.dual * xs);
  return sharp_left <= tol.resid_rel && sharp_right <= tol.resid_rel &&
         dual_left <= tol.resid_rel && dual_right <= tol.resid_rel;
}

bool d_core_leq(const DualMatrix& x, const DualMatrix& y, const Tolerances& tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw ShapeMismatch("d_core_leq: operands differ in shape");
  const InverseResult inv = dcgi(x, tol);
  if (!inv.exists) {
    throw NoDcgi("d_core_leq: dual core inverse of the left operand does not exist");
  }
  const DualMatrix& xc = *inv.inverse;
  const double left = dual_eq_residual(multiply(xc, x), multiply(xc, y));
  const double right = dual_eq_residual(multiply(x, xc), multiply(y, xc));
  return left <= tol.resid_rel && right <= tol.resid_rel;
}

bool d_core_leq_char(const DualMatrix& x, const DualMatrix& y, const Tolerances& tol) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw ShapeMismatch("d_core_leq_char: operands differ in shape");
  const RealMatrix xcore = core_inverse(x.real, tol);
  const RealMatrix xs = group_inverse(x.real, tol);
  const RealMatrix xp = mp_inverse(x.real, tol);
  const int n = static_cast<int>(x.rows());
  const RealMatrix i = RealMatrix::Identity(n, n);
  const RealMatrix q = i - x.real * xs;
  const RealMatrix r = -xcore * x.dual * xp + xs * x.dual * xp - xs * x.dual * xcore +
                       xcore * (x.dual * xp).transpose() * q + q * x.dual * xs * xcore;

  const double core_left = relative_residual(xcore * x.real, xcore * y.real);
  const double core_right = relative_residual(x.real * xcore, y.real * xcore);
  const double dual_left =
      relative_residual(xcore * x.dual + r * x.real, xcore * y.dual + r * y.real);
  const double dual_right =
      relative_residual(x.real * r + x.dual * xcore, y.real * r + y.dual * xcore);
  return core_left <= tol.resid_rel && core_right <= tol.resid_rel &&
         dual_left <= tol.resid_rel && dual_right <= tol.resid_rel;
}

}  // namespace dgi
