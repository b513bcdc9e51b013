#include "dgi/dual_inverses.hpp"

#include <algorithm>
#include <cmath>

namespace dgi {

const char* to_string(InverseKind kind) {
  switch (kind) {
    case InverseKind::MPDGI: return "mpdgi";
    case InverseKind::DMPGI: return "dmpgi";
    case InverseKind::DGGI: return "dggi";
    case InverseKind::DCGI: return "dcgi";
    case InverseKind::DDGI: return "ddgi";
    case InverseKind::DDMPGI: return "ddmpgi";
  }
  return "?";
}

std::optional<InverseKind> inverse_kind_from_string(std::string_view name) {
  if (name == "mpdgi") return InverseKind::MPDGI;
  if (name == "dmpgi") return InverseKind::DMPGI;
  if (name == "dggi") return InverseKind::DGGI;
  if (name == "dcgi") return InverseKind::DCGI;
  if (name == "ddgi") return InverseKind::DDGI;
  if (name == "ddmpgi") return InverseKind::DDMPGI;
  return std::nullopt;
}

void ResidualReport::add(std::string name, double value) {
  entries.emplace_back(std::move(name), value);
}

double ResidualReport::max_residual() const {
  double m = 0.0;
  for (const auto& [_, v] : entries) m = std::max(m, v);
  return m;
}

const double* ResidualReport::find(std::string_view name) const {
  for (const auto& [k, v] : entries)
    if (k == name) return &v;
  return nullptr;
}

bool ResidualReport::all_within(double threshold) const {
  return max_residual() <= threshold;
}

RealMatrix graded_dual_part(const RealMatrix& a, const RealMatrix& b, int k) {
  require_square(a, "graded_dual_part");
  RealMatrix d = RealMatrix::Zero(a.rows(), a.cols());
  for (int i = 0; i < k; ++i)
    d += matrix_power(a, k - 1 - i) * b * matrix_power(a, i);
  return d;
}

namespace {

// Residual of a "sum of terms = 0" identity, scaled by the term norms.
double zero_residual(std::initializer_list<RealMatrix> terms) {
  if (terms.size() == 0) return 0.0;
  const RealMatrix* first = terms.begin();
  RealMatrix sum = RealMatrix::Zero(first->rows(), first->cols());
  double scale = 1.0;
  for (const auto& t : terms) {
    sum += t;
    scale += t.norm();
  }
  return sum.norm() / scale;
}

void penrose_residuals(const DualMatrix& m, const DualMatrix& x, ResidualReport& rep) {
  const DualMatrix mx = multiply(m, x);
  const DualMatrix xm = multiply(x, m);
  rep.add("penrose_axa", dual_eq_residual(multiply(mx, m), m));
  rep.add("penrose_xax", dual_eq_residual(multiply(xm, x), x));
  rep.add("penrose_ax_sym", dual_eq_residual(transpose(mx), mx));
  rep.add("penrose_xa_sym", dual_eq_residual(transpose(xm), xm));
}

InverseResult finalize(InverseKind kind, int k, DualMatrix candidate, ResidualReport rep,
                       const Tolerances& tol) {
  InverseResult out;
  out.kind = kind;
  out.k = k;
  out.report = std::move(rep);
  out.exists = out.report.all_within(tol.resid_rel);
  if (out.exists) out.inverse = std::move(candidate);
  return out;
}

}  // namespace

DualMatrix mpdgi(const DualMatrix& m, const Tolerances& tol) {
  const RealMatrix ap = mp_inverse(m.real, tol);
  return DualMatrix(ap, -(ap * m.dual * ap));
}

InverseResult dmpgi(const DualMatrix& m, const Tolerances& tol) {
  const RealMatrix& a = m.real;
  const RealMatrix& b = m.dual;
  const auto rows = a.rows();
  const auto cols = a.cols();
  const RealMatrix ap = mp_inverse(a, tol);
  const RealMatrix im = RealMatrix::Identity(rows, rows);
  const RealMatrix in = RealMatrix::Identity(cols, cols);

  ResidualReport rep;
  rep.add("projector", zero_residual({(im - a * ap) * b * (in - ap * a)}));

  // Same condition as an integer rank identity; the two tests must agree.
  RealMatrix block = RealMatrix::Zero(rows + rows, cols + cols);
  block.topLeftCorner(rows, cols) = b;
  block.topRightCorner(rows, cols) = a;
  block.bottomLeftCorner(rows, cols) = a;
  const int gap = numerical_rank(block, tol) - 2 * numerical_rank(a, tol);
  rep.add("rank_gap", std::abs(static_cast<double>(gap)));

  const RealMatrix r = ap * b * ap -
                       mp_inverse(a.transpose() * a, tol) * b.transpose() * (im - a * ap) -
                       (in - ap * a) * b.transpose() * mp_inverse(a * a.transpose(), tol);
  DualMatrix candidate(ap, -r);
  if (rep.all_within(tol.resid_rel)) penrose_residuals(m, candidate, rep);
  return finalize(InverseKind::DMPGI, 0, std::move(candidate), std::move(rep), tol);
}

InverseResult dggi(const DualMatrix& m, const Tolerances& tol) {
  require_square(m.real, "dggi");
  const int n = static_cast<int>(m.rows());
  const int k = index(m.real, tol);

  ResidualReport rep;
  rep.add("index_excess", static_cast<double>(std::max(0, k - 1)));
  if (k > 1) {
    return finalize(InverseKind::DGGI, 1, DualMatrix::zero(n, n), std::move(rep), tol);
  }

  const RealMatrix& a = m.real;
  const RealMatrix& b = m.dual;
  const RealMatrix ash = group_inverse(a, tol);
  const RealMatrix i = RealMatrix::Identity(n, n);
  const RealMatrix q = i - a * ash;
  rep.add("projector", zero_residual({q * b * q}));

  const RealMatrix r = -ash * b * ash + ash * ash * b * q + q * b * ash * ash;
  DualMatrix candidate(ash, r);
  if (rep.all_within(tol.resid_rel)) {
    ResidualReport eqs = verify_inverse(InverseKind::DGGI, m, candidate, 1, tol);
    for (auto& e : eqs.entries) rep.add(std::move(e.first), e.second);
  }
  return finalize(InverseKind::DGGI, 1, std::move(candidate), std::move(rep), tol);
}

InverseResult dcgi(const DualMatrix& m, const Tolerances& tol) {
  require_square(m.real, "dcgi");
  const int n = static_cast<int>(m.rows());
  const int k = index(m.real, tol);

  ResidualReport rep;
  rep.add("index_excess", static_cast<double>(std::max(0, k - 1)));
  if (k > 1) {
    return finalize(InverseKind::DCGI, 1, DualMatrix::zero(n, n), std::move(rep), tol);
  }

  const RealMatrix& a = m.real;
  const RealMatrix& b = m.dual;
  const RealMatrix acore = core_inverse(a, tol);
  const RealMatrix ash = group_inverse(a, tol);
  const RealMatrix ap = mp_inverse(a, tol);
  const RealMatrix i = RealMatrix::Identity(n, n);
  const RealMatrix q = i - a * ash;

  const RealMatrix r = -acore * b * ap + ash * b * ap - ash * b * acore +
                       acore * (b * ap).transpose() * q + q * b * ash * acore;
  DualMatrix candidate(acore, r);
  ResidualReport eqs = verify_inverse(InverseKind::DCGI, m, candidate, 1, tol);
  for (auto& e : eqs.entries) rep.add(std::move(e.first), e.second);
  return finalize(InverseKind::DCGI, 1, std::move(candidate), std::move(rep), tol);
}

InverseResult ddgi(const DualMatrix& m, const Tolerances& tol) {
  require_square(m.real, "ddgi");
  const int n = static_cast<int>(m.rows());
  const RealMatrix& a = m.real;
  const RealMatrix& b = m.dual;
  const auto [ad, k] = drazin_inverse(a, tol);
  const RealMatrix d = graded_dual_part(a, b, k);
  const RealMatrix i = RealMatrix::Identity(n, n);
  const RealMatrix q = i - a * ad;

  ResidualReport rep;
  rep.add("existence", zero_residual({q * d * (ad * a - i)}));

  const RealMatrix adk1 = matrix_power(ad, k + 1);
  const RealMatrix r = -ad * b * ad + adk1 * d * q + q * d * adk1;
  DualMatrix candidate(ad, r);
  if (rep.all_within(tol.resid_rel)) {
    ResidualReport eqs = verify_inverse(InverseKind::DDGI, m, candidate, k, tol);
    for (auto& e : eqs.entries) rep.add(std::move(e.first), e.second);
  }
  return finalize(InverseKind::DDGI, k, std::move(candidate), std::move(rep), tol);
}

bool ddgi_exists_rank(const DualMatrix& m, const Tolerances& tol) {
  require_square(m.real, "ddgi_exists_rank");
  const int n = static_cast<int>(m.rows());
  const int k = index(m.real, tol);
  const RealMatrix ak = matrix_power(m.real, k);
  const RealMatrix d = graded_dual_part(m.real, m.dual, k);
  RealMatrix block = RealMatrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = d;
  block.topRightCorner(n, n) = ak;
  block.bottomLeftCorner(n, n) = ak;
  return numerical_rank(block, tol) == 2 * numerical_rank(ak, tol);
}

bool ddgi_exists_aux(const DualMatrix& m, const Tolerances& tol) {
  require_square(m.real, "ddgi_exists_aux");
  const int k = index(m.real, tol);
  const RealMatrix ak = matrix_power(m.real, k);
  const RealMatrix d = graded_dual_part(m.real, m.dual, k);
  return dmpgi(DualMatrix(ak, d), tol).exists;
}

InverseResult ddgi_absorbed(const DualMatrix& m, const Tolerances& tol) {
  require_square(m.real, "ddgi_absorbed");
  const RealMatrix& a = m.real;
  const auto [ad, k] = drazin_inverse(a, tol);
  const RealMatrix d = graded_dual_part(a, m.dual, k);
  const RealMatrix aad = a * ad;

  const double hyp_left = relative_residual(aad * d, d);
  const double hyp_right = relative_residual(d * aad, d);
  if (hyp_left > tol.resid_rel || hyp_right > tol.resid_rel) {
    throw HypothesisFailed("ddgi_absorbed: AA^D D = D AA^D = D fails, residuals " +
                           std::to_string(hyp_left) + " / " + std::to_string(hyp_right));
  }

  ResidualReport rep;
  rep.add("hypothesis_left", hyp_left);
  rep.add("hypothesis_right", hyp_right);
  DualMatrix candidate(ad, -(ad * d * ad));

  const InverseResult general = ddgi(m, tol);
  rep.add("matches_general",
          general.exists ? dual_distance(candidate, *general.inverse) : 1.0);
  ResidualReport eqs = verify_inverse(InverseKind::DDGI, m, candidate, k, tol);
  for (auto& e : eqs.entries) rep.add(std::move(e.first), e.second);
  return finalize(InverseKind::DDGI, k, std::move(candidate), std::move(rep), tol);
}

InverseResult ddmpgi(const DualMatrix& m, const Tolerances& tol) {
  require_square(m.real, "ddmpgi");
  const InverseResult dz = ddgi(m, tol);
  const InverseResult mp = dmpgi(m, tol);

  ResidualReport rep;
  rep.add("ddgi_max", dz.report.max_residual());
  rep.add("dmpgi_max", mp.report.max_residual());

  if (!dz.exists || !mp.exists) {
    return finalize(InverseKind::DDMPGI, dz.k,
                    DualMatrix::zero(m.rows(), m.cols()), std::move(rep), tol);
  }
  DualMatrix candidate = multiply(multiply(*dz.inverse, m), *mp.inverse);
  rep.add("fixed_point",
          dual_eq_residual(multiply(multiply(candidate, m), candidate), candidate));
  return finalize(InverseKind::DDMPGI, dz.k, std::move(candidate), std::move(rep), tol);
}

ResidualReport verify_inverse(InverseKind kind, const DualMatrix& m, const DualMatrix& x,
                              int k, const Tolerances& tol) {
  if (m.rows() != x.cols() || m.cols() != x.rows()) {
    throw ShapeMismatch("verify_inverse: candidate shape does not match");
  }
  ResidualReport rep;
  switch (kind) {
    case InverseKind::MPDGI:
    case InverseKind::DMPGI: {
      penrose_residuals(m, x, rep);
      break;
    }
    case InverseKind::DGGI: {
      const DualMatrix mx = multiply(m, x);
      const DualMatrix xm = multiply(x, m);
      rep.add("axa", dual_eq_residual(multiply(mx, m), m));
      rep.add("xax", dual_eq_residual(multiply(xm, x), x));
      rep.add("commute", dual_eq_residual(mx, xm));
      // Characterizing equations tying the dual parts together.
      const RealMatrix& a = m.real;
      const RealMatrix& b = m.dual;
      const RealMatrix& g = x.real;
      const RealMatrix& r = x.dual;
      rep.add("char_b", zero_residual({-b, a * g * b, a * r * a, b * g * a}));
      rep.add("char_r", zero_residual({-r, g * a * r, g * b * g, r * a * g}));
      rep.add("char_cross", zero_residual({a * r, b * g, -(r * a), -(g * b)}));
      break;
    }
    case InverseKind::DCGI: {
      const DualMatrix mx = multiply(m, x);
      rep.add("axa", dual_eq_residual(multiply(mx, m), m));
      rep.add("axx", dual_eq_residual(multiply(mx, x), x));
      rep.add("ax_sym", dual_eq_residual(transpose(mx), mx));
      break;
    }
    case InverseKind::DDGI: {
      const DualMatrix mk = power(m, k);
      const DualMatrix mx = multiply(m, x);
      const DualMatrix xm = multiply(x, m);
      rep.add("akxa", dual_eq_residual(multiply(multiply(mk, x), m), mk));
      rep.add("xax", dual_eq_residual(multiply(xm, x), x));
      rep.add("commute", dual_eq_residual(mx, xm));
      const RealMatrix& a = m.real;
      const RealMatrix& b = m.dual;
      const RealMatrix& g = x.real;
      const RealMatrix& r = x.dual;
      const RealMatrix ak = matrix_power(a, k);
      const RealMatrix d = graded_dual_part(a, b, k);
      const RealMatrix i = RealMatrix::Identity(a.rows(), a.cols());
      rep.add("eq31", zero_residual({ak * g * b, ak * r * a, d * (g * a - i)}));
      rep.add("eq32", zero_residual({-r, g * a * r, g * b * g, r * a * g}));
      rep.add("eq33", zero_residual({a * r, b * g, -(r * a), -(g * b)}));
      break;
    }
    case InverseKind::DDMPGI: {
      rep.add("fixed_point", dual_eq_residual(multiply(multiply(x, m), x), x));
      const InverseResult dz = ddgi(m, tol);
      const InverseResult mp = dmpgi(m, tol);
      if (dz.exists && mp.exists) {
        rep.add("definition",
                dual_distance(x, multiply(multiply(*dz.inverse, m), *mp.inverse)));
      } else {
        rep.add("components_exist", 1.0);
      }
      break;
    }
  }
  return rep;
}

}  // namespace dgi
