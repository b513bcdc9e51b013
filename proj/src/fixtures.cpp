#include "dgi/fixtures.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace dgi {

std::uint64_t FixtureRng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int FixtureRng::uniform_int(int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(next() % span);
}

double FixtureRng::normal() {
  // Box-Muller on two 53-bit uniforms.
  const double u1 = ((next() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = ((next() >> 11) + 0.5) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

namespace {

double cond_number(const RealMatrix& m) {
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / (s(s.size() - 1));
}

RealMatrix random_int_matrix(int rows, int cols, FixtureRng& rng, int bound = 3) {
  RealMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform_int(-bound, bound);
  return m;
}

// Unimodular P from integer row shears on the identity, with the exact
// integer inverse tracked alongside. Rejection keeps cond(P) <= max_cond.
std::pair<RealMatrix, RealMatrix> seeded_basis(int n, FixtureRng& rng, double max_cond,
                                               int ops) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    RealMatrix p = RealMatrix::Identity(n, n);
    RealMatrix pinv = RealMatrix::Identity(n, n);
    for (int t = 0; t < ops; ++t) {
      const int i = rng.uniform_int(0, n - 1);
      const int j = rng.uniform_int(0, n - 1);
      if (i == j) continue;
      const double c = rng.uniform_int(-2, 2);
      p.row(i) += c * p.row(j);
      pinv.col(j) -= c * pinv.col(i);
    }
    if (cond_number(p) <= max_cond) return {p, pinv};
  }
  throw BadShapeParams("seeded_basis: could not sample a well-conditioned basis");
}

// Integer nonsingular block with a tight condition bound, so that high powers
// of the fixture stay representable (the Drazin route works through A^(2k+1)).
RealMatrix seeded_core_block(int r, FixtureRng& rng, double max_cond = 6.0) {
  for (int attempt = 0; attempt < 2000; ++attempt) {
    RealMatrix c = RealMatrix::Zero(r, r);
    for (int i = 0; i < r; ++i)
      c(i, i) = rng.uniform_int(1, 3) * (rng.uniform_int(0, 1) == 0 ? -1.0 : 1.0);
    const int ops = std::max(2, r);
    for (int t = 0; t < ops; ++t) {
      const int i = rng.uniform_int(0, r - 1);
      const int j = rng.uniform_int(0, r - 1);
      if (i == j) continue;
      c.row(i) += static_cast<double>(rng.uniform_int(-1, 1)) * c.row(j);
    }
    if (cond_number(c) <= max_cond) return c;
  }
  throw BadShapeParams("seeded_core_block: could not sample a well-conditioned block");
}

RealMatrix jordan_nilpotent(int m, int k) {
  RealMatrix n = RealMatrix::Zero(m, m);
  for (int i = 0; i + 1 < k; ++i) n(i, i + 1) = 1.0;
  return n;
}

RealMatrix orthogonal_basis(int n, FixtureRng& rng) {
  RealMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<RealMatrix> qr(g);
  return qr.householderQ();
}

// Nonzero solution of sum_{i<k} N^(k-1-i) X N^i = 0 via the null space of the
// vectorized operator.
RealMatrix solve_b4_constraint(const RealMatrix& nil, int k, FixtureRng& rng) {
  const int m = static_cast<int>(nil.rows());
  RealMatrix op = RealMatrix::Zero(m * m, m * m);
  for (int i = 0; i < k; ++i) {
    const RealMatrix left = matrix_power(nil, k - 1 - i);
    const RealMatrix right = matrix_power(nil, i);
    // vec(L X R) = (R^T kron L) vec(X)
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
          for (int d = 0; d < m; ++d)
            op(a + c * m, b + d * m) += right(d, c) * left(a, b);
  }
  Eigen::FullPivLU<RealMatrix> lu(op);
  lu.setThreshold(1e-10);
  const RealMatrix kernel = lu.kernel();
  if (kernel.cols() == 0 || kernel.norm() < 1e-12) {
    throw BadShapeParams("gen_ddgi_invertible: the B4 constraint has only the zero solution");
  }
  RealVector coeffs(kernel.cols());
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) coeffs(i) = rng.uniform_int(-2, 2);
  RealVector v = kernel * coeffs;
  if (v.norm() < 1e-9) v = kernel.col(0);
  v *= 2.0 / v.cwiseAbs().maxCoeff();
  RealMatrix b4(m, m);
  for (int j = 0; j < m; ++j) b4.col(j) = v.segment(j * m, m);
  return b4;
}

}  // namespace

DualMatrix gen_ddgi_invertible(int n, int r, int k, std::uint64_t seed,
                               const DdgiFixtureOptions& opts) {
  if (n < 1 || r < 1 || r > n) {
    throw BadShapeParams("gen_ddgi_invertible: need 1 <= r <= n");
  }
  const int m = n - r;
  if (m > 0 && (k < 1 || k > m)) {
    throw BadShapeParams("gen_ddgi_invertible: need 1 <= k <= n - r when r < n");
  }
  FixtureRng rng(seed);
  auto [p, pinv] = seeded_basis(n, rng, 100.0, 2 * n);
  const RealMatrix core = seeded_core_block(r, rng);

  RealMatrix ablk = RealMatrix::Zero(n, n);
  ablk.topLeftCorner(r, r) = core;
  RealMatrix nil;
  if (m > 0) {
    nil = jordan_nilpotent(m, k);
    ablk.bottomRightCorner(m, m) = nil;
  }

  RealMatrix bblk = RealMatrix::Zero(n, n);
  bblk.topLeftCorner(r, r) = random_int_matrix(r, r, rng);
  if (m > 0) {
    bblk.topRightCorner(r, m) = random_int_matrix(r, m, rng);
    bblk.bottomLeftCorner(m, r) = random_int_matrix(m, r, rng);
    switch (opts.b4_mode) {
      case B4Mode::Zero:
        break;
      case B4Mode::SolveConstraint:
        bblk.bottomRightCorner(m, m) = solve_b4_constraint(nil, k, rng);
        break;
      case B4Mode::Violate: {
        RealMatrix b4;
        for (int attempt = 0; attempt < 200; ++attempt) {
          b4 = random_int_matrix(m, m, rng);
          RealMatrix sum = RealMatrix::Zero(m, m);
          for (int i = 0; i < k; ++i)
            sum += matrix_power(nil, k - 1 - i) * b4 * matrix_power(nil, i);
          if (sum.norm() > 0.5) break;
          b4.setZero();
        }
        if (b4.norm() < 0.5) {
          throw BadShapeParams("gen_ddgi_invertible: could not sample a violating B4");
        }
        bblk.bottomRightCorner(m, m) = b4;
        break;
      }
    }
  }
  return DualMatrix(p * ablk * pinv, p * bblk * pinv);
}

DualMatrix gen_group_invertible(int n, int r, std::uint64_t seed,
                                const GroupFixtureOptions& opts) {
  if (n < 1 || r < 1 || r > n) {
    throw BadShapeParams("gen_group_invertible: need 1 <= r <= n");
  }
  const int m = n - r;
  FixtureRng rng(seed);
  auto [p, pinv] = seeded_basis(n, rng, 100.0, 2 * n);
  const RealMatrix core = seeded_core_block(r, rng);

  RealMatrix ablk = RealMatrix::Zero(n, n);
  ablk.topLeftCorner(r, r) = core;
  RealMatrix bblk = RealMatrix::Zero(n, n);
  bblk.topLeftCorner(r, r) = random_int_matrix(r, r, rng);
  if (m > 0) {
    bblk.topRightCorner(r, m) = random_int_matrix(r, m, rng);
    bblk.bottomLeftCorner(m, r) = random_int_matrix(m, r, rng);
    if (opts.violate_lower_right) {
      RealMatrix b4 = random_int_matrix(m, m, rng);
      while (b4.norm() < 0.5) b4 = random_int_matrix(m, m, rng);
      bblk.bottomRightCorner(m, m) = b4;
    }
  }
  return DualMatrix(p * ablk * pinv, p * bblk * pinv);
}

namespace {

struct OrderedBasis {
  RealMatrix p;
  RealMatrix pinv;
};

// Extends w (core rank q in basis p, dual part zero in its lower-right
// (n-q) block) one step up the D-group order. keep_tail_zero leaves the
// trailing block of the new Y4 zero so the output is again extendable.
DualMatrix order_step(const DualMatrix& w, int q, const OrderedBasis& basis,
                      FixtureRng& rng, bool keep_tail_zero, bool reflexive,
                      const Tolerances& tol = {}) {
  const int n = static_cast<int>(w.rows());
  const int m = n - q;

  const InverseResult inv = dggi(w, tol);
  if (!inv.exists) {
    throw BadShapeParams("ordered-pair construction: the dual group inverse vanished");
  }
  const RealMatrix r_coords = basis.pinv * inv.inverse->dual * basis.p;
  const RealMatrix r2 = r_coords.topRightCorner(q, m);
  const RealMatrix r3 = r_coords.bottomLeftCorner(m, q);

  RealMatrix bump = RealMatrix::Zero(m, m);
  RealMatrix y4 = RealMatrix::Zero(m, m);
  if (!reflexive) {
    bump(0, 0) = rng.uniform_int(1, 3) * (rng.uniform_int(0, 1) == 0 ? -1.0 : 1.0);
    if (keep_tail_zero) {
      for (int j = 0; j < m; ++j) y4(0, j) = rng.uniform_int(-3, 3);
      for (int i = 0; i < m; ++i) y4(i, 0) = rng.uniform_int(-3, 3);
    } else {
      y4 = random_int_matrix(m, m, rng);
    }
  }

  const RealMatrix w_real = basis.pinv * w.real * basis.p;
  const RealMatrix w_dual = basis.pinv * w.dual * basis.p;
  const RealMatrix core = w_real.topLeftCorner(q, q);

  RealMatrix y_real = w_real;
  y_real.bottomRightCorner(m, m) = bump;
  RealMatrix y_dual = w_dual;
  y_dual.topRightCorner(q, m) = w_dual.topRightCorner(q, m) - core * r2 * bump;
  y_dual.bottomLeftCorner(m, q) = w_dual.bottomLeftCorner(m, q) - bump * r3 * core;
  y_dual.bottomRightCorner(m, m) = y4;
  return DualMatrix(basis.p * y_real * basis.pinv, basis.p * y_dual * basis.pinv);
}

std::pair<DualMatrix, OrderedBasis> ordered_base(int n, int r, FixtureRng& rng,
                                                 const OrderedPairOptions& opts) {
  OrderedBasis basis;
  if (opts.orthogonal_basis) {
    basis.p = orthogonal_basis(n, rng);
    basis.pinv = basis.p.transpose();
  } else {
    auto [p, pinv] = seeded_basis(n, rng, 100.0, 2 * n);
    basis.p = p;
    basis.pinv = pinv;
  }
  const RealMatrix core = seeded_core_block(r, rng);
  const int m = n - r;
  RealMatrix x_real = RealMatrix::Zero(n, n);
  x_real.topLeftCorner(r, r) = core;
  RealMatrix x_dual = RealMatrix::Zero(n, n);
  x_dual.topLeftCorner(r, r) = random_int_matrix(r, r, rng);
  x_dual.topRightCorner(r, m) = random_int_matrix(r, m, rng);
  x_dual.bottomLeftCorner(m, r) = random_int_matrix(m, r, rng);
  return {DualMatrix(basis.p * x_real * basis.pinv, basis.p * x_dual * basis.pinv), basis};
}

}  // namespace

std::pair<DualMatrix, DualMatrix> gen_ordered_pair(int n, int r, std::uint64_t seed,
                                                   const OrderedPairOptions& opts) {
  if (n < 2 || r < 1 || r >= n) {
    throw BadShapeParams("gen_ordered_pair: need 1 <= r < n");
  }
  FixtureRng rng(seed);
  auto [x, basis] = ordered_base(n, r, rng, opts);
  DualMatrix y = order_step(x, r, basis, rng, /*keep_tail_zero=*/false, opts.reflexive);
  return {x, y};
}

std::array<DualMatrix, 3> gen_ordered_chain(int n, int r, std::uint64_t seed,
                                            const OrderedPairOptions& opts) {
  if (r < 1 || r + 2 > n) {
    throw BadShapeParams("gen_ordered_chain: need 1 <= r and r + 2 <= n");
  }
  FixtureRng rng(seed);
  auto [x, basis] = ordered_base(n, r, rng, opts);
  DualMatrix y = order_step(x, r, basis, rng, /*keep_tail_zero=*/true, opts.reflexive);
  DualMatrix z = order_step(y, r + 1, basis, rng, /*keep_tail_zero=*/false, opts.reflexive);
  return {x, y, z};
}

std::pair<DualMatrix, DualMatrix> gen_commuting_pair(RealInverseKind kind, int n,
                                                     std::uint64_t seed) {
  if (n < 1) throw BadShapeParams("gen_commuting_pair: need n >= 1");
  FixtureRng rng(seed);

  // All parts are polynomials in one diagonalizable base matrix with a small
  // integer spectrum; symmetric for the kinds whose hypotheses involve
  // transposes. Polynomials are evaluated on the spectrum and conjugated
  // once: a polynomial that vanishes on the spectrum then yields an exact
  // zero matrix instead of cancellation noise.
  RealVector eig(n);
  for (int i = 0; i < n; ++i) eig(i) = rng.uniform_int(-3, 3);
  RealMatrix basis, basis_inv;
  if (kind == RealInverseKind::MoorePenrose || kind == RealInverseKind::Core) {
    basis = orthogonal_basis(n, rng);
    basis_inv = basis.transpose();
  } else {
    std::tie(basis, basis_inv) = seeded_basis(n, rng, 100.0, 2 * n);
  }

  auto poly = [&](void) {
    RealVector values(n);
    const double c0 = rng.uniform_int(-2, 2);
    const double c1 = rng.uniform_int(-2, 2);
    const double c2 = rng.uniform_int(-2, 2);
    for (int i = 0; i < n; ++i) values(i) = c0 + c1 * eig(i) + c2 * eig(i) * eig(i);
    return RealMatrix(basis * values.asDiagonal() * basis_inv);
  };
  DualMatrix a(poly(), poly());
  DualMatrix c(poly(), poly());
  return {a, c};
}

}  // namespace dgi
