#include <doctest.h>

#include <Eigen/Dense>

#include "dgi/dual_solve.hpp"
#include "dgi/fixtures.hpp"
#include "dgi/order_laws.hpp"

using namespace dgi;

namespace {

double cond_number(const RealMatrix& m) {
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

bool bitwise_equal(const DualMatrix& a, const DualMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a.real(i, j) != b.real(i, j)) return false;
      if (a.dual(i, j) != b.dual(i, j)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("fixtures are deterministic bit for bit") {
  CHECK(bitwise_equal(gen_ddgi_invertible(6, 3, 2, 42), gen_ddgi_invertible(6, 3, 2, 42)));
  CHECK(bitwise_equal(gen_group_invertible(5, 2, 43), gen_group_invertible(5, 2, 43)));
  const auto [x1, y1] = gen_ordered_pair(5, 2, 44);
  const auto [x2, y2] = gen_ordered_pair(5, 2, 44);
  CHECK(bitwise_equal(x1, x2));
  CHECK(bitwise_equal(y1, y2));
  const auto [a1, c1] = gen_commuting_pair(RealInverseKind::Drazin, 4, 45);
  const auto [a2, c2] = gen_commuting_pair(RealInverseKind::Drazin, 4, 45);
  CHECK(bitwise_equal(a1, a2));
  CHECK(bitwise_equal(c1, c2));

  // And different seeds genuinely vary.
  CHECK_FALSE(bitwise_equal(gen_ddgi_invertible(6, 3, 2, 42), gen_ddgi_invertible(6, 3, 2, 43)));
}

TEST_CASE("gen_ddgi_invertible") {
  SUBCASE("positive fixtures have the requested index and a verified inverse") {
    FixtureRng pick(4711);
    for (int t = 0; t < 30; ++t) {
      const int n = pick.uniform_int(2, 8);
      const int r = pick.uniform_int(1, n);
      const int m = n - r;
      const int k = m == 0 ? 1 : pick.uniform_int(1, std::min(m, 3));
      const DualMatrix fx = gen_ddgi_invertible(n, r, k, 10'000 + t);
      CHECK(index(fx.real) == (m == 0 ? 0 : k));
      CHECK(numerical_rank(matrix_power(fx.real, std::max(m == 0 ? 0 : k, 0))) == r);
      const InverseResult res = ddgi(fx);
      CHECK(res.exists);
      if (res.exists) {
        const ResidualReport rep = verify_inverse(InverseKind::DDGI, fx, *res.inverse, res.k);
        CHECK(rep.max_residual() <= 1e-8);
      }
    }
  }
  SUBCASE("r = n gives a nonsingular real part") {
    const DualMatrix fx = gen_ddgi_invertible(4, 4, 3, 99);
    CHECK(numerical_rank(fx.real) == 4);
    CHECK(index(fx.real) == 0);
  }
  SUBCASE("violating B4 produces certified negatives") {
    FixtureRng pick(4712);
    for (int t = 0; t < 20; ++t) {
      const int n = pick.uniform_int(2, 8);
      const int r = pick.uniform_int(1, n - 1);
      const int k = pick.uniform_int(1, std::min(n - r, 3));
      const DualMatrix fx = gen_ddgi_invertible(n, r, k, 20'000 + t,
                                                DdgiFixtureOptions{B4Mode::Violate});
      CHECK_FALSE(ddgi(fx).exists);
      CHECK_FALSE(ddgi_exists_rank(fx));
      CHECK_FALSE(ddgi_exists_aux(fx));
    }
  }
  SUBCASE("nonzero B4 solving the constraint still yields a DDGI") {
    for (int t = 0; t < 10; ++t) {
      const DualMatrix fx = gen_ddgi_invertible(6, 2, 2, 30'000 + t,
                                                DdgiFixtureOptions{B4Mode::SolveConstraint});
      CHECK(ddgi(fx).exists);
      // The sampled block really is nonzero (mode would throw otherwise).
    }
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(gen_ddgi_invertible(3, 0, 1, 1), BadShapeParams);
    CHECK_THROWS_AS(gen_ddgi_invertible(3, 4, 1, 1), BadShapeParams);
    CHECK_THROWS_AS(gen_ddgi_invertible(3, 1, 3, 1), BadShapeParams);  // k > n - r
    CHECK_THROWS_AS(gen_ddgi_invertible(3, 2, 0, 1), BadShapeParams);
    CHECK_THROWS_AS(
        gen_ddgi_invertible(4, 3, 1, 1, DdgiFixtureOptions{B4Mode::SolveConstraint}),
        BadShapeParams);  // k = 1 forces B4 = 0
  }
}

TEST_CASE("gen_group_invertible") {
  SUBCASE("positives") {
    FixtureRng pick(4713);
    for (int t = 0; t < 20; ++t) {
      const int n = pick.uniform_int(1, 8);
      const int r = pick.uniform_int(1, n);
      const DualMatrix fx = gen_group_invertible(n, r, 40'000 + t);
      CHECK(index(fx.real) == (r == n ? 0 : 1));
      CHECK(numerical_rank(fx.real) == r);
      CHECK(dggi(fx).exists);
    }
  }
  SUBCASE("negative controls") {
    for (int t = 0; t < 10; ++t) {
      const DualMatrix fx =
          gen_group_invertible(5, 2, 50'000 + t, GroupFixtureOptions{true});
      CHECK_FALSE(dggi(fx).exists);
    }
  }
  SUBCASE("r = n is nonsingular") {
    const DualMatrix fx = gen_group_invertible(4, 4, 7);
    CHECK(numerical_rank(fx.real) == 4);
  }
}

TEST_CASE("generated fixtures are well conditioned") {
  for (int t = 0; t < 10; ++t) {
    const DualMatrix fx = gen_ddgi_invertible(7, 3, 2, 60'000 + t);
    // The fixture is singular by construction; what matters for the inverse
    // computations is the spread of its nonzero singular values, bounded by
    // the generator's conditioning caps on P and the core block.
    Eigen::JacobiSVD<RealMatrix> svd(fx.real);
    const int r = numerical_rank(fx.real);
    REQUIRE(r >= 1);
    CHECK(svd.singularValues()(0) / svd.singularValues()(r - 1) <= 1e6);
    const CoreNilpotent cn = core_nilpotent(fx.real);
    CHECK(cond_number(cn.P) <= 1e4);
  }
}

TEST_CASE("gen_ordered_pair") {
  SUBCASE("both predicates accept the pair") {
    for (int t = 0; t < 20; ++t) {
      const auto [x, y] = gen_ordered_pair(5, 2, 70'000 + t);
      CHECK(d_group_leq(x, y));
      CHECK(d_group_leq_char(x, y));
    }
  }
  SUBCASE("reflexive option collapses the pair") {
    const auto [x, y] = gen_ordered_pair(4, 2, 8, OrderedPairOptions{.reflexive = true});
    CHECK(dual_distance(x, y) <= 1e-12);
  }
  SUBCASE("chains order transitively") {
    for (int t = 0; t < 10; ++t) {
      const auto chain = gen_ordered_chain(6, 2, 80'000 + t);
      CHECK(d_group_leq(chain[0], chain[1]));
      CHECK(d_group_leq(chain[1], chain[2]));
      CHECK(d_group_leq(chain[0], chain[2]));
    }
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(gen_ordered_pair(3, 3, 1), BadShapeParams);
    CHECK_THROWS_AS(gen_ordered_chain(3, 2, 1), BadShapeParams);
  }
}

TEST_CASE("gen_commuting_pair") {
  SUBCASE("products commute essentially exactly") {
    for (const auto kind : {RealInverseKind::MoorePenrose, RealInverseKind::Group,
                            RealInverseKind::Drazin, RealInverseKind::Core}) {
      for (int t = 0; t < 10; ++t) {
        const auto [a, c] = gen_commuting_pair(kind, 4, 90'000 + t);
        CHECK(relative_residual(a.real * c.real, c.real * a.real) <= 1e-12);
        CHECK(relative_residual(a.real * c.dual, c.dual * a.real) <= 1e-12);
        CHECK(relative_residual(a.dual * c.real, c.real * a.dual) <= 1e-12);
      }
    }
  }
  SUBCASE("symmetric base for the transpose-sensitive kinds") {
    for (int t = 0; t < 10; ++t) {
      const auto [a, c] = gen_commuting_pair(RealInverseKind::MoorePenrose, 4, 91'000 + t);
      CHECK(relative_residual(a.real.transpose(), a.real) <= 1e-12);
      CHECK(relative_residual(a.real.transpose() * c.real, c.real * a.real.transpose()) <=
            1e-12);
    }
  }
}
