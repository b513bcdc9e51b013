#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "dgi/dual_matrix.hpp"
#include "dgi/order_laws.hpp"

namespace dgi {

/// Splitmix64-based generator. Identical seeds reproduce identical fixtures
/// bit for bit, independent of the standard library.
class FixtureRng {
 public:
  explicit FixtureRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform integer in [lo, hi], inclusive.
  int uniform_int(int lo, int hi);
  /// Standard normal via Box-Muller.
  double normal();

 private:
  std::uint64_t state_;
};

enum class B4Mode {
  Zero,             ///< lower-right dual block zero (satisfies the constraint for all k)
  SolveConstraint,  ///< nonzero block solving sum_i N^(k-1-i) B4 N^i = 0
  Violate           ///< negative control: block chosen to break the constraint
};

struct DdgiFixtureOptions {
  B4Mode b4_mode = B4Mode::Zero;
};

/// Dual matrix P*blockdiag(C,N)*P^-1 + e P*[[B1,B2],[B3,B4]]*P^-1 with
/// nonsingular integer P (condition <= 100) and C (condition <= 6), and N a
/// Jordan-style nilpotent block of index exactly k. With the default B4 mode
/// the dual Drazin inverse exists; Violate produces a guaranteed negative.
/// Requires 1 <= r <= n and, when r < n, 1 <= k <= n - r.
DualMatrix gen_ddgi_invertible(int n, int r, int k, std::uint64_t seed,
                               const DdgiFixtureOptions& opts = {});

struct GroupFixtureOptions {
  bool violate_lower_right = false;  ///< negative control for DGGI existence
};

/// Group-invertible dual fixture of core rank r (index 1 when r < n).
DualMatrix gen_group_invertible(int n, int r, std::uint64_t seed,
                                const GroupFixtureOptions& opts = {});

struct OrderedPairOptions {
  bool orthogonal_basis = false;  ///< use an orthogonal P (makes DCGIs exist)
  bool reflexive = false;         ///< zero rank bump and Y4, so Y equals X
};

/// Pair (X, Y) with X below Y in the D-group order, built in canonical
/// coordinates from X's dual group inverse. Requires 1 <= r < n.
std::pair<DualMatrix, DualMatrix> gen_ordered_pair(int n, int r, std::uint64_t seed,
                                                   const OrderedPairOptions& opts = {});

/// Chain X <= Y <= Z produced by two nested applications of the ordered-pair
/// construction. Requires 1 <= r and r + 2 <= n.
std::array<DualMatrix, 3> gen_ordered_chain(int n, int r, std::uint64_t seed,
                                            const OrderedPairOptions& opts = {});

/// Pair of dual matrices whose parts are polynomials in one seeded
/// diagonalizable matrix, so every commutation hypothesis of the order-law
/// theorems holds; for the MP and core kinds the base matrix is symmetric.
std::pair<DualMatrix, DualMatrix> gen_commuting_pair(RealInverseKind kind, int n,
                                                     std::uint64_t seed);

}  // namespace dgi
