#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "cmforge/hermitian_pair.hpp"

namespace cmforge {

/// A positive restricted root as the covector pair (alpha(A1), alpha(A2)),
/// with orthonormal bases of its root spaces in k and p (algebra coords).
struct RestrictedRoot {
  Eigen::Vector2d alpha;
  int multiplicity = 0;
  Eigen::MatrixXd k_space;
  Eigen::MatrixXd p_space;
};

struct RestrictedRootSystem {
  Eigen::MatrixXd abelian;  // d x 2, orthonormal columns A1, A2
  std::vector<RestrictedRoot> positive;
  Eigen::MatrixXd k0;       // centralizer of a in k
  Eigen::Vector2d eps1, eps2;
  bool bc_type = false;     // true: BC2, false: C2 (no eps_i roots)
  int m1 = 0, m2 = 0;
  double h_eps_norm_sq = 0.0;  // |H_{eps1}|^2

  const char* type_name() const { return bc_type ? "BC2" : "C2"; }

  /// Nearest stored positive root; nullptr if none within tol.
  const RestrictedRoot* find_root(const Eigen::Vector2d& alpha, double tol = 1e-6) const;

  /// H_alpha = alpha(A1) A1 + alpha(A2) A2, in algebra coordinates.
  Eigen::VectorXd root_vector(const Eigen::Vector2d& alpha) const;

  /// Integer coefficients (c1, c2) with alpha = c1 eps1 + c2 eps2.
  Eigen::Vector2i eps_coefficients(const Eigen::Vector2d& alpha) const;
};

struct ZDecomposition {
  Eigen::VectorXd z0, z_2e1, z_2e2;  // algebra coordinates
  double residual_norm = 0.0;
};

/// Draws seeded random unit elements of p until one is regular (its
/// centralizer in p is exactly 2-dimensional), then returns an orthonormal
/// basis of that maximal abelian subspace, algebra coordinates.
Eigen::MatrixXd maximal_abelian(const HermitianPair& pair, std::uint64_t seed,
                                int retry_budget = 16);

/// Simultaneous eigendecomposition of -(ad_{A1})^2, -(ad_{A2})^2 on k and p,
/// assembled into the positive system fixed by alpha(A1 + pi A2) > 0.
RestrictedRootSystem compute_roots(const HermitianPair& pair, const Eigen::MatrixXd& abelian);

/// Orthogonal projection of Z onto k0 + k_{2eps1} + k_{2eps2}.
ZDecomposition decompose_Z(const HermitianPair& pair, const RestrictedRootSystem& rrs);

}  // namespace cmforge
