#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "cmforge/structure_algebra.hpp"

namespace cmforge {

/// The four rank-two compact irreducible Hermitian symmetric pairs.
///   BDI(n):  so(2+n) / (so(2) + so(n)),  n >= 3
///   AIII(n): su(2+n) / s(u(2) + u(n)),   n >= 2
///   DIII5:   so(10) / u(5)
///   EIII:    e6 / (u(1) + spin(10))
enum class Family { BDI, AIII, DIII5, EIII };

std::string family_name(Family f);
std::optional<Family> family_from_name(const std::string& name);

/// A symmetric pair (g, theta) with the Cartan decomposition g = k + p
/// diagonalized, and the central element Z of k normalized so that
/// ad_Z restricted to p is a complex structure.
///
/// k_basis and p_basis columns are orthonormal for <,> = -B and live in
/// algebra coordinates. Immutable after build; evaluation helpers are pure.
struct HermitianPair {
  StructureAlgebra algebra;
  Family family;
  int n_param = 0;          // BDI/AIII parameter, 0 for DIII5/EIII
  Eigen::VectorXi theta_signs;  // +1 for the k block, -1 for the p block
  Eigen::MatrixXd k_basis;  // d x dim_k
  Eigen::MatrixXd p_basis;  // d x N
  Eigen::VectorXd Z;        // algebra coordinates
  int N = 0;
  int rank = 2;

  // Caches fixed at build time.
  Eigen::MatrixXd metric;   // -killing
  Eigen::MatrixXd mk, mp;   // metric * k_basis, metric * p_basis
  Eigen::MatrixXd J_p;      // ad_Z restricted to p, in p coordinates
  Eigen::VectorXd Z_k;      // Z in k coordinates

  int dim() const { return algebra.dim(); }
  int dim_k() const { return static_cast<int>(k_basis.cols()); }

  Eigen::VectorXd p_to_algebra(const Eigen::VectorXd& v) const { return p_basis * v; }
  Eigen::VectorXd k_to_algebra(const Eigen::VectorXd& v) const { return k_basis * v; }
  Eigen::VectorXd project_p(const Eigen::VectorXd& x) const { return mp.transpose() * x; }
  Eigen::VectorXd project_k(const Eigen::VectorXd& x) const { return mk.transpose() * x; }
};

HermitianPair build_space(Family family, int n = 0);

/// Splits an algebra along an involutive automorphism given as a matrix in
/// basis coordinates. Returns orthonormal (k_basis, p_basis); the adapted
/// order keeps the first basis vector mapping to each accepted direction.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> cartan_split(const StructureAlgebra& L,
                                                         const Eigen::MatrixXd& theta,
                                                         double tol = 1e-8);

/// Basis of { W in k : [W, X] = 0 for all X in k }, as algebra-coordinate
/// columns. May be empty.
Eigen::MatrixXd center_of_k(const StructureAlgebra& L, const Eigen::MatrixXd& k_basis,
                            double tol = 1e-8);

/// Normalizes the 1-dimensional center to Z with (ad_Z)^2 = -id on p; the
/// sign makes the first significant coordinate positive.
Eigen::VectorXd find_Z(const StructureAlgebra& L, const Eigen::MatrixXd& k_basis,
                       const Eigen::MatrixXd& p_basis, const Eigen::MatrixXd& center);

/// J(P) = [Z, P] in p coordinates.
Eigen::VectorXd apply_J(const HermitianPair& pair, const Eigen::VectorXd& p);

/// exp(ad_W)|_p for W in k coordinates: the isotropy rotation of p.
Eigen::MatrixXd isotropy_rotation(const HermitianPair& pair, const Eigen::VectorXd& w_k);

}  // namespace cmforge
