#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cmforge/structure_algebra.hpp"

namespace cmforge {

/// Compact form built from a Cartan matrix, together with the root data the
/// basis indexing refers to: basis = { i*h_1..i*h_r } followed by
/// { x_m = e_m - e_{-m}, y_m = i(e_m + e_{-m}) } per positive root m.
///
/// Cartan matrix convention: C(i,j) = 2(a_i, a_j)/(a_j, a_j), so the pairing
/// of a root b = sum b_m a_m against the coroot of a_k is sum_m b_m C(m,k).
/// Positive roots are ordered by height, then lexicographically in
/// simple-root coordinates; that order also fixes the extraspecial pairs.
struct ChevalleyData {
  StructureAlgebra algebra;
  Eigen::MatrixXi cartan;
  std::vector<Eigen::VectorXi> positive_roots;
};

/// Full data variant; throws std::invalid_argument on a Cartan matrix that
/// is not of finite type and std::runtime_error on internal sign
/// inconsistency (the integer tensor is Jacobi-checked exactly).
ChevalleyData chevalley_compact_data(const Eigen::MatrixXi& cartan);

/// Compact real form of the complex simple Lie algebra with the given
/// Cartan matrix, with Chevalley structure constants fixed by the
/// extraspecial-pair sign convention. All structure constants are integers.
StructureAlgebra chevalley_compact(const Eigen::MatrixXi& cartan);

/// Positive roots (simple-root coordinates) in the canonical order.
std::vector<Eigen::VectorXi> positive_roots(const Eigen::MatrixXi& cartan);

/// Standard (Bourbaki-numbered) Cartan matrices for the simply-laced
/// series: 'A' (rank >= 1), 'D' (rank >= 3), 'E' (rank 6..8).
Eigen::MatrixXi cartan_matrix(char series, int rank);

}  // namespace cmforge
