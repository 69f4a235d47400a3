#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace cmforge {

/// One nonzero structure constant: [e_i, e_j] contains value * e_k.
struct TensorEntry {
  int i = 0, j = 0, k = 0;
  double value = 0.0;
};

/// A finite-dimensional real Lie algebra given by a basis and its structure
/// tensor. The Killing form is always recomputed from the tensor as
/// Tr(ad .. ad), never taken from a matrix realization, so different
/// realizations of the same algebra carry identical normalization.
///
/// Immutable after construction; all operations on it are pure.
class StructureAlgebra {
 public:
  StructureAlgebra(int dim, std::vector<TensorEntry> entries,
                   std::vector<std::string> labels = {});

  int dim() const { return dim_; }
  const std::vector<TensorEntry>& tensor() const { return entries_; }
  const Eigen::MatrixXd& killing() const { return killing_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// True when -killing() is positive definite (compact real form).
  bool compact() const { return compact_; }

  /// Nonzero coordinates of [e_i, e_j], as (k, value) pairs.
  std::span<const std::pair<int, double>> basis_bracket(int i, int j) const;

  static StructureAlgebra so_algebra(int m);
  static StructureAlgebra su_algebra(int m);

 private:
  int dim_;
  std::vector<TensorEntry> entries_;                 // sorted by (i, j, k)
  std::vector<std::pair<int, double>> columns_;      // (k, value) grouped by (i, j)
  std::vector<std::uint32_t> pair_offset_;           // dim*dim + 1 offsets into columns_
  Eigen::MatrixXd killing_;
  std::vector<std::string> labels_;
  bool compact_ = false;
};

/// [X, Y] from the structure tensor. Bilinear, antisymmetric.
Eigen::VectorXd bracket(const StructureAlgebra& L, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y);

/// Matrix of ad_X: column j holds the coordinates of [X, e_j].
Eigen::MatrixXd ad_matrix(const StructureAlgebra& L, const Eigen::VectorXd& x);

/// B(X, Y) from the cached Killing Gram matrix.
double killing_form(const StructureAlgebra& L, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y);

/// <X, Y> := -B(X, Y). Requires a compact algebra.
double inner(const StructureAlgebra& L, const Eigen::VectorXd& x,
             const Eigen::VectorXd& y);

double norm(const StructureAlgebra& L, const Eigen::VectorXd& x);

/// Modified Gram-Schmidt with one re-orthogonalization pass, in the <,>
/// metric. Columns in, columns out; deterministic in the input order.
/// Throws on rank deficiency below `tol`.
Eigen::MatrixXd orthonormalize(const StructureAlgebra& L, const Eigen::MatrixXd& vectors,
                               double tol = 1e-9);

/// Structural checks: antisymmetry, the Jacobi identity on all basis
/// triples, Killing-form consistency with the tensor, and ad-invariance of
/// B on seeded random triples. Returns human-readable violations.
std::vector<std::string> validate(const StructureAlgebra& L, double tol = 1e-10);

/// Tr(ad_i ad_j) recomputed from scratch.
Eigen::MatrixXd recompute_killing(int dim, const std::vector<TensorEntry>& entries);

}  // namespace cmforge
