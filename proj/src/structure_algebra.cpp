#include "cmforge/structure_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "cmforge/rng.hpp"

namespace cmforge {

namespace {

void check_dim(const StructureAlgebra& L, const Eigen::VectorXd& x, const char* what) {
  if (x.size() != L.dim()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

StructureAlgebra::StructureAlgebra(int dim, std::vector<TensorEntry> entries,
                                   std::vector<std::string> labels)
    : dim_(dim), entries_(std::move(entries)), labels_(std::move(labels)) {
  if (dim <= 0) throw std::invalid_argument("StructureAlgebra: dim must be positive");
  for (const auto& e : entries_) {
    if (e.i < 0 || e.i >= dim || e.j < 0 || e.j >= dim || e.k < 0 || e.k >= dim)
      throw std::invalid_argument("StructureAlgebra: tensor index out of range");
  }
  if (labels_.empty()) {
    labels_.reserve(dim_);
    for (int i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i));
  }
  if (static_cast<int>(labels_.size()) != dim_)
    throw std::invalid_argument("StructureAlgebra: label count mismatch");

  std::sort(entries_.begin(), entries_.end(), [](const TensorEntry& a, const TensorEntry& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  std::erase_if(entries_, [](const TensorEntry& e) { return e.value == 0.0; });

  // Grouped (k,value) columns for fast bracket evaluation.
  pair_offset_.assign(static_cast<std::size_t>(dim_) * dim_ + 1, 0);
  columns_.reserve(entries_.size());
  std::size_t pos = 0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      pair_offset_[static_cast<std::size_t>(i) * dim_ + j] = static_cast<std::uint32_t>(columns_.size());
      while (pos < entries_.size() && entries_[pos].i == i && entries_[pos].j == j) {
        columns_.emplace_back(entries_[pos].k, entries_[pos].value);
        ++pos;
      }
    }
  }
  pair_offset_.back() = static_cast<std::uint32_t>(columns_.size());

  killing_ = recompute_killing(dim_, entries_);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-killing_);
  compact_ = es.eigenvalues().minCoeff() > 0.0;
}

std::span<const std::pair<int, double>> StructureAlgebra::basis_bracket(int i, int j) const {
  const std::size_t idx = static_cast<std::size_t>(i) * dim_ + j;
  return {columns_.data() + pair_offset_[idx], columns_.data() + pair_offset_[idx + 1]};
}

Eigen::VectorXd bracket(const StructureAlgebra& L, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& y) {
  check_dim(L, x, "bracket");
  check_dim(L, y, "bracket");
  Eigen::VectorXd z = Eigen::VectorXd::Zero(L.dim());
  for (const auto& e : L.tensor()) z[e.k] += e.value * x[e.i] * y[e.j];
  return z;
}

Eigen::MatrixXd ad_matrix(const StructureAlgebra& L, const Eigen::VectorXd& x) {
  check_dim(L, x, "ad_matrix");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(L.dim(), L.dim());
  for (const auto& e : L.tensor()) m(e.k, e.j) += e.value * x[e.i];
  return m;
}

double killing_form(const StructureAlgebra& L, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y) {
  check_dim(L, x, "killing_form");
  check_dim(L, y, "killing_form");
  return x.dot(L.killing() * y);
}

double inner(const StructureAlgebra& L, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (!L.compact())
    throw std::domain_error("inner: Killing form is not negative definite (not a compact form)");
  return -killing_form(L, x, y);
}

double norm(const StructureAlgebra& L, const Eigen::VectorXd& x) {
  return std::sqrt(std::max(0.0, inner(L, x, x)));
}

Eigen::MatrixXd orthonormalize(const StructureAlgebra& L, const Eigen::MatrixXd& vectors,
                               double tol) {
  if (vectors.rows() != L.dim()) throw std::invalid_argument("orthonormalize: dimension mismatch");
  const Eigen::MatrixXd metric = -L.killing();
  Eigen::MatrixXd q = vectors;
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    // Two MGS passes keep the Gram residual near machine precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index p = 0; p < c; ++p) {
        const double proj = q.col(p).dot(metric * q.col(c));
        q.col(c) -= proj * q.col(p);
      }
    }
    const double n = std::sqrt(std::max(0.0, q.col(c).dot(metric * q.col(c))));
    const double scale = std::sqrt(std::max(1.0, vectors.col(c).dot(metric * vectors.col(c))));
    if (n <= tol * scale)
      throw std::runtime_error("orthonormalize: rank deficiency at column " + std::to_string(c));
    q.col(c) /= n;
  }
  return q;
}

Eigen::MatrixXd recompute_killing(int dim, const std::vector<TensorEntry>& entries) {
  // Tr(ad_i ad_j) = vec(ad_i) . vec(ad_j^T), batched as one GEMM.
  const std::size_t d = static_cast<std::size_t>(dim);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(d * d, d);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(d * d, d);
  for (const auto& e : entries) {
    v(static_cast<std::size_t>(e.j) * dim + e.k, e.i) += e.value;  // ad_i(k, j)
    w(static_cast<std::size_t>(e.k) * dim + e.j, e.i) += e.value;  // ad_i^T(j, k)
  }
  return v.transpose() * w;
}

std::vector<std::string> validate(const StructureAlgebra& L, double tol) {
  std::vector<std::string> violations;
  const int d = L.dim();

  // Antisymmetry: [e_i, e_j] + [e_j, e_i] = 0 entrywise (includes i = j).
  for (int i = 0; i < d && violations.size() < 64; ++i) {
    for (int j = i; j < d; ++j) {
      const auto cij = L.basis_bracket(i, j);
      const auto cji = L.basis_bracket(j, i);
      if (cij.size() != cji.size()) {
        violations.push_back("antisymmetry: sparsity mismatch at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
        continue;
      }
      for (std::size_t t = 0; t < cij.size(); ++t) {
        if (cij[t].first != cji[t].first || std::abs(cij[t].second + cji[t].second) > tol) {
          violations.push_back("antisymmetry: at (" + std::to_string(i) + "," + std::to_string(j) +
                               ")");
          break;
        }
      }
    }
  }

  // Jacobi on all basis triples, via sparse double brackets.
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(d);
  std::vector<int> touched;
  auto add_double_bracket = [&](std::span<const std::pair<int, double>> w, int t) {
    // acc += [sum_m w_m e_m, e_t]
    for (const auto& [m, vm] : w) {
      for (const auto& [k, c] : L.basis_bracket(m, t)) {
        if (acc[k] == 0.0) touched.push_back(k);
        acc[k] += vm * c;
      }
    }
  };
  for (int i = 0; i < d && violations.size() < 64; ++i) {
    for (int j = i + 1; j < d; ++j) {
      for (int k = j + 1; k < d; ++k) {
        add_double_bracket(L.basis_bracket(i, j), k);
        add_double_bracket(L.basis_bracket(j, k), i);
        add_double_bracket(L.basis_bracket(k, i), j);
        double worst = 0.0;
        for (int t : touched) {
          worst = std::max(worst, std::abs(acc[t]));
          acc[t] = 0.0;
        }
        touched.clear();
        if (worst > tol) {
          violations.push_back("jacobi: residual " + std::to_string(worst) + " at (" +
                               std::to_string(i) + "," + std::to_string(j) + "," +
                               std::to_string(k) + ")");
        }
      }
    }
  }

  // Killing Gram matrix must match the tensor.
  const Eigen::MatrixXd fresh = recompute_killing(d, L.tensor());
  const double kerr = (fresh - L.killing()).cwiseAbs().maxCoeff();
  if (kerr > tol) violations.push_back("killing: max deviation " + std::to_string(kerr));

  // Ad-invariance of B on seeded random unit triples. This is a sampling
  // check in floating point, so it carries its own tolerance instead of the
  // structural one (which may be zero for exact tensors).
  Rng rng(0x5eed);
  const double inv_tol = 1e-9 * std::max(1.0, L.killing().cwiseAbs().maxCoeff());
  for (int trial = 0; trial < 16; ++trial) {
    const Eigen::VectorXd x = rng.unit_vector(d), y = rng.unit_vector(d), w = rng.unit_vector(d);
    const double lhs = killing_form(L, bracket(L, x, y), w) + killing_form(L, y, bracket(L, x, w));
    if (std::abs(lhs) > inv_tol) {
      violations.push_back("invariance: residual " + std::to_string(lhs));
      break;
    }
  }
  return violations;
}

namespace {

/// Expands commutators of a matrix basis in that basis by solving against
/// the Frobenius Gram matrix, making downstream code representation-free.
template <typename Mat>
std::vector<TensorEntry> tensor_from_matrix_basis(const std::vector<Mat>& basis) {
  const int d = static_cast<int>(basis.size());
  auto frob = [](const Mat& a, const Mat& b) {
    using std::real;
    return real((a.adjoint() * b).trace());
  };

  Eigen::MatrixXd gram(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b <= a; ++b) gram(a, b) = gram(b, a) = frob(basis[a], basis[b]);
  const Eigen::LDLT<Eigen::MatrixXd> solver(gram);

  std::vector<TensorEntry> entries;
  Eigen::VectorXd rhs(d);
  for (int a = 0; a < d; ++a) {
    for (int b = a + 1; b < d; ++b) {
      const Mat comm = basis[a] * basis[b] - basis[b] * basis[a];
      for (int k = 0; k < d; ++k) rhs[k] = frob(basis[k], comm);
      const Eigen::VectorXd coeff = solver.solve(rhs);
      for (int k = 0; k < d; ++k) {
        if (std::abs(coeff[k]) > 1e-9) {
          entries.push_back({a, b, k, coeff[k]});
          entries.push_back({b, a, k, -coeff[k]});
        }
      }
    }
  }
  return entries;
}

}  // namespace

StructureAlgebra StructureAlgebra::so_algebra(int m) {
  if (m < 3) throw std::invalid_argument("so_algebra: need m >= 3");
  std::vector<Eigen::MatrixXd> basis;
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, m);
      e(i, j) = 1.0;
      e(j, i) = -1.0;
      basis.push_back(std::move(e));
      labels.push_back("X[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]");
    }
  }
  return StructureAlgebra(static_cast<int>(basis.size()), tensor_from_matrix_basis(basis),
                          std::move(labels));
}

StructureAlgebra StructureAlgebra::su_algebra(int m) {
  if (m < 2) throw std::invalid_argument("su_algebra: need m >= 2");
  using CMat = Eigen::MatrixXcd;
  const std::complex<double> I(0.0, 1.0);
  std::vector<CMat> basis;
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      CMat s = CMat::Zero(m, m), t = CMat::Zero(m, m);
      s(i, j) = 1.0;
      s(j, i) = -1.0;
      t(i, j) = I;
      t(j, i) = I;
      basis.push_back(std::move(s));
      labels.push_back("R[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]");
      basis.push_back(std::move(t));
      labels.push_back("I[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]");
    }
  }
  for (int k = 0; k + 1 < m; ++k) {
    CMat dk = CMat::Zero(m, m);
    dk(k, k) = I;
    dk(k + 1, k + 1) = -I;
    basis.push_back(std::move(dk));
    labels.push_back("D[" + std::to_string(k + 1) + "]");
  }
  return StructureAlgebra(static_cast<int>(basis.size()), tensor_from_matrix_basis(basis),
                          std::move(labels));
}

}  // namespace cmforge
