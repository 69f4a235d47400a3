#include "cmforge/hermitian_pair.hpp"

#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "cmforge/chevalley.hpp"
#include "cmforge/rng.hpp"

namespace cmforge {

std::string family_name(Family f) {
  switch (f) {
    case Family::BDI: return "BDI";
    case Family::AIII: return "AIII";
    case Family::DIII5: return "DIII5";
    case Family::EIII: return "EIII";
  }
  return "?";
}

std::optional<Family> family_from_name(const std::string& name) {
  if (name == "BDI") return Family::BDI;
  if (name == "AIII") return Family::AIII;
  if (name == "DIII5") return Family::DIII5;
  if (name == "EIII") return Family::EIII;
  return std::nullopt;
}

namespace {

/// Gram-Schmidt in the <,> metric that drops dependent candidates instead
/// of failing; used to extract eigenspace bases from projector images.
Eigen::MatrixXd collect_orthonormal(const StructureAlgebra& L, const Eigen::MatrixXd& candidates,
                                    double drop_tol) {
  const Eigen::MatrixXd metric = -L.killing();
  Eigen::MatrixXd out(L.dim(), candidates.cols());
  int kept = 0;
  for (Eigen::Index c = 0; c < candidates.cols(); ++c) {
    Eigen::VectorXd v = candidates.col(c);
    const double scale = std::sqrt(std::max(1e-300, v.dot(metric * v)));
    if (scale < drop_tol) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (int p = 0; p < kept; ++p) v -= out.col(p).dot(metric * v) * out.col(p);
    const double n = std::sqrt(std::max(0.0, v.dot(metric * v)));
    if (n < drop_tol * scale) continue;
    out.col(kept++) = v / n;
  }
  return out.leftCols(kept);
}

Eigen::MatrixXd diagonal_theta(const Eigen::VectorXi& signs) {
  return signs.cast<double>().asDiagonal();
}

Eigen::MatrixXi e6_cartan() { return cartan_matrix('E', 6); }

/// so(m) basis matrices in constructor order: E_ij - E_ji, i < j.
std::vector<Eigen::MatrixXd> so_matrices(int m) {
  std::vector<Eigen::MatrixXd> basis;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, m);
      e(i, j) = 1.0;
      e(j, i) = -1.0;
      basis.push_back(std::move(e));
    }
  return basis;
}

struct FamilyModel {
  StructureAlgebra algebra;
  Eigen::MatrixXd theta;
};

FamilyModel make_model(Family family, int n) {
  switch (family) {
    case Family::BDI: {
      if (n < 3) throw std::invalid_argument("BDI requires n >= 3");
      auto L = StructureAlgebra::so_algebra(2 + n);
      // Conjugation by diag(-I2, In) negates the mixed-block generators.
      Eigen::VectorXi signs(L.dim());
      int a = 0;
      for (int i = 0; i < 2 + n; ++i)
        for (int j = i + 1; j < 2 + n; ++j) signs[a++] = (i < 2) == (j < 2) ? 1 : -1;
      return {std::move(L), diagonal_theta(signs)};
    }
    case Family::AIII: {
      if (n < 2) throw std::invalid_argument("AIII requires n >= 2");
      auto L = StructureAlgebra::su_algebra(2 + n);
      const int m = 2 + n;
      Eigen::VectorXi signs(L.dim());
      int a = 0;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
          const int s = (i < 2) == (j < 2) ? 1 : -1;
          signs[a++] = s;  // R[i,j]
          signs[a++] = s;  // I[i,j]
        }
      for (int k = 0; k + 1 < m; ++k) signs[a++] = 1;  // diagonal part
      return {std::move(L), diagonal_theta(signs)};
    }
    case Family::DIII5: {
      if (n != 0) throw std::invalid_argument("DIII5 takes no parameter");
      auto L = StructureAlgebra::so_algebra(10);
      // Conjugation by the standard complex structure J0 on R^10.
      Eigen::MatrixXd j0 = Eigen::MatrixXd::Zero(10, 10);
      j0.block(0, 5, 5, 5) = -Eigen::MatrixXd::Identity(5, 5);
      j0.block(5, 0, 5, 5) = Eigen::MatrixXd::Identity(5, 5);
      const auto mats = so_matrices(10);
      Eigen::MatrixXd theta(L.dim(), L.dim());
      for (int a = 0; a < L.dim(); ++a) {
        const Eigen::MatrixXd img = j0 * mats[a] * j0.transpose();
        for (int k = 0; k < L.dim(); ++k)
          theta(k, a) = (mats[k].transpose() * img).trace() / 2.0;
      }
      return {std::move(L), std::move(theta)};
    }
    case Family::EIII: {
      if (n != 0) throw std::invalid_argument("EIII takes no parameter");
      auto data = chevalley_compact_data(e6_cartan());
      const int r = static_cast<int>(data.cartan.rows());
      // Parity involution along the simple root whose coefficient in the
      // highest root is 1 (lowest such index).
      const Eigen::VectorXi highest = data.positive_roots.back();
      int grading = -1;
      for (int k = 0; k < r; ++k) {
        if (highest[k] == 1) {
          grading = k;
          break;
        }
      }
      if (grading < 0) throw std::runtime_error("EIII: no 3-grading simple root");
      Eigen::VectorXi signs(data.algebra.dim());
      for (int k = 0; k < r; ++k) signs[k] = 1;
      for (std::size_t m = 0; m < data.positive_roots.size(); ++m) {
        const int c = data.positive_roots[m][grading];
        const int s = (c % 2 == 0) ? 1 : -1;
        signs[r + 2 * m] = s;
        signs[r + 2 * m + 1] = s;
      }
      return {std::move(data.algebra), diagonal_theta(signs)};
    }
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> cartan_split(const StructureAlgebra& L,
                                                         const Eigen::MatrixXd& theta,
                                                         double tol) {
  const int d = L.dim();
  if (theta.rows() != d || theta.cols() != d)
    throw std::invalid_argument("cartan_split: theta has wrong shape");
  if ((theta * theta - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("cartan_split: theta is not involutive");
  Rng rng(0x7e7a);
  for (int t = 0; t < 8; ++t) {
    const Eigen::VectorXd x = rng.unit_vector(d), y = rng.unit_vector(d);
    const Eigen::VectorXd lhs = theta * bracket(L, x, y);
    const Eigen::VectorXd rhs = bracket(L, Eigen::VectorXd(theta * x), Eigen::VectorXd(theta * y));
    if ((lhs - rhs).norm() > tol * 10)
      throw std::invalid_argument("cartan_split: theta is not an automorphism");
  }

  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd k_basis = collect_orthonormal(L, 0.5 * (id + theta), 1e-6);
  const Eigen::MatrixXd p_basis = collect_orthonormal(L, 0.5 * (id - theta), 1e-6);
  if (k_basis.cols() + p_basis.cols() != d)
    throw std::runtime_error("cartan_split: eigenspace dimensions do not add up");
  return {k_basis, p_basis};
}

Eigen::MatrixXd center_of_k(const StructureAlgebra& L, const Eigen::MatrixXd& k_basis,
                            double tol) {
  const int dk = static_cast<int>(k_basis.cols());
  const int d = L.dim();
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(dk) * d, dk);
  for (int a = 0; a < dk; ++a) {
    const Eigen::MatrixXd ad = ad_matrix(L, k_basis.col(a));
    for (int j = 0; j < dk; ++j)
      stacked.block(static_cast<Eigen::Index>(j) * d, a, d, 1) = ad * k_basis.col(j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sv.size() ? sv[0] : 0.0);
  int null_dim = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] <= cutoff) ++null_dim;
  if (null_dim == 0) return Eigen::MatrixXd(d, 0);
  const Eigen::MatrixXd null_k = svd.matrixV().rightCols(null_dim);
  return k_basis * null_k;
}

Eigen::VectorXd find_Z(const StructureAlgebra& L, const Eigen::MatrixXd& k_basis,
                       const Eigen::MatrixXd& p_basis, const Eigen::MatrixXd& center) {
  if (center.cols() != 1)
    throw std::runtime_error("find_Z: center of k is not 1-dimensional");
  const Eigen::VectorXd w = center.col(0);
  const Eigen::MatrixXd mp = -L.killing() * p_basis;
  const Eigen::MatrixXd ad_w = mp.transpose() * (ad_matrix(L, w) * p_basis);
  const Eigen::MatrixXd s_mat = -(ad_w * ad_w);
  const int n = static_cast<int>(p_basis.cols());
  const double s2 = s_mat.trace() / n;
  if (s2 <= 0.0 || (s_mat - s2 * Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, s2))
    throw std::runtime_error("find_Z: (ad_W)^2 on p is not a negative scalar");
  Eigen::VectorXd z = w / std::sqrt(s2);
  for (int i = 0; i < z.size(); ++i) {
    if (std::abs(z[i]) > 1e-8) {
      if (z[i] < 0) z = -z;
      break;
    }
  }
  return z;
}

Eigen::VectorXd apply_J(const HermitianPair& pair, const Eigen::VectorXd& p) {
  return pair.J_p * p;
}

Eigen::MatrixXd isotropy_rotation(const HermitianPair& pair, const Eigen::VectorXd& w_k) {
  const Eigen::VectorXd w = pair.k_to_algebra(w_k);
  const Eigen::MatrixXd ad_w = pair.mp.transpose() * (ad_matrix(pair.algebra, w) * pair.p_basis);
  return ad_w.exp();
}

HermitianPair build_space(Family family, int n) {
  FamilyModel model = make_model(family, n);
  auto [k_basis, p_basis] = cartan_split(model.algebra, model.theta);

  const Eigen::MatrixXd center = center_of_k(model.algebra, k_basis);
  const Eigen::VectorXd z = find_Z(model.algebra, k_basis, p_basis, center);

  HermitianPair pair{std::move(model.algebra), family, n};
  pair.k_basis = std::move(k_basis);
  pair.p_basis = std::move(p_basis);
  pair.Z = z;
  pair.N = static_cast<int>(pair.p_basis.cols());
  pair.rank = 2;
  pair.theta_signs.resize(pair.dim());
  pair.theta_signs.head(pair.dim_k()).setConstant(1);
  pair.theta_signs.tail(pair.N).setConstant(-1);

  pair.metric = -pair.algebra.killing();
  pair.mk = pair.metric * pair.k_basis;
  pair.mp = pair.metric * pair.p_basis;
  pair.J_p = pair.mp.transpose() * (ad_matrix(pair.algebra, pair.Z) * pair.p_basis);
  pair.Z_k = pair.mk.transpose() * pair.Z;

  // Build-time invariants.
  const double zz = inner(pair.algebra, pair.Z, pair.Z);
  if (std::abs(zz - pair.N) > 1e-9 * pair.N)
    throw std::runtime_error("build_space: |Z|^2 != dim p");
  const Eigen::MatrixXd j2 = pair.J_p * pair.J_p;
  if ((j2 + Eigen::MatrixXd::Identity(pair.N, pair.N)).cwiseAbs().maxCoeff() > 1e-10)
    throw std::runtime_error("build_space: ad_Z^2 on p is not -id");

  return pair;
}

}  // namespace cmforge
