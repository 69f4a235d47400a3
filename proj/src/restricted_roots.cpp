#include "cmforge/restricted_roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cmforge/rng.hpp"

namespace cmforge {

namespace {

constexpr double kClusterTol = 1e-7;  // joint-eigenvalue merge threshold

/// Matrix of -(ad_A)^2 restricted to the span of `basis` (orthonormal
/// columns, algebra coordinates); the restriction is self-adjoint.
Eigen::MatrixXd minus_ad_sq(const HermitianPair& pair, const Eigen::VectorXd& a,
                            const Eigen::MatrixXd& basis) {
  const Eigen::MatrixXd ad = ad_matrix(pair.algebra, a);
  const Eigen::MatrixXd mbasis = pair.metric * basis;
  const Eigen::MatrixXd raw = -mbasis.transpose() * (ad * (ad * basis));
  return 0.5 * (raw + raw.transpose());
}

struct JointCluster {
  double l1 = 0.0, l2 = 0.0;
  Eigen::MatrixXd vectors;  // orthonormal columns in caller coordinates
};

/// Clusters the spectrum of s1, then refines each cluster against s2. The
/// two operators must commute; vectors within a joint cluster may be any
/// orthonormal basis of the joint eigenspace.
std::vector<JointCluster> joint_decompose(const Eigen::MatrixXd& s1, const Eigen::MatrixXd& s2) {
  std::vector<JointCluster> out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es1(s1);
  const Eigen::VectorXd& ev = es1.eigenvalues();
  Eigen::Index a = 0;
  while (a < ev.size()) {
    Eigen::Index b = a + 1;
    while (b < ev.size() && ev[b] - ev[b - 1] <= kClusterTol) ++b;
    const Eigen::MatrixXd v = es1.eigenvectors().middleCols(a, b - a);
    const Eigen::MatrixXd block = v.transpose() * s2 * v;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(0.5 * (block + block.transpose()));
    const Eigen::VectorXd& ev2 = es2.eigenvalues();
    Eigen::Index c = 0;
    while (c < ev2.size()) {
      Eigen::Index e = c + 1;
      while (e < ev2.size() && ev2[e] - ev2[e - 1] <= kClusterTol) ++e;
      JointCluster cluster;
      cluster.l1 = ev.segment(a, b - a).mean();
      cluster.l2 = ev2.segment(c, e - c).mean();
      cluster.vectors = v * es2.eigenvectors().middleCols(c, e - c);
      out.push_back(std::move(cluster));
      c = e;
    }
    a = b;
  }
  return out;
}

/// Signed covector (alpha(A1), alpha(A2)) from a joint eigenvalue pair; the
/// relative sign comes from the Rayleigh quotient of -(ad_{A1+pi A2})^2 and
/// the overall sign from positivity on A1 + pi A2.
Eigen::Vector2d resolve_covector(const HermitianPair& pair, const Eigen::MatrixXd& abelian,
                                 const JointCluster& cluster, const Eigen::MatrixXd& basis) {
  const double r1 = std::sqrt(std::max(0.0, cluster.l1));
  const double r2 = std::sqrt(std::max(0.0, cluster.l2));
  const Eigen::VectorXd a_gen = abelian.col(0) + std::numbers::pi * abelian.col(1);
  const Eigen::MatrixXd s_gen = minus_ad_sq(pair, a_gen, basis);
  const Eigen::VectorXd v = cluster.vectors.col(0);
  const double gen = v.dot(s_gen * v);
  const double plus = r1 + std::numbers::pi * r2;
  const double minus = r1 - std::numbers::pi * r2;
  Eigen::Vector2d alpha(r1, std::abs(gen - plus * plus) <= std::abs(gen - minus * minus) ? r2 : -r2);
  if (alpha[0] + std::numbers::pi * alpha[1] < 0.0) alpha = -alpha;
  return alpha;
}

}  // namespace

const RestrictedRoot* RestrictedRootSystem::find_root(const Eigen::Vector2d& alpha,
                                                      double tol) const {
  for (const auto& root : positive)
    if ((root.alpha - alpha).norm() <= tol) return &root;
  return nullptr;
}

Eigen::VectorXd RestrictedRootSystem::root_vector(const Eigen::Vector2d& alpha) const {
  return abelian * alpha;
}

Eigen::Vector2i RestrictedRootSystem::eps_coefficients(const Eigen::Vector2d& alpha) const {
  Eigen::Matrix2d basis;
  basis.col(0) = eps1;
  basis.col(1) = eps2;
  const Eigen::Vector2d c = basis.colPivHouseholderQr().solve(alpha);
  const Eigen::Vector2i rounded(static_cast<int>(std::lround(c[0])),
                                static_cast<int>(std::lround(c[1])));
  if ((c - rounded.cast<double>()).cwiseAbs().maxCoeff() > 1e-5)
    throw std::runtime_error("eps_coefficients: covector is not an integer combination");
  return rounded;
}

Eigen::MatrixXd maximal_abelian(const HermitianPair& pair, std::uint64_t seed, int retry_budget) {
  Rng rng(seed);
  for (int attempt = 0; attempt < retry_budget; ++attempt) {
    const Eigen::VectorXd a1p = rng.unit_vector(pair.N);
    const Eigen::VectorXd a1 = pair.p_to_algebra(a1p);
    const Eigen::MatrixXd s = minus_ad_sq(pair, a1, pair.p_basis);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double top = ev[pair.N - 1];
    if (top <= 0.0) continue;
    // Regular element: exactly a 2-dimensional kernel with a clear gap.
    if (ev[1] > 1e-8 * top || ev[2] < 1e-6 * top) continue;

    // Kernel basis; keep A1 as the draw itself and complete it.
    Eigen::VectorXd a2p = es.eigenvectors().col(0);
    Eigen::VectorXd alt = es.eigenvectors().col(1);
    a2p -= a2p.dot(a1p) * a1p;
    alt -= alt.dot(a1p) * a1p;
    if (alt.norm() > a2p.norm()) a2p = alt;
    if (a2p.norm() < 1e-6) continue;
    a2p.normalize();

    Eigen::MatrixXd abelian(pair.dim(), 2);
    abelian.col(0) = a1;
    abelian.col(1) = pair.p_to_algebra(a2p);
    if (bracket(pair.algebra, abelian.col(0), abelian.col(1)).norm() > 1e-11) continue;

    // Genericity of the span: A1 + pi A2 must be regular too.
    const Eigen::VectorXd a_gen =
        (abelian.col(0) + std::numbers::pi * abelian.col(1)).normalized();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gen(minus_ad_sq(pair, a_gen, pair.p_basis));
    const double gtop = gen.eigenvalues()[pair.N - 1];
    if (gen.eigenvalues()[1] > 1e-8 * gtop || gen.eigenvalues()[2] < 1e-6 * gtop) continue;

    return abelian;
  }
  throw std::runtime_error("maximal_abelian: no regular element found within the retry budget");
}

RestrictedRootSystem compute_roots(const HermitianPair& pair, const Eigen::MatrixXd& abelian) {
  RestrictedRootSystem rrs;
  rrs.abelian = abelian;
  const Eigen::VectorXd a1 = abelian.col(0), a2 = abelian.col(1);

  const auto p_clusters =
      joint_decompose(minus_ad_sq(pair, a1, pair.p_basis), minus_ad_sq(pair, a2, pair.p_basis));
  const auto k_clusters =
      joint_decompose(minus_ad_sq(pair, a1, pair.k_basis), minus_ad_sq(pair, a2, pair.k_basis));

  // Covectors per cluster; the zero cluster on the p side must be a itself,
  // on the k side it is k0.
  const double zero_tol = 1e-9;
  struct Tagged {
    Eigen::Vector2d alpha;
    Eigen::MatrixXd vectors;  // algebra coordinates
  };
  std::vector<Tagged> proots, kroots;
  bool have_k0 = false;
  for (const auto& c : p_clusters) {
    if (c.l1 < zero_tol && c.l2 < zero_tol) {
      if (c.vectors.cols() != 2)
        throw std::runtime_error("compute_roots: centralizer of a in p is not a itself");
      continue;
    }
    proots.push_back({resolve_covector(pair, abelian, c, pair.p_basis), pair.p_basis * c.vectors});
  }
  for (const auto& c : k_clusters) {
    if (c.l1 < zero_tol && c.l2 < zero_tol) {
      rrs.k0 = pair.k_basis * c.vectors;
      have_k0 = true;
      continue;
    }
    kroots.push_back({resolve_covector(pair, abelian, c, pair.k_basis), pair.k_basis * c.vectors});
  }
  if (!have_k0) rrs.k0 = Eigen::MatrixXd(pair.dim(), 0);

  // Pair up the two sides.
  for (const auto& pr : proots) {
    const Tagged* match = nullptr;
    for (const auto& kr : kroots)
      if ((kr.alpha - pr.alpha).norm() < 1e-6) match = &kr;
    if (!match || match->vectors.cols() != pr.vectors.cols())
      throw std::runtime_error("compute_roots: joint eigenspaces inconsistent between k and p");
    RestrictedRoot root;
    root.alpha = pr.alpha;
    root.multiplicity = static_cast<int>(pr.vectors.cols());
    root.p_space = pr.vectors;
    root.k_space = match->vectors;
    rrs.positive.push_back(std::move(root));
  }
  if (kroots.size() != proots.size())
    throw std::runtime_error("compute_roots: joint eigenspaces inconsistent between k and p");

  std::sort(rrs.positive.begin(), rrs.positive.end(),
            [](const RestrictedRoot& a, const RestrictedRoot& b) {
              if (std::abs(a.alpha[0] - b.alpha[0]) > 1e-9) return a.alpha[0] < b.alpha[0];
              return a.alpha[1] < b.alpha[1];
            });

  // Longest two roots are orthogonal and twice the eps covectors.
  std::vector<const RestrictedRoot*> by_len;
  for (const auto& r : rrs.positive) by_len.push_back(&r);
  std::sort(by_len.begin(), by_len.end(), [](const RestrictedRoot* a, const RestrictedRoot* b) {
    return a->alpha.squaredNorm() > b->alpha.squaredNorm();
  });
  if (by_len.size() < 2 || std::abs(by_len[0]->alpha.dot(by_len[1]->alpha)) > 1e-8)
    throw std::runtime_error("compute_roots: longest roots are not an orthogonal pair");
  Eigen::Vector2d e1 = 0.5 * by_len[0]->alpha, e2 = 0.5 * by_len[1]->alpha;
  const bool swap = e2[0] < e1[0] - 1e-9 || (std::abs(e2[0] - e1[0]) <= 1e-9 && e2[1] < e1[1]);
  rrs.eps1 = swap ? e2 : e1;
  rrs.eps2 = swap ? e1 : e2;
  rrs.h_eps_norm_sq = rrs.eps1.squaredNorm();

  // BC2/C2 shape: every root must be one of eps1+-eps2, 2 eps_i, eps_i.
  int m_sum = 0, m_diff = 0, m_e1 = 0, m_e2 = 0;
  for (const auto& r : rrs.positive) {
    const Eigen::Vector2i c = rrs.eps_coefficients(r.alpha);
    const Eigen::Vector2d recon = c[0] * rrs.eps1 + c[1] * rrs.eps2;
    if ((recon - r.alpha).norm() > 1e-6)
      throw std::runtime_error("compute_roots: root set fails the BC2/C2 shape test");
    if (c == Eigen::Vector2i(1, 1)) m_sum = r.multiplicity;
    else if (c == Eigen::Vector2i(1, -1) || c == Eigen::Vector2i(-1, 1)) m_diff = r.multiplicity;
    else if (c == Eigen::Vector2i(2, 0) || c == Eigen::Vector2i(0, 2)) {
      if (r.multiplicity != 1)
        throw std::runtime_error("compute_roots: long root multiplicity is not 1");
    } else if (c == Eigen::Vector2i(1, 0)) m_e1 = r.multiplicity;
    else if (c == Eigen::Vector2i(0, 1)) m_e2 = r.multiplicity;
    else throw std::runtime_error("compute_roots: root set fails the BC2/C2 shape test");
  }
  if (m_sum == 0 || m_sum != m_diff || m_e1 != m_e2)
    throw std::runtime_error("compute_roots: root multiplicities violate Weyl invariance");
  const std::size_t expected_roots = 4 + (m_e1 > 0 ? 2 : 0);
  if (rrs.positive.size() != expected_roots)
    throw std::runtime_error("compute_roots: root set fails the BC2/C2 shape test");

  rrs.bc_type = m_e1 > 0;
  rrs.m1 = m_sum;
  rrs.m2 = m_e1 + 1;

  // Dimension bookkeeping.
  int mult_total = 0;
  for (const auto& r : rrs.positive) mult_total += r.multiplicity;
  if (2 + mult_total != pair.N || static_cast<int>(rrs.k0.cols()) + mult_total != pair.dim_k())
    throw std::runtime_error("compute_roots: root space dimensions do not sum up");

  return rrs;
}

ZDecomposition decompose_Z(const HermitianPair& pair, const RestrictedRootSystem& rrs) {
  const RestrictedRoot* r1 = rrs.find_root(2.0 * rrs.eps1);
  const RestrictedRoot* r2 = rrs.find_root(2.0 * rrs.eps2);
  if (!r1 || !r2) throw std::runtime_error("decompose_Z: long root spaces missing");

  auto project = [&](const Eigen::MatrixXd& basis) -> Eigen::VectorXd {
    return basis * (basis.transpose() * (pair.metric * pair.Z));
  };
  ZDecomposition out;
  out.z0 = project(rrs.k0);
  out.z_2e1 = project(r1->k_space);
  out.z_2e2 = project(r2->k_space);
  const Eigen::VectorXd residual = pair.Z - out.z0 - out.z_2e1 - out.z_2e2;
  out.residual_norm = std::sqrt(std::max(0.0, residual.dot(pair.metric * residual)));
  if (out.residual_norm > 1e-9)
    throw std::runtime_error("decompose_Z: residual above tolerance");
  return out;
}

}  // namespace cmforge
