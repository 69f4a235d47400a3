#include "cmforge/moment_map.hpp"

#include <stdexcept>

namespace cmforge {

namespace {

void check_p(const HermitianPair& pair, const Eigen::VectorXd& p, const char* what) {
  if (p.size() != pair.N) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

MuenznerCoefficients muenzner_coefficients(int m1, int m2) {
  if (m1 < 1 || m2 < 1)
    throw std::invalid_argument("muenzner_coefficients: multiplicities must be positive");
  MuenznerCoefficients c;
  c.m1 = m1;
  c.m2 = m2;
  c.a = Rational(-8) * Rational(m1 + 2 * m2);
  c.b = Rational(8) * Rational(2 * m1 + m2 + 3);
  if (c.a - c.b != Rational(-24) * Rational(m1 + m2 + 1))
    throw std::logic_error("muenzner_coefficients: a - b invariant violated");
  return c;
}

Eigen::VectorXd moment_map(const HermitianPair& pair, const Eigen::VectorXd& p) {
  check_p(pair, p, "moment_map");
  const Eigen::VectorXd pg = pair.p_to_algebra(p);
  const Eigen::VectorXd inner_bracket = bracket(pair.algebra, pg, pair.Z);
  return 0.5 * pair.project_k(bracket(pair.algebra, pg, inner_bracket));
}

double omega(const HermitianPair& pair, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  check_p(pair, x, "omega");
  check_p(pair, y, "omega");
  return (pair.J_p * x).dot(y);
}

double weighted_norm_sq(const HermitianPair& pair, const Eigen::VectorXd& w_k,
                        const WeightedNormParams& params) {
  if (w_k.size() != pair.dim_k())
    throw std::invalid_argument("weighted_norm_sq: dimension mismatch");
  const double along_z = w_k.dot(pair.Z_k);
  const double pi1_sq = along_z * along_z / pair.N;  // |Z|^2 = N
  const double pi2_sq = w_k.squaredNorm() - pi1_sq;
  return params.a * pi1_sq + params.b * pi2_sq;
}

double f_weighted(const HermitianPair& pair, const Eigen::VectorXd& p,
                  const WeightedNormParams& params) {
  return weighted_norm_sq(pair, moment_map(pair, p), params);
}

double f_weighted_closed(const HermitianPair& pair, const Eigen::VectorXd& p,
                         const WeightedNormParams& params) {
  const double mu_sq = moment_map(pair, p).squaredNorm();
  const double p_sq = p.squaredNorm();
  return params.b * mu_sq + (params.a - params.b) / (4.0 * pair.N) * p_sq * p_sq;
}

Eigen::VectorXd grad_f(const HermitianPair& pair, const Eigen::VectorXd& p,
                       const WeightedNormParams& params) {
  check_p(pair, p, "grad_f");
  const Eigen::VectorXd mu_alg = pair.k_to_algebra(moment_map(pair, p));
  const Eigen::VectorXd jp_alg = pair.p_to_algebra(pair.J_p * p);
  const Eigen::VectorXd lead = pair.project_p(bracket(pair.algebra, mu_alg, jp_alg));
  return 2.0 * params.b * lead + (params.a - params.b) * p.squaredNorm() / pair.N * p;
}

double grad_norm_sq_formula(const HermitianPair& pair, const Eigen::VectorXd& p,
                            const WeightedNormParams& params) {
  check_p(pair, p, "grad_norm_sq_formula");
  const Eigen::VectorXd mu = moment_map(pair, p);
  const Eigen::VectorXd jmu =
      pair.project_p(bracket(pair.algebra, pair.p_to_algebra(pair.J_p * p),
                             pair.k_to_algebra(mu)));
  const double p_sq = p.squaredNorm();
  const double ab = params.a - params.b;
  return 4.0 * params.b * params.b * jmu.squaredNorm() +
         8.0 * params.b * ab / pair.N * p_sq * mu.squaredNorm() +
         ab * ab / (static_cast<double>(pair.N) * pair.N) * p_sq * p_sq * p_sq;
}

double grad_norm_sq_rank2(const HermitianPair& pair, const Eigen::VectorXd& p,
                          const WeightedNormParams& params, int m1, int m2) {
  check_p(pair, p, "grad_norm_sq_rank2");
  const double b = params.b, ab = params.a - params.b;
  const double c1 = 2.0 * m1 + m2 + 3.0;
  const double c2 = m1 + m2 + 1.0;
  const double coeff_p6 = -2.0 * b * b / (c1 * c1) + ab * ab / (4.0 * c2 * c2);
  const double coeff_mix = 12.0 * b * b / c1 + 4.0 * b * ab / c2;
  const double p_sq = p.squaredNorm();
  const double mu_sq = moment_map(pair, p).squaredNorm();
  return coeff_p6 * p_sq * p_sq * p_sq + coeff_mix * p_sq * mu_sq;
}

Eigen::MatrixXd hessian_f(const HermitianPair& pair, const Eigen::VectorXd& p,
                          const WeightedNormParams& params) {
  check_p(pair, p, "hessian_f");
  const auto& L = pair.algebra;
  const Eigen::VectorXd mu_alg = pair.k_to_algebra(moment_map(pair, p));
  const Eigen::VectorXd jp_alg = pair.p_to_algebra(pair.J_p * p);

  const Eigen::MatrixXd ad_mu = ad_matrix(L, mu_alg);
  const Eigen::MatrixXd ad_z = ad_matrix(L, pair.Z);
  const Eigen::MatrixXd ad_jp = ad_matrix(L, jp_alg);

  // d mu / dQ = [J(P), Q] and d J(P)/dQ = [Z, Q] give the two bracket terms.
  const Eigen::MatrixXd t1 = pair.mp.transpose() * (ad_mu * (ad_z * pair.p_basis));
  const Eigen::MatrixXd t2 = -pair.mp.transpose() * (ad_jp * (ad_jp * pair.p_basis));

  const double scale = (params.a - params.b) / (4.0 * pair.N);
  Eigen::MatrixXd h = 2.0 * params.b * (t1 + t2) +
                      scale * (8.0 * p * p.transpose() +
                               4.0 * p.squaredNorm() *
                                   Eigen::MatrixXd::Identity(pair.N, pair.N));
  const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw std::runtime_error("hessian_f: asymmetry beyond tolerance");
  return 0.5 * (h + h.transpose());
}

double laplacian_f(const HermitianPair& pair, const Eigen::VectorXd& p,
                   const WeightedNormParams& params) {
  check_p(pair, p, "laplacian_f");
  return ((pair.N + 2.0) * params.a + (pair.N - 2.0) * params.b) / pair.N * p.squaredNorm();
}

double laplacian_rank2(const WeightedNormParams& params, int m1, int m2, double p_norm_sq) {
  const double c = m1 + m2 + 1.0;
  return ((m1 + m2 + 2.0) * params.a + (m1 + m2) * params.b) / c * p_norm_sq;
}

}  // namespace cmforge
