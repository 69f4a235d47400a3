#pragma once

#include <Eigen/Dense>

#include "cmforge/hermitian_pair.hpp"
#include "cmforge/rational.hpp"

namespace cmforge {

/// Weights of the invariant norm on k = u(1) + k': a scales the RZ part,
/// b the complement.
struct WeightedNormParams {
  double a = 1.0;
  double b = 1.0;
};

/// The exact coefficient pair making the weighted squared-norm of the
/// moment map a degree-four Cartan-Munzner polynomial.
struct MuenznerCoefficients {
  Rational a, b;
  int m1 = 0, m2 = 0;
  WeightedNormParams params() const { return {a.to_double(), b.to_double()}; }
};

/// a = -8(m1 + 2 m2), b = 8(2 m1 + m2 + 3); requires m1, m2 >= 1.
MuenznerCoefficients muenzner_coefficients(int m1, int m2);

/// mu(P) = (1/2)[P, [P, Z]] in k coordinates; degree-2 homogeneous and
/// K-equivariant.
Eigen::VectorXd moment_map(const HermitianPair& pair, const Eigen::VectorXd& p);

/// omega(X, Y) = <J X, Y> on p.
double omega(const HermitianPair& pair, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// a |pi_1 W|^2 + b |pi_2 W|^2 where pi_1 projects onto RZ.
double weighted_norm_sq(const HermitianPair& pair, const Eigen::VectorXd& w_k,
                        const WeightedNormParams& params);

/// f by its definition: the weighted squared-norm of mu(P).
double f_weighted(const HermitianPair& pair, const Eigen::VectorXd& p,
                  const WeightedNormParams& params);

/// f by the closed form b |mu(P)|^2 + (a-b)/(4N) |P|^4. Agrees with
/// f_weighted to rounding; both stay exposed so the harness can cross-check.
double f_weighted_closed(const HermitianPair& pair, const Eigen::VectorXd& p,
                         const WeightedNormParams& params);

/// Analytic gradient 2b[mu(P), J(P)] + ((a-b)|P|^2/N) P, in p coordinates.
Eigen::VectorXd grad_f(const HermitianPair& pair, const Eigen::VectorXd& p,
                       const WeightedNormParams& params);

/// |grad f|^2 via 4b^2 |[J(P),mu(P)]|^2 + (8b(a-b)/N)|P|^2|mu|^2
///   + ((a-b)^2/N^2)|P|^6.
double grad_norm_sq_formula(const HermitianPair& pair, const Eigen::VectorXd& p,
                            const WeightedNormParams& params);

/// Rank-two evaluation of |grad f|^2 as a combination of |P|^6 and
/// |P|^2 |mu(P)|^2 with coefficients in (m1, m2).
double grad_norm_sq_rank2(const HermitianPair& pair, const Eigen::VectorXd& p,
                          const WeightedNormParams& params, int m1, int m2);

/// Dense symmetric Hessian of f at P, in the orthonormal p basis.
Eigen::MatrixXd hessian_f(const HermitianPair& pair, const Eigen::VectorXd& p,
                          const WeightedNormParams& params);

/// ((N+2)a + (N-2)b)/N |P|^2.
double laplacian_f(const HermitianPair& pair, const Eigen::VectorXd& p,
                   const WeightedNormParams& params);

/// ((m1+m2+2)a + (m1+m2)b)/(m1+m2+1) |P|^2: the same value through the
/// multiplicities, using N = 2 m1 + 2 m2 + 2.
double laplacian_rank2(const WeightedNormParams& params, int m1, int m2, double p_norm_sq);

/// Central differences, O(h^2).
template <typename F>
Eigen::VectorXd numeric_gradient(F&& f, const Eigen::VectorXd& p, double h) {
  Eigen::VectorXd g(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Eigen::VectorXd q = p;
    q[i] = p[i] + h;
    const double up = f(q);
    q[i] = p[i] - h;
    g[i] = (up - f(q)) / (2.0 * h);
  }
  return g;
}

template <typename F>
double numeric_laplacian(F&& f, const Eigen::VectorXd& p, double h) {
  const double center = f(p);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    Eigen::VectorXd q = p;
    q[i] = p[i] + h;
    const double up = f(q);
    q[i] = p[i] - h;
    acc += (up - 2.0 * center + f(q)) / (h * h);
  }
  return acc;
}

template <typename F>
Eigen::MatrixXd numeric_hessian(F&& f, const Eigen::VectorXd& p, double h) {
  const Eigen::Index n = p.size();
  Eigen::MatrixXd hess(n, n);
  const double center = f(p);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd q = p;
    q[i] = p[i] + h;
    const double up = f(q);
    q[i] = p[i] - h;
    hess(i, i) = (up - 2.0 * center + f(q)) / (h * h);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Eigen::VectorXd q = p;
      q[i] += h;
      q[j] += h;
      const double pp = f(q);
      q[j] = p[j] - h;
      const double pm = f(q);
      q[i] = p[i] - h;
      const double mm = f(q);
      q[j] = p[j] + h;
      const double mp = f(q);
      hess(i, j) = hess(j, i) = (pp - pm - mp + mm) / (4.0 * h * h);
    }
  }
  return hess;
}

}  // namespace cmforge
