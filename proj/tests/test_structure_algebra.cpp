#include "cmforge/structure_algebra.hpp"

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "cmforge/rng.hpp"
#include "doctest.h"

using namespace cmforge;

namespace {

// Matrix representatives in the same order as the so_algebra basis.
std::vector<Eigen::MatrixXd> so_matrix_basis(int m) {
  std::vector<Eigen::MatrixXd> basis;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, m);
      e(i, j) = 1.0;
      e(j, i) = -1.0;
      basis.push_back(e);
    }
  return basis;
}

std::vector<Eigen::MatrixXcd> su_matrix_basis(int m) {
  const std::complex<double> I(0, 1);
  std::vector<Eigen::MatrixXcd> basis;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m, m), t = Eigen::MatrixXcd::Zero(m, m);
      s(i, j) = 1;
      s(j, i) = -1;
      t(i, j) = I;
      t(j, i) = I;
      basis.push_back(s);
      basis.push_back(t);
    }
  for (int k = 0; k + 1 < m; ++k) {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(m, m);
    d(k, k) = I;
    d(k + 1, k + 1) = -I;
    basis.push_back(d);
  }
  return basis;
}

// Expands a skew matrix in the so basis via the Frobenius form (norm^2 = 2).
Eigen::VectorXd so_expand(const std::vector<Eigen::MatrixXd>& basis, const Eigen::MatrixXd& x) {
  Eigen::VectorXd c(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) c[a] = (basis[a].transpose() * x).trace() / 2.0;
  return c;
}

}  // namespace

TEST_CASE("so constructor dimensions") {
  CHECK(StructureAlgebra::so_algebra(3).dim() == 3);
  CHECK(StructureAlgebra::so_algebra(5).dim() == 10);
  CHECK(StructureAlgebra::so_algebra(10).dim() == 45);
  CHECK_THROWS_AS(StructureAlgebra::so_algebra(2), std::invalid_argument);
}

TEST_CASE("su constructor dimensions") {
  CHECK(StructureAlgebra::su_algebra(2).dim() == 3);
  CHECK(StructureAlgebra::su_algebra(4).dim() == 15);
  CHECK_THROWS_AS(StructureAlgebra::su_algebra(1), std::invalid_argument);
}

TEST_CASE("so(3) bracket matches the matrix commutator") {
  const auto L = StructureAlgebra::so_algebra(3);
  const auto mats = so_matrix_basis(3);
  // Oracle: commutator of the 3x3 skew matrices, expanded back in the basis.
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const Eigen::VectorXd expected =
          so_expand(mats, mats[a] * mats[b] - mats[b] * mats[a]);
      const Eigen::VectorXd got =
          bracket(L, Eigen::VectorXd::Unit(3, a), Eigen::VectorXd::Unit(3, b));
      CHECK((expected - got).norm() == doctest::Approx(0.0).epsilon(1e-14));
    }
  }
  // [L1, L2] = -L3 with this basis ordering.
  const Eigen::VectorXd e12 =
      bracket(L, Eigen::VectorXd::Unit(3, 0), Eigen::VectorXd::Unit(3, 1));
  CHECK(e12[2] == doctest::Approx(-1.0));
  CHECK(std::abs(e12[0]) + std::abs(e12[1]) < 1e-14);
}

TEST_CASE("bracket is antisymmetric and Jacobi holds on random elements") {
  const auto L = StructureAlgebra::so_algebra(5);
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXd x = rng.gaussian_vector(10), y = rng.gaussian_vector(10),
                          z = rng.gaussian_vector(10);
    CHECK(bracket(L, x, x).norm() == doctest::Approx(0.0).epsilon(1e-13));
    const Eigen::VectorXd jac = bracket(L, bracket(L, x, y), z) +
                                bracket(L, bracket(L, y, z), x) +
                                bracket(L, bracket(L, z, x), y);
    CHECK(jac.norm() / (x.norm() * y.norm() * z.norm()) < 1e-12);
  }
}

TEST_CASE("ad_matrix basics") {
  const auto L = StructureAlgebra::so_algebra(4);
  CHECK(ad_matrix(L, Eigen::VectorXd::Zero(6)).norm() == 0.0);

  Rng rng(3);
  const Eigen::VectorXd x = rng.gaussian_vector(6), y = rng.gaussian_vector(6);
  // Tr(ad_X ad_Y) is the Killing form by definition.
  const double tr = (ad_matrix(L, x) * ad_matrix(L, y)).trace();
  CHECK(tr == doctest::Approx(killing_form(L, x, y)).epsilon(1e-12));

  // Column j of ad_X is [X, e_j].
  const Eigen::MatrixXd ad = ad_matrix(L, x);
  for (int j = 0; j < 6; ++j)
    CHECK((ad.col(j) - bracket(L, x, Eigen::VectorXd::Unit(6, j))).norm() < 1e-13);
}

TEST_CASE("so(3) adjoint spectrum and inner product") {
  const auto L = StructureAlgebra::so_algebra(3);
  // (ad_{L1})^2 has eigenvalues {0, -k, -k}; frozen from the hand-expanded
  // 3x3 adjoint: k = 1.
  const Eigen::MatrixXd sq = ad_matrix(L, Eigen::VectorXd::Unit(3, 0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sq * sq);
  CHECK(es.eigenvalues()[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(es.eigenvalues()[1] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(es.eigenvalues()[2] == doctest::Approx(0.0).epsilon(1e-12));

  CHECK(inner(L, Eigen::VectorXd::Unit(3, 0), Eigen::VectorXd::Unit(3, 0)) ==
        doctest::Approx(2.0).epsilon(1e-13));

  Rng rng(5);
  const Eigen::VectorXd x = rng.gaussian_vector(3), y = rng.gaussian_vector(3);
  CHECK(inner(L, x, y) == doctest::Approx(inner(L, y, x)).epsilon(1e-13));
}

TEST_CASE("killing form matches the matrix-trace identity") {
  // so(m): B(X,Y) = (m-2) Tr(XY); su(m): B(X,Y) = 2m Tr(XY).
  {
    const int m = 10;
    const auto L = StructureAlgebra::so_algebra(m);
    const auto mats = so_matrix_basis(m);
    Rng rng(11);
    for (int t = 0; t < 5; ++t) {
      const Eigen::VectorXd x = rng.gaussian_vector(L.dim()), y = rng.gaussian_vector(L.dim());
      Eigen::MatrixXd mx = Eigen::MatrixXd::Zero(m, m), my = Eigen::MatrixXd::Zero(m, m);
      for (int a = 0; a < L.dim(); ++a) {
        mx += x[a] * mats[a];
        my += y[a] * mats[a];
      }
      const double expected = (m - 2) * (mx * my).trace();
      CHECK(killing_form(L, x, y) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
  {
    const int m = 4;
    const auto L = StructureAlgebra::su_algebra(m);
    const auto mats = su_matrix_basis(m);
    Rng rng(13);
    for (int t = 0; t < 5; ++t) {
      const Eigen::VectorXd x = rng.gaussian_vector(L.dim()), y = rng.gaussian_vector(L.dim());
      Eigen::MatrixXcd mx = Eigen::MatrixXcd::Zero(m, m), my = Eigen::MatrixXcd::Zero(m, m);
      for (int a = 0; a < L.dim(); ++a) {
        mx += x[a] * mats[a];
        my += y[a] * mats[a];
      }
      const double expected = 2 * m * (mx * my).trace().real();
      CHECK(killing_form(L, x, y) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("matrix-backed bracket agrees with the commutator on random pairs") {
  const int m = 6;
  const auto L = StructureAlgebra::so_algebra(m);
  const auto mats = so_matrix_basis(m);
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    const Eigen::VectorXd x = rng.unit_vector(L.dim()), y = rng.unit_vector(L.dim());
    Eigen::MatrixXd mx = Eigen::MatrixXd::Zero(m, m), my = Eigen::MatrixXd::Zero(m, m);
    for (int a = 0; a < L.dim(); ++a) {
      mx += x[a] * mats[a];
      my += y[a] * mats[a];
    }
    const Eigen::VectorXd expected = so_expand(mats, mx * my - my * mx);
    CHECK((bracket(L, x, y) - expected).norm() < 1e-10);
  }
}

TEST_CASE("inner is positive definite on compact constructors") {
  for (const auto& L : {StructureAlgebra::so_algebra(5), StructureAlgebra::su_algebra(3)}) {
    CHECK(L.compact());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-L.killing());
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("inner rejects non-compact input") {
  // sl(2,R)-like: [e,f] = h, [h,e] = 2e, [h,f] = -2f; indefinite Killing form.
  std::vector<TensorEntry> t = {
      {0, 1, 2, 1.0},  {1, 0, 2, -1.0}, {2, 0, 0, 2.0},
      {0, 2, 0, -2.0}, {2, 1, 1, -2.0}, {1, 2, 1, 2.0},
  };
  const StructureAlgebra L(3, t);
  CHECK_FALSE(L.compact());
  CHECK(validate(L).empty());
  CHECK_THROWS_AS(inner(L, Eigen::VectorXd::Unit(3, 0), Eigen::VectorXd::Unit(3, 0)),
                  std::domain_error);
}

TEST_CASE("orthonormalize") {
  const auto L = StructureAlgebra::so_algebra(4);
  const int d = L.dim();

  SUBCASE("already orthonormal input is unchanged") {
    Eigen::MatrixXd v(d, 2);
    v.col(0) = Eigen::VectorXd::Unit(d, 0) / norm(L, Eigen::VectorXd::Unit(d, 0));
    v.col(1) = Eigen::VectorXd::Unit(d, 3) / norm(L, Eigen::VectorXd::Unit(d, 3));
    const Eigen::MatrixXd q = orthonormalize(L, v);
    CHECK((q - v).norm() < 1e-13);
  }

  SUBCASE("projection removes the first component") {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(d, 0), w = Eigen::VectorXd::Unit(d, 5);
    v /= norm(L, v);
    w /= norm(L, w);
    REQUIRE(std::abs(inner(L, v, w)) < 1e-13);
    Eigen::MatrixXd in(d, 2);
    in.col(0) = v;
    in.col(1) = 2 * v + w;
    const Eigen::MatrixXd q = orthonormalize(L, in);
    CHECK((q.col(0) - v).norm() < 1e-13);
    CHECK((q.col(1) - w).norm() < 1e-12);
  }

  SUBCASE("random set gives an identity Gram matrix") {
    Rng rng(23);
    Eigen::MatrixXd v(d, 5);
    for (int c = 0; c < 5; ++c) v.col(c) = rng.gaussian_vector(d);
    const Eigen::MatrixXd q = orthonormalize(L, v);
    Eigen::MatrixXd gram(5, 5);
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b) gram(a, b) = inner(L, q.col(a), q.col(b));
    CHECK((gram - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("rank deficiency is an error") {
    Eigen::MatrixXd v(d, 2);
    v.col(0) = Eigen::VectorXd::Unit(d, 1);
    v.col(1) = 3 * v.col(0);
    CHECK_THROWS_AS(orthonormalize(L, v), std::runtime_error);
  }
}

TEST_CASE("validate accepts constructors and flags corrupted tensors") {
  CHECK(validate(StructureAlgebra::so_algebra(5)).empty());
  CHECK(validate(StructureAlgebra::su_algebra(3)).empty());

  // Flip the sign of one bracket (and its antisymmetric partner, so the
  // failure lands on the Jacobi identity).
  auto entries = StructureAlgebra::so_algebra(5).tensor();
  bool flipped = false;
  for (auto& e : entries) {
    if (!flipped && e.i < e.j) {
      for (auto& f : entries) {
        if (f.i == e.j && f.j == e.i && f.k == e.k) f.value = -f.value;
      }
      e.value = -e.value;
      flipped = true;
    }
  }
  REQUIRE(flipped);
  const StructureAlgebra broken(10, entries);
  const auto violations = validate(broken);
  CHECK(!violations.empty());
  bool has_jacobi = false;
  for (const auto& v : violations) has_jacobi |= v.starts_with("jacobi");
  CHECK(has_jacobi);
}

TEST_CASE("dimension mismatches are rejected") {
  const auto L = StructureAlgebra::so_algebra(3);
  const Eigen::VectorXd bad = Eigen::VectorXd::Zero(5);
  CHECK_THROWS_AS(bracket(L, bad, bad), std::invalid_argument);
  CHECK_THROWS_AS(ad_matrix(L, bad), std::invalid_argument);
  CHECK_THROWS_AS(inner(L, bad, bad), std::invalid_argument);
}
