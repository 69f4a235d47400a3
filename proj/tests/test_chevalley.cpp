#include "cmforge/chevalley.hpp"

#include <Eigen/Dense>

#include "doctest.h"

using namespace cmforge;

TEST_CASE("positive root counts") {
  CHECK(positive_roots(cartan_matrix('A', 1)).size() == 1);
  CHECK(positive_roots(cartan_matrix('A', 2)).size() == 3);
  CHECK(positive_roots(cartan_matrix('A', 3)).size() == 6);
  CHECK(positive_roots(cartan_matrix('D', 4)).size() == 12);
  CHECK(positive_roots(cartan_matrix('D', 5)).size() == 20);
  CHECK(positive_roots(cartan_matrix('E', 6)).size() == 36);
}

TEST_CASE("non-simply-laced root counts") {
  Eigen::MatrixXi b2(2, 2);
  b2 << 2, -2, -1, 2;
  CHECK(positive_roots(b2).size() == 4);

  Eigen::MatrixXi g2(2, 2);
  g2 << 2, -3, -1, 2;
  CHECK(positive_roots(g2).size() == 6);
  // String lengths reach 4 here, so constants up to +-3 get exercised and
  // the exact internal Jacobi check guards the sign recursion.
  CHECK(chevalley_compact(g2).dim() == 14);
}

TEST_CASE("A1 compact form matches su(2)") {
  const auto L = chevalley_compact(cartan_matrix('A', 1));
  CHECK(L.dim() == 3);
  CHECK(L.compact());
  const auto su2 = StructureAlgebra::su_algebra(2);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> a(L.killing()), b(su2.killing());
  CHECK((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("D5 compact form") {
  const auto L = chevalley_compact(cartan_matrix('D', 5));
  CHECK(L.dim() == 45);
  CHECK(L.compact());
  CHECK(validate(L, 0.0).empty());
}

TEST_CASE("E6 compact form validates exactly") {
  const auto data = chevalley_compact_data(cartan_matrix('E', 6));
  CHECK(data.algebra.dim() == 78);
  CHECK(data.positive_roots.size() == 36);
  CHECK(data.algebra.compact());
  // Integer structure constants make double arithmetic exact here, so the
  // structural checks run at zero tolerance.
  CHECK(validate(data.algebra, 0.0).empty());

  // Highest root in Bourbaki coordinates.
  Eigen::VectorXi highest(6);
  highest << 1, 2, 2, 3, 2, 1;
  CHECK(data.positive_roots.back() == highest);
}

TEST_CASE("reducible finite type is accepted") {
  Eigen::MatrixXi a1a1 = 2 * Eigen::MatrixXi::Identity(2, 2);
  const auto L = chevalley_compact(a1a1);
  CHECK(L.dim() == 6);
  CHECK(validate(L, 0.0).empty());
}

TEST_CASE("invalid Cartan matrices are rejected") {
  Eigen::MatrixXi bad(2, 2);
  bad << 2, -1, 0, 2;  // asymmetric zero pattern
  CHECK_THROWS_AS(chevalley_compact(bad), std::invalid_argument);

  bad << 2, 1, 1, 2;  // positive off-diagonal
  CHECK_THROWS_AS(chevalley_compact(bad), std::invalid_argument);

  bad << 2, -2, -2, 2;  // affine, not finite type
  CHECK_THROWS_AS(chevalley_compact(bad), std::invalid_argument);

  bad << 1, 0, 0, 2;  // wrong diagonal
  CHECK_THROWS_AS(chevalley_compact(bad), std::invalid_argument);
}
