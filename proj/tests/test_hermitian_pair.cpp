#include "cmforge/hermitian_pair.hpp"

#include <Eigen/Dense>

#include "cmforge/rng.hpp"
#include "doctest.h"

using namespace cmforge;

namespace {

// Residual of the projection of x onto the span of the given orthonormal
// basis columns, in the <,> metric.
double off_span_norm(const HermitianPair& pair, const Eigen::MatrixXd& basis,
                     const Eigen::VectorXd& x) {
  const Eigen::MatrixXd mb = pair.metric * basis;
  const Eigen::VectorXd residual = x - basis * (mb.transpose() * x);
  return std::sqrt(std::max(0.0, residual.dot(pair.metric * residual)));
}

void check_pair_invariants(const HermitianPair& pair) {
  const auto& L = pair.algebra;
  CHECK(pair.dim_k() + pair.N == pair.dim());
  CHECK(inner(L, pair.Z, pair.Z) == doctest::Approx(pair.N).epsilon(1e-9));

  // (ad_Z)^2 = -id on p.
  const Eigen::MatrixXd j2 = pair.J_p * pair.J_p;
  CHECK((j2 + Eigen::MatrixXd::Identity(pair.N, pair.N)).cwiseAbs().maxCoeff() < 1e-10);

  // p_basis orthonormality.
  const Eigen::MatrixXd gram = pair.p_basis.transpose() * pair.mp;
  CHECK((gram - Eigen::MatrixXd::Identity(pair.N, pair.N)).cwiseAbs().maxCoeff() < 1e-12);

  // Bracket closure on random pairs: [k,k] in k, [k,p] in p, [p,p] in k.
  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXd xk = pair.k_to_algebra(rng.unit_vector(pair.dim_k()));
    const Eigen::VectorXd yk = pair.k_to_algebra(rng.unit_vector(pair.dim_k()));
    const Eigen::VectorXd xp = pair.p_to_algebra(rng.unit_vector(pair.N));
    const Eigen::VectorXd yp = pair.p_to_algebra(rng.unit_vector(pair.N));
    CHECK(off_span_norm(pair, pair.k_basis, bracket(L, xk, yk)) < 1e-10);
    CHECK(off_span_norm(pair, pair.p_basis, bracket(L, xk, xp)) < 1e-10);
    CHECK(off_span_norm(pair, pair.k_basis, bracket(L, xp, yp)) < 1e-10);
  }
}

}  // namespace

TEST_CASE("BDI(3) geometry") {
  const auto pair = build_space(Family::BDI, 3);
  CHECK(pair.N == 6);
  CHECK(pair.dim_k() == 4);
  CHECK(inner(pair.algebra, pair.Z, pair.Z) == doctest::Approx(6.0).epsilon(1e-10));
  check_pair_invariants(pair);
}

TEST_CASE("BDI(4) and BDI(5) dimensions") {
  CHECK(build_space(Family::BDI, 4).N == 8);
  CHECK(build_space(Family::BDI, 5).N == 10);
}

TEST_CASE("AIII(2) geometry") {
  const auto pair = build_space(Family::AIII, 2);
  CHECK(pair.N == 8);
  CHECK(pair.dim_k() == 7);
  check_pair_invariants(pair);
}

TEST_CASE("DIII5 geometry") {
  const auto pair = build_space(Family::DIII5);
  CHECK(pair.N == 20);
  CHECK(pair.dim_k() == 25);
  check_pair_invariants(pair);
}

TEST_CASE("EIII geometry") {
  const auto pair = build_space(Family::EIII);
  CHECK(pair.N == 32);
  CHECK(pair.dim_k() == 46);
  CHECK(inner(pair.algebra, pair.Z, pair.Z) == doctest::Approx(32.0).epsilon(1e-9));
  check_pair_invariants(pair);
}

TEST_CASE("parameter guards") {
  CHECK_THROWS_AS(build_space(Family::BDI, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_space(Family::AIII, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_space(Family::DIII5, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_space(Family::EIII, 1), std::invalid_argument);
}

TEST_CASE("cartan_split with the identity leaves p empty") {
  const auto L = StructureAlgebra::so_algebra(4);
  const auto [k, p] = cartan_split(L, Eigen::MatrixXd::Identity(6, 6));
  CHECK(k.cols() == 6);
  CHECK(p.cols() == 0);
}

TEST_CASE("cartan_split rejects non-involutions and non-automorphisms") {
  const auto L = StructureAlgebra::so_algebra(4);
  CHECK_THROWS_AS(cartan_split(L, 2.0 * Eigen::MatrixXd::Identity(6, 6)),
                  std::invalid_argument);
  // An involution that is not an automorphism: flip a single basis sign
  // that breaks bracket compatibility.
  Eigen::VectorXd diag = Eigen::VectorXd::Ones(6);
  diag[0] = -1.0;
  CHECK_THROWS_AS(cartan_split(L, Eigen::MatrixXd(diag.asDiagonal())), std::invalid_argument);
}

TEST_CASE("center_of_k") {
  // Semisimple fixture: the whole algebra has trivial center.
  const auto so3 = StructureAlgebra::so_algebra(3);
  const Eigen::MatrixXd full = orthonormalize(so3, Eigen::MatrixXd::Identity(3, 3));
  CHECK(center_of_k(so3, full).cols() == 0);

  // The k of BDI(3) and DIII5 have 1-dimensional centers.
  {
    const auto pair = build_space(Family::BDI, 3);
    CHECK(center_of_k(pair.algebra, pair.k_basis).cols() == 1);
  }
  {
    const auto pair = build_space(Family::DIII5);
    CHECK(center_of_k(pair.algebra, pair.k_basis).cols() == 1);
  }
}

TEST_CASE("find_Z requires a 1-dimensional center") {
  const auto so3 = StructureAlgebra::so_algebra(3);
  const Eigen::MatrixXd full = orthonormalize(so3, Eigen::MatrixXd::Identity(3, 3));
  CHECK_THROWS_AS(find_Z(so3, full, Eigen::MatrixXd(3, 0), Eigen::MatrixXd(3, 0)),
                  std::runtime_error);
}

TEST_CASE("J is a compatible complex structure") {
  for (const auto& pair :
       {build_space(Family::BDI, 4), build_space(Family::AIII, 3), build_space(Family::DIII5)}) {
    Rng rng(9);
    for (int t = 0; t < 10; ++t) {
      const Eigen::VectorXd p = rng.gaussian_vector(pair.N), q = rng.gaussian_vector(pair.N);
      const Eigen::VectorXd jp = apply_J(pair, p);
      CHECK((apply_J(pair, jp) + p).norm() < 1e-10 * p.norm());       // J^2 = -id
      CHECK(jp.norm() == doctest::Approx(p.norm()).epsilon(1e-12));   // isometry
      CHECK(std::abs(jp.dot(p)) < 1e-11 * p.squaredNorm());           // skew
      CHECK(apply_J(pair, q).dot(jp) ==
            doctest::Approx(q.dot(p)).epsilon(1e-10));                // <JP,JQ> = <P,Q>
    }

    // (ad_Z)^4 = id on p.
    const Eigen::MatrixXd j2 = pair.J_p * pair.J_p;
    CHECK((j2 * j2 - Eigen::MatrixXd::Identity(pair.N, pair.N)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("theta signs agree with the split") {
  const auto pair = build_space(Family::BDI, 3);
  CHECK(pair.theta_signs.head(pair.dim_k()).minCoeff() == 1);
  CHECK(pair.theta_signs.tail(pair.N).maxCoeff() == -1);
  CHECK(pair.theta_signs.size() == pair.dim());
}

TEST_CASE("isotropy rotations are orthogonal on p") {
  const auto pair = build_space(Family::AIII, 2);
  Rng rng(31);
  const Eigen::MatrixXd rot = isotropy_rotation(pair, rng.unit_vector(pair.dim_k()));
  CHECK((rot.transpose() * rot - Eigen::MatrixXd::Identity(pair.N, pair.N)).cwiseAbs().maxCoeff() <
        1e-12);
}
