#include "support.hpp"

using ff::Matrix;
using ff::Vector;

TEST_CASE("tangent frame of normalize(1,1,1) is orthonormal and orthogonal to u") {
  const Vector u = vec({1, 1, 1}).normalized();
  const auto frame = ff::tangent_frame(u);
  REQUIRE(frame.basis.rows() == 3);
  REQUIRE(frame.basis.cols() == 2);
  for (int j = 0; j < 2; ++j) {
    CHECK(std::abs(frame.basis.col(j).dot(u)) <= 1e-12);
    CHECK(std::abs(frame.basis.col(j).squaredNorm() - 1.0) <= 1e-12);
  }
  CHECK(std::abs(frame.basis.col(0).dot(frame.basis.col(1))) <= 1e-12);
}

TEST_CASE("tangent frame on random unit vectors") {
  std::mt19937_64 rng(7);
  for (int m = 2; m <= 5; ++m) {
    for (int trial = 0; trial < 200; ++trial) {
      const Vector u = random_unit(rng, m);
      const auto frame = ff::tangent_frame(u);
      const Matrix full = [&] {
        Matrix q(m, m);
        q << frame.basis, u;
        return q;
      }();
      CHECK((full.transpose() * full - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() <= 1e-12);
      const Vector t = frame.lift(random_vector(rng, m - 1));
      CHECK((frame.lift(frame.project(t)) - t).norm() <= 1e-12);
    }
  }
}

TEST_CASE("tangent frame is deterministic and exact on axis vectors") {
  const auto f1 = ff::tangent_frame(vec({0, 0, 1}));
  const auto f2 = ff::tangent_frame(vec({0, 0, 1}));
  CHECK(f1.basis == f2.basis);
  CHECK((f1.basis.col(0) - vec({1, 0, 0})).norm() == 0.0);
  CHECK((f1.basis.col(1) - vec({0, 1, 0})).norm() == 0.0);
  const auto f3 = ff::tangent_frame(vec({-1, 0}));
  CHECK(std::abs(f3.basis.col(0).dot(vec({-1, 0}))) == 0.0);
}

TEST_CASE("tangent frame rejects bad input") {
  CHECK(error_code_of([] { ff::tangent_frame(vec({1, 1})); }) == ff::ErrorCode::NotUnit);
  CHECK(error_code_of([] { ff::tangent_frame(vec({1})); }) == ff::ErrorCode::DimensionMismatch);
}

TEST_CASE("cofactor satisfies M C^T = det(M) I") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix M = random_matrix(rng, n, n);
      const Matrix C = ff::cofactor(M);
      const double det = ff::determinant(M);
      CHECK((M * C.transpose() - det * Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((ff::adjugate(M) * M - det * Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12);
      if (std::abs(det) > 1e-3) {
        CHECK((C / det - M.inverse().transpose()).cwiseAbs().maxCoeff() <= 1e-8);
      }
    }
  }
}

TEST_CASE("cofactor of 2x2 and singular matrices") {
  Matrix M(2, 2);
  M << 1, 2, 3, 4;
  Matrix expect(2, 2);
  expect << 4, -3, -2, 1;
  CHECK(ff::cofactor(M) == expect);
  Matrix S(3, 3);
  S << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  CHECK((S * ff::cofactor(S).transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(error_code_of([] { ff::cofactor(Matrix(2, 3)); }) == ff::ErrorCode::DimensionMismatch);
}

TEST_CASE("numeric rank") {
  Matrix D = Matrix::Zero(3, 2);
  D(0, 0) = 1.0;
  D(1, 1) = 1e-9;
  CHECK(ff::numeric_rank(D, 1e-6) == 1);
  D(1, 1) = 1e-3;
  CHECK(ff::numeric_rank(D, 1e-6) == 2);
  CHECK(ff::numeric_rank(Matrix::Zero(2, 2), 1e-6) == 0);
  // A uniformly tiny matrix is full rank relatively but not against a floor.
  const Matrix tiny = 1e-10 * Matrix::Identity(2, 2);
  CHECK(ff::numeric_rank(tiny, 1e-6) == 2);
  CHECK(ff::numeric_rank(tiny, 1e-6, 1.0) == 0);
  CHECK(error_code_of([] { ff::numeric_rank(Matrix::Identity(2, 2), 0.0); }) == ff::ErrorCode::InvalidArgument);
}

TEST_CASE("numeric rank is invariant under orthogonal transforms") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix A = random_matrix(rng, 4, 2) * random_matrix(rng, 2, 3);
    const Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, 4, 4));
    const Matrix Q = qr.householderQ();
    CHECK(ff::numeric_rank(A, 1e-9) == 2);
    CHECK(ff::numeric_rank(Q * A, 1e-9) == 2);
  }
}

TEST_CASE("rank ambiguity band") {
  Matrix D = Matrix::Zero(2, 2);
  D(0, 0) = 1.0;
  D(1, 1) = 1e-6;
  CHECK(ff::rank_ambiguous(D, 1e-8, 1e-4));
  D(1, 1) = 1e-12;
  CHECK_FALSE(ff::rank_ambiguous(D, 1e-8, 1e-4));
  D(1, 1) = 0.5;
  CHECK_FALSE(ff::rank_ambiguous(D, 1e-8, 1e-4));
}

TEST_CASE("vstack and value types") {
  const Matrix s = ff::vstack(Matrix::Ones(2, 1), Matrix::Zero(3, 1));
  CHECK(s.rows() == 5);
  CHECK(s(1, 0) == 1.0);
  CHECK(s(2, 0) == 0.0);
  CHECK(error_code_of([] { ff::vstack(Matrix(1, 1), Matrix(1, 2)); }) == ff::ErrorCode::DimensionMismatch);
  CHECK(error_code_of([] { ff::AmbientVec(vec({0.0, NAN})); }) == ff::ErrorCode::InvalidArgument);
  CHECK(error_code_of([] { ff::UnitVec(vec({1.0, 1e-5})); }) == ff::ErrorCode::NotUnit);
  CHECK(ff::UnitVec::normalized(vec({3, 4}))[0] == Catch::Approx(0.6));
}
