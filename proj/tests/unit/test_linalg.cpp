#include <gtest/gtest.h>

#include <cmath>

#include "qlb/error.hpp"
#include "qlb/linalg.hpp"
#include "qlb/rng.hpp"

using namespace qlb;

namespace {

CMatrix random_matrix(Eigen::Index r, Eigen::Index c, Rng& rng) {
  CMatrix a(r, c);
  for (Eigen::Index j = 0; j < c; ++j)
    for (Eigen::Index i = 0; i < r; ++i) a(i, j) = rng.cnormal();
  return a;
}

// largest singular value by power iteration on A^dag A
double power_norm(const CMatrix& a) {
  CVector v = CVector::Ones(a.cols());
  double s = 0.0;
  for (int it = 0; it < 2000; ++it) {
    CVector w = a.adjoint() * (a * v);
    s = std::sqrt(w.norm() / v.norm());
    v = w / w.norm();
  }
  return s;
}

}  // namespace

TEST(Linalg, KronMatchesIndexFormula) {
  Rng rng(1);
  CMatrix a = random_matrix(2, 3, rng), b = random_matrix(3, 2, rng);
  CMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 6);
  ASSERT_EQ(k.cols(), 6);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j)
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 2; ++q) EXPECT_EQ(k(i * 3 + p, j * 2 + q), a(i, j) * b(p, q));
}

TEST(Linalg, KronRespectsCap) {
  const auto saved = caps().max_kron_entries;
  caps().max_kron_entries = 10;
  EXPECT_THROW(kron(CMatrix::Identity(4, 4), CMatrix::Identity(4, 4)), SizeError);
  caps().max_kron_entries = saved;
}

TEST(Linalg, SpectralNormMatchesPowerIteration) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    CMatrix a = random_matrix(1 + rng.below(9), 1 + rng.below(9), rng);
    EXPECT_NEAR(spectral_norm(a), power_norm(a), 1e-8);
  }
}

TEST(Linalg, HolderIsTightOnDiagonals) {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = cplx(0, -5.0);
  d(2, 2) = 1.0;
  EXPECT_NEAR(holder_bound(d), 5.0, 1e-12);
  EXPECT_NEAR(spectral_norm(d), 5.0, 1e-12);
}

TEST(Linalg, HolderDominatesSpectral) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    CMatrix a = random_matrix(1 + rng.below(12), 1 + rng.below(12), rng);
    EXPECT_GE(holder_bound(a), spectral_norm(a) - 1e-10);
  }
}

TEST(Linalg, SpanRankOfDependentColumns) {
  Rng rng(4);
  CMatrix b = random_matrix(12, 4, rng);
  CMatrix mix = random_matrix(4, 30, rng);
  CMatrix cols = b * mix;  // 30 columns spanning 4 dimensions
  Isometry s = span_isometry(cols);
  EXPECT_EQ(s.rank(), 4);
  EXPECT_LT((cols - s.projector() * cols).norm(), 1e-9 * cols.norm());
  Isometry tall = span_isometry(CMatrix(b.leftCols(3)));
  EXPECT_EQ(tall.rank(), 3);
  EXPECT_LT((tall.basis().adjoint() * tall.basis() - CMatrix::Identity(3, 3)).norm(), 1e-12);
}

TEST(Linalg, SubspaceAlgebraDimensions) {
  const Eigen::Index n = 6;
  Isometry a = Isometry::coordinates(n, {0, 1, 2});
  Isometry b = Isometry::coordinates(n, {2, 3});
  EXPECT_EQ(a.intersect(b).rank(), 1);
  EXPECT_EQ(a.join(b).rank(), 4);
  EXPECT_EQ(a.minus(b).rank(), 2);
  EXPECT_EQ(a.complement().rank(), 3);
  EXPECT_NEAR(a.join(b).excess(a), 0.0, 1e-12);
  EXPECT_NEAR(b.excess(a), 1.0, 1e-12);
}

TEST(Linalg, FidelityOfPureStates) {
  CVector u = CVector::Zero(3), v = CVector::Zero(3);
  u(0) = 1.0;
  v(0) = 1.0 / std::sqrt(2.0);
  v(1) = cplx(0, 1.0 / std::sqrt(2.0));
  CMatrix ru = u * u.adjoint(), rv = v * v.adjoint();
  EXPECT_NEAR(fidelity(ru, ru), 1.0, 1e-9);
  EXPECT_NEAR(fidelity(ru, rv), std::abs(u.dot(v)), 1e-7);
  EXPECT_THROW(fidelity(2.0 * ru, rv), ContractError);
}

TEST(Linalg, MatrixSquareRoots) {
  Rng rng(5);
  CMatrix a = random_matrix(5, 5, rng);
  CMatrix p = a * a.adjoint() + CMatrix::Identity(5, 5);
  CMatrix s = mat_sqrt(p);
  EXPECT_LT((s * s - p).norm(), 1e-9);
  EXPECT_LT((mat_inv_sqrt(p) * s - CMatrix::Identity(5, 5)).norm(), 1e-9);
  CMatrix sing = CMatrix::Zero(2, 2);
  sing(0, 0) = 1.0;
  EXPECT_THROW(mat_inv_sqrt(sing), SingularityError);
}

TEST(Linalg, IsometryRejectsNonOrthonormal) {
  CMatrix b = CMatrix::Ones(3, 2);
  EXPECT_THROW(Isometry(b, true), ContractError);
}
