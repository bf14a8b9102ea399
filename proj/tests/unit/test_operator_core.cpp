#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/SVD>

#include "fc/catalogue.hpp"
#include "fc/operator_core.hpp"

namespace {

using fc::cplx;
using fc::CMatrix;
using fc::MatrixOperator;

const cplx I(0.0, 1.0);

MatrixOperator diag(std::initializer_list<cplx> d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index k = 0;
  for (cplx v : d) m(k, k) = v, ++k;
  return MatrixOperator(m);
}

TEST(Resolvent, ScalarIdentity) {
  const CMatrix r = fc::resolvent(diag({0.0}), 1.0);
  EXPECT_NEAR(std::abs(r(0, 0) - 1.0), 0.0, 1e-15);
}

TEST(Resolvent, DiagonalCase) {
  const CMatrix r = fc::resolvent(diag({I, -I}), 2.0);
  EXPECT_LT(std::abs(r(0, 0) - 1.0 / (2.0 - I)), 1e-15);
  EXPECT_LT(std::abs(r(1, 1) - 1.0 / (2.0 + I)), 1e-15);
  EXPECT_EQ(r(0, 1), cplx(0.0));
}

TEST(Resolvent, MultiplyBackOnRandomMatrix) {
  const MatrixOperator A = fc::random_diagonalizable(5, 42);
  const cplx l(0.3, 2.0);
  const CMatrix r = fc::resolvent(A, l);
  const CMatrix back = (l * CMatrix::Identity(5, 5) - A.entries()) * r;
  EXPECT_LT((back - CMatrix::Identity(5, 5)).norm(), 1e-12);
}

TEST(Resolvent, SpectrumHitThrows) {
  try {
    fc::resolvent(diag({1.0, 2.0}), 2.0);
    FAIL() << "expected SpectrumHit";
  } catch (const fc::Error& e) {
    EXPECT_EQ(e.kind(), fc::ErrorKind::SpectrumHit);
  }
}

TEST(ResolventProperty, ResolventIdentity) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const MatrixOperator A = fc::random_diagonalizable(4, seed);
    const cplx l(0.4, 1.7), m(-1.1, -2.3);
    const CMatrix Rl = fc::resolvent(A, l), Rm = fc::resolvent(A, m);
    EXPECT_LT((Rl - Rm - (m - l) * Rl * Rm).norm(), 1e-9) << "seed " << seed;
  }
}

TEST(ResolventProperty, StripTypeBoundWithFittedConstant) {
  const MatrixOperator A = fc::random_diagonalizable(4, 7);
  const double w0 = A.max_abs_imag();
  std::vector<cplx> samples;
  for (int i = 0; i < 40; ++i)
    for (double sgn : {1.0, -1.0}) samples.emplace_back(-5.0 + 0.25 * i, sgn * (w0 + 0.1 + 0.05 * (i % 7)));
  // Fit M' on the first half, reuse it on the second.
  double Mfit = 0.0;
  for (std::size_t k = 0; k < samples.size() / 2; ++k)
    Mfit = std::max(Mfit, fc::resolvent(A, samples[k]).norm() * (std::abs(samples[k].imag()) - w0));
  Mfit = std::max(Mfit, fc::spectral_data(A).condition_number);
  for (std::size_t k = samples.size() / 2; k < samples.size(); ++k)
    EXPECT_LE(fc::op_norm(fc::resolvent(A, samples[k])) * (std::abs(samples[k].imag()) - w0), Mfit * (1 + 1e-9));
}

TEST(GroupAt, ZeroIsIdentity) {
  const fc::GroupModel g(fc::random_diagonalizable(4, 3));
  EXPECT_LT((fc::group_at(g, 0.0) - CMatrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(GroupAt, ScalarExponential) {
  const fc::GroupModel g(diag({1.0}));
  EXPECT_LT(std::abs(fc::group_at(g, fc::kPi)(0, 0) + 1.0), 1e-14);
}

TEST(GroupAt, ExponentialGrowthWithinCoshBound) {
  const fc::GroupModel g(diag({I}));
  for (double s : {0.5, 1.0, 3.0}) {
    const double n = fc::op_norm(fc::group_at(g, s));
    EXPECT_NEAR(n, std::exp(s), 1e-12 * std::exp(s));
    EXPECT_LE(n, 2.0 * std::cosh(s));
  }
}

TEST(GroupAt, PadeMatchesSpectral) {
  const fc::GroupModel g(fc::random_diagonalizable(6, 9));
  for (double s : {-2.0, 0.3, 4.0})
    EXPECT_LT((fc::group_at(g, s, fc::ExpRoute::Pade) - fc::group_at(g, s, fc::ExpRoute::Spectral)).norm(),
              1e-11 * fc::op_norm(fc::group_at(g, s)) * g.spectral().condition_number);
}

TEST(GroupProperty, GroupLawOnGrid) {
  for (std::uint64_t seed : {2u, 5u}) {
    const fc::GroupModel g(fc::random_diagonalizable(4, seed));
    const auto& b = g.bounds();
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const double s = -2.0 + 4.0 * i / 19.0, t = -2.0 + 4.0 * j / 19.0;
        const double r = (fc::group_at(g, s) * fc::group_at(g, t) - fc::group_at(g, s + t)).norm();
        EXPECT_LE(r, 1e-9 * b.M * b.M * std::cosh(b.omega0 * s) * std::cosh(b.omega0 * t));
      }
  }
}

TEST(GroupBounds, SelfAdjointIsBounded) {
  const fc::GroupModel g(diag({0.0, 1.0}));
  const auto b = fc::estimate_group_bounds(g, 10.0, 256);
  EXPECT_EQ(b.theta_U, 0.0);
  EXPECT_NEAR(b.M, 1.0, 1e-12);
}

TEST(GroupBounds, ImaginaryEigenvalueType) {
  const fc::GroupModel g(diag({I}));
  EXPECT_NEAR(g.bounds().theta_U, 1.0, 1e-12);
  EXPECT_GE(g.bounds().omega0, 1.0);
}

TEST(GroupBounds, NilpotentIsCertifiedOnlyOnGrid) {
  CMatrix n = CMatrix::Zero(2, 2);
  n(0, 1) = 1.0;
  const fc::GroupModel g{MatrixOperator(n)};
  // exp(-isN) = [[1, -is], [0, 1]].
  const CMatrix u = fc::group_at(g, 2.0);
  EXPECT_LT(std::abs(u(0, 1) - cplx(0.0, -2.0)), 1e-14);
  const auto b = fc::estimate_group_bounds(g, 5.0, 128);
  EXPECT_EQ(b.theta_U, 0.0);
  EXPECT_TRUE(b.grid_only);
  EXPECT_GT(b.M, 1.0);
}

TEST(GroupBounds, CoshBoundHoldsOnGrid) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const fc::GroupModel g(fc::random_diagonalizable(3, seed));
    const auto b = fc::estimate_group_bounds(g, 8.0, 256);
    for (int k = -256; k <= 256; ++k) {
      const double s = 8.0 * k / 256.0;
      EXPECT_LE(fc::op_norm(fc::group_at(g, s)), b.M * std::cosh(b.omega0 * s) * (1 + 1e-9));
    }
  }
}

TEST(SpectralFc, ConstantOneIsIdentity) {
  const MatrixOperator A = fc::random_diagonalizable(4, 1);
  const auto one = fc::Symbol::constant(fc::Region::strip(2.0), 1.0);
  EXPECT_LT((fc::spectral_fc(fc::spectral_data(A), one) - CMatrix::Identity(4, 4)).norm(), 1e-10);
}

TEST(SpectralFc, ExponentialMatchesGroup) {
  const MatrixOperator A = fc::random_diagonalizable(4, 2);
  const fc::GroupModel g(A);
  const auto e = fc::exp_line(0.7, 2.0);
  EXPECT_LT((fc::spectral_fc(g.spectral(), e) - fc::group_at(g, 0.7, fc::ExpRoute::Pade)).norm(),
            1e-10 * g.spectral().condition_number);
}

TEST(SpectralFc, ResolventSymbol) {
  const MatrixOperator A = fc::random_diagonalizable(4, 3);
  const cplx l(0.0, 3.0);
  const auto f = fc::rational_strip({l}, {1}, 1.0, 2.0);
  EXPECT_LT((fc::spectral_fc(fc::spectral_data(A), f) - fc::resolvent(A, l)).norm(), 1e-10 * fc::spectral_data(A).condition_number);
}

TEST(SpectralFcProperty, Homomorphism) {
  const auto cat = fc::e_class_catalogue(2.0);
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto sd = fc::spectral_data(fc::random_diagonalizable(4, seed));
    for (std::size_t i = 0; i + 1 < cat.size(); ++i) {
      const auto& f = cat[i];
      const auto& g = cat[i + 1];
      const CMatrix lhs = fc::spectral_fc(sd, fc::product(f, g));
      const CMatrix rhs = fc::spectral_fc(sd, f) * fc::spectral_fc(sd, g);
      EXPECT_LE((lhs - rhs).norm(), 1e-10 * sd.condition_number * std::max(1.0, rhs.norm()));
    }
  }
}

TEST(OpNorm, ExactNormsForOneTwoInfinity) {
  CMatrix m(2, 2);
  m << 1.0, -2.0, 3.0, 4.0;
  EXPECT_NEAR(fc::op_norm(m, fc::FiberNorm::l1()), 6.0, 1e-14);
  EXPECT_NEAR(fc::op_norm(m, fc::FiberNorm::linf()), 7.0, 1e-14);
  EXPECT_NEAR(fc::op_norm(m), Eigen::JacobiSVD<CMatrix>(m).singularValues()(0), 1e-14);
}

TEST(OpNorm, ProbedNormIsLowerBound) {
  const CMatrix m = fc::random_diagonalizable(4, 5).entries();
  const double p3 = fc::op_norm(m, fc::FiberNorm{3.0});
  // Riesz-Thorin between l^2 and l^inf gives an upper bound.
  EXPECT_LE(p3, std::pow(fc::op_norm(m), 2.0 / 3.0) * std::pow(fc::op_norm(m, fc::FiberNorm::linf()), 1.0 / 3.0) * (1 + 1e-12));
  EXPECT_GT(p3, 0.0);
}

}  // namespace
