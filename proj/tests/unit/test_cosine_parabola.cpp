#include <gtest/gtest.h>

#include <cmath>

#include "fc/calculus.hpp"
#include "fc/catalogue.hpp"
#include "fc/cosine.hpp"
#include "fc/sectorial.hpp"
#include "fc/symbol_norms.hpp"

namespace {

using fc::cplx;
using fc::CMatrix;
using fc::MatrixOperator;
using fc::Region;
using fc::Symbol;

const cplx I(0.0, 1.0);

MatrixOperator diag(std::initializer_list<cplx> d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index k = 0;
  for (cplx v : d) m(k, k) = v, ++k;
  return MatrixOperator(m);
}

double rel(const CMatrix& a, const CMatrix& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

TEST(CosineAt, ZeroIsIdentity) {
  const fc::CosineModel c(fc::random_cosine_generator(3, 1));
  EXPECT_LT(rel(fc::cosine_at(c, 0.0), CMatrix::Identity(3, 3)), 1e-15);
}

TEST(CosineAt, ScalarCos) {
  const fc::CosineModel c(diag({-1.0}));
  for (double t : {0.5, 2.0, 7.0}) EXPECT_NEAR(std::abs(fc::cosine_at(c, t)(0, 0) - std::cos(t)), 0.0, 1e-13);
}

TEST(CosineAt, ScalarCoshBothRoutes) {
  const fc::CosineModel c(diag({1.0}));
  for (double t : {0.5, 2.0}) {
    EXPECT_NEAR(std::abs(fc::cosine_at(c, t, fc::CosineRoute::Spectral)(0, 0) - std::cosh(t)), 0.0, 1e-12 * std::cosh(t));
    EXPECT_NEAR(std::abs(fc::cosine_at(c, t, fc::CosineRoute::Series)(0, 0) - std::cosh(t)), 0.0, 1e-12 * std::cosh(t));
  }
}

TEST(CosineAt, SeriesWithoutScalingDiverges) {
  const fc::CosineModel c(diag({-100.0}));
  EXPECT_THROW(fc::cosine_at(c, 5.0, fc::CosineRoute::Series, false), fc::Error);
}

TEST(Laplace, ScalarClosedForms) {
  const auto r1 = fc::laplace_generator_check(fc::CosineModel(diag({-1.0})), {2.0});
  EXPECT_LT(r1.max_residual, 1e-10);  // 2/5
  const auto r2 = fc::laplace_generator_check(fc::CosineModel(diag({1.0})), {3.0});
  EXPECT_LT(r2.max_residual, 1e-10);  // 3/8
}

TEST(Laplace, RandomNegativeDefinite) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const fc::CosineModel c(fc::random_cosine_generator(4, seed));
    EXPECT_LT(fc::laplace_generator_check(c, {2.0, 3.0, 5.0}).max_residual, 1e-6) << seed;
  }
}

TEST(CosineProperty, DalembertAndEvenness) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto r = fc::dalembert_check(fc::CosineModel(fc::random_cosine_generator(4, seed)), 20, 3.0);
    EXPECT_LE(r.max_scaled_residual, 1e-9);
    EXPECT_LE(r.even_residual, 1e-12);
    EXPECT_LE(r.cos0_residual, 1e-15);
  }
}

TEST(CosineProperty, PhaseSpace) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto r = fc::phase_space_check(fc::CosineModel(fc::random_cosine_generator(3, seed)), {0.25, 0.5, 1.0, 2.0});
    EXPECT_EQ(r.square_residual, 0.0);
    EXPECT_LT(r.block_residual, 1e-9);
    EXPECT_LT(r.ode_residual, 1e-6);
  }
}

TEST(PhaseSpace, SquareIsBlockDiagonal) {
  const CMatrix A = fc::random_cosine_generator(3, 9).entries();
  const CMatrix P = fc::phase_space(A);
  const CMatrix sq = P * P;
  EXPECT_EQ(sq.topLeftCorner(3, 3), A);
  EXPECT_EQ(sq.bottomRightCorner(3, 3), A);
  EXPECT_EQ(sq.topRightCorner(3, 3).norm(), 0.0);
}

TEST(ParabolaType, ScalarCases) {
  EXPECT_TRUE(fc::parabola_type_check(diag({0.0}), 0.5).certified);
  const double w0 = 0.6;
  EXPECT_TRUE(fc::parabola_type_check(diag({-w0 * w0}), w0 + 0.05).certified);
}

TEST(ParabolaType, RandomGenerators) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const fc::CosineModel c(fc::random_cosine_generator(4, seed, 0.5));
    EXPECT_TRUE(fc::parabola_type_check(c.B(), c.parabola_omega()).certified);
    EXPECT_LE(c.cos_type(), 0.5 + 1e-12);
  }
}

TEST(ParabolaFc, ConstantOne) {
  const fc::CosineModel c(fc::random_cosine_generator(3, 4));
  const auto r = fc::parabola_fc(c.B(), Symbol::constant(Region::parabola(c.parabola_omega()), 1.0));
  EXPECT_LT(rel(r.value, CMatrix::Identity(3, 3)), 1e-9);
}

TEST(ParabolaFc, CosSqrtIsCosine) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const fc::CosineModel c(fc::random_cosine_generator(4, seed));
    for (double t : {0.5, 1.5}) {
      const auto r = fc::parabola_fc(c.B(), fc::cos_sqrt_symbol(t, c.parabola_omega()));
      EXPECT_LT(rel(r.value, fc::cosine_at(c, t)), 1e-7 * c.spectral_B().condition_number);
      EXPECT_LT(r.block_agreement, 1e-9 * std::max(1.0, r.value.norm()));
    }
  }
}

TEST(ParabolaFc, SquareMapNormIdentity) {
  for (double t : {0.5, 1.0, 2.0}) {
    const Symbol f = fc::cos_sqrt_symbol(t, 0.7);
    const double direct = fc::hinf1_norm(f).value, strip = fc::parabola_hinf1_via_strip(f).value;
    EXPECT_NEAR(direct, strip, 1e-6 * std::max(1.0, direct)) << t;
  }
}

TEST(SectorShift, VertexAlgebraAtRightAngle) {
  // theta = pi/2: shift = w0^2 and z = t + i w0 maps to t^2 + 2i t w0, in the closed right half plane.
  const double w0 = 0.6;
  for (double t : {0.0, 0.3, 2.0}) {
    const cplx z(t, w0);
    EXPECT_GE((z * z + w0 * w0).real(), -1e-15);
  }
}

TEST(SectorShift, ScalarGenerator) {
  const fc::CosineModel c(diag({1.0}));
  EXPECT_TRUE(fc::sector_shift_check(c, fc::kPi / 2, fc::kPi / 2 + 0.3).passed);
}

TEST(SectorShift, RandomGeneratorsAllAngles) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const fc::CosineModel c(fc::random_cosine_generator(3, seed));
    for (double th : {fc::kPi / 6, fc::kPi / 4, fc::kPi / 2}) {
      const auto r = fc::sector_shift_check(c, th, std::min(th + 0.3, 3.0));
      EXPECT_TRUE(r.geometry_ok) << seed << " " << th;
      EXPECT_TRUE(r.angle_ok) << seed << " " << th;
      EXPECT_TRUE(r.passed) << seed << " " << th << " residual " << r.route_residual;
    }
  }
}

TEST(LogComposition, ScalarE) {
  const fc::SectorialData A(diag({std::exp(1.0)}));
  EXPECT_LT(std::abs(fc::matrix_log(A)(0, 0) - 1.0), 1e-15);
  const Symbol f = fc::rational({cplx(0.0, 3.0)}, {1}, 1.0, Region::strip(2.5));
  const auto r = fc::log_composition_check(A, f);
  EXPECT_LT(std::abs(r.lhs(0, 0) - f(1.0)), 1e-12);
  EXPECT_LT(r.residual, 1e-9);
}

TEST(LogComposition, DiagonalBothRoutes) {
  const fc::SectorialData A(diag({2.0, 5.0}));
  const Symbol f = fc::rational({cplx(0.0, 3.0)}, {1}, 1.0, Region::strip(2.5));
  const auto r = fc::log_composition_check(A, f);
  EXPECT_LT(std::abs(r.rhs(1, 1) - f(std::log(5.0))), 1e-9);
  EXPECT_LT(r.residual, 1e-7);
}

TEST(LogComposition, GroupIsImaginaryPower) {
  const fc::SectorialData A(fc::random_sectorial(3, 4, 0.8));
  const double s = 0.6;
  const CMatrix lhs = fc::spectral_fc(fc::spectral_data(MatrixOperator(fc::matrix_log(A))), fc::exp_line(s, 2.0));
  EXPECT_LT(rel(lhs, fc::imaginary_power(A, s)), 1e-10 * A.spectral().condition_number);
}

TEST(Bip, IdentityHasTypeZero) {
  const auto r = fc::bip_group(fc::SectorialData(diag({1.0})), {-2.0, -1.0, 0.0, 1.0, 2.0});
  EXPECT_NEAR(r.theta_A, 0.0, 1e-15);
  for (double n : r.norms) EXPECT_NEAR(n, 1.0, 1e-15);
}

TEST(Bip, RotatedScalar) {
  const fc::SectorialData A(diag({std::polar(1.0, fc::kPi / 4)}));
  EXPECT_NEAR(fc::op_norm(fc::imaginary_power(A, 2.0)), std::exp(2.0 * fc::kPi / 4), 1e-12);
  const auto r = fc::bip_group(A, {-4.0, -2.0, 0.0, 2.0, 4.0});
  EXPECT_NEAR(r.theta_A, fc::kPi / 4, 1e-9);
  EXPECT_NEAR(r.omega_sect, fc::kPi / 4, 1e-12);
}

TEST(Bip, HilbertSpaceEquality) {
  const fc::SectorialData A(diag({1.0, std::polar(1.0, fc::kPi / 3)}));
  const auto r = fc::bip_group(A, {-4.0, -2.0, 0.0, 2.0, 4.0});
  EXPECT_NEAR(r.theta_A, fc::kPi / 3, 1e-9);
  EXPECT_NEAR(r.theta_A, r.omega_sect, 1e-9);
}

TEST(BipProperty, PrussSohrPerInstance) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto r = fc::bip_group(fc::SectorialData(fc::random_sectorial(4, seed, 1.2)), {-6.0, -3.0, 0.0, 3.0, 6.0});
    EXPECT_TRUE(r.pruss_sohr) << seed;
  }
}

TEST(Hinflog, ConstantOne) {
  const fc::SectorialData A(diag({1.0, 2.0}));
  const auto r = fc::hinflog_calculus_check(A, {Symbol::constant(Region::sector(1.0), 1.0)}, 1.0);
  EXPECT_NEAR(r.ratios.front(), 1.0, 1e-12);
}

TEST(Hinflog, RegularisedImaginaryPower) {
  const fc::SectorialData A(diag({1.0, 2.0}));
  const Symbol f = fc::product(fc::imaginary_power(1.0, 1.5), fc::sector_regulariser(1.5));
  const auto r = fc::hinflog_calculus_check(A, {f}, 1.5);
  EXPECT_LT(r.max_route_diff, 1e-9);
}

TEST(Hinflog, RatioFamilyBounded) {
  const fc::SectorialData A(fc::random_sectorial(3, 2, 0.7));
  const double phi = 1.4;
  std::vector<Symbol> fam;
  for (double k : {1.0, 10.0, 100.0}) fam.push_back(fc::sector_ratio(k, Region::sector(phi)));
  const auto r = fc::hinflog_calculus_check(A, fam, phi);
  EXPECT_LT(r.max_ratio, 10.0);
  EXPECT_LT(r.max_route_diff, 1e-7);
}

}  // namespace
