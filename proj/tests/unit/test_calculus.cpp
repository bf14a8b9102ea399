#include <gtest/gtest.h>

#include <cmath>

#include "fc/calculus.hpp"
#include "fc/catalogue.hpp"
#include "fc/measures.hpp"

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

CMatrix contour(const MatrixOperator& A, const Symbol& f) {
  return fc::contour_fc_strip(A, f, fc::default_omega_prime(A, f)).value;
}

TEST(ContourStrip, ScalarDoublePole) {
  const cplx l(0.0, 2.0);
  const CMatrix v = contour(diag({0.0}), fc::rational({l}, {2}, 1.0, Region::strip(1.0)));
  EXPECT_LT(std::abs(v(0, 0) - 1.0 / (l * l)), 1e-12);
}

TEST(ContourStrip, PartialFractions) {
  const auto f = fc::rational({cplx(0.0, 2.0), cplx(0.0, -2.0)}, {1, 1}, 1.0, Region::strip(1.0));
  const cplx z(0.0, 0.5);
  const CMatrix v = contour(diag({z}), f);
  EXPECT_LT(std::abs(v(0, 0) - 1.0 / ((cplx(0.0, 2.0) - z) * (cplx(0.0, -2.0) - z))), 1e-12);
}

TEST(ContourStrip, TailBoundModeAgrees) {
  const MatrixOperator A = fc::random_diagonalizable(4, 8);
  const auto f = fc::e_class_catalogue(1.5)[0];
  fc::ContourOptions o;
  o.mode = fc::ContourOptions::Mode::TailBound;
  const auto tb = fc::contour_fc_strip(A, f, fc::default_omega_prime(A, f), o);
  EXPECT_LT(rel(tb.value, contour(A, f)), 1e-7);
}

TEST(ContourStrip, SpectrumOutsideContourThrows) {
  EXPECT_THROW(fc::contour_fc_strip(diag({cplx(0.0, 2.0)}), fc::e_class_catalogue(1.0)[0], 0.5), fc::Error);
}

TEST(CalculusProperty, RouteEquivalenceOnCorpus) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const MatrixOperator A = fc::random_diagonalizable(4, seed);
    const auto sd = fc::spectral_data(A);
    for (const Symbol& f : fc::e_class_catalogue(1.5))
      EXPECT_LE(rel(contour(A, f), fc::spectral_fc(sd, f)), 1e-8 * sd.condition_number) << f.description() << " seed " << seed;
  }
}

TEST(CalculusProperty, HomomorphismAndLinearity) {
  const MatrixOperator A = fc::random_diagonalizable(4, 21);
  const double cond = fc::spectral_data(A).condition_number;
  const auto cat = fc::e_class_catalogue(1.5);
  for (std::size_t i = 0; i + 1 < cat.size(); ++i) {
    const CMatrix f = contour(A, cat[i]), g = contour(A, cat[i + 1]);
    EXPECT_LE(rel(contour(A, fc::product(cat[i], cat[i + 1])), f * g), 1e-8 * cond);
    EXPECT_LE(rel(contour(A, fc::sum(cat[i], fc::scaled(cat[i + 1], cplx(2.0, -1.0)))), f + cplx(2.0, -1.0) * g), 1e-9 * cond);
  }
}

TEST(CalculusProperty, ShiftCovariance) {
  const MatrixOperator A = fc::random_diagonalizable(3, 4);
  for (const Symbol& f : fc::e_class_catalogue(1.5))
    for (double r : {-0.7, 1.3}) {
      const CMatrix lhs = contour(A.shifted(r), f);
      const CMatrix rhs = contour(A, fc::shifted(f, r));
      EXPECT_LT(rel(lhs, rhs), 1e-8 * fc::spectral_data(A).condition_number);
    }
}

TEST(Regularized, ConstantOneIsIdentity) {
  const MatrixOperator A = fc::random_diagonalizable(3, 2);
  const auto e = fc::resolvent_square_regulariser(cplx(0.0, 3.0), 1.5);
  const CMatrix v = fc::regularized_fc(A, Symbol::constant(Region::strip(1.5), 1.0), e);
  EXPECT_LT(rel(v, CMatrix::Identity(3, 3)), 1e-9);
}

TEST(Regularized, ExponentialIsGroup) {
  const MatrixOperator A = diag({cplx(0.0, 0.1), cplx(0.0, -0.2)});
  const auto e = fc::resolvent_square_regulariser(cplx(0.0, 3.0), 1.0);
  const CMatrix v = fc::regularized_fc(A, fc::exp_line(0.7, 1.0), e);
  EXPECT_LT(rel(v, fc::group_at(fc::GroupModel(A), 0.7)), 1e-9);
}

TEST(Regularized, RegulariserIndependence) {
  const MatrixOperator A = fc::random_diagonalizable(4, 13);
  const Symbol f = fc::tau_n(4.0, 1.0);
  const CMatrix a = fc::regularized_fc(A, f, fc::resolvent_square_regulariser(cplx(0.0, 3.0), 1.0));
  const CMatrix b = fc::regularized_fc(A, f, fc::resolvent_square_regulariser(cplx(0.0, 5.0), 1.0));
  EXPECT_LT(rel(a, b), 1e-7);
}

TEST(Phillips, DiracGivesGroup) {
  const fc::GroupModel g(fc::random_diagonalizable(3, 6));
  const auto ph = fc::phillips_fc(g, fc::ExpWeightedMeasure::dirac(0.8));
  EXPECT_LT(rel(ph.value, fc::group_at(g, 0.8)), 1e-13);
  EXPECT_LT(rel(fc::phillips_fc(g, fc::ExpWeightedMeasure::dirac(0.0)).value, CMatrix::Identity(3, 3)), 1e-15);
}

TEST(Phillips, RouteEquivalenceWithContour) {
  const fc::GroupModel g(fc::random_diagonalizable(3, 7));
  for (const Symbol& f : fc::e_class_catalogue(1.5)) {
    const auto ph = fc::phillips_fc(g, fc::inverse_fourier_symbol(f));
    EXPECT_LT(rel(ph.value, contour(g.generator(), f)), 1e-6 * g.spectral().condition_number) << f.description();
    EXPECT_LE(ph.norm, ph.norm_bound * (1 + 1e-9));
  }
}

TEST(PvFc, IdentityGroupGivesZero) {
  const fc::GroupModel g(diag({0.0}));
  EXPECT_LT(fc::pv_fc(g, fc::BVFunction::constant(1.0)).limit.norm(), 1e-14);
}

TEST(PvFc, ScalarSineIntegral) {
  const fc::GroupModel g(diag({1.0}));
  // limit = -2i Si(1).
  double si = 0.0, term = 1.0;
  for (int k = 0; k < 20; ++k) {
    si += term / (2 * k + 1);
    term *= -1.0 / ((2 * k + 2) * (2 * k + 3));
  }
  EXPECT_LT(std::abs(fc::pv_fc(g, fc::BVFunction::constant(1.0)).limit(0, 0) - cplx(0.0, -2.0 * si)), 1e-8);
}

TEST(PvFc, TwoStepProfileMatchesSpectral) {
  const fc::GroupModel g(fc::random_diagonalizable(3, 5));
  const auto b = fc::BVFunction::even_steps({0.0, 0.5, 1.0}, {1.0, 0.25});
  const auto tr = fc::pv_fc(g, b);
  const double th = 2.0 * g.generator().max_abs_imag() + 1.0;
  EXPECT_LT(rel(tr.limit, fc::spectral_fc(g.spectral(), fc::pv_symbol(b, th))), 1e-5 * g.spectral().condition_number);
  EXPECT_TRUE(tr.monotone_tail);
}

TEST(PvFcProperty, IncrementsEventuallyDecrease) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto tr = fc::pv_fc(fc::GroupModel(fc::random_diagonalizable(3, seed)),
                              fc::BVFunction::even_steps({0.0, 0.3, 0.7, 1.0}, {1.0, -0.5, 2.0}));
    const auto& d = tr.increments;
    for (std::size_t k = d.size() - 5; k + 1 < d.size(); ++k) EXPECT_LE(d[k + 1], d[k] * (1 + 1e-12));
  }
}

TEST(ConvergenceLemma, ConstantOneTendsToIdentity) {
  const MatrixOperator A = diag({cplx(0.0, 0.3), -0.1});
  const auto tr = fc::convergence_lemma_run(A, Symbol::constant(Region::strip(1.0), 1.0), {16, 64, 256});
  EXPECT_LT(tr.probe_error.back(), tr.probe_error.front());
  EXPECT_TRUE(std::isfinite(tr.sup_norm));
}

TEST(ConvergenceLemma, ErrorDecreasesWithN) {
  const MatrixOperator A = diag({cplx(0.0, 0.3), -0.1});
  const Symbol f = fc::product(fc::exp_line(1.0, 1.0), fc::tau_n(3.0, 1.0));
  const auto tr = fc::convergence_lemma_run(A, f, {16, 64, 256, 1024}, 8, 1, true);
  for (std::size_t k = 0; k + 1 < tr.n.size(); ++k) EXPECT_LT(tr.probe_error[k + 1], tr.probe_error[k]);
  // sup_n ||f_n(A)|| <= sup_n ||tau_n^2||_1 ||f||_1 C_A with C_A fitted from the first level.
  const double CA = tr.norm_fn[0] / tr.hinf1_fn[0];
  for (std::size_t k = 0; k < tr.n.size(); ++k) EXPECT_LE(tr.norm_fn[k], 4.0 * CA * tr.hinf1_fn[k]);
}

TEST(ContourSector, ScalarRegulariser) {
  const auto r = fc::contour_fc_sector(diag({1.0}), fc::sector_regulariser(2.0), 1.0);
  EXPECT_LT(std::abs(r.value(0, 0) - 0.25), 1e-12);
}

TEST(ContourSector, ImaginaryPowerTimesRegulariser) {
  const MatrixOperator B = diag({2.0, 3.0});
  const Symbol f = fc::product(fc::imaginary_power(1.0, 2.0), fc::sector_regulariser(2.0));
  const auto r = fc::contour_fc_sector(B, f, 1.0);
  for (int k = 0; k < 2; ++k) EXPECT_LT(std::abs(r.value(k, k) - f(B.entries()(k, k))), 1e-12);
}

TEST(ContourSector, Homomorphism) {
  const MatrixOperator B = fc::random_diagonalizable(3, 3).shifted(4.0);
  const Symbol f = fc::sector_regulariser(2.0), g = fc::product(fc::imaginary_power(0.5, 2.0), fc::sector_regulariser(2.0));
  const double wp = 1.2;
  const CMatrix fg = fc::contour_fc_sector(B, fc::product(f, g), wp).value;
  EXPECT_LT(rel(fg, fc::contour_fc_sector(B, f, wp).value * fc::contour_fc_sector(B, g, wp).value), 1e-8 * fc::spectral_data(B).condition_number);
}

TEST(WeightedShift, DiracAtZero) {
  const auto r = fc::l1_weighted_shift_check(fc::ExpWeightedMeasure::dirac(0.0, 1.0, 1.0), 1.0, 1.0 / 16, 8.0);
  EXPECT_NEAR(r.conv_norm, 1.0, 1e-14);
  EXPECT_NEAR(r.mw, 1.0, 1e-14);
}

TEST(WeightedShift, UnitShift) {
  const auto r = fc::l1_weighted_shift_check(fc::ExpWeightedMeasure::dirac(1.0, 1.0, 1.0), 1.0, 1.0 / 16, 8.0);
  EXPECT_NEAR(r.conv_norm, std::exp(1.0), 1e-12);
  EXPECT_NEAR(r.mw, std::exp(1.0), 1e-12);
}

TEST(WeightedShift, AtomsPlusDensity) {
  auto mu = fc::ExpWeightedMeasure::from_density([](double s) { return std::exp(-s * s); }, 1.0);
  mu = mu + fc::ExpWeightedMeasure({{0.5, cplx(0.3, -0.2)}, {-1.25, 0.7}}, {}, 1.0);
  const auto r = fc::l1_weighted_shift_check(mu, 1.0, 1.0 / 64, 40.0);
  EXPECT_LT(r.rel_diff, 1e-3);
}

}  // namespace
