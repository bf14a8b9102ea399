#include <gtest/gtest.h>

#include <cmath>

#include "fc/quadrature.hpp"
#include "fc/transference.hpp"

namespace {

using fc::cplx;
using fc::CMatrix;
using fc::DiscretizedLpSpace;
using fc::ExpWeightedMeasure;

const cplx I(0.0, 1.0);

fc::MatrixOperator diag(std::initializer_list<cplx> d) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index k = 0;
  for (cplx v : d) m(k, k) = v, ++k;
  return fc::MatrixOperator(m);
}

ExpWeightedMeasure gaussian(double omega) {
  return ExpWeightedMeasure::from_density([](double s) { return 3.0 * std::exp(-(s - 0.3) * (s - 0.3) / 0.5); }, omega);
}

TEST(ConvNorm, DiracAtZero) {
  for (double p : {1.0, 2.0, 4.0}) {
    const auto n = fc::conv_norm(ExpWeightedMeasure::dirac(0.0), DiscretizedLpSpace::standard(1.0, p));
    EXPECT_NEAR(n.value, 1.0, 1e-12) << "p=" << p;
  }
}

TEST(ConvNorm, ShiftIsUnitary) {
  const auto n = fc::conv_norm(ExpWeightedMeasure::dirac(0.75), DiscretizedLpSpace::standard(1.0, 2.0));
  EXPECT_NEAR(n.value, 1.0, 1e-12);
  EXPECT_TRUE(n.exact);
}

TEST(ConvNorm, AveragedShiftsHaveUnitNorm) {
  const ExpWeightedMeasure mu({{0.0, 0.5}, {1.0, 0.5}}, {}, 5.0);
  EXPECT_NEAR(fc::conv_norm(mu, DiscretizedLpSpace::standard(1.0, 2.0)).value, 1.0, 1e-10);
}

TEST(ConvNorm, IntervalIsOrdered) {
  const auto mu = gaussian(2.0) + ExpWeightedMeasure({{0.5, -1.0}}, {}, 2.0);
  const auto n = fc::conv_norm(mu, DiscretizedLpSpace::standard(1.0, 3.0));
  EXPECT_LE(n.lower, n.upper * (1 + 1e-12));
  EXPECT_EQ(n.value, n.lower);
}

TEST(TransferenceProperty, PlancherelExactness) {
  const auto mu = gaussian(2.0) + ExpWeightedMeasure({{0.5, -1.0}, {-1.0, cplx(0.3, 0.4)}}, {}, 2.0);
  const auto space = DiscretizedLpSpace::standard(1.0, 2.0);
  const auto k = fc::to_lattice(mu, space.h);
  // Direct sup of the lattice symbol on a dense frequency sweep.
  double sweep = 0.0;
  const double tmax = fc::kPi / space.h;
  for (int j = 0; j <= 200000; ++j) {
    const double t = -tmax + 2.0 * tmax * j / 200000.0;
    cplx acc = 0.0;
    for (std::size_t m = 0; m < k.taps.size(); ++m)
      acc += k.taps[m] * std::exp(-I * t * space.h * static_cast<double>(static_cast<int>(m) + k.offset));
    sweep = std::max(sweep, std::abs(acc));
  }
  const double v = fc::conv_norm(mu, space).value;
  EXPECT_GE(v, sweep * (1 - 1e-10));
  EXPECT_LE(v, sweep * (1 + 1e-6));
}

TEST(TransferenceProperty, DeconvolutionIdentity) {
  for (double w : {0.5, 1.0, 2.0})
    for (int k = 0; k <= 40; ++k) {
      const double s = -10.0 / w + 20.0 / w * k / 40.0;
      EXPECT_NEAR(fc::phi_sech_convolution(w, 2.0 * w, s), 1.0 / std::cosh(w * s), 1e-6);
    }
}

TEST(Constant, IndependentQuadratureAtOmega0Zero) {
  // w0 = 0, p = 2, w = 1: C = ||sech(2 .)||_2 ||phi||_2 with ||sech(2 .)||_2 = 1.
  const auto phi = fc::transference_phi(1.0, 2.0);
  const double phi2 = fc::integrate([&](double t) { return phi(t) * phi(t); }, -60.0, 60.0, 6000, 8);
  const double sech2 = fc::integrate([](double s) { return 1.0 / (std::cosh(2 * s) * std::cosh(2 * s)); }, -40.0, 40.0, 4000, 8);
  EXPECT_NEAR(sech2, 1.0, 1e-12);
  const double c = fc::transference_constant(2.0, 0.0, 1.0);
  EXPECT_NEAR(c, std::sqrt(sech2 * phi2), 1e-8 * c);
}

TEST(Constant, DecreasesAwayFromOmega0) {
  double prev = INFINITY;
  for (double w : {0.6, 1.0, 2.0, 4.0}) {
    const double c = fc::transference_constant(2.0, 0.5, w);
    EXPECT_LT(c, prev);
    prev = c;
  }
}

TEST(Constant, DivergesAsOmegaApproachesOmega0) {
  double prev = 0.0;
  for (int k = 1; k <= 3; ++k) {
    const double c = fc::transference_constant(2.0, 1.0, 1.0 + std::pow(10.0, -k));
    EXPECT_GT(c, prev);
    prev = c;
  }
}

TEST(Constant, OrderViolation) {
  try {
    fc::transference_constant(2.0, 1.0, 1.0);
    FAIL();
  } catch (const fc::Error& e) {
    EXPECT_EQ(e.kind(), fc::ErrorKind::OrderViolation);
  }
}

TEST(Verify, DiracAtZero) {
  const fc::GroupModel g(diag({cplx(0.0, 0.8)}));
  const auto r = fc::verify_transference(g, ExpWeightedMeasure::dirac(0.0, 1.0, 2.0), 2.0, 1.0);
  EXPECT_NEAR(r.lhs, 1.0, 1e-12);
  EXPECT_GE(r.constant * r.M * r.M, 1.0);
  EXPECT_TRUE(r.passed());
}

TEST(Verify, UnboundedGroupGaussian) {
  const fc::GroupModel g(diag({cplx(0.0, 0.8)}));
  const auto r = fc::verify_transference(g, gaussian(2.0), 2.0, 1.0);
  EXPECT_GE(r.slack, 1.0);
}

TEST(Verify, CompactDirac) {
  const fc::GroupModel g(fc::random_diagonalizable(3, 4));
  for (double p : {1.0, 2.0, 4.0}) {
    const auto r = fc::verify_compact_transference(g, ExpWeightedMeasure::dirac(0.0, 1.0, 3.0), p);
    EXPECT_NEAR(r.lhs, 1.0, 1e-12);
    EXPECT_GE(r.rhs, std::pow(2.0, 1.0 / p) * (1 - 1e-12));
  }
}

TEST(Verify, CompactUniformOnUnitaryScalar) {
  const fc::GroupModel g(diag({1.0}));
  const ExpWeightedMeasure mu = ExpWeightedMeasure::from_density([](double s) { return std::abs(s) <= 1.0 ? 0.5 : 0.0; }, 3.0);
  EXPECT_TRUE(fc::verify_compact_transference(g, mu, 2.0).passed());
}

TEST(Verify, CompactAntisymmetricPair) {
  const fc::GroupModel g(diag({2.0}));
  const ExpWeightedMeasure mu({{0.5, 1.0}, {-0.5, -1.0}}, {}, 3.0);
  const auto r = fc::verify_compact_transference(g, mu, 2.0);
  // lhs = |e^{-i} - e^{i}| = 2 sin 1.
  EXPECT_NEAR(r.lhs, 2.0 * std::sin(1.0), 1e-12);
  EXPECT_TRUE(r.passed());
}

TEST(Verify, MultiplierDirac) {
  const fc::GroupModel g(diag({cplx(0.0, 0.3)}));
  const auto r = fc::verify_multiplier_form(g, ExpWeightedMeasure::dirac(0.0, 1.0, 2.0), 2.0, 1.0);
  EXPECT_NEAR(r.conv_lower, 2.0, 1e-12);  // both tilted norms equal 1
  EXPECT_TRUE(r.passed());
}

TEST(Verify, MultiplierDominatesCoshForm) {
  const fc::GroupModel g(fc::random_diagonalizable(2, 9));
  const auto mu = gaussian(3.0) + ExpWeightedMeasure({{1.0, 0.5}}, {}, 3.0);
  const double w = g.bounds().omega0 + 0.5;
  const auto cosh_form = fc::verify_transference(g, mu, 2.0, w);
  const auto mult = fc::verify_multiplier_form(g, mu, 2.0, w);
  // 2 mu_w = tilt_+ + tilt_-, so the sum of tilted norms dominates twice the cosh-weighted norm.
  EXPECT_GE(mult.rhs, cosh_form.rhs * (1 - 1e-9));
  EXPECT_TRUE(mult.passed());
}

TEST(Verify, BoundedSelfAdjoint) {
  const fc::GroupModel g(diag({0.4, -0.7, 1.3}));
  const ExpWeightedMeasure mu({{0.0, 1.0}, {0.5, -0.5}, {-1.5, cplx(0.2, 0.3)}}, {}, 0.0);
  const auto r = fc::verify_bounded_transference(g, mu, 2.0);
  EXPECT_NEAR(r.M, 1.0, 1e-12);
  EXPECT_TRUE(r.passed());
}

TEST(Verify, CoreCasesAllPass) {
  const auto cases = fc::transference_core_cases(1);
  ASSERT_EQ(cases.size(), 12u);
  for (const auto& c : cases) {
    const auto r = fc::run_transference_case(c, 1);
    EXPECT_GE(r.slack, 1.0 - 1e-3) << c.name;
  }
}

TEST(Hilbert, EvenInputIsOddAtZero) {
  DiscretizedLpSpace space;
  space.h = 1.0 / 32;
  space.half = 1024;
  CMatrix f(space.size(), 1);
  for (int j = 0; j < space.size(); ++j) f(j, 0) = std::exp(-space.t(j) * space.t(j));
  EXPECT_LT(std::abs(fc::truncated_hilbert(space, 4 * space.h, f)(space.half, 0)), 1e-12);
}

TEST(Hilbert, IndicatorAgainstLogKernel) {
  // int_{eps<|t-s|} 1_[0,1](s) / (t - s) ds = log|t / (t - 1)| away from the edges.
  DiscretizedLpSpace space;
  space.h = 1.0 / 512;
  space.half = 4096;
  CMatrix f(space.size(), 1);
  for (int j = 0; j < space.size(); ++j) f(j, 0) = (space.t(j) >= 0.0 && space.t(j) <= 1.0) ? 1.0 : 0.0;
  const double eps = 4 * space.h;
  const CMatrix hf = fc::truncated_hilbert(space, eps, f);
  for (double t : {-1.0, 2.0, 3.5}) {
    const int j = static_cast<int>(std::lround(t / space.h)) + space.half;
    EXPECT_NEAR(hf(j, 0).real(), std::log(std::abs(t / (t - 1.0))), 5e-3) << t;
  }
}

TEST(Hilbert, L2NormMatchesSymbolSup) {
  DiscretizedLpSpace space;
  space.h = 1.0 / 16;
  space.half = 512;
  const double eps = 2 * space.h;
  // Kernel taps h/(k h) for eps <= |k h| <= half h; the l2 norm is the sup of its symbol.
  double sup = 0.0;
  for (int j = 0; j <= 20000; ++j) {
    const double th = fc::kPi * j / 20000.0;
    double acc = 0.0;
    for (int k = static_cast<int>(std::ceil(eps / space.h)); k <= space.half; ++k) acc += 2.0 * std::sin(k * th) / k;
    sup = std::max(sup, std::abs(acc));
  }
  EXPECT_NEAR(fc::truncated_hilbert_l2_norm(space, eps), sup, 1e-3 * sup);
}

}  // namespace
