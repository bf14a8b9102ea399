#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace fc {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

enum class ErrorKind {
  InvalidArgument,
  SpectrumHit,
  NonDiagonalizable,
  RegionViolation,
  NonFiniteSample,
  SectorRequired,
  DecayClassRequired,
  StripViolation,
  WeightExceedsDeclared,
  NotEven,
  OrderViolation,
  SpectrumOutsideContour,
  RegulariserSingular,
  WeightOrderViolation,
  NonConvergent,
  SupportViolation,
  EpsilonBelowGrid,
  SeriesDivergence,
  TypeViolation,
  SpectrumOutsideParabola,
  NotInjective,
  AngleViolation,
  ConfigInvalid,
  CheckFailed,
  IoError,
};

std::string_view to_string(ErrorKind k) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace fc
