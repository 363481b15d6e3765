#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace whakit {

using Scalar = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;

/// Tolerances shared by every approximate comparison in the library.
///
/// Two quantities x and y are considered equal when
/// |x - y| <= abs_tol + rel_tol * max(|x|, |y|).
struct Tolerance {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;

  [[nodiscard]] double bound(double scale) const { return abs_tol + rel_tol * scale; }
  [[nodiscard]] bool close(double residual, double scale = 1.0) const {
    return residual <= bound(scale);
  }
  static Tolerance uniform(double t) { return Tolerance{t, t}; }
};

enum class ErrorCode {
  DimensionMismatch,
  NotSemisimple,
  NonIntegerBlockSize,
  NonIntegerMultiplicity,
  NotConnected,
  NoQuasiBasis,
  NotConditionalExpectation,
  NotNonnegative,
  NoInvolution,
  NoHaar,
  NotSeparable,
  NoAntipode,
  NonUnique,
  InconsistentMaschke,
  NotIdempotent,
  InconsistentCriterion,
  NotPositive,
  NonScalarIndex,
  NotPositiveDefinite,
  MultiplicityNotInteger,
  VacuumAssignmentFailed,
  NotProportionalToMinimal,
  ZeroIntertwiner,
  FactorizationResidualTooLarge,
  CrossCheckMismatch,
  InvariantMismatch,
  IllDefinedProduct,
  RankDeficient,
  InvalidGroupoid,
  NotIndecomposable,
  SchemaError,
  ValidationError,
  MissingFile,
};

const char* to_string(ErrorCode code);

/// Single exception type of the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace whakit
