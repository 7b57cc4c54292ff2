#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kleinian2 {

enum class ErrorCode {
  DegreeError,
  RepeatedRootError,
  ConvergenceError,
  SpecialDivisorError,
  InfinitePointError,
  NotOnCurveError,
  DegenerateGeometryError,
  QuadratureError,
  SheetTrackingError,
  RiemannMatrixError,
  DeltaAmbiguityError,
  NewtonDivergence,
  IllConditionedLatticeError,
  TruncationRadiusError,
  NormalizationError,
  OnThetaDivisorError,
  RootSelectionAmbiguity,
  NotWeierstrassFormError,
  OnSigmaDivisorError,
  SignResolutionError,
  DiagonalError,
  InputError,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }
  std::string_view name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace kleinian2
