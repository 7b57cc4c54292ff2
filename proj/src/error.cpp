#include "kleinian2/error.hpp"

namespace kleinian2 {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegreeError: return "DegreeError";
    case ErrorCode::RepeatedRootError: return "RepeatedRootError";
    case ErrorCode::ConvergenceError: return "ConvergenceError";
    case ErrorCode::SpecialDivisorError: return "SpecialDivisorError";
    case ErrorCode::InfinitePointError: return "InfinitePointError";
    case ErrorCode::NotOnCurveError: return "NotOnCurveError";
    case ErrorCode::DegenerateGeometryError: return "DegenerateGeometryError";
    case ErrorCode::QuadratureError: return "QuadratureError";
    case ErrorCode::SheetTrackingError: return "SheetTrackingError";
    case ErrorCode::RiemannMatrixError: return "RiemannMatrixError";
    case ErrorCode::DeltaAmbiguityError: return "DeltaAmbiguityError";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::IllConditionedLatticeError: return "IllConditionedLatticeError";
    case ErrorCode::TruncationRadiusError: return "TruncationRadiusError";
    case ErrorCode::NormalizationError: return "NormalizationError";
    case ErrorCode::OnThetaDivisorError: return "OnThetaDivisorError";
    case ErrorCode::RootSelectionAmbiguity: return "RootSelectionAmbiguity";
    case ErrorCode::NotWeierstrassFormError: return "NotWeierstrassFormError";
    case ErrorCode::OnSigmaDivisorError: return "OnSigmaDivisorError";
    case ErrorCode::SignResolutionError: return "SignResolutionError";
    case ErrorCode::DiagonalError: return "DiagonalError";
    case ErrorCode::InputError: return "InputError";
  }
  return "UnknownError";
}

}  // namespace kleinian2
