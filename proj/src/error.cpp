#include "dcatight/error.hpp"

namespace dcatight {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CurvatureOrder: return "CurvatureOrder";
    case ErrorCode::NegativeMu1: return "NegativeMu1";
    case ErrorCode::NoDecreaseGuarantee: return "NoDecreaseGuarantee";
    case ErrorCode::OutsideAllRegimes: return "OutsideAllRegimes";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::InvalidN: return "InvalidN";
    case ErrorCode::InfeasibleRange: return "InfeasibleRange";
    case ErrorCode::OracleFailure: return "OracleFailure";
    case ErrorCode::DivergenceDetected: return "DivergenceDetected";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::DegenerateMu1: return "DegenerateMu1";
    case ErrorCode::NonInvertibleDerivative: return "NonInvertibleDerivative";
    case ErrorCode::ProxFailure: return "ProxFailure";
    case ErrorCode::NegativeCurvature: return "NegativeCurvature";
    case ErrorCode::SingularCase: return "SingularCase";
    case ErrorCode::NoConsensusCluster: return "NoConsensusCluster";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace dcatight
