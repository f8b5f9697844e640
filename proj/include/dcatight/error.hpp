#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dcatight {

enum class ErrorCode {
  InvalidArgument,
  CurvatureOrder,
  NegativeMu1,
  NoDecreaseGuarantee,
  OutsideAllRegimes,
  EmptyGrid,
  InvalidN,
  InfeasibleRange,
  OracleFailure,
  DivergenceDetected,
  DomainViolation,
  DegenerateMu1,
  NonInvertibleDerivative,
  ProxFailure,
  NegativeCurvature,
  SingularCase,
  NoConsensusCluster,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dcatight
