#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtnembed {

enum class ErrorCode {
  NonPositiveGeometry,
  InvalidInterval,
  InvalidArgument,
  OutsideSubdomain,
  IndexOutOfRange,
  SingularOrigin,
  NearDirichletResonance,
  NearNeumannResonance,
  MetricNotPositiveDefinite,
  NoPositiveEigenvalue,
  NotConverged,
  ZeroTrial,
  IoFailure,
  GridTooCoarse,
  IterationStalled,
};

inline std::string_view to_string(ErrorCode code) noexcept;

/// Base class of every error raised by the library. The code identifies the
/// failure class; the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A retained Steklov mode sits on a pole of b_n (DtN) or a zero of b_n (NtD).
class ResonanceError : public Error {
 public:
  ResonanceError(ErrorCode code, int mode, double kappa, const std::string& message)
      : Error(code, message), mode_(mode), kappa_(kappa) {}

  int mode() const noexcept { return mode_; }
  double kappa() const noexcept { return kappa_; }

 private:
  int mode_;
  double kappa_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveGeometry: return "NonPositiveGeometry";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutsideSubdomain: return "OutsideSubdomain";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SingularOrigin: return "SingularOrigin";
    case ErrorCode::NearDirichletResonance: return "NearDirichletResonance";
    case ErrorCode::NearNeumannResonance: return "NearNeumannResonance";
    case ErrorCode::MetricNotPositiveDefinite: return "MetricNotPositiveDefinite";
    case ErrorCode::NoPositiveEigenvalue: return "NoPositiveEigenvalue";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ZeroTrial: return "ZeroTrial";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::IterationStalled: return "IterationStalled";
  }
  return "Unknown";
}

}  // namespace dtnembed
