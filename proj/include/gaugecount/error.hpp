#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaugecount {

enum class ErrorKind {
  ClosureOverflow,
  NotAGroup,
  UnknownFamily,
  BadParams,
  NotASubgroup,
  GroupMismatch,
  ClassInconsistency,
  SnapFailure,
  InvalidRepresentation,
  NotAnAutomorphism,
  NotAHomomorphism,
  InvalidGammaSet,
  BudgetExceeded,
  BadDims,
  ParseError,
  BulkDisconnected,
  NonIntegralResult,
  OddSitesForStaggered,
  BadCharge,
  DimTooLarge,
  NotTransitive,
  NotFree,
  InvalidConfig,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure in the library is reported through this exception; the
/// kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ClosureOverflow: return "ClosureOverflow";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::ClassInconsistency: return "ClassInconsistency";
    case ErrorKind::SnapFailure: return "SnapFailure";
    case ErrorKind::InvalidRepresentation: return "InvalidRepresentation";
    case ErrorKind::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::InvalidGammaSet: return "InvalidGammaSet";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::BadDims: return "BadDims";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BulkDisconnected: return "BulkDisconnected";
    case ErrorKind::NonIntegralResult: return "NonIntegralResult";
    case ErrorKind::OddSitesForStaggered: return "OddSitesForStaggered";
    case ErrorKind::BadCharge: return "BadCharge";
    case ErrorKind::DimTooLarge: return "DimTooLarge";
    case ErrorKind::NotTransitive: return "NotTransitive";
    case ErrorKind::NotFree: return "NotFree";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace gaugecount
