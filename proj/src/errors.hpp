#pragma once

#include <stdexcept>
#include <string>

namespace projcurv {

// Error identifiers, mirrored one-to-one by the C API status codes.
enum class ErrorCode : int {
  ok = 0,
  invalid_argument = 1,
  parse = 2,
  degenerate_fiber = 3,
  singular_point = 4,
  spectrum_structure = 5,
  branch_continuation = 6,
  domain = 7,
  degree_gap = 8,
  invalid_betti = 9,
  unsupported = 10,
  numerical = 11,
  internal = 12,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& what)
      : Error(ErrorCode::invalid_argument, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorCode::parse, what) {}
};

// Fiber polynomial lost its leading coefficient: the projection chart is
// unusable at this base point and the caller must switch charts.
class DegenerateFiberError : public Error {
 public:
  explicit DegenerateFiberError(const std::string& what)
      : Error(ErrorCode::degenerate_fiber, what) {}
};

class SingularPointError : public Error {
 public:
  explicit SingularPointError(const std::string& what)
      : Error(ErrorCode::singular_point, what) {}
};

// Spectrum validation failed (missing fiber eigenvalue or broken +/- pairing).
// Signals an upstream bug or a singular point, never silently returned.
class SpectrumStructureError : public Error {
 public:
  explicit SpectrumStructureError(const std::string& what)
      : Error(ErrorCode::spectrum_structure, what) {}
};

class BranchContinuationError : public Error {
 public:
  explicit BranchContinuationError(const std::string& what)
      : Error(ErrorCode::branch_continuation, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

// A total-curvature value falling strictly between the degree intervals:
// no smooth plane curve attains it.
class GapError : public Error {
 public:
  explicit GapError(const std::string& what)
      : Error(ErrorCode::degree_gap, what) {}
};

class InvalidBettiError : public Error {
 public:
  explicit InvalidBettiError(const std::string& what)
      : Error(ErrorCode::invalid_betti, what) {}
};

class UnsupportedError : public Error {
 public:
  explicit UnsupportedError(const std::string& what)
      : Error(ErrorCode::unsupported, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorCode::numerical, what) {}
};

}  // namespace projcurv
