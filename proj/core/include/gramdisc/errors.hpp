#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gramdisc {

enum class ErrorCode {
  domain,
  convergence,
  length_mismatch,
  extremum_lost,
  no_convergence,
  window_escape,
  range_unclassifiable,
  malformed_spec,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::convergence: return "convergence";
    case ErrorCode::length_mismatch: return "length_mismatch";
    case ErrorCode::extremum_lost: return "extremum_lost";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::window_escape: return "window_escape";
    case ErrorCode::range_unclassifiable: return "range_unclassifiable";
    case ErrorCode::malformed_spec: return "malformed_spec";
  }
  return "unknown";
}

/// Base class of every exception thrown by the library. `context()` is a
/// short machine-oriented string (e.g. "t=12.5") suitable for error bodies.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string context = {})
      : std::runtime_error(message), code_(code), context_(std::move(context)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& context() const noexcept { return context_; }

 private:
  ErrorCode code_;
  std::string context_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message, std::string context = {})
      : Error(ErrorCode::domain, message, std::move(context)) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& message, std::string context = {})
      : Error(ErrorCode::convergence, message, std::move(context)) {}
};

class LengthMismatch : public Error {
 public:
  explicit LengthMismatch(const std::string& message, std::string context = {})
      : Error(ErrorCode::length_mismatch, message, std::move(context)) {}
};

class MalformedSpec : public Error {
 public:
  explicit MalformedSpec(const std::string& message, std::string context = {})
      : Error(ErrorCode::malformed_spec, message, std::move(context)) {}
};

class RangeUnclassifiable : public Error {
 public:
  explicit RangeUnclassifiable(const std::string& message, std::string context = {})
      : Error(ErrorCode::range_unclassifiable, message, std::move(context)) {}
};

/// Failure while continuing an extremal point along a parameter path.
/// Carries the last accepted (s, t) pair.
class ContinuationError : public Error {
 public:
  ContinuationError(ErrorCode code, const std::string& message, double last_s, double last_t)
      : Error(code, message, "s=" + std::to_string(last_s) + ",t=" + std::to_string(last_t)),
        last_s_(last_s),
        last_t_(last_t) {}

  double last_s() const noexcept { return last_s_; }
  double last_t() const noexcept { return last_t_; }

 private:
  double last_s_;
  double last_t_;
};

/// The second derivative changed sign or Newton stalled below the minimum step.
class ExtremumLost : public ContinuationError {
 public:
  ExtremumLost(const std::string& message, double last_s, double last_t)
      : ContinuationError(ErrorCode::extremum_lost, message, last_s, last_t) {}
};

class NoConvergence : public ContinuationError {
 public:
  NoConvergence(const std::string& message, double last_s, double last_t)
      : ContinuationError(ErrorCode::no_convergence, message, last_s, last_t) {}
};

/// The tracked extremum left (g_{n-1}, g_{n+1}).
class WindowEscape : public ContinuationError {
 public:
  WindowEscape(const std::string& message, double last_s, double last_t)
      : ContinuationError(ErrorCode::window_escape, message, last_s, last_t) {}
};

}  // namespace gramdisc
