#pragma once

#include <stdexcept>
#include <string>

namespace hyperre {

enum class ErrorCode {
  InvalidArgument,
  Domain,
  Collision,
  NoSolution,
  NonpositiveOmegaSq,
  Breakdown,
};

/// Base class for every failure raised by the library. The C API maps `code()`
/// onto its status enum one-to-one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::InvalidArgument, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class CollisionError : public Error {
 public:
  CollisionError(const std::string& what, std::size_t body_a, std::size_t body_b)
      : Error(ErrorCode::Collision, what), a_(body_a), b_(body_b) {}
  std::size_t body_a() const noexcept { return a_; }
  std::size_t body_b() const noexcept { return b_; }

 private:
  std::size_t a_;
  std::size_t b_;
};

class NoSolution : public Error {
 public:
  explicit NoSolution(const std::string& what) : Error(ErrorCode::NoSolution, what) {}
};

class NonpositiveOmegaSq : public Error {
 public:
  explicit NonpositiveOmegaSq(const std::string& what) : Error(ErrorCode::NonpositiveOmegaSq, what) {}
};

/// The integrator left the range where hyperboloid coordinates are accurate.
class BreakdownError : public Error {
 public:
  explicit BreakdownError(const std::string& what) : Error(ErrorCode::Breakdown, what) {}
};

}  // namespace hyperre
