#pragma once

#include <stdexcept>
#include <string>

namespace padicdual {

enum class Errc {
  invalid_argument,
  parse_error,
  prime_mismatch,
  dimension_mismatch,
  non_unit,
  not_a_simple_root,
  singular_matrix,
  not_a_member,
  precision_exhausted,
  not_contractive,
  not_found,
};

const char* errc_name(Errc code) noexcept;

/// Base class of every error raised by the library. The code is what the C API
/// and the CLI map onto status values and exit codes.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& w) : Error(Errc::invalid_argument, w) {}
};
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(Errc::parse_error, w) {}
};
struct PrimeMismatch : Error {
  explicit PrimeMismatch(const std::string& w) : Error(Errc::prime_mismatch, w) {}
};
struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& w) : Error(Errc::dimension_mismatch, w) {}
};
struct NonUnit : Error {
  explicit NonUnit(const std::string& w) : Error(Errc::non_unit, w) {}
};
struct NotASimpleRoot : Error {
  explicit NotASimpleRoot(const std::string& w) : Error(Errc::not_a_simple_root, w) {}
};
struct SingularMatrix : Error {
  explicit SingularMatrix(const std::string& w) : Error(Errc::singular_matrix, w) {}
};
struct NotAMember : Error {
  explicit NotAMember(const std::string& w) : Error(Errc::not_a_member, w) {}
};
struct PrecisionExhausted : Error {
  explicit PrecisionExhausted(const std::string& w) : Error(Errc::precision_exhausted, w) {}
};
struct NotFound : Error {
  explicit NotFound(const std::string& w) : Error(Errc::not_found, w) {}
};

/// Raised when a prescribed partial functional admits no extension modulo p^N.
/// `constraint()` is the index of the first prescribed value that makes the
/// system inconsistent.
class NotContractive : public Error {
 public:
  NotContractive(std::size_t constraint, const std::string& w)
      : Error(Errc::not_contractive, w), constraint_(constraint) {}
  std::size_t constraint() const noexcept { return constraint_; }

 private:
  std::size_t constraint_;
};

}  // namespace padicdual
