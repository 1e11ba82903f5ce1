#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace padicdual {

/// Working precision used when a caller does not choose one.
inline constexpr int kDefaultPrecision = 32;

/// Digits of slack required before a finite-precision answer is trusted.
inline constexpr int kSafetyMargin = 4;

bool is_prime(unsigned long n) noexcept;

/// A rational prime, validated on construction.
class Prime {
 public:
  explicit Prime(unsigned long value);
  unsigned long value() const noexcept { return value_; }
  operator unsigned long() const noexcept { return value_; }
  friend bool operator==(Prime, Prime) = default;
  friend auto operator<=>(Prime, Prime) = default;

 private:
  unsigned long value_;
};

/// p^n, cached per thread. The reference stays valid for the thread's lifetime.
const mpz_class& prime_power(unsigned long p, int n);

/// Exact p-adic valuation of a nonzero integer; throws InvalidArgument on zero.
long valuation_of(const mpz_class& value, unsigned long p);

/// Result of a valuation (or norm exponent) query at finite precision.
///
/// `exact(k)` means the valuation is exactly k; `at_least(n)` means the value
/// vanished at the working precision and the valuation is only known to be
/// >= n; `infinite()` is reserved for values known to be exactly zero.
class Valuation {
 public:
  enum class Kind { exact, at_least, infinite };

  static Valuation exact(long k) { return {Kind::exact, k}; }
  static Valuation at_least(long n) { return {Kind::at_least, n}; }
  static Valuation infinite() { return {Kind::infinite, std::numeric_limits<long>::max()}; }

  Kind kind() const noexcept { return kind_; }
  bool is_exact() const noexcept { return kind_ == Kind::exact; }
  bool is_infinite() const noexcept { return kind_ == Kind::infinite; }
  /// The exponent for `exact`, the lower bound for `at_least`.
  long value() const noexcept { return value_; }
  /// Largest exponent the true valuation is guaranteed to reach.
  long lower_bound() const noexcept { return value_; }

  friend bool operator==(const Valuation&, const Valuation&) = default;

  /// Renders the absolute value: "3^-1", "<=3^-32", or "0".
  std::string abs_string(unsigned long p) const;

 private:
  Valuation(Kind kind, long value) : kind_(kind), value_(value) {}
  Kind kind_;
  long value_;
};

/// An element of Z_p known modulo p^N.
class PadicInt {
 public:
  PadicInt(Prime p, const mpz_class& value, int precision);
  PadicInt(Prime p, long value, int precision) : PadicInt(p, mpz_class(value), precision) {}

  static PadicInt zero(Prime p, int precision) { return PadicInt(p, 0L, precision); }
  static PadicInt one(Prime p, int precision) { return PadicInt(p, 1L, precision); }

  Prime prime() const noexcept { return p_; }
  int precision() const noexcept { return precision_; }
  /// Least nonnegative representative, 0 <= residue < p^N.
  const mpz_class& residue() const noexcept { return residue_; }
  const mpz_class& modulus() const { return prime_power(p_, precision_); }

  bool is_zero() const { return residue_ == 0; }
  bool is_unit() const;
  Valuation valuation() const;

  /// Same residue class at lower precision. Throws if n exceeds the current precision.
  PadicInt reduce(int n) const;

  PadicInt operator-() const;
  friend PadicInt operator+(const PadicInt& a, const PadicInt& b);
  friend PadicInt operator-(const PadicInt& a, const PadicInt& b);
  friend PadicInt operator*(const PadicInt& a, const PadicInt& b);
  friend bool operator==(const PadicInt& a, const PadicInt& b);

  /// Multiplicative inverse modulo p^N; throws NonUnit.
  PadicInt inverse() const;

  /// Exact division by p^k, defined when p^k divides the residue. The result is
  /// known modulo p^(N-k); the freed top digits are zero.
  PadicInt divide_by_power(int k) const;

  /// "24+O(3^3)".
  std::string to_string() const;

 private:
  Prime p_;
  int precision_;
  mpz_class residue_;
};

enum class ArithOp { add, sub, mul };
PadicInt padic_arith(const PadicInt& a, const PadicInt& b, ArithOp op);

/// val(a) as an exact exponent or "at least N".
inline Valuation val(const PadicInt& a) { return a.valuation(); }

/// Exponent of the sup-norm: ||v||_p = p^-k with k = min val(v_i). An all-zero
/// vector yields at_least(N). Throws InvalidArgument on an empty vector.
Valuation vec_norm(std::span<const PadicInt> v);

/// An element of Q_p stored as unit * p^valuation, the unit known to a relative
/// precision r (so the value is known modulo p^(valuation + r)). A relative
/// precision of zero denotes the approximate zero O(p^valuation).
class PadicScalarQ {
 public:
  static PadicScalarQ exact_zero(Prime p);
  static PadicScalarQ from_int(const PadicInt& a);
  static PadicScalarQ from_integer(Prime p, const mpz_class& value, int absolute_precision);
  /// num/den with absolute precision `absolute_precision`.
  static PadicScalarQ from_rational(Prime p, const mpq_class& value, int absolute_precision);

  Prime prime() const noexcept { return unit_.prime(); }
  bool is_exact_zero() const noexcept { return exact_zero_; }
  bool is_approximate_zero() const noexcept { return !exact_zero_ && unit_.precision() == 0; }
  const PadicInt& unit() const noexcept { return unit_; }
  long shift() const noexcept { return valuation_; }
  /// valuation + relative precision; max long for exact zero.
  long absolute_precision() const noexcept;
  Valuation valuation() const;

  /// Defined for nonnegative valuation; result at precision min(n, absolute precision).
  PadicInt to_padic_int(int n) const;

  PadicScalarQ operator-() const;
  friend PadicScalarQ operator+(const PadicScalarQ& a, const PadicScalarQ& b);
  friend PadicScalarQ operator-(const PadicScalarQ& a, const PadicScalarQ& b);
  friend PadicScalarQ operator*(const PadicScalarQ& a, const PadicScalarQ& b);

  std::string to_string() const;

 private:
  PadicScalarQ(PadicInt unit, long valuation, bool exact_zero)
      : unit_(std::move(unit)), valuation_(valuation), exact_zero_(exact_zero) {}
  static PadicScalarQ normalize(Prime p, mpz_class value, long shift, long absolute_precision);

  PadicInt unit_;
  long valuation_;
  bool exact_zero_;
};

/// Closed disk {a : |a - center|_p <= p^-e} in Q_p.
class Disk {
 public:
  enum class Kind { empty, ball, point };

  static Disk empty(Prime p);
  static Disk ball(PadicScalarQ center, long radius_exponent);
  /// A disk smaller than the working precision of its center.
  static Disk point(PadicScalarQ center);

  Kind kind() const noexcept { return kind_; }
  Prime prime() const noexcept { return p_; }
  const PadicScalarQ& center() const noexcept { return center_; }
  /// e for a ball; the center's absolute precision for a point.
  long radius_exponent() const noexcept;

  bool contains(const PadicScalarQ& a) const;
  std::string to_string() const;

 private:
  Disk(Kind kind, Prime p, PadicScalarQ center, long e)
      : kind_(kind), p_(p), center_(std::move(center)), e_(e) {}
  Kind kind_;
  Prime p_;
  PadicScalarQ center_;
  long e_;
};

/// Ultrametric intersection: the smaller of two disks when they meet, empty otherwise.
Disk disk_intersect(const Disk& d1, const Disk& d2);

/// Parses `24+O(3^3)`, `-5`, or `7`. Bare integers take `default_precision`;
/// negative values are reduced mod p^N.
PadicInt parse_padic_literal(std::string_view text, Prime p, int default_precision);

}  // namespace padicdual
