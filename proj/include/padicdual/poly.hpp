#pragma once

#include <vector>

#include "padicdual/padic.hpp"

namespace padicdual {

/// Polynomial over Q_p, constant term first.
class PadicPoly {
 public:
  explicit PadicPoly(std::vector<PadicScalarQ> coefficients);

  /// Integer coefficients (constant first); zeros become exact zeros.
  static PadicPoly from_integers(Prime p, const std::vector<mpz_class>& coefficients, int precision);

  Prime prime() const noexcept { return coefficients_.front().prime(); }
  std::size_t degree() const noexcept { return coefficients_.size() - 1; }
  const std::vector<PadicScalarQ>& coefficients() const noexcept { return coefficients_; }

  PadicInt evaluate(const PadicInt& x) const;
  PadicPoly derivative() const;

 private:
  std::vector<PadicScalarQ> coefficients_;
};

/// Lifts a simple root a0 of f mod p to a root modulo p^N by Newton iteration.
/// Throws NotASimpleRoot unless f(a0) = 0 mod p and f'(a0) is a unit.
PadicInt hensel_lift(const PadicPoly& f, const mpz_class& a0, int precision);

struct NewtonSegment {
  mpq_class slope;       ///< roots on this segment have valuation -slope
  long length;           ///< number of roots (with multiplicity)
  friend bool operator==(const NewtonSegment&, const NewtonSegment&) = default;
};

/// Lower convex hull of the points (i, val(a_i)), left to right.
std::vector<NewtonSegment> newton_polygon(const PadicPoly& f);

}  // namespace padicdual
