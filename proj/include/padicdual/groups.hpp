#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padicdual/linalg.hpp"
#include "padicdual/rational.hpp"

namespace padicdual {

/// Finite description of a torsion-free group of finite rank n:
///   G = {v in Q^n : A_p v in Z_p^(n_p) for every prime p}.
/// Primes not listed carry A_p = identity. A listed prime either has a matrix
/// with n columns or is marked zero_row, the p-divisible case (A_p = 0).
class FactoredForm {
 public:
  FactoredForm(std::size_t rank, int precision);

  std::size_t rank() const noexcept { return rank_; }
  int precision() const noexcept { return precision_; }

  /// The matrix must have `rank` columns and at least the form's precision; it
  /// is stored reduced to that precision.
  void set_matrix(Prime p, const PadicMatrix& a);
  void set_zero_row(Prime p);

  bool is_exceptional(Prime p) const { return exceptional_.contains(p); }
  bool is_zero_row(Prime p) const;
  std::vector<Prime> exceptional_primes() const;

  /// Rows of A_p that span the dual: the identity for unlisted primes and an
  /// empty 0 x n matrix for zero_row primes.
  PadicMatrix dual_basis(Prime p) const;
  /// Rank of the p-adic dual (0 for zero_row).
  std::size_t n_p(Prime p) const;

  /// A copy of the form at a lower precision.
  FactoredForm reduced(int precision) const;

  friend bool operator==(const FactoredForm&, const FactoredForm&) = default;

 private:
  std::size_t rank_;
  int precision_;
  std::map<Prime, std::optional<PadicMatrix>> exceptional_;
};

struct Violation {
  unsigned long p;
  std::string condition;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Checks n_p <= n and the density of the column span at every listed prime.
ValidationReport validate_factored_form(const FactoredForm& ff);

/// A_p v written as p^(-shift) * y with y known modulo p^N.
struct LocalImage {
  std::vector<PadicInt> y;
  long shift = 0;
};

/// Exact image of a rational vector under a p-adic matrix. `shift` is the
/// p-adic valuation of the common denominator of v.
LocalImage local_image(const PadicMatrix& a, const GroupElement& v);

bool membership(const FactoredForm& ff, const GroupElement& v);

/// d_p(v, 0) = ||A_p v||_p as a valuation: exact, at_least(N - d) when the
/// image vanishes at precision, infinite for zero_row primes. `margin` is the
/// number of digits between the decided valuation and N - d.
struct MetricValue {
  Valuation valuation;
  long margin;
};
MetricValue p_metric(const FactoredForm& ff, Prime p, const GroupElement& v);

/// Whether v lies in p^k G. PrecisionExhausted unless k + 4 <= N - d.
bool divisible(const FactoredForm& ff, Prime p, long k, const GroupElement& v);

/// G^{*p} for G = union of A^(-n) Z^r: the stable row module of A.
PadicMatrix dual_from_inductive_limit(const IntMatrix& a, Prime p, int precision);

/// Factored form of union A^(-n) Z^r: one entry per prime divisor of det(A),
/// omitting primes whose dual is all of Z_p^r and marking zero duals as zero_row.
FactoredForm factored_form_of_inductive_limit(const IntMatrix& a, int precision);

enum class Simplicity { simple_not_divisible, divisible, not_simple };
const char* simplicity_name(Simplicity s) noexcept;

Simplicity is_p_simple(const FactoredForm& ff, Prime p);

/// True when ||A_p v||_p vanishes at the working precision, i.e. v cannot be
/// told apart from an element of G_p.
bool in_gp_at_precision(const FactoredForm& ff, Prime p, const GroupElement& v);

/// Primes where v has a denominator together with the exceptional primes.
std::vector<Prime> relevant_primes(const FactoredForm& ff, const GroupElement& v);

}  // namespace padicdual
