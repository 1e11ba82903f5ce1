#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padicdual/groups.hpp"

namespace padicdual {

struct PrimeVerdict {
  unsigned long p;
  bool verdict;
  int margin;
  std::string reason;  ///< empty when the check passed
};

struct CheckReport {
  bool verdict = true;
  std::vector<PrimeVerdict> primes;
  int min_margin = 0;
  int precision = 0;
};

/// Whether v -> V v maps G(A) into G(B). V is rank(B) x rank(A); the test is
/// that every row of B_p V lies in the Z_p-row span of A_p at each prime that
/// is exceptional for either form or divides a denominator of V.
CheckReport hom_check(const FactoredForm& a, const FactoredForm& b, const RationalMatrix& v);

/// The same test at a single prime (at any prime outside the relevant set it
/// must pass; the test suite checks this).
PrimeVerdict hom_check_at(const FactoredForm& a, const FactoredForm& b, const RationalMatrix& v, Prime p);

/// Whether V is an isomorphism G(A) -> G(B): n_p(A) = n_p(B) and
/// rowspan(B_p V) = rowspan(A_p) at every relevant prime, which is
/// hom_check(A, B, V) together with hom_check(B, A, V^-1).
CheckReport iso_check(const FactoredForm& a, const FactoredForm& b, const RationalMatrix& v);

/// Gram-matrix route at one prime: with U = A_p V^-1 B_p^t (B_p B_p^t)^-1,
/// V is an isomorphism at p iff U lies in GL(n_p, Z_p). Returns nullopt when
/// det(B_p B_p^t) vanishes at the working precision, which happens for
/// isotropic rows.
std::optional<bool> gram_iso_check_at(const FactoredForm& a, const FactoredForm& b, const RationalMatrix& v,
                                      Prime p);

/// Rank-one type: exponent k_p at each prime, nullopt meaning infinity.
/// Primes with k_p = 0 are not stored.
using Rank1Type = std::map<unsigned long, std::optional<long>>;

Rank1Type rank1_type(const FactoredForm& ff);
bool rank1_iso(const Rank1Type& t1, const Rank1Type& t2);
/// The multiplier prod p^(k1_p - k2_p) over finite exponents, an isomorphism
/// G(t1) -> G(t2) whenever rank1_iso holds.
mpq_class rank1_witness(const Rank1Type& t1, const Rank1Type& t2);
/// "{2: inf, 3: 1}".
std::string to_string(const Rank1Type& t);

/// Coordinates of the double-dual image of v: A_p v, known modulo p^(N - d).
std::vector<PadicInt> phi_p(const FactoredForm& ff, Prime p, const GroupElement& v);

/// Elementary divisors of G / p^k G, ascending. Computed as the image of the
/// unit-normalized columns of A_p in (Z/p^k)^(n_p). Requires k >= 1 and
/// k + 4 <= N.
std::vector<mpz_class> quotient_structure(const FactoredForm& ff, Prime p, int k);

}  // namespace padicdual
