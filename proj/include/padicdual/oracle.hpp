#pragma once

// Brute-force reference computations over the integers. Nothing here uses
// the p-adic types; the test suite compares these answers with the main path.

#include <gmpxx.h>

#include <vector>

namespace padicdual::oracle {

using IntVec = std::vector<mpz_class>;
using IntMat = std::vector<IntVec>;  // row-major

struct DivisibleResult {
  bool divisible = false;
  /// True when the iteration bound was hit before A^m g mod p^k repeated, so
  /// a negative answer is unproven.
  bool exhausted = false;
  int steps = 0;
};

/// Whether g lies in p^k G for G = union of A^(-n) Z^r: some A^m g is 0 mod p^k.
/// m_max < 0 selects the default bound k * dim + 4.
DivisibleResult oracle_divisible(const IntMat& a, const IntVec& g, unsigned long p, int k, int m_max = -1);

/// Elementary divisors of G / p^k G, ascending, computed as
/// Z^r / {z : A^m z = 0 mod p^k for some m}.
std::vector<mpz_class> oracle_quotient(const IntMat& a, unsigned long p, int k);

/// Every x in [0, p^N) with f(x) = 0 mod p^N; f is given constant term first.
/// Throws std::invalid_argument when p^N exceeds 10^7.
std::vector<mpz_class> oracle_hensel(const IntVec& f, unsigned long p, int n);

/// Size of the subgroup of (Z/p^m)^rows generated by the columns, each first
/// divided by the largest power of p dividing it. Zero columns are skipped.
mpz_class oracle_column_closure_size(const IntMat& a, unsigned long p, int m);

/// Diagonal of an integer Smith-style diagonalization (not necessarily with
/// the divisibility chain), absolute values.
IntVec oracle_diagonalize(IntMat m);

}  // namespace padicdual::oracle
