#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace padicdual {

/// An element of Q^n, entries in lowest terms.
using GroupElement = std::vector<mpq_class>;

/// "1/5,1/5" or "-7, 1". Throws ParseError.
GroupElement parse_group_element(std::string_view text);
/// "1,0;0,1" -> two elements. An empty string is an empty list.
std::vector<GroupElement> parse_group_elements(std::string_view text);
std::string to_string(const GroupElement& v);

/// Least common multiple of the denominators (1 for the empty vector).
mpz_class common_denominator(const GroupElement& v);

/// Dense matrix over Q, row-major.
struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpq_class> entries;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  static RationalMatrix identity(std::size_t n);
  static RationalMatrix scalar(std::size_t n, const mpq_class& s);

  mpq_class& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
GroupElement operator*(const RationalMatrix& a, const GroupElement& v);
mpq_class determinant(const RationalMatrix& a);
/// Throws SingularMatrix.
RationalMatrix inverse(const RationalMatrix& a);
RationalMatrix transpose(const RationalMatrix& a);

/// Accepts a JSON array of rows ("[[0,1],[1,0]]", entries numbers or strings
/// such as "1/9"), the word "identity", or a single rational meaning that
/// multiple of the n x n identity. `n` is the size used by the last two forms.
RationalMatrix parse_rational_matrix(std::string_view text, std::size_t n);
std::string to_string(const RationalMatrix& m);

/// Distinct prime divisors of |n|, ascending. Trial division up to 10^6; a
/// cofactor left over must be a probable prime that fits in 64 bits, otherwise
/// InvalidArgument is thrown.
std::vector<unsigned long> prime_divisors(const mpz_class& n);

/// Prime divisors of the entry denominators, ascending.
std::vector<unsigned long> denominator_primes(const RationalMatrix& m);

}  // namespace padicdual
