#pragma once

// Shared generators for the test binaries. Fixed seeds keep failures reproducible.

#include <algorithm>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "padicdual/groups.hpp"
#include "padicdual/oracle.hpp"

namespace testing {

using namespace padicdual;

inline std::string fixture(const std::string& name) { return std::string(PADICDUAL_FIXTURES) + "/" + name; }

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Prime random_prime(std::mt19937_64& rng) {
  static const unsigned long primes[] = {2, 3, 5, 7};
  return Prime(primes[uniform(rng, 0, 3)]);
}

/// Nonsingular r x r integer matrix with small entries.
inline IntMatrix random_limit_matrix(std::mt19937_64& rng, std::size_t r, long bound = 4) {
  while (true) {
    IntMatrix a(r, r);
    for (auto& e : a.entries) e = uniform(rng, -bound, bound);
    if (determinant(a) != 0) return a;
  }
}

/// A limit matrix whose determinant is divisible by p, so p is exceptional.
inline IntMatrix random_limit_matrix_at(std::mt19937_64& rng, std::size_t r, Prime p, long bound = 4) {
  bound = std::max<long>(bound, static_cast<long>(p.value()));
  while (true) {
    IntMatrix a = random_limit_matrix(rng, r, bound);
    if (mpz_divisible_ui_p(determinant(a).get_mpz_t(), p)) return a;
  }
}

inline oracle::IntMat to_oracle(const IntMatrix& a) {
  oracle::IntMat m(a.rows, oracle::IntVec(a.cols));
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) m[i][j] = a(i, j);
  return m;
}

inline RationalMatrix to_rational(const IntMatrix& a) {
  RationalMatrix m(a.rows, a.cols);
  for (std::size_t i = 0; i < a.entries.size(); ++i) m.entries[i] = a.entries[i];
  return m;
}

inline GroupElement random_integer_vector(std::mt19937_64& rng, std::size_t r, long bound = 30) {
  GroupElement v(r);
  for (auto& x : v) x = uniform(rng, -bound, bound);
  return v;
}

/// A^(-n) z for random integer z: an element of union A^(-n) Z^r.
inline GroupElement random_limit_element(std::mt19937_64& rng, const IntMatrix& a, int max_power = 2) {
  const RationalMatrix inv = inverse(to_rational(a));
  GroupElement v = random_integer_vector(rng, a.rows, 12);
  for (long n = uniform(rng, 0, max_power); n > 0; --n) v = inv * v;
  return v;
}

/// Random element of GL(n, Z_p) at precision N.
inline PadicMatrix random_gl(std::mt19937_64& rng, Prime p, int precision, std::size_t n) {
  while (true) {
    PadicMatrix u(p, precision, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) u.set(i, j, mpz_class(uniform(rng, 0, 1L << 40)));
    if (is_gl_zp(u)) return u;
  }
}

/// Random unimodular integer matrix, a product of elementary operations.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  IntMatrix v = IntMatrix::identity(n);
  if (n < 2) {
    if (uniform(rng, 0, 1)) v(0, 0) = -1;
    return v;
  }
  for (int step = 0; step < 6; ++step) {
    std::size_t i = uniform(rng, 0, n - 1), j = uniform(rng, 0, n - 1);
    if (i == j) continue;
    const long s = uniform(rng, -3, 3);
    for (std::size_t c = 0; c < n; ++c) v(i, c) += s * v(j, c);
  }
  return v;
}

inline IntMatrix int_inverse(const IntMatrix& v) {
  const RationalMatrix inv = inverse(to_rational(v));
  IntMatrix out(v.rows, v.cols);
  for (std::size_t i = 0; i < inv.entries.size(); ++i) out.entries[i] = inv.entries[i].get_num();
  return out;
}

inline std::shared_ptr<const FactoredForm> limit_form(const IntMatrix& a, int precision = kDefaultPrecision) {
  return std::make_shared<const FactoredForm>(factored_form_of_inductive_limit(a, precision));
}

}  // namespace testing
