#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "padicdual/padic.hpp"

namespace padicdual {

/// Dense integer matrix, row-major. Used for exact inputs such as limit matrices.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> entries;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  mpz_class& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
mpz_class determinant(const IntMatrix& a);

/// Rectangular matrix over Z_p at a uniform precision N. Entries are stored as
/// least nonnegative residues mod p^N.
class PadicMatrix {
 public:
  PadicMatrix(Prime p, int precision, std::size_t rows, std::size_t cols);
  PadicMatrix(Prime p, int precision, std::size_t rows, std::size_t cols,
              const std::vector<mpz_class>& values);

  static PadicMatrix identity(Prime p, int precision, std::size_t n);
  static PadicMatrix from_integers(Prime p, int precision, const IntMatrix& m);
  static PadicMatrix from_rows(Prime p, int precision, const std::vector<std::vector<long>>& rows);
  /// Stacks row vectors; every entry must share p and contribute its precision
  /// (the result takes the minimum).
  static PadicMatrix from_padic_rows(Prime p, const std::vector<std::vector<PadicInt>>& rows,
                                     std::size_t cols);

  Prime prime() const noexcept { return p_; }
  int precision() const noexcept { return precision_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const mpz_class& modulus() const { return prime_power(p_, precision_); }

  const mpz_class& residue(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  PadicInt at(std::size_t i, std::size_t j) const { return PadicInt(p_, residue(i, j), precision_); }
  /// Stores v reduced mod p^N.
  void set(std::size_t i, std::size_t j, const mpz_class& v);

  std::vector<PadicInt> row(std::size_t i) const;
  std::vector<PadicInt> column(std::size_t j) const;

  PadicMatrix transpose() const;
  PadicMatrix reduce(int precision) const;
  PadicMatrix select_rows(std::size_t begin, std::size_t end) const;
  bool is_zero() const;

  friend PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b);
  friend bool operator==(const PadicMatrix& a, const PadicMatrix& b);

  // Elementary operations (in place, all mod p^N).
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void scale_row(std::size_t i, const mpz_class& s);
  void scale_col(std::size_t j, const mpz_class& s);
  /// row[dst] += s * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& s);
  /// col[dst] += s * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& s);

  /// Rows as lists of decimal residues.
  std::vector<std::vector<std::string>> to_strings() const;
  std::string to_string() const;

 private:
  Prime p_;
  int precision_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<mpz_class> data_;
};

/// y = M x for an integer vector x, reduced mod p^N.
std::vector<PadicInt> mat_vec(const PadicMatrix& m, const std::vector<mpz_class>& x);
/// Dot product of Z_p vectors (precision is the minimum involved).
PadicInt dot(const std::vector<PadicInt>& a, const std::vector<PadicInt>& b);

}  // namespace padicdual
