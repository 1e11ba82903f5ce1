#include "padicdual/matrix.hpp"

#include <sstream>

#include "padicdual/errors.hpp"

namespace padicdual {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (rows[i].size() != m.cols) throw DimensionMismatch("ragged integer matrix");
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw DimensionMismatch("integer matrix product");
  IntMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

mpz_class determinant(const IntMatrix& a) {
  if (a.rows != a.cols) throw DimensionMismatch("determinant of a non-square matrix");
  // Fraction-free Bareiss elimination.
  const std::size_t n = a.rows;
  if (n == 0) return 1;
  IntMatrix m = a;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && m(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// -------------------------------------------------------------- PadicMatrix

PadicMatrix::PadicMatrix(Prime p, int precision, std::size_t rows, std::size_t cols)
    : p_(p), precision_(precision), rows_(rows), cols_(cols), data_(rows * cols) {
  if (precision < 0) throw InvalidArgument("negative precision");
}

PadicMatrix::PadicMatrix(Prime p, int precision, std::size_t rows, std::size_t cols,
                         const std::vector<mpz_class>& values)
    : PadicMatrix(p, precision, rows, cols) {
  if (values.size() != rows * cols) throw DimensionMismatch("entry count does not match shape");
  for (std::size_t k = 0; k < values.size(); ++k) set(k / cols, k % cols, values[k]);
}

PadicMatrix PadicMatrix::identity(Prime p, int precision, std::size_t n) {
  PadicMatrix m(p, precision, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

PadicMatrix PadicMatrix::from_integers(Prime p, int precision, const IntMatrix& m) {
  return PadicMatrix(p, precision, m.rows, m.cols, m.entries);
}

PadicMatrix PadicMatrix::from_rows(Prime p, int precision, const std::vector<std::vector<long>>& rows) {
  return from_integers(p, precision, IntMatrix::from_rows(rows));
}

PadicMatrix PadicMatrix::from_padic_rows(Prime p, const std::vector<std::vector<PadicInt>>& rows,
                                         std::size_t cols) {
  int n = std::numeric_limits<int>::max();
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionMismatch("row length does not match column count");
    for (const auto& x : r) {
      if (x.prime() != p) throw PrimeMismatch("matrix entries over different primes");
      n = std::min(n, x.precision());
    }
  }
  if (rows.empty()) n = kDefaultPrecision;
  PadicMatrix m(p, n, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j].residue());
  return m;
}

void PadicMatrix::set(std::size_t i, std::size_t j, const mpz_class& v) {
  mpz_class& slot = data_[i * cols_ + j];
  mpz_fdiv_r(slot.get_mpz_t(), v.get_mpz_t(), modulus().get_mpz_t());
}

std::vector<PadicInt> PadicMatrix::row(std::size_t i) const {
  std::vector<PadicInt> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(at(i, j));
  return out;
}

std::vector<PadicInt> PadicMatrix::column(std::size_t j) const {
  std::vector<PadicInt> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(at(i, j));
  return out;
}

PadicMatrix PadicMatrix::transpose() const {
  PadicMatrix t(p_, precision_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = residue(i, j);
  return t;
}

PadicMatrix PadicMatrix::reduce(int precision) const {
  if (precision > precision_) throw PrecisionExhausted("cannot raise matrix precision");
  PadicMatrix m(p_, precision, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) m.set(k / cols_, k % cols_, data_[k]);
  return m;
}

PadicMatrix PadicMatrix::select_rows(std::size_t begin, std::size_t end) const {
  PadicMatrix m(p_, precision_, end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.data_[(i - begin) * cols_ + j] = residue(i, j);
  return m;
}

bool PadicMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b) {
  if (a.p_ != b.p_) throw PrimeMismatch("matrix product over different primes");
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
  PadicMatrix c(a.p_, std::min(a.precision_, b.precision_), a.rows_, b.cols_);
  mpz_class acc;
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) {
      acc = 0;
      for (std::size_t k = 0; k < a.cols_; ++k) acc += a.residue(i, k) * b.residue(k, j);
      c.set(i, j, acc);
    }
  return c;
}

bool operator==(const PadicMatrix& a, const PadicMatrix& b) {
  return a.p_ == b.p_ && a.precision_ == b.precision_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.data_ == b.data_;
}

void PadicMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
}

void PadicMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(data_[i * cols_ + a], data_[i * cols_ + b]);
}

void PadicMatrix::scale_row(std::size_t i, const mpz_class& s) {
  for (std::size_t j = 0; j < cols_; ++j) set(i, j, residue(i, j) * s);
}

void PadicMatrix::scale_col(std::size_t j, const mpz_class& s) {
  for (std::size_t i = 0; i < rows_; ++i) set(i, j, residue(i, j) * s);
}

void PadicMatrix::add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& s) {
  if (s == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) set(dst, j, residue(dst, j) + s * residue(src, j));
}

void PadicMatrix::add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& s) {
  if (s == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) set(i, dst, residue(i, dst) + s * residue(i, src));
}

std::vector<std::vector<std::string>> PadicMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back(residue(i, j).get_str());
  return out;
}

std::string PadicMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << residue(i, j).get_str();
    os << "]";
  }
  os << "] mod " << p_.value() << "^" << precision_;
  return os.str();
}

std::vector<PadicInt> mat_vec(const PadicMatrix& m, const std::vector<mpz_class>& x) {
  if (x.size() != m.cols()) throw DimensionMismatch("matrix-vector shape mismatch");
  std::vector<PadicInt> y;
  y.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class acc = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m.residue(i, j) * x[j];
    y.emplace_back(m.prime(), acc, m.precision());
  }
  return y;
}

PadicInt dot(const std::vector<PadicInt>& a, const std::vector<PadicInt>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product length mismatch");
  if (a.empty()) throw InvalidArgument("dot product of empty vectors");
  PadicInt acc = PadicInt::zero(a.front().prime(), std::min(a.front().precision(), b.front().precision()));
  for (std::size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

}  // namespace padicdual
