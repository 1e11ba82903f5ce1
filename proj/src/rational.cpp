#include "padicdual/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

#include "padicdual/errors.hpp"

namespace padicdual {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

mpq_class parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto slash = s.find('/');
  const std::string_view num = trim(s.substr(0, slash));
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
  if (!all_digits(num) || !all_digits(den)) throw ParseError("not a rational number: '" + std::string(text) + "'");
  const mpz_class d{std::string(den)};
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  mpq_class q{mpz_class{std::string(num)}, d};
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

mpq_class rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return mpq_class(mpz_class(std::to_string(j.get<long long>())));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("matrix entries must be integers or rational strings");
}

}  // namespace

GroupElement parse_group_element(std::string_view text) {
  GroupElement v;
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty vector");
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    v.push_back(parse_rational(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return v;
}

std::vector<GroupElement> parse_group_elements(std::string_view text) {
  std::vector<GroupElement> out;
  std::string_view s = trim(text);
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto semi = s.find(';', start);
    out.push_back(parse_group_element(s.substr(start, semi - start)));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return out;
}

std::string to_string(const GroupElement& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out + ")";
}

mpz_class common_denominator(const GroupElement& v) {
  mpz_class d = 1;
  for (const auto& x : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

RationalMatrix RationalMatrix::identity(std::size_t n) { return scalar(n, 1); }

RationalMatrix RationalMatrix::scalar(std::size_t n, const mpq_class& s) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols != b.rows) throw DimensionMismatch("rational matrix product shape mismatch");
  RationalMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

GroupElement operator*(const RationalMatrix& a, const GroupElement& v) {
  if (a.cols != v.size()) throw DimensionMismatch("matrix-vector shape mismatch");
  GroupElement out(a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) out[i] += a(i, j) * v[j];
  return out;
}

RationalMatrix transpose(const RationalMatrix& a) {
  RationalMatrix t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

mpq_class determinant(const RationalMatrix& a) {
  if (a.rows != a.cols) throw DimensionMismatch("determinant of a non-square matrix");
  RationalMatrix m = a;
  const std::size_t n = a.rows;
  mpq_class det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      const mpq_class f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

RationalMatrix inverse(const RationalMatrix& a) {
  if (a.rows != a.cols) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = a.rows;
  RationalMatrix m = a;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m(piv, k) == 0) ++piv;
    if (piv == n) throw SingularMatrix("matrix is not invertible over Q");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(k, j), m(piv, j));
      std::swap(inv(k, j), inv(piv, j));
    }
    const mpq_class s = 1 / m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) *= s;
      inv(k, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      const mpq_class f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

RationalMatrix parse_rational_matrix(std::string_view text, std::size_t n) {
  const std::string_view s = trim(text);
  if (s == "identity") return RationalMatrix::identity(n);
  if (!s.empty() && s.front() != '[') return RationalMatrix::scalar(n, parse_rational(s));

  const auto j = nlohmann::json::parse(s, nullptr, false);
  if (j.is_discarded() || !j.is_array()) throw ParseError("matrix must be a JSON array of rows");
  if (j.empty()) throw ParseError("matrix has no rows");
  // A flat array is a single row.
  const bool flat = !j.front().is_array();
  const std::size_t rows = flat ? 1 : j.size();
  const std::size_t cols = flat ? j.size() : j.front().size();
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = flat ? j : j[i];
    if (!row.is_array() || row.size() != cols) throw ParseError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = rational_from_json(row[c]);
  }
  return m;
}

std::string to_string(const RationalMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols; ++j) os << (j ? ", " : "") << m(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

std::vector<unsigned long> prime_divisors(const mpz_class& n) {
  mpz_class r = abs(n);
  std::vector<unsigned long> out;
  if (r == 0) return out;
  for (unsigned long d = 2; d <= 1000000 && r > 1; d += (d == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(r.get_mpz_t(), d)) {
      out.push_back(d);
      while (mpz_divisible_ui_p(r.get_mpz_t(), d)) mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), d);
    }
  }
  if (r > 1) {
    if (!r.fits_ulong_p() || mpz_probab_prime_p(r.get_mpz_t(), 30) == 0)
      throw InvalidArgument("cannot factor " + n.get_str() + " into machine-sized primes");
    out.push_back(r.get_ui());
  }
  return out;
}

std::vector<unsigned long> denominator_primes(const RationalMatrix& m) {
  std::set<unsigned long> primes;
  for (const auto& x : m.entries) {
    for (unsigned long p : prime_divisors(x.get_den())) primes.insert(p);
  }
  return {primes.begin(), primes.end()};
}

}  // namespace padicdual
