#include "padicdual/linalg.hpp"

#include <algorithm>

#include "padicdual/errors.hpp"

namespace padicdual {

namespace {

/// Valuation of a residue mod p^N; N for zero.
long residue_valuation(const mpz_class& r, unsigned long p, int precision) {
  if (r == 0) return precision;
  return valuation_of(r, p);
}

mpz_class exact_quotient(const mpz_class& r, const mpz_class& pe) {
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), r.get_mpz_t(), pe.get_mpz_t());
  return q;
}

mpz_class unit_inverse(const mpz_class& u, const mpz_class& modulus) {
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), u.get_mpz_t(), modulus.get_mpz_t()) == 0)
    throw NonUnit("pivot is not a unit");
  return inv;
}

}  // namespace

NormalForm smith_normal_form(const PadicMatrix& a) {
  const Prime p = a.prime();
  const int n_prec = a.precision();
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  PadicMatrix D = a;
  PadicMatrix U = PadicMatrix::identity(p, n_prec, m);
  PadicMatrix V = PadicMatrix::identity(p, n_prec, n);
  std::vector<Valuation> exps;
  const mpz_class& mod = a.modulus();

  const std::size_t steps = std::min(m, n);
  std::size_t k = 0;
  for (; k < steps; ++k) {
    long best = n_prec;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = k; i < m; ++i)
      for (std::size_t j = k; j < n; ++j) {
        const long v = residue_valuation(D.residue(i, j), p, n_prec);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best >= n_prec) break;
    D.swap_rows(k, bi);
    U.swap_rows(k, bi);
    D.swap_cols(k, bj);
    V.swap_cols(k, bj);

    const mpz_class& pe = prime_power(p, static_cast<int>(best));
    const mpz_class inv = unit_inverse(exact_quotient(D.residue(k, k), pe), mod);
    D.scale_row(k, inv);
    U.scale_row(k, inv);
    for (std::size_t i = k + 1; i < m; ++i) {
      if (D.residue(i, k) == 0) continue;
      const mpz_class f = -exact_quotient(D.residue(i, k), pe);
      D.add_row_multiple(i, k, f);
      U.add_row_multiple(i, k, f);
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (D.residue(k, j) == 0) continue;
      const mpz_class f = -exact_quotient(D.residue(k, j), pe);
      D.add_col_multiple(j, k, f);
      V.add_col_multiple(j, k, f);
    }
    exps.push_back(Valuation::exact(best));
  }
  for (; k < steps; ++k) exps.push_back(Valuation::at_least(n_prec));
  return {std::move(U), std::move(D), std::move(V), std::move(exps)};
}

std::optional<SolutionSet> solve_unit_system(const PadicMatrix& a, const std::vector<PadicInt>& b) {
  if (b.size() != a.rows()) throw DimensionMismatch("right-hand side length does not match rows");
  const Prime p = a.prime();
  const int N = a.precision();
  std::vector<mpz_class> rhs;
  rhs.reserve(b.size());
  for (const auto& x : b) {
    if (x.prime() != p) throw PrimeMismatch("right-hand side over a different prime");
    if (x.precision() < N)
      throw PrecisionExhausted("right-hand side known to fewer digits than the matrix");
    rhs.push_back(x.residue());
  }

  const NormalForm nf = smith_normal_form(a);
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::vector<PadicInt> z = mat_vec(nf.U, rhs);

  std::vector<mpz_class> y(n);
  std::vector<std::size_t> free_coords;
  std::vector<std::pair<std::size_t, long>> scaled_coords;  // (coordinate, N - e)
  int margin = N;
  const std::size_t diag = std::min(m, n);
  for (std::size_t i = 0; i < diag; ++i) {
    const Valuation& e = nf.exponents[i];
    if (e.is_exact()) {
      const mpz_class& pe = prime_power(p, static_cast<int>(e.value()));
      if (!mpz_divisible_p(z[i].residue().get_mpz_t(), pe.get_mpz_t())) return std::nullopt;
      y[i] = exact_quotient(z[i].residue(), pe);
      margin = std::min<int>(margin, N - static_cast<int>(e.value()));
      if (e.value() > 0) scaled_coords.emplace_back(i, N - e.value());
    } else {
      if (!z[i].is_zero()) return std::nullopt;
      free_coords.push_back(i);
    }
  }
  for (std::size_t i = diag; i < m; ++i)
    if (!z[i].is_zero()) return std::nullopt;
  for (std::size_t j = diag; j < n; ++j) free_coords.push_back(j);

  SolutionSet out;
  out.margin = margin;
  out.particular = mat_vec(nf.V, y);
  auto kernel_vector = [&](std::size_t j, const mpz_class& scale) {
    std::vector<mpz_class> e(n);
    e[j] = scale;
    return mat_vec(nf.V, e);
  };
  for (auto [i, shift] : scaled_coords)
    out.kernel.push_back(kernel_vector(i, prime_power(p, static_cast<int>(shift))));
  for (std::size_t j : free_coords) out.kernel.push_back(kernel_vector(j, 1));
  return out;
}

SpanMembership row_span_member(const std::vector<PadicInt>& w, const PadicMatrix& a) {
  if (w.size() != a.cols()) throw DimensionMismatch("row length does not match matrix columns");
  SpanMembership out;
  auto sol = solve_unit_system(a.transpose(), w);
  if (!sol) {
    out.margin = a.precision();
    return out;
  }
  out.member = true;
  out.coefficients = std::move(sol->particular);
  out.margin = sol->margin;
  return out;
}

std::size_t rank_mod_p(const PadicMatrix& a) {
  const unsigned long p = a.prime();
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<unsigned long> r(m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i * n + j] = mpz_fdiv_ui(a.residue(i, j).get_mpz_t(), p);

  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && r[piv * n + col] == 0) ++piv;
    if (piv == m) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(r[rank * n + j], r[piv * n + j]);
    mpz_class inv_z;
    mpz_class pz(p);
    mpz_class val(r[rank * n + col]);
    mpz_invert(inv_z.get_mpz_t(), val.get_mpz_t(), pz.get_mpz_t());
    const unsigned long inv = inv_z.get_ui();
    for (std::size_t i = rank + 1; i < m; ++i) {
      const unsigned long f = r[i * n + col] * inv % p;
      if (f == 0) continue;
      for (std::size_t j = col; j < n; ++j)
        r[i * n + j] = (r[i * n + j] + (p - f) * r[rank * n + j]) % p;
    }
    ++rank;
  }
  return rank;
}

bool is_gl_zp(const PadicMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("invertibility test needs a square matrix");
  if (a.precision() == 0) throw PrecisionExhausted("matrix carries no digits");
  return rank_mod_p(a) == a.rows();
}

PadicMatrix howell_form(const PadicMatrix& a) {
  const Prime p = a.prime();
  const int N = a.precision();
  const std::size_t n = a.cols();
  const mpz_class& mod = a.modulus();
  using Row = std::vector<mpz_class>;

  auto reduce = [&](Row& r) {
    for (auto& x : r) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
  };
  auto is_zero = [](const Row& r) {
    return std::all_of(r.begin(), r.end(), [](const mpz_class& x) { return x == 0; });
  };

  std::vector<Row> rest;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Row r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = a.residue(i, j);
    if (!is_zero(r)) rest.push_back(std::move(r));
  }

  std::vector<Row> pivots;
  std::vector<std::pair<std::size_t, int>> pivot_info;  // (column, exponent)
  for (std::size_t col = 0; col < n && !rest.empty(); ++col) {
    long best = N;
    std::size_t bi = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      const long v = residue_valuation(rest[i][col], p, N);
      if (v < best) {
        best = v;
        bi = i;
      }
    }
    if (best >= N) continue;
    Row piv = std::move(rest[bi]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(bi));

    const mpz_class& pe = prime_power(p, static_cast<int>(best));
    const mpz_class inv = unit_inverse(exact_quotient(piv[col], pe), mod);
    for (auto& x : piv) x *= inv;
    reduce(piv);

    for (auto& r : rest) {
      if (r[col] == 0) continue;
      const mpz_class f = exact_quotient(r[col], pe);
      for (std::size_t j = col; j < n; ++j) r[j] -= f * piv[j];
      reduce(r);
    }
    if (best > 0) {
      Row ann = piv;
      for (auto& x : ann) x *= prime_power(p, N - static_cast<int>(best));
      reduce(ann);
      rest.push_back(std::move(ann));
    }
    std::erase_if(rest, is_zero);
    pivots.push_back(std::move(piv));
    pivot_info.emplace_back(col, static_cast<int>(best));
  }

  for (std::size_t k = 0; k < pivots.size(); ++k) {
    const auto [col, e] = pivot_info[k];
    const mpz_class& pe = prime_power(p, e);
    for (std::size_t i = 0; i < k; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), pivots[i][col].get_mpz_t(), pe.get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = col; j < n; ++j) pivots[i][j] -= q * pivots[k][j];
      reduce(pivots[i]);
    }
  }

  PadicMatrix out(p, N, pivots.size(), n);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, pivots[i][j]);
  return out;
}

bool same_row_module(const PadicMatrix& a, const PadicMatrix& b) {
  if (a.prime() != b.prime()) throw PrimeMismatch("row modules over different primes");
  if (a.cols() != b.cols()) throw DimensionMismatch("row modules of different widths");
  const int N = std::min(a.precision(), b.precision());
  return howell_form(a.reduce(N)) == howell_form(b.reduce(N));
}

namespace {

// A Howell form also lists multiples p^(N-e) * row that exist only because of
// the truncation; the lattice itself needs as many rows as there are nonzero
// elementary divisors. Redundant rows are dropped from the bottom up.
PadicMatrix drop_redundant_rows(const PadicMatrix& h) {
  std::size_t rank = 0;
  for (const auto& e : smith_normal_form(h).exponents)
    if (e.is_exact()) ++rank;
  std::vector<std::size_t> keep(h.rows());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  for (std::size_t i = h.rows(); i-- > 0 && keep.size() > rank;) {
    std::vector<std::vector<PadicInt>> others;
    for (std::size_t k : keep)
      if (k != i) others.push_back(h.row(k));
    if (!others.empty() && row_span_member(h.row(i), PadicMatrix::from_padic_rows(h.prime(), others, h.cols())).member)
      keep.erase(std::find(keep.begin(), keep.end(), i));
  }
  if (keep.size() != rank) throw PrecisionExhausted("dual lattice basis is not resolved at this precision");
  PadicMatrix out(h.prime(), h.precision(), keep.size(), h.cols());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) out.set(i, j, h.residue(keep[i], j));
  return out;
}

StableModuleTrace stable_row_module_at(const IntMatrix& a, Prime p, int precision) {
  const std::size_t r = a.rows;
  const PadicMatrix step = PadicMatrix::from_integers(p, precision, a);
  PadicMatrix current = PadicMatrix::identity(p, precision, r);
  const int bound = precision * static_cast<int>(r) + 1;
  for (int n = 1; n <= bound; ++n) {
    if (current.rows() == 0) return {std::move(current), n - 1};
    PadicMatrix next = howell_form(current * step);
    if (next == current) return {drop_redundant_rows(current), n - 1};
    current = std::move(next);
  }
  throw PrecisionExhausted("row module failed to stabilize within N*r steps");
}

}  // namespace

StableModuleTrace stable_row_module_trace(const IntMatrix& a, Prime p, int precision) {
  if (a.rows != a.cols) throw DimensionMismatch("limit matrix must be square");
  if (determinant(a) == 0) throw SingularMatrix("limit matrix is singular");
  StableModuleTrace t = stable_row_module_at(a, p, precision);
  // Truncation leaves entries to the right of the pivots ambiguous modulo
  // p^(N-s), s the sum of the pivot exponents; s extra digits remove that.
  long top = 0;
  for (std::size_t i = 0; i < t.basis.rows(); ++i)
    for (std::size_t j = 0; j < t.basis.cols(); ++j)
      if (t.basis.residue(i, j) != 0) {
        top += residue_valuation(t.basis.residue(i, j), p, precision);
        break;
      }
  if (top > 0) t.basis = stable_row_module_at(a, p, precision + static_cast<int>(top)).basis.reduce(precision);
  return t;
}

PadicMatrix stable_row_module(const IntMatrix& a, Prime p, int precision) {
  return stable_row_module_trace(a, p, precision).basis;
}

PadicMatrix normalized_columns(const PadicMatrix& a) {
  const Prime p = a.prime();
  const int N = a.precision();
  std::vector<std::pair<std::size_t, long>> cols;  // (column, shift)
  long max_shift = 0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    long k = N;
    for (std::size_t i = 0; i < a.rows(); ++i) k = std::min(k, residue_valuation(a.residue(i, j), p, N));
    if (k >= N) continue;
    cols.emplace_back(j, k);
    max_shift = std::max(max_shift, k);
  }
  const int out_prec = N - static_cast<int>(max_shift);
  PadicMatrix out(p, out_prec, a.rows(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto [j, k] = cols[c];
    const mpz_class& pk = prime_power(p, static_cast<int>(k));
    for (std::size_t i = 0; i < a.rows(); ++i) out.set(i, c, exact_quotient(a.residue(i, j), pk));
  }
  return out;
}

bool column_span_dense(const PadicMatrix& a) {
  if (a.rows() == 0) return true;
  const PadicMatrix cols = normalized_columns(a);
  if (cols.cols() == 0) return false;
  return rank_mod_p(cols) == a.rows();
}

}  // namespace padicdual
