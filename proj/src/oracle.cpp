#include "padicdual/oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace padicdual::oracle {

namespace {

mpz_class power(unsigned long p, int k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
  return r;
}

mpz_class mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

IntVec mat_vec_mod(const IntMat& a, const IntVec& x, const mpz_class& m) {
  IntVec y(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_class acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += a[i][j] * x[j];
    y[i] = mod(acc, m);
  }
  return y;
}

IntMat mat_mul_mod(const IntMat& a, const IntMat& b, const mpz_class& m) {
  const std::size_t n = a.size(), inner = b.size(), c = b.empty() ? 0 : b[0].size();
  IntMat out(n, IntVec(c));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      mpz_class acc = 0;
      for (std::size_t k = 0; k < inner; ++k) acc += a[i][k] * b[k][j];
      out[i][j] = mod(acc, m);
    }
  return out;
}

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const mpz_class& x) { return x == 0; });
}

}  // namespace

DivisibleResult oracle_divisible(const IntMat& a, const IntVec& g, unsigned long p, int k, int m_max) {
  DivisibleResult out;
  if (k <= 0) {
    out.divisible = true;
    return out;
  }
  if (m_max < 0) m_max = k * static_cast<int>(g.size()) + 4;
  const mpz_class pk = power(p, k);
  IntVec x(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) x[i] = mod(g[i], pk);
  std::set<IntVec> seen;
  for (int m = 0; m <= m_max; ++m) {
    out.steps = m;
    if (is_zero(x)) {
      out.divisible = true;
      return out;
    }
    // The orbit is eventually periodic; a repeat without hitting zero is a proof.
    if (!seen.insert(x).second) return out;
    x = mat_vec_mod(a, x, pk);
  }
  out.exhausted = true;
  return out;
}

IntVec oracle_diagonalize(IntMat m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  IntVec diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // Smallest nonzero entry in the remaining block becomes the pivot.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (pi == rows || abs(m[i][j]) < abs(m[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) {
        for (std::size_t r = t; r < std::min(rows, cols); ++r) diag.push_back(0);
        return diag;
      }
      std::swap(m[t], m[pi]);
      for (auto& row : m) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
    diag.push_back(abs(m[t][t]));
  }
  return diag;
}

std::vector<mpz_class> oracle_quotient(const IntMat& a, unsigned long p, int k) {
  const std::size_t r = a.size();
  const mpz_class pk = power(p, k);
  // Z^r / ker(A^m mod p^k) is the image of A^m in (Z/p^k)^r; the kernels grow
  // with m, so the first repeat of the invariants is the limit.
  auto invariants = [&](const IntMat& am) {
    std::vector<mpz_class> out;
    for (const auto& d : oracle_diagonalize(am)) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), pk.get_mpz_t());
      const mpz_class order = pk / g;
      if (order > 1) out.push_back(order);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  IntMat am(r, IntVec(r));
  for (std::size_t i = 0; i < r; ++i) am[i][i] = 1;
  std::vector<mpz_class> prev = invariants(am);
  while (true) {
    am = mat_mul_mod(am, a, pk);
    std::vector<mpz_class> next = invariants(am);
    if (next == prev) return next;
    prev = std::move(next);
  }
}

std::vector<mpz_class> oracle_hensel(const IntVec& f, unsigned long p, int n) {
  const mpz_class pn = power(p, n);
  if (pn > 10000000) throw std::invalid_argument("p^N exceeds the exhaustive-search bound");
  std::vector<mpz_class> roots;
  for (mpz_class x = 0; x < pn; ++x) {
    mpz_class acc = 0;
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = mod(acc * x + *it, pn);
    if (acc == 0) roots.push_back(x);
  }
  return roots;
}

mpz_class oracle_column_closure_size(const IntMat& a, unsigned long p, int m) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  const mpz_class pm = power(p, m);
  std::vector<IntVec> gens;
  for (std::size_t j = 0; j < cols; ++j) {
    IntVec c(rows);
    for (std::size_t i = 0; i < rows; ++i) c[i] = a[i][j];
    if (is_zero(c)) continue;
    while (std::all_of(c.begin(), c.end(), [p](const mpz_class& x) { return mpz_divisible_ui_p(x.get_mpz_t(), p); }))
      for (auto& x : c) mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
    for (auto& x : c) x = mod(x, pm);
    gens.push_back(c);
  }
  // Breadth-first closure under adding generators.
  std::set<IntVec> seen{IntVec(rows, 0)};
  std::vector<IntVec> frontier{IntVec(rows, 0)};
  while (!frontier.empty()) {
    std::vector<IntVec> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        IntVec y(rows);
        for (std::size_t i = 0; i < rows; ++i) y[i] = mod(x[i] + g[i], pm);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return mpz_class(static_cast<unsigned long>(seen.size()));
}

}  // namespace padicdual::oracle
