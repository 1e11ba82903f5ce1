#include <doctest.h>

#include <random>

#include "padicdual/errors.hpp"
#include "padicdual/linalg.hpp"
#include "padicdual/oracle.hpp"
#include "support.hpp"

using namespace padicdual;
using testing::uniform;

namespace {

PadicMatrix random_matrix(std::mt19937_64& rng, Prime p, int n, std::size_t rows, std::size_t cols) {
  PadicMatrix m(p, n, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      mpz_class x = uniform(rng, -40, 40);
      x *= prime_power(p, static_cast<int>(uniform(rng, 0, 3)));
      m.set(i, j, x);
    }
  return m;
}

bool is_diagonal(const PadicMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d.residue(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("Smith normal form contract on random matrices") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 500; ++t) {
    const Prime p = testing::random_prime(rng);
    const int n = static_cast<int>(uniform(rng, 2, 12));
    const auto rows = static_cast<std::size_t>(uniform(rng, 1, 4));
    const auto cols = static_cast<std::size_t>(uniform(rng, 1, 4));
    const PadicMatrix a = random_matrix(rng, p, n, rows, cols);
    const NormalForm nf = smith_normal_form(a);
    CHECK(nf.U * a * nf.V == nf.D);
    CHECK(is_gl_zp(nf.U));
    CHECK(is_gl_zp(nf.V));
    CHECK(is_diagonal(nf.D));
    long previous = -1;
    for (std::size_t i = 0; i < nf.exponents.size(); ++i) {
      const Valuation& e = nf.exponents[i];
      const long k = e.lower_bound();
      CHECK(k >= previous);
      previous = k;
      if (e.is_exact()) CHECK(nf.D.residue(i, i) == prime_power(p, static_cast<int>(k)));
      else CHECK(nf.D.residue(i, i) == 0);
    }
  }
}

TEST_CASE("elementary divisors match an integer diagonalization") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 100; ++t) {
    const Prime p = testing::random_prime(rng);
    const IntMatrix a = testing::random_limit_matrix(rng, 3, 9);
    const int n = 20;
    const NormalForm nf = smith_normal_form(PadicMatrix::from_integers(p, n, a));
    std::vector<long> ours, theirs;
    for (const auto& e : nf.exponents) ours.push_back(e.value());
    for (const auto& d : oracle::oracle_diagonalize(testing::to_oracle(a))) theirs.push_back(valuation_of(d, p));
    std::sort(theirs.begin(), theirs.end());
    CHECK(ours == theirs);
  }
}

TEST_CASE("solving unit systems") {
  const Prime p(3);
  const auto a = PadicMatrix::from_rows(p, 6, {{1, 2}, {0, 3}});
  const std::vector<PadicInt> b{PadicInt(p, 5L, 6), PadicInt(p, 6L, 6)};
  const auto sol = solve_unit_system(a, b);
  REQUIRE(sol);
  CHECK(mat_vec(a, {sol->particular[0].residue(), sol->particular[1].residue()}) == b);
  CHECK(sol->margin == 5);

  const std::vector<PadicInt> bad{PadicInt(p, 0L, 6), PadicInt(p, 1L, 6)};
  CHECK_FALSE(solve_unit_system(a, bad));

  SUBCASE("kernel vectors are annihilated") {
    const auto k = PadicMatrix::from_rows(p, 6, {{1, 1, 1}, {0, 9, 0}});
    const auto s = solve_unit_system(k, {PadicInt(p, 1L, 6), PadicInt(p, 0L, 6)});
    REQUIRE(s);
    CHECK(!s->kernel.empty());
    for (const auto& v : s->kernel) {
      std::vector<mpz_class> x;
      for (const auto& c : v) x.push_back(c.residue());
      for (const auto& y : mat_vec(k, x)) CHECK(y.is_zero());
    }
  }
}

TEST_CASE("row span membership") {
  const Prime p(5);
  const auto a = PadicMatrix::from_rows(p, 8, {{1, 0, 2}, {0, 5, 1}});
  const auto w = a.row(0);
  std::vector<PadicInt> combo;
  for (std::size_t j = 0; j < 3; ++j) combo.push_back(a.at(0, j) * PadicInt(p, 3L, 8) + a.at(1, j) * PadicInt(p, 7L, 8));
  const auto m = row_span_member(combo, a);
  CHECK(m.member);
  CHECK(m.coefficients.at(0).residue() == 3);
  CHECK(m.coefficients.at(1).residue() == 7);
  CHECK(row_span_member(w, a).member);
  CHECK_FALSE(row_span_member({PadicInt(p, 0L, 8), PadicInt(p, 1L, 8), PadicInt(p, 0L, 8)}, a).member);
}

TEST_CASE("Howell form is a canonical module invariant") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    const Prime p = testing::random_prime(rng);
    const int n = static_cast<int>(uniform(rng, 2, 8));
    const auto rows = static_cast<std::size_t>(uniform(rng, 1, 3));
    const PadicMatrix a = random_matrix(rng, p, n, rows, 3);
    const PadicMatrix u = testing::random_gl(rng, p, n, rows);
    CHECK(howell_form(a) == howell_form(u * a));
    CHECK(same_row_module(a, u * a));
    CHECK(howell_form(howell_form(a)) == howell_form(a));
  }
  const Prime p(3);
  CHECK_FALSE(same_row_module(PadicMatrix::from_rows(p, 3, {{1, 0}}), PadicMatrix::from_rows(p, 3, {{3, 0}})));
}

TEST_CASE("stable row module of an inductive limit") {
  const auto a = IntMatrix::from_rows({{1, 1}, {1, 4}});
  SUBCASE("one-dimensional dual at 3") {
    const PadicMatrix m = stable_row_module(a, Prime(3), 3);
    CHECK(m.to_strings() == std::vector<std::vector<std::string>>{{"1", "7"}});
  }
  SUBCASE("full dual at a prime not dividing the determinant") {
    CHECK(stable_row_module(a, Prime(5), 6) == PadicMatrix::identity(Prime(5), 6, 2));
  }
  SUBCASE("empty dual when A is p times a unit") {
    CHECK(stable_row_module(IntMatrix::from_rows({{2}}), Prime(2), 5).rows() == 0);
  }
  SUBCASE("singular input is rejected") {
    CHECK_THROWS_AS(stable_row_module(IntMatrix::from_rows({{1, 2}, {2, 4}}), Prime(3), 4), SingularMatrix);
  }
  SUBCASE("the fixed point is reached within N * r products") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 60; ++t) {
      const Prime p = testing::random_prime(rng);
      const IntMatrix b = testing::random_limit_matrix_at(rng, 3, p);
      const auto trace = stable_row_module_trace(b, p, 8);
      CHECK(trace.steps <= 8 * 3 + 1);
      CHECK(column_span_dense(trace.basis.rows() ? trace.basis : PadicMatrix::identity(p, 8, 1)));
    }
  }
}

TEST_CASE("column density agrees with a brute-force closure") {
  std::mt19937_64 rng(41);
  const Prime p(3);
  const int m = 2;
  int dense = 0, sparse = 0;
  for (int t = 0; t < 300; ++t) {
    const auto rows = static_cast<std::size_t>(uniform(rng, 1, 2));
    const auto cols = static_cast<std::size_t>(uniform(rng, 1, 3));
    PadicMatrix a(p, 10, rows, cols);
    oracle::IntMat o(rows, oracle::IntVec(cols));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        const long x = uniform(rng, -4, 4) * (uniform(rng, 0, 1) ? 1 : 3);
        a.set(i, j, x);
        o[i][j] = x;
      }
    const bool full = oracle::oracle_column_closure_size(o, p, m) == prime_power(p, m * static_cast<int>(rows));
    CHECK(column_span_dense(a) == full);
    (full ? dense : sparse)++;
  }
  CHECK(dense > 20);
  CHECK(sparse > 20);
}

TEST_CASE("rank mod p and invertibility") {
  const Prime p(2);
  CHECK(rank_mod_p(PadicMatrix::from_rows(p, 4, {{1, 1}, {1, 3}})) == 1);
  CHECK_FALSE(is_gl_zp(PadicMatrix::from_rows(p, 4, {{1, 1}, {1, 3}})));
  CHECK(is_gl_zp(PadicMatrix::from_rows(p, 4, {{1, 1}, {0, 3}})));
}

TEST_CASE("dual digits do not depend on the working precision") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 1000; ++t) {
    const auto r = static_cast<std::size_t>(uniform(rng, 1, 3));
    const Prime p = testing::random_prime(rng);
    const IntMatrix a = testing::random_limit_matrix_at(rng, r, p, 6);
    CHECK(stable_row_module(a, p, 20).reduce(12) == stable_row_module(a, p, 12));
  }
}
