#include <doctest.h>

#include <algorithm>
#include <random>

#include "padicdual/errors.hpp"
#include "padicdual/oracle.hpp"
#include "padicdual/poly.hpp"
#include "support.hpp"

using namespace padicdual;

TEST_CASE("primes are validated") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK_THROWS_AS(Prime(4), InvalidArgument);
}

TEST_CASE("valuations of p-adic integers") {
  const Prime p(3);
  CHECK(PadicInt(p, 18L, 5).valuation() == Valuation::exact(2));
  CHECK(PadicInt(p, 243L, 5).valuation() == Valuation::at_least(5));
  CHECK(PadicInt(p, 0L, 5).valuation().lower_bound() == 5);
  CHECK(Valuation::exact(-1).abs_string(3) == "3^1");
  CHECK(Valuation::exact(1).abs_string(3) == "3^-1");
  CHECK(Valuation::infinite().abs_string(3) == "0");
}

TEST_CASE("ring arithmetic modulo p^N") {
  const Prime p(5);
  const PadicInt a(p, 7L, 4), b(p, -3L, 4);
  CHECK((a + b).residue() == 4);
  CHECK((a * b).residue() == mpz_class(625 - 21));
  CHECK((a - a).is_zero());
  CHECK((a * a.inverse()).residue() == 1);
  CHECK_THROWS_AS(PadicInt(p, 10L, 4).inverse(), NonUnit);
  CHECK(padic_arith(a, b, ArithOp::sub) == a - b);
}

TEST_CASE("inverse roundtrip on random units") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const Prime p = testing::random_prime(rng);
    const int n = static_cast<int>(testing::uniform(rng, 1, 40));
    mpz_class x = testing::uniform(rng, 1, 1L << 50);
    if (mpz_divisible_ui_p(x.get_mpz_t(), p)) x += 1;
    const PadicInt a(p, x, n);
    CHECK((a * a.inverse()).residue() == 1);
    CHECK(a.inverse().inverse() == a);
  }
}

TEST_CASE("division by powers keeps the low digits") {
  const Prime p(3);
  const PadicInt a(p, 54L, 6);
  const PadicInt q = a.divide_by_power(3);
  CHECK(q.precision() == 3);
  CHECK(q.residue() == 2);
  CHECK_THROWS(a.divide_by_power(4));
}

TEST_CASE("p-adic literals") {
  const Prime p(3);
  const PadicInt a = parse_padic_literal("24+O(3^3)", p, 10);
  CHECK(a.precision() == 3);
  CHECK(a.residue() == 24);
  CHECK(parse_padic_literal("-1", p, 2).residue() == 8);
  CHECK(a.to_string() == "24+O(3^3)");
  CHECK_THROWS_AS(parse_padic_literal("1+O(5^2)", p, 4), Error);
  CHECK_THROWS_AS(parse_padic_literal("x", p, 4), ParseError);
}

TEST_CASE("sup norm is ultrametric") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Prime p = testing::random_prime(rng);
    std::vector<PadicInt> a, b, s;
    for (int j = 0; j < 3; ++j) {
      a.emplace_back(p, mpz_class(testing::uniform(rng, 0, 1000)) * testing::uniform(rng, 0, 2) * 9, 12);
      b.emplace_back(p, mpz_class(testing::uniform(rng, 0, 1000)) * testing::uniform(rng, 0, 2) * 2, 12);
      s.push_back(a.back() + b.back());
    }
    const Valuation vs = vec_norm(s), va = vec_norm(a), vb = vec_norm(b);
    CHECK(vs.lower_bound() >= std::min(va.lower_bound(), vb.lower_bound()));
  }
  CHECK_THROWS_AS(vec_norm(std::vector<PadicInt>{}), InvalidArgument);
}

TEST_CASE("rational scalars track relative precision") {
  const Prime p(3);
  const PadicScalarQ x = PadicScalarQ::from_rational(p, mpq_class(5, 9), 6);
  CHECK(x.valuation() == Valuation::exact(-2));
  CHECK(x.absolute_precision() == 6);
  const PadicScalarQ y = x * PadicScalarQ::from_integer(p, 9, 6);
  CHECK(y.valuation() == Valuation::exact(0));
  CHECK(y.to_padic_int(4).residue() == 5);
  CHECK(PadicScalarQ::exact_zero(p).is_exact_zero());
}

TEST_CASE("disks intersect ultrametrically") {
  const Prime p(5);
  const Disk big = Disk::ball(PadicScalarQ::from_integer(p, 0, 10), 1);
  const Disk small = Disk::ball(PadicScalarQ::from_integer(p, 25, 10), 2);
  const Disk apart = Disk::ball(PadicScalarQ::from_integer(p, 1, 10), 2);
  CHECK(disk_intersect(big, small).radius_exponent() == 2);
  CHECK(disk_intersect(big, apart).kind() == Disk::Kind::empty);
  CHECK(big.contains(PadicScalarQ::from_integer(p, 10, 10)));
  CHECK_FALSE(small.contains(PadicScalarQ::from_integer(p, 10, 10)));
}

TEST_CASE("Hensel lifting") {
  const Prime p(3);
  const auto chi = PadicPoly::from_integers(p, {3, 1, 1, 1}, 32);

  SUBCASE("the root of positive valuation of x^3+x^2+x+3") {
    const PadicInt r = hensel_lift(chi, 0, 3);
    CHECK(r.residue() == 15);
    CHECK(chi.evaluate(hensel_lift(chi, 0, 20)).is_zero());
  }
  SUBCASE("digits are stable as the precision grows") {
    const PadicInt r20 = hensel_lift(chi, 0, 20);
    for (int n = 1; n < 20; ++n) CHECK(hensel_lift(chi, 0, n) == r20.reduce(n));
  }
  SUBCASE("agrees with brute force") {
    for (int n = 1; n <= 8; ++n) {
      // x = 1 is a double root mod 3, so only the class of 0 lifts uniquely.
      std::vector<mpz_class> near_zero;
      for (const auto& r : oracle::oracle_hensel({3, 1, 1, 1}, 3, n))
        if (mpz_divisible_ui_p(r.get_mpz_t(), 3)) near_zero.push_back(r);
      REQUIRE(near_zero.size() == 1);
      CHECK(near_zero.front() == hensel_lift(chi, 0, n).residue());
    }
    const auto f = PadicPoly::from_integers(Prime(7), {-2, 0, 1}, 32);
    for (int n = 1; n <= 6; ++n) {
      const auto roots = oracle::oracle_hensel({-2, 0, 1}, 7, n);
      REQUIRE(roots.size() == 2);
      const mpz_class r3 = hensel_lift(f, 3, n).residue(), r4 = hensel_lift(f, 4, n).residue();
      CHECK(std::count(roots.begin(), roots.end(), r3) == 1);
      CHECK(std::count(roots.begin(), roots.end(), r4) == 1);
      CHECK(r3 != r4);
    }
  }
  SUBCASE("non-simple roots are rejected") {
    const auto sq = PadicPoly::from_integers(p, {0, 0, 1}, 10);
    CHECK_THROWS_AS(hensel_lift(sq, 0, 4), NotASimpleRoot);
    CHECK_THROWS_AS(hensel_lift(chi, 1, 4), NotASimpleRoot);
  }
}

TEST_CASE("Newton polygon") {
  const auto chi = PadicPoly::from_integers(Prime(3), {3, 1, 1, 1}, 32);
  const auto np = newton_polygon(chi);
  REQUIRE(np.size() == 2);
  CHECK(np[0] == NewtonSegment{mpq_class(-1), 1});
  CHECK(np[1] == NewtonSegment{mpq_class(0), 2});

  SUBCASE("weighted slopes add up to the valuation of the constant term") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
      const Prime p = testing::random_prime(rng);
      std::vector<mpz_class> c;
      const long deg = testing::uniform(rng, 1, 6);
      for (long j = 0; j < deg; ++j) {
        mpz_class x = testing::uniform(rng, 1, 50);
        x *= prime_power(p, static_cast<int>(testing::uniform(rng, 0, 4)));
        c.push_back(x);
      }
      c.push_back(1);
      const auto poly = PadicPoly::from_integers(p, c, 32);
      mpq_class total = 0;
      long roots = 0;
      for (const auto& s : newton_polygon(poly)) {
        total -= s.slope * s.length;
        roots += s.length;
      }
      CHECK(roots == deg);
      CHECK(total == valuation_of(c.front(), p));
    }
  }
}
