#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "padicdual/errors.hpp"
#include "padicdual/io.hpp"
#include "support.hpp"

using namespace padicdual;
using testing::uniform;

namespace {

FactoredForm load_fixture(const std::string& name, int precision = 0) {
  std::ifstream in(testing::fixture(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return load_form(ss.str(), precision).form;
}

GroupElement vec(const char* text) { return parse_group_element(text); }

}  // namespace

TEST_CASE("two-three-five membership") {
  const FactoredForm ttf = load_fixture("ttf.json");
  CHECK(membership(ttf, vec("1/2,0")));
  CHECK(membership(ttf, vec("0,1/3")));
  CHECK(membership(ttf, vec("1/5,1/5")));
  CHECK_FALSE(membership(ttf, vec("0,1/2")));
  CHECK_FALSE(membership(ttf, vec("1/5,0")));
  CHECK_FALSE(membership(ttf, vec("1/7,0")));
  CHECK(membership(ttf, vec("-3,4")));
  CHECK_THROWS_AS(membership(ttf, vec("1,2,3")), DimensionMismatch);
}

TEST_CASE("favourite example") {
  const auto a = IntMatrix::from_rows({{1, 1}, {1, 4}});
  const FactoredForm ff = factored_form_of_inductive_limit(a, 32);
  const Prime three(3);
  REQUIRE(ff.exceptional_primes() == std::vector<Prime>{three});
  CHECK(ff.n_p(three) == 1);
  CHECK(ff.dual_basis(three).reduce(3).to_strings() == std::vector<std::vector<std::string>>{{"1", "7"}});

  SUBCASE("metric along the divisibility sequence") {
    const std::vector<std::pair<const char*, long>> seq{
        {"-1,1", 1}, {"-7,1", 2}, {"-7,1", 3}, {"-34,1", 4}, {"-115,1", 5}, {"128,1", 6}};
    for (const auto& [v, n] : seq) {
      const MetricValue m = p_metric(ff, three, vec(v));
      REQUIRE(m.valuation.is_exact());
      CHECK(m.valuation.value() >= n);
      CHECK(divisible(ff, three, n, vec(v)));
    }
    CHECK(p_metric(ff, three, vec("-1,1")).valuation == Valuation::exact(1));
  }
  SUBCASE("elements with denominators") {
    const GroupElement v = vec("-1/3,1/3");
    CHECK(membership(ff, v));
    CHECK(p_metric(ff, three, v).valuation == Valuation::exact(0));
    CHECK_FALSE(membership(ff, vec("1/3,0")));
    CHECK_THROWS_AS(p_metric(ff, three, vec("1/3,0")), NotAMember);
  }
  SUBCASE("simplicity") {
    CHECK(is_p_simple(ff, three) == Simplicity::simple_not_divisible);
    CHECK(is_p_simple(ff, Prime(2)) == Simplicity::not_simple);
  }
  SUBCASE("validation") { CHECK(validate_factored_form(ff).ok()); }
}

TEST_CASE("precision guards") {
  const FactoredForm ff = factored_form_of_inductive_limit(IntMatrix::from_rows({{1, 1}, {1, 4}}), 10);
  const Prime three(3);
  CHECK_THROWS_AS(divisible(ff, three, 7, vec("1,0")), PrecisionExhausted);
  CHECK_NOTHROW(divisible(ff, three, 6, vec("1,0")));
  CHECK_THROWS_AS(membership(ff, vec("-1/2187,1/2187")), PrecisionExhausted);
  const MetricValue zero = p_metric(ff, three, vec("0,0"));
  CHECK(zero.valuation == Valuation::at_least(10));
  CHECK(in_gp_at_precision(ff, three, vec("0,0")));
  CHECK_FALSE(in_gp_at_precision(ff, three, vec("1,0")));
}

TEST_CASE("zero-row primes are divisible") {
  const FactoredForm zhalf = load_fixture("zhalf.json");
  const Prime two(2);
  CHECK(membership(zhalf, vec("1/1024")));
  CHECK(p_metric(zhalf, two, vec("5")).valuation.is_infinite());
  CHECK(divisible(zhalf, two, 20, vec("3")));
  CHECK(is_p_simple(zhalf, two) == Simplicity::divisible);
  CHECK_FALSE(membership(zhalf, vec("1/3")));
}

TEST_CASE("inductive limits of p times a unit") {
  const FactoredForm ff = factored_form_of_inductive_limit(IntMatrix::from_rows({{2, 0}, {0, 1}}), 16);
  const Prime two(2);
  CHECK(ff.n_p(two) == 1);
  CHECK(membership(ff, vec("1/64,0")));
  CHECK_FALSE(membership(ff, vec("0,1/2")));
  const FactoredForm scalar = factored_form_of_inductive_limit(IntMatrix::from_rows({{6}}), 16);
  CHECK(scalar.is_zero_row(two));
  CHECK(scalar.is_zero_row(Prime(3)));
}

TEST_CASE("validation reports violations") {
  FactoredForm ff(2, 8);
  ff.set_matrix(Prime(3), PadicMatrix::from_rows(Prime(3), 8, {{1, 1}, {0, 3}}));
  const auto report = validate_factored_form(ff);
  CHECK_FALSE(report.ok());
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].p == 3);
  FactoredForm wide(1, 8);
  wide.set_matrix(Prime(5), PadicMatrix::from_rows(Prime(5), 8, {{1}, {1}}));
  CHECK_FALSE(validate_factored_form(wide).ok());
}

TEST_CASE("properties of inductive-limit forms") {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 80; ++t) {
    const auto r = static_cast<std::size_t>(uniform(rng, 1, 3));
    const Prime p = testing::random_prime(rng);
    const IntMatrix a = testing::random_limit_matrix_at(rng, r, p);
    const FactoredForm ff = factored_form_of_inductive_limit(a, 24);
    CAPTURE(t);

    SUBCASE("duals are dense") { CHECK(validate_factored_form(ff).ok()); }

    SUBCASE("precision coherence between N and N+8") {
      const FactoredForm hi = factored_form_of_inductive_limit(a, 32);
      CHECK(hi.reduced(24) == ff);
      for (int i = 0; i < 5; ++i) {
        const GroupElement v = testing::random_limit_element(rng, a);
        const MetricValue lo_m = p_metric(ff, p, v), hi_m = p_metric(hi, p, v);
        if (lo_m.valuation.is_exact()) CHECK(hi_m.valuation == lo_m.valuation);
        else CHECK(hi_m.valuation.lower_bound() >= lo_m.valuation.lower_bound());
      }
    }

    SUBCASE("limit elements are members, A scales the metric down") {
      for (int i = 0; i < 5; ++i) {
        const GroupElement v = testing::random_limit_element(rng, a);
        CHECK(membership(ff, v));
        const GroupElement av = testing::to_rational(a) * v;
        const MetricValue m = p_metric(ff, p, v), ma = p_metric(ff, p, av);
        CHECK(ma.valuation.lower_bound() >= m.valuation.lower_bound());
      }
    }

    SUBCASE("the metric is ultrametric and scales by p") {
      for (int i = 0; i < 5; ++i) {
        const GroupElement v = testing::random_limit_element(rng, a), w = testing::random_limit_element(rng, a);
        GroupElement s(v.size()), pv(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
          s[j] = v[j] + w[j];
          pv[j] = v[j] * static_cast<long>(p.value());
        }
        const long mv = p_metric(ff, p, v).valuation.lower_bound(), mw = p_metric(ff, p, w).valuation.lower_bound();
        const MetricValue ms = p_metric(ff, p, s);
        if (ms.valuation.is_exact()) CHECK(ms.valuation.value() >= std::min(mv, mw));
        const MetricValue m = p_metric(ff, p, v), mp = p_metric(ff, p, pv);
        if (m.valuation.is_exact()) CHECK(mp.valuation == Valuation::exact(m.valuation.value() + 1));
      }
    }
  }
}
