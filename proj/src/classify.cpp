#include "padicdual/classify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "padicdual/errors.hpp"

namespace padicdual {

namespace {

/// B_p V written as p^(-shift) * M with M known modulo p^N.
struct ScaledProduct {
  PadicMatrix m;
  long shift;
};

ScaledProduct scaled_product(const PadicMatrix& b, const RationalMatrix& v) {
  const Prime p = b.prime();
  mpz_class den = 1;
  for (const auto& x : v.entries) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  const long shift = valuation_of(den, p);
  mpz_class u = den;
  mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), prime_power(p, static_cast<int>(shift)).get_mpz_t());
  mpz_class u_inv;
  mpz_invert(u_inv.get_mpz_t(), u.get_mpz_t(), b.modulus().get_mpz_t());

  PadicMatrix w(p, b.precision(), v.rows, v.cols);
  for (std::size_t i = 0; i < v.rows; ++i)
    for (std::size_t j = 0; j < v.cols; ++j) {
      mpz_class t = v(i, j).get_num() * den;
      mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), v(i, j).get_den_mpz_t());
      w.set(i, j, t * u_inv);
    }
  return {b * w, shift};
}

PadicMatrix scaled(const PadicMatrix& a, long shift) {
  PadicMatrix out = a;
  const mpz_class& ps = prime_power(a.prime(), static_cast<int>(shift));
  for (std::size_t i = 0; i < a.rows(); ++i) out.scale_row(i, ps);
  return out;
}

std::vector<Prime> to_primes(const std::set<unsigned long>& s) {
  std::vector<Prime> out;
  for (unsigned long p : s) out.emplace_back(p);
  return out;
}

std::set<unsigned long> exceptional_union(const FactoredForm& a, const FactoredForm& b) {
  std::set<unsigned long> s;
  for (Prime p : a.exceptional_primes()) s.insert(p);
  for (Prime p : b.exceptional_primes()) s.insert(p);
  return s;
}

void add_verdict(CheckReport& report, PrimeVerdict pv) {
  report.verdict = report.verdict && pv.verdict;
  report.min_margin = report.primes.empty() ? pv.margin : std::min(report.min_margin, pv.margin);
  report.primes.push_back(std::move(pv));
}

}  // namespace

PrimeVerdict hom_check_at(const FactoredForm& a, const FactoredForm& b, const RationalMatrix& v, Prime p) {
  if (v.rows != b.rank() || v.cols != a.rank())
    throw DimensionMismatch("V must be " + std::to_string(b.rank()) + " x " + std::to_string(a.rank()));
  const int n = std::min(a.precision(), b.precision());
  const ScaledProduct bv = scaled_product(b.dual_basis(p).reduce(n), v);
  if (bv.shift > 0 && bv.shift > n - kSafetyMargin)
    throw PrecisionExhausted("denominators of V at p=" + std::to_string(p.value()) +
                             " exceed the precision budget; raise the precision");
  const PadicMatrix target = scaled(a.dual_basis(p).reduce(n), bv.shift);

  PrimeVerdict out{p, true, n, ""};
  for (std::size_t i = 0; i < bv.m.rows(); ++i) {
    const SpanMembership s = row_span_member(bv.m.row(i), target);
    out.margin = std::min(out.margin, s.margin);
    if (!s.member) {
      out.verdict = false;
      out.reason = "row " + std::to_string(i) + " of B_p V is not in the row span of A_p";
      break;
    }
  }
  return out;
}

CheckReport hom_check(const FactoredForm& a, const FactoredForm& b, const RationalMatrix& v) {
  std::set<unsigned long> primes = exceptional_union(a, b);
  for (unsigned long p : denominator_primes(v)) primes.insert(p);
  CheckReport report;
  report.precision = std::min(a.precision(), b.precision());
  report.min_margin = report.precision;
  for (Prime p : to_primes(primes)) add_verdict(report, hom_check_at(a, b, v, p));
  return report;
}

CheckReport iso_check(const FactoredForm& a, const FactoredForm& b, const RationalMatrix& v) {
  if (a.rank() != b.rank()) throw DimensionMismatch("isomorphic groups must have equal rank");
  if (v.rows != a.rank() || v.cols != a.rank()) throw DimensionMismatch("V must be square of the common rank");
  const RationalMatrix v_inv = inverse(v);

  std::set<unsigned long> primes = exceptional_union(a, b);
  for (unsigned long p : denominator_primes(v)) primes.insert(p);
  for (unsigned long p : denominator_primes(v_inv)) primes.insert(p);

  CheckReport report;
  report.precision = std::min(a.precision(), b.precision());
  report.min_margin = report.precision;
  for (Prime p : to_primes(primes)) {
    if (a.n_p(p) != b.n_p(p)) {
      add_verdict(report, {p, false, report.precision,
                           "dual ranks differ: " + std::to_string(a.n_p(p)) + " vs " + std::to_string(b.n_p(p))});
      continue;
    }
    PrimeVerdict fwd = hom_check_at(a, b, v, p);
    if (!fwd.verdict) {
      add_verdict(report, std::move(fwd));
      continue;
    }
    PrimeVerdict back = hom_check_at(b, a, v_inv, p);
    back.margin = std::min(back.margin, fwd.margin);
    if (!back.verdict) back.reason = "inverse direction: " + back.reason;
    add_verdict(report, std::move(back));
  }
  return report;
}

std::optional<bool> gram_iso_check_at(const FactoredForm& a, const FactoredForm& b, const RationalMatrix& v,
                                      Prime p) {
  if (a.n_p(p) != b.n_p(p)) return false;
  const int n = std::min(a.precision(), b.precision());
  const PadicMatrix ap = a.dual_basis(p).reduce(n);
  const PadicMatrix bp = b.dual_basis(p).reduce(n);
  if (bp.rows() == 0) return true;

  auto to_rational = [](const PadicMatrix& m) {
    RationalMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m.residue(i, j);
    return r;
  };
  const RationalMatrix A = to_rational(ap);
  const RationalMatrix B = to_rational(bp);
  const RationalMatrix v_inv = inverse(v);
  const RationalMatrix gram = B * transpose(B);

  // Entries of the residue matrices are off by multiples of p^N; the error in U
  // is of valuation at least N - 2 val(det G) - (denominator valuation of V^-1).
  const mpq_class det = determinant(gram);
  long delta = n;
  if (det != 0) delta = valuation_of(det.get_num(), p);
  long dv = 0;
  for (const auto& x : v_inv.entries)
    if (x != 0) dv = std::max(dv, valuation_of(x.get_den(), p));
  if (det == 0 || n - 2 * delta - dv < kSafetyMargin + 1) return std::nullopt;

  const RationalMatrix u = A * v_inv * transpose(B) * inverse(gram);
  for (const auto& x : u.entries)
    if (mpz_divisible_ui_p(x.get_den_mpz_t(), p)) return false;
  const mpq_class du = determinant(u);
  return !mpz_divisible_ui_p(du.get_num_mpz_t(), p);
}

Rank1Type rank1_type(const FactoredForm& ff) {
  if (ff.rank() != 1) throw InvalidArgument("type is defined for rank-one groups only");
  Rank1Type t;
  for (Prime p : ff.exceptional_primes()) {
    if (ff.is_zero_row(p)) {
      t[p] = std::nullopt;
      continue;
    }
    const PadicMatrix a = ff.dual_basis(p);
    if (a.rows() != 1) throw InvalidArgument("rank-one form with " + std::to_string(a.rows()) + " rows at p=" +
                                             std::to_string(p.value()));
    const PadicInt x = a.at(0, 0);
    if (x.is_zero()) throw PrecisionExhausted("entry at p=" + std::to_string(p.value()) + " vanishes at precision");
    const long k = x.valuation().value();
    if (k != 0) t[p] = k;
  }
  return t;
}

bool rank1_iso(const Rank1Type& t1, const Rank1Type& t2) {
  auto infinite_set = [](const Rank1Type& t) {
    std::set<unsigned long> s;
    for (const auto& [p, k] : t)
      if (!k) s.insert(p);
    return s;
  };
  return infinite_set(t1) == infinite_set(t2);
}

mpq_class rank1_witness(const Rank1Type& t1, const Rank1Type& t2) {
  mpq_class w = 1;
  auto exponent = [](const Rank1Type& t, unsigned long p) -> std::optional<long> {
    auto it = t.find(p);
    return it == t.end() ? std::optional<long>(0) : it->second;
  };
  std::set<unsigned long> primes;
  for (const auto& [p, _] : t1) primes.insert(p);
  for (const auto& [p, _] : t2) primes.insert(p);
  for (unsigned long p : primes) {
    const auto k1 = exponent(t1, p);
    const auto k2 = exponent(t2, p);
    if (!k1 || !k2) continue;
    const long e = *k1 - *k2;
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(std::labs(e)));
    w *= e >= 0 ? mpq_class(pe) : mpq_class(1, pe);
  }
  w.canonicalize();
  return w;
}

std::string to_string(const Rank1Type& t) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [p, k] : t) {
    os << (first ? "" : ", ") << p << ": " << (k ? std::to_string(*k) : "inf");
    first = false;
  }
  os << "}";
  return os.str();
}

std::vector<PadicInt> phi_p(const FactoredForm& ff, Prime p, const GroupElement& v) {
  if (!membership(ff, v)) throw NotAMember(to_string(v) + " is not in the group");
  const LocalImage img = local_image(ff.dual_basis(p), v);
  if (img.shift > 0 && img.shift > ff.precision() - kSafetyMargin)
    throw PrecisionExhausted("denominator of " + to_string(v) + " leaves too few digits; raise the precision");
  std::vector<PadicInt> out;
  for (const auto& y : img.y) out.push_back(y.divide_by_power(static_cast<int>(img.shift)));
  return out;
}

std::vector<mpz_class> quotient_structure(const FactoredForm& ff, Prime p, int k) {
  if (k < 1) throw InvalidArgument("quotient exponent must be at least 1");
  if (k + kSafetyMargin > ff.precision())
    throw PrecisionExhausted("quotient by p^" + std::to_string(k) + " needs precision at least " +
                             std::to_string(k + kSafetyMargin));
  std::vector<mpz_class> out;
  if (ff.is_zero_row(p)) return out;
  const PadicMatrix cols = normalized_columns(ff.dual_basis(p));
  if (cols.precision() < k)
    throw PrecisionExhausted("normalized columns are known to fewer than " + std::to_string(k) + " digits");
  const NormalForm nf = smith_normal_form(cols.reduce(k));
  for (const auto& e : nf.exponents)
    if (e.is_exact() && e.value() < k) out.push_back(prime_power(p, k - static_cast<int>(e.value())));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace padicdual
