#include "padicdual/groups.hpp"

#include <algorithm>
#include <set>

#include "padicdual/errors.hpp"

namespace padicdual {

FactoredForm::FactoredForm(std::size_t rank, int precision) : rank_(rank), precision_(precision) {
  if (precision < 1) throw InvalidArgument("precision must be positive");
}

void FactoredForm::set_matrix(Prime p, const PadicMatrix& a) {
  if (a.prime() != p) throw PrimeMismatch("matrix for p=" + std::to_string(p.value()) + " is over another prime");
  if (a.cols() != rank_)
    throw DimensionMismatch("matrix at p=" + std::to_string(p.value()) + " has " + std::to_string(a.cols()) +
                            " columns, rank is " + std::to_string(rank_));
  if (a.precision() < precision_)
    throw PrecisionExhausted("matrix at p=" + std::to_string(p.value()) + " is known to fewer digits than the form");
  exceptional_.insert_or_assign(p, a.reduce(precision_));
}

void FactoredForm::set_zero_row(Prime p) { exceptional_.insert_or_assign(p, std::nullopt); }

bool FactoredForm::is_zero_row(Prime p) const {
  auto it = exceptional_.find(p);
  return it != exceptional_.end() && !it->second;
}

std::vector<Prime> FactoredForm::exceptional_primes() const {
  std::vector<Prime> out;
  for (const auto& [p, _] : exceptional_) out.push_back(p);
  return out;
}

PadicMatrix FactoredForm::dual_basis(Prime p) const {
  auto it = exceptional_.find(p);
  if (it == exceptional_.end()) return PadicMatrix::identity(p, precision_, rank_);
  if (!it->second) return PadicMatrix(p, precision_, 0, rank_);
  return *it->second;
}

std::size_t FactoredForm::n_p(Prime p) const {
  auto it = exceptional_.find(p);
  if (it == exceptional_.end()) return rank_;
  return it->second ? it->second->rows() : 0;
}

FactoredForm FactoredForm::reduced(int precision) const {
  FactoredForm out(rank_, precision);
  for (const auto& [p, a] : exceptional_) {
    if (a)
      out.set_matrix(p, *a);
    else
      out.set_zero_row(p);
  }
  return out;
}

ValidationReport validate_factored_form(const FactoredForm& ff) {
  ValidationReport report;
  for (Prime p : ff.exceptional_primes()) {
    if (ff.is_zero_row(p)) continue;
    const PadicMatrix a = ff.dual_basis(p);
    if (a.rows() > ff.rank())
      report.violations.push_back({p, "more rows (" + std::to_string(a.rows()) + ") than the rank"});
    if (a.rows() == 0)
      report.violations.push_back({p, "empty matrix; use zero_row for a p-divisible group"});
    else if (!column_span_dense(a))
      report.violations.push_back({p, "column span is not dense"});
  }
  return report;
}

LocalImage local_image(const PadicMatrix& a, const GroupElement& v) {
  if (v.size() != a.cols()) throw DimensionMismatch("vector length does not match the rank");
  const Prime p = a.prime();
  const mpz_class den = common_denominator(v);
  LocalImage out;
  out.shift = valuation_of(den, p);
  mpz_class u = den;
  mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), prime_power(p, static_cast<int>(out.shift)).get_mpz_t());

  const mpz_class& mod = a.modulus();
  mpz_class u_inv;
  if (a.precision() > 0) mpz_invert(u_inv.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
  std::vector<mpz_class> w(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    mpz_class t = v[j].get_num() * den;
    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), v[j].get_den_mpz_t());
    w[j] = t * u_inv;
  }
  out.y = mat_vec(a, w);
  return out;
}

namespace {

void require_denominator_budget(const LocalImage& img, int precision, Prime p) {
  if (img.shift > 0 && img.shift > precision - kSafetyMargin)
    throw PrecisionExhausted("denominator " + std::to_string(p.value()) + "^" + std::to_string(img.shift) +
                             " leaves too few digits at precision " + std::to_string(precision) +
                             "; raise the precision");
}

bool member_at(const FactoredForm& ff, Prime p, const GroupElement& v) {
  if (ff.is_zero_row(p)) return true;
  if (!ff.is_exceptional(p)) {
    return std::all_of(v.begin(), v.end(),
                       [p](const mpq_class& x) { return !mpz_divisible_ui_p(x.get_den_mpz_t(), p); });
  }
  const LocalImage img = local_image(ff.dual_basis(p), v);
  if (img.shift == 0) return true;
  require_denominator_budget(img, ff.precision(), p);
  return std::all_of(img.y.begin(), img.y.end(), [&](const PadicInt& y) {
    return y.is_zero() || y.valuation().value() >= img.shift;
  });
}

}  // namespace

std::vector<Prime> relevant_primes(const FactoredForm& ff, const GroupElement& v) {
  std::set<unsigned long> primes;
  for (Prime p : ff.exceptional_primes()) primes.insert(p);
  for (unsigned long p : prime_divisors(common_denominator(v))) primes.insert(p);
  std::vector<Prime> out;
  for (unsigned long p : primes) out.emplace_back(p);
  return out;
}

bool membership(const FactoredForm& ff, const GroupElement& v) {
  if (v.size() != ff.rank()) throw DimensionMismatch("vector length does not match the rank");
  for (Prime p : relevant_primes(ff, v))
    if (!member_at(ff, p, v)) return false;
  return true;
}

MetricValue p_metric(const FactoredForm& ff, Prime p, const GroupElement& v) {
  if (!membership(ff, v)) throw NotAMember(to_string(v) + " is not in the group");
  const int N = ff.precision();
  if (ff.is_zero_row(p)) return {Valuation::infinite(), N};
  const LocalImage img = local_image(ff.dual_basis(p), v);
  require_denominator_budget(img, N, p);
  const long known = N - img.shift;
  long k = N;
  for (const auto& y : img.y)
    if (!y.is_zero()) k = std::min(k, y.valuation().value());
  if (k >= N) return {Valuation::at_least(known), 0};
  return {Valuation::exact(k - img.shift), known - (k - img.shift)};
}

bool divisible(const FactoredForm& ff, Prime p, long k, const GroupElement& v) {
  const MetricValue m = p_metric(ff, p, v);
  if (k <= 0 || m.valuation.is_infinite()) return true;
  const long shift = valuation_of(common_denominator(v), p);
  if (k > ff.precision() - shift - kSafetyMargin)
    throw PrecisionExhausted("divisibility by " + std::to_string(p.value()) + "^" + std::to_string(k) +
                             " needs more than " + std::to_string(ff.precision()) + " digits; raise the precision");
  return m.valuation.value() >= k;
}

PadicMatrix dual_from_inductive_limit(const IntMatrix& a, Prime p, int precision) {
  return stable_row_module(a, p, precision);
}

FactoredForm factored_form_of_inductive_limit(const IntMatrix& a, int precision) {
  if (a.rows != a.cols) throw DimensionMismatch("limit matrix must be square");
  const mpz_class det = determinant(a);
  if (det == 0) throw SingularMatrix("limit matrix is singular");
  FactoredForm ff(a.rows, precision);
  for (unsigned long q : prime_divisors(det)) {
    const Prime p(q);
    PadicMatrix dual = dual_from_inductive_limit(a, p, precision);
    if (dual.rows() == 0)
      ff.set_zero_row(p);
    else if (dual != PadicMatrix::identity(p, precision, a.rows))
      ff.set_matrix(p, dual);
  }
  return ff;
}

const char* simplicity_name(Simplicity s) noexcept {
  switch (s) {
    case Simplicity::simple_not_divisible: return "simple_not_divisible";
    case Simplicity::divisible: return "divisible";
    case Simplicity::not_simple: return "not_simple";
  }
  return "?";
}

Simplicity is_p_simple(const FactoredForm& ff, Prime p) {
  if (ff.is_zero_row(p)) return Simplicity::divisible;
  return ff.n_p(p) == 1 ? Simplicity::simple_not_divisible : Simplicity::not_simple;
}

bool in_gp_at_precision(const FactoredForm& ff, Prime p, const GroupElement& v) {
  return !p_metric(ff, p, v).valuation.is_exact();
}

}  // namespace padicdual
