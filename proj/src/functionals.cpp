#include "padicdual/functionals.hpp"

#include <algorithm>

#include "padicdual/errors.hpp"

namespace padicdual {

namespace {

/// A_p v as an integral vector, known modulo p^(N - d).
std::vector<PadicInt> integral_image(const FactoredForm& ff, Prime p, const GroupElement& v) {
  if (!membership(ff, v)) throw NotAMember(to_string(v) + " is not in the group");
  const LocalImage img = local_image(ff.dual_basis(p), v);
  if (img.shift > 0 && img.shift > ff.precision() - kSafetyMargin)
    throw PrecisionExhausted("denominator of " + to_string(v) + " leaves too few digits; raise the precision");
  std::vector<PadicInt> out;
  out.reserve(img.y.size());
  for (const auto& y : img.y) out.push_back(y.divide_by_power(static_cast<int>(img.shift)));
  return out;
}

int image_precision(const FactoredForm& ff, Prime p, const GroupElement& v) {
  return ff.precision() - static_cast<int>(valuation_of(common_denominator(v), p));
}

std::vector<PadicInt> reduce_all(const std::vector<PadicInt>& v, int n) {
  std::vector<PadicInt> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.reduce(n));
  return out;
}

PadicInt dot_or_zero(const std::vector<PadicInt>& a, const std::vector<PadicInt>& b, Prime p, int n) {
  if (a.empty()) return PadicInt::zero(p, n);
  return dot(reduce_all(a, n), reduce_all(b, n));
}

/// The linear system c . (A_p g_i) = values_i, at the precision every row and
/// value is known to.
struct ExtensionSystem {
  PadicMatrix matrix;
  std::vector<PadicInt> rhs;
};

ExtensionSystem build_system(const FactoredForm& ff, Prime p, const std::vector<GroupElement>& gens,
                             const std::vector<PadicInt>& values) {
  if (gens.size() != values.size()) throw DimensionMismatch("one value is needed per generator");
  int n = ff.precision();
  std::vector<std::vector<PadicInt>> rows;
  for (const auto& g : gens) {
    rows.push_back(integral_image(ff, p, g));
    n = std::min(n, image_precision(ff, p, g));
  }
  for (const auto& x : values) {
    if (x.prime() != p) throw PrimeMismatch("prescribed value over a different prime");
    n = std::min(n, x.precision());
  }
  const std::size_t np = ff.n_p(p);
  PadicMatrix m(p, n, gens.size(), np);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < np; ++j) m.set(i, j, rows[i][j].residue());
  return {std::move(m), reduce_all(values, n)};
}

SolutionSet solve_or_throw(const ExtensionSystem& sys) {
  if (auto sol = solve_unit_system(sys.matrix, sys.rhs)) return std::move(*sol);
  for (std::size_t j = 0; j < sys.rhs.size(); ++j) {
    const PadicMatrix prefix = sys.matrix.select_rows(0, j + 1);
    const std::vector<PadicInt> rhs(sys.rhs.begin(), sys.rhs.begin() + static_cast<std::ptrdiff_t>(j + 1));
    if (!solve_unit_system(prefix, rhs))
      throw NotContractive(j, "value " + rhs.back().to_string() + " at generator " + std::to_string(j) +
                                  " admits no contractive extension");
  }
  throw NotContractive(sys.rhs.size(), "prescribed values admit no contractive extension");
}

}  // namespace

Functional::Functional(std::shared_ptr<const FactoredForm> form, Prime p, std::vector<PadicInt> coefficients)
    : form_(std::move(form)), p_(p), c_(std::move(coefficients)) {
  if (!form_) throw InvalidArgument("functional without a form");
  if (c_.size() != form_->n_p(p))
    throw DimensionMismatch("functional needs " + std::to_string(form_->n_p(p)) + " coefficients");
  precision_ = form_->precision();
  for (const auto& x : c_) {
    if (x.prime() != p) throw PrimeMismatch("coefficient over a different prime");
    precision_ = std::min(precision_, x.precision());
  }
  c_ = reduce_all(c_, precision_);
}

bool operator==(const Functional& a, const Functional& b) {
  if (a.p_ != b.p_ || !(*a.form_ == *b.form_) || a.c_.size() != b.c_.size()) return false;
  const int n = std::min(a.precision_, b.precision_);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i].reduce(n).residue() != b.c_[i].reduce(n).residue()) return false;
  return true;
}

PadicInt evaluate(const Functional& f, const GroupElement& v) {
  const auto image = integral_image(f.form(), f.prime(), v);
  const int n = std::min(f.precision(), image_precision(f.form(), f.prime(), v));
  return dot_or_zero(f.coefficients(), image, f.prime(), n);
}

Functional extend_from_subgroup(std::shared_ptr<const FactoredForm> form, Prime p,
                                const std::vector<GroupElement>& gens, const std::vector<PadicInt>& values) {
  const SolutionSet sol = solve_or_throw(build_system(*form, p, gens, values));
  return Functional(std::move(form), p, sol.particular);
}

Disk admissible_values(std::shared_ptr<const FactoredForm> form, Prime p, const std::vector<GroupElement>& gens,
                       const std::vector<PadicInt>& values, const GroupElement& g) {
  const ExtensionSystem sys = build_system(*form, p, gens, values);
  const SolutionSet sol = solve_or_throw(sys);
  const auto image = integral_image(*form, p, g);
  const int n = std::min(sys.matrix.precision(), image_precision(*form, p, g));

  const PadicInt center = dot_or_zero(sol.particular, image, p, n);
  long e = n;
  for (const auto& kappa : sol.kernel) {
    const PadicInt t = dot_or_zero(kappa, image, p, n);
    if (!t.is_zero()) e = std::min(e, t.valuation().value());
  }
  return Disk::ball(PadicScalarQ::from_int(center), e);
}

Functional separating_functional(std::shared_ptr<const FactoredForm> form, Prime p,
                                 const std::vector<GroupElement>& h_gens, const GroupElement& g, long m) {
  if (m < 0) throw InvalidArgument("separation exponent must be nonnegative");
  const FactoredForm& ff = *form;
  int n = image_precision(ff, p, g);
  for (const auto& h : h_gens) n = std::min(n, image_precision(ff, p, h));
  if (m > n - kSafetyMargin)
    throw PrecisionExhausted("separation at p^" + std::to_string(m) + " needs more digits; raise the precision");

  const std::size_t np = ff.n_p(p);
  PadicMatrix h_image(p, n, np, h_gens.size());
  for (std::size_t j = 0; j < h_gens.size(); ++j) {
    const auto col = integral_image(ff, p, h_gens[j]);
    for (std::size_t i = 0; i < np; ++i) h_image.set(i, j, col[i].residue());
  }
  const auto g_image = integral_image(ff, p, g);

  // {c : c . H = 0 mod p^m} has basis p^max(0, m - e_i) * (row i of U).
  const NormalForm nf = smith_normal_form(h_image);
  long best = n;
  std::optional<std::vector<PadicInt>> best_row;
  for (std::size_t i = 0; i < np; ++i) {
    long scale = 0;
    if (i < nf.exponents.size() && nf.exponents[i].is_exact())
      scale = std::max(0L, m - nf.exponents[i].value());
    std::vector<PadicInt> c;
    for (const auto& x : nf.U.row(i)) c.push_back(x * PadicInt(p, prime_power(p, static_cast<int>(scale)), n));
    const PadicInt t = dot_or_zero(c, g_image, p, n);
    const long v = t.is_zero() ? n : t.valuation().value();
    if (v < best) {
      best = v;
      best_row = std::move(c);
    }
  }
  if (!best_row || best >= m)
    throw NotFound("no functional separates " + to_string(g) + " from the subgroup at p^" + std::to_string(m));
  return Functional(std::move(form), p, std::move(*best_row));
}

}  // namespace padicdual
