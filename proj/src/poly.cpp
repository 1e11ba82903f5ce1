#include "padicdual/poly.hpp"

#include "padicdual/errors.hpp"

namespace padicdual {

PadicPoly::PadicPoly(std::vector<PadicScalarQ> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw InvalidArgument("polynomial needs at least one coefficient");
  for (const auto& c : coefficients_)
    if (c.prime() != coefficients_.front().prime()) throw PrimeMismatch("mixed primes in polynomial");
  if (coefficients_.back().is_exact_zero()) throw InvalidArgument("leading coefficient is zero");
}

PadicPoly PadicPoly::from_integers(Prime p, const std::vector<mpz_class>& coefficients, int precision) {
  std::vector<PadicScalarQ> out;
  out.reserve(coefficients.size());
  for (const auto& c : coefficients)
    out.push_back(c == 0 ? PadicScalarQ::exact_zero(p) : PadicScalarQ::from_integer(p, c, precision));
  return PadicPoly(std::move(out));
}

PadicInt PadicPoly::evaluate(const PadicInt& x) const {
  PadicInt acc = PadicInt::zero(prime(), x.precision());
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it)
    acc = acc * x + it->to_padic_int(x.precision());
  return acc;
}

PadicPoly PadicPoly::derivative() const {
  const Prime p = prime();
  if (coefficients_.size() == 1) return PadicPoly({PadicScalarQ::from_integer(p, 0, 0)});
  std::vector<PadicScalarQ> out;
  for (std::size_t i = 1; i < coefficients_.size(); ++i) {
    const auto& c = coefficients_[i];
    if (c.is_exact_zero()) {
      out.push_back(c);
      continue;
    }
    const int abs = static_cast<int>(std::min<long>(c.absolute_precision(), 1L << 20));
    out.push_back(c * PadicScalarQ::from_integer(p, static_cast<long>(i), abs + 64));
  }
  if (out.back().is_exact_zero()) out.back() = PadicScalarQ::from_integer(p, 0, 0);
  return PadicPoly(std::move(out));
}

PadicInt hensel_lift(const PadicPoly& f, const mpz_class& a0, int precision) {
  const Prime p = f.prime();
  if (precision < 1) throw InvalidArgument("precision must be positive");
  const PadicPoly df = f.derivative();
  const PadicInt seed(p, a0, 1);
  if (!f.evaluate(seed).is_zero())
    throw NotASimpleRoot(a0.get_str() + " is not a root mod " + std::to_string(p.value()));
  if (!df.evaluate(seed).is_unit())
    throw NotASimpleRoot(a0.get_str() + " is a multiple root mod " + std::to_string(p.value()));

  PadicInt a(p, a0, precision);
  // Quadratic convergence: ceil(log2 N) + 1 steps suffice; the bound is a guard.
  for (int step = 0; step < 64; ++step) {
    const PadicInt fa = f.evaluate(a);
    if (fa.is_zero()) return a;
    a = a - fa * df.evaluate(a).inverse();
  }
  throw PrecisionExhausted("Newton iteration did not converge");
}

std::vector<NewtonSegment> newton_polygon(const PadicPoly& f) {
  const auto& coef = f.coefficients();
  if (coef.front().is_exact_zero())
    throw InvalidArgument("constant term is zero; x = 0 is a root of infinite valuation");
  struct Pt {
    long x, y;
  };
  std::vector<Pt> pts;
  std::vector<Pt> bounds;  // approximate zeros: only a lower bound on the height
  for (std::size_t i = 0; i < coef.size(); ++i) {
    const Valuation v = coef[i].valuation();
    if (v.is_infinite()) continue;
    if (v.is_exact())
      pts.push_back({static_cast<long>(i), v.value()});
    else
      bounds.push_back({static_cast<long>(i), v.value()});
  }
  if (pts.empty() || pts.front().x != 0 || pts.back().x != static_cast<long>(f.degree()))
    throw PrecisionExhausted("end coefficients vanish at working precision");

  std::vector<Pt> hull;
  for (const Pt& q : pts) {
    while (hull.size() >= 2) {
      const Pt& a = hull[hull.size() - 2];
      const Pt& b = hull.back();
      // Drop b when it lies on or above the segment a -> q.
      if ((b.y - a.y) * (q.x - a.x) >= (q.y - a.y) * (b.x - a.x))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(q);
  }

  std::vector<NewtonSegment> out;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const long dx = hull[i].x - hull[i - 1].x;
    mpq_class slope(hull[i].y - hull[i - 1].y, dx);
    slope.canonicalize();
    if (!out.empty() && out.back().slope == slope)
      out.back().length += dx;
    else
      out.push_back({slope, dx});
  }

  for (const Pt& b : bounds) {
    std::size_t k = 1;
    while (k < hull.size() && hull[k].x < b.x) ++k;
    const Pt& l = hull[k - 1];
    const Pt& r = hull[k];
    // Hull height at b.x, compared without division.
    if (b.y * (r.x - l.x) < l.y * (r.x - l.x) + (r.y - l.y) * (b.x - l.x))
      throw PrecisionExhausted("a coefficient vanishing at working precision could change the polygon");
  }
  return out;
}

}  // namespace padicdual
