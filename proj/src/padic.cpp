#include "padicdual/padic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "padicdual/errors.hpp"

namespace padicdual {

bool is_prime(unsigned long n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (unsigned long d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

Prime::Prime(unsigned long value) : value_(value) {
  if (!is_prime(value)) throw InvalidArgument(std::to_string(value) + " is not a prime");
}

const mpz_class& prime_power(unsigned long p, int n) {
  thread_local std::map<std::pair<unsigned long, int>, mpz_class> cache;
  if (n < 0) throw InvalidArgument("negative exponent in prime_power");
  auto [it, inserted] = cache.try_emplace({p, n});
  if (inserted) mpz_ui_pow_ui(it->second.get_mpz_t(), p, static_cast<unsigned long>(n));
  return it->second;
}

long valuation_of(const mpz_class& value, unsigned long p) {
  if (value == 0) throw InvalidArgument("valuation of zero");
  mpz_class q = value;
  long k = 0;
  while (mpz_divisible_ui_p(q.get_mpz_t(), p)) {
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), p);
    ++k;
  }
  return k;
}

std::string Valuation::abs_string(unsigned long p) const {
  switch (kind_) {
    case Kind::exact: return std::to_string(p) + "^" + std::to_string(-value_);
    case Kind::at_least: return "<=" + std::to_string(p) + "^" + std::to_string(-value_);
    case Kind::infinite: return "0";
  }
  return {};
}

// ---------------------------------------------------------------- PadicInt

PadicInt::PadicInt(Prime p, const mpz_class& value, int precision) : p_(p), precision_(precision) {
  if (precision < 0) throw InvalidArgument("negative precision");
  mpz_fdiv_r(residue_.get_mpz_t(), value.get_mpz_t(), prime_power(p, precision).get_mpz_t());
}

bool PadicInt::is_unit() const {
  return precision_ > 0 && !mpz_divisible_ui_p(residue_.get_mpz_t(), p_);
}

Valuation PadicInt::valuation() const {
  if (residue_ == 0) return Valuation::at_least(precision_);
  return Valuation::exact(valuation_of(residue_, p_));
}

PadicInt PadicInt::reduce(int n) const {
  if (n > precision_)
    throw PrecisionExhausted("cannot raise precision from " + std::to_string(precision_) + " to " +
                             std::to_string(n));
  return PadicInt(p_, residue_, n);
}

namespace {

void require_same_prime(const PadicInt& a, const PadicInt& b) {
  if (a.prime() != b.prime())
    throw PrimeMismatch("p-adic operands over " + std::to_string(a.prime().value()) + " and " +
                        std::to_string(b.prime().value()));
}

}  // namespace

PadicInt PadicInt::operator-() const { return PadicInt(p_, -residue_, precision_); }

PadicInt operator+(const PadicInt& a, const PadicInt& b) {
  require_same_prime(a, b);
  return PadicInt(a.p_, a.residue_ + b.residue_, std::min(a.precision_, b.precision_));
}

PadicInt operator-(const PadicInt& a, const PadicInt& b) {
  require_same_prime(a, b);
  return PadicInt(a.p_, a.residue_ - b.residue_, std::min(a.precision_, b.precision_));
}

PadicInt operator*(const PadicInt& a, const PadicInt& b) {
  require_same_prime(a, b);
  return PadicInt(a.p_, a.residue_ * b.residue_, std::min(a.precision_, b.precision_));
}

bool operator==(const PadicInt& a, const PadicInt& b) {
  return a.p_ == b.p_ && a.precision_ == b.precision_ && a.residue_ == b.residue_;
}

PadicInt PadicInt::inverse() const {
  if (!is_unit()) throw NonUnit(to_string() + " is not a unit");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), residue_.get_mpz_t(), modulus().get_mpz_t());
  return PadicInt(p_, inv, precision_);
}

PadicInt PadicInt::divide_by_power(int k) const {
  if (k < 0 || k > precision_) throw InvalidArgument("shift out of range");
  const mpz_class& pk = prime_power(p_, k);
  if (!mpz_divisible_p(residue_.get_mpz_t(), pk.get_mpz_t()))
    throw InvalidArgument(to_string() + " is not divisible by " + std::to_string(p_.value()) + "^" +
                          std::to_string(k));
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), residue_.get_mpz_t(), pk.get_mpz_t());
  return PadicInt(p_, q, precision_ - k);
}

std::string PadicInt::to_string() const {
  return residue_.get_str() + "+O(" + std::to_string(p_.value()) + "^" + std::to_string(precision_) +
         ")";
}

PadicInt padic_arith(const PadicInt& a, const PadicInt& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
  }
  throw InvalidArgument("unknown arithmetic operation");
}

Valuation vec_norm(std::span<const PadicInt> v) {
  if (v.empty()) throw InvalidArgument("norm of an empty vector");
  long best = std::numeric_limits<long>::max();
  bool exact = false;
  for (const auto& x : v) {
    if (x.prime() != v.front().prime()) throw PrimeMismatch("mixed primes in vector");
    Valuation k = x.valuation();
    if (k.is_exact()) {
      if (!exact || k.value() < best) best = k.value();
      exact = true;
    } else if (!exact) {
      best = std::min(best, k.value());
    }
  }
  return exact ? Valuation::exact(best) : Valuation::at_least(best);
}

// ------------------------------------------------------------ PadicScalarQ

PadicScalarQ PadicScalarQ::exact_zero(Prime p) { return {PadicInt::zero(p, 0), 0, true}; }

PadicScalarQ PadicScalarQ::normalize(Prime p, mpz_class value, long shift, long absolute_precision) {
  const long rel = absolute_precision - shift;
  if (rel <= 0) return {PadicInt::zero(p, 0), absolute_precision, false};
  mpz_fdiv_r(value.get_mpz_t(), value.get_mpz_t(), prime_power(p, static_cast<int>(rel)).get_mpz_t());
  if (value == 0) return {PadicInt::zero(p, 0), absolute_precision, false};
  const long k = valuation_of(value, p);
  mpz_class unit;
  mpz_divexact(unit.get_mpz_t(), value.get_mpz_t(), prime_power(p, static_cast<int>(k)).get_mpz_t());
  return {PadicInt(p, unit, static_cast<int>(rel - k)), shift + k, false};
}

PadicScalarQ PadicScalarQ::from_int(const PadicInt& a) {
  return normalize(a.prime(), a.residue(), 0, a.precision());
}

PadicScalarQ PadicScalarQ::from_integer(Prime p, const mpz_class& value, int absolute_precision) {
  return normalize(p, value, 0, absolute_precision);
}

PadicScalarQ PadicScalarQ::from_rational(Prime p, const mpq_class& value, int absolute_precision) {
  if (value == 0) return normalize(p, 0, 0, absolute_precision);
  mpz_class num = value.get_num();
  mpz_class den = value.get_den();
  long shift = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
    mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
    --shift;
  }
  const long rel = absolute_precision - shift;
  if (rel <= 0) return {PadicInt::zero(p, 0), absolute_precision, false};
  const mpz_class& mod = prime_power(p, static_cast<int>(rel));
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  return normalize(p, num * inv, shift, absolute_precision);
}

long PadicScalarQ::absolute_precision() const noexcept {
  if (exact_zero_) return std::numeric_limits<long>::max();
  return valuation_ + unit_.precision();
}

Valuation PadicScalarQ::valuation() const {
  if (exact_zero_) return Valuation::infinite();
  if (unit_.precision() == 0) return Valuation::at_least(valuation_);
  return Valuation::exact(valuation_);
}

PadicInt PadicScalarQ::to_padic_int(int n) const {
  if (exact_zero_) return PadicInt::zero(prime(), n);
  if (unit_.precision() > 0 && valuation_ < 0)
    throw InvalidArgument(to_string() + " is not a p-adic integer");
  const long abs = std::min<long>(n, absolute_precision());
  if (abs < 0) throw PrecisionExhausted("value is not known to nonnegative precision");
  if (unit_.precision() == 0) return PadicInt::zero(prime(), static_cast<int>(abs));
  return PadicInt(prime(), unit_.residue() * prime_power(prime(), static_cast<int>(valuation_)),
                  static_cast<int>(abs));
}

PadicScalarQ PadicScalarQ::operator-() const {
  if (exact_zero_) return *this;
  return {-unit_, valuation_, false};
}

PadicScalarQ operator+(const PadicScalarQ& a, const PadicScalarQ& b) {
  if (a.prime() != b.prime()) throw PrimeMismatch("scalars over different primes");
  if (a.exact_zero_) return b;
  if (b.exact_zero_) return a;
  const Prime p = a.prime();
  const long m = std::min(a.valuation_, b.valuation_);
  const long abs = std::min(a.absolute_precision(), b.absolute_precision());
  mpz_class sum = a.unit_.residue() * prime_power(p, static_cast<int>(a.valuation_ - m)) +
                  b.unit_.residue() * prime_power(p, static_cast<int>(b.valuation_ - m));
  return PadicScalarQ::normalize(p, sum, m, abs);
}

PadicScalarQ operator-(const PadicScalarQ& a, const PadicScalarQ& b) { return a + (-b); }

PadicScalarQ operator*(const PadicScalarQ& a, const PadicScalarQ& b) {
  if (a.prime() != b.prime()) throw PrimeMismatch("scalars over different primes");
  if (a.exact_zero_ || b.exact_zero_) return PadicScalarQ::exact_zero(a.prime());
  const int rel = std::min(a.unit_.precision(), b.unit_.precision());
  return {PadicInt(a.prime(), a.unit_.residue() * b.unit_.residue(), rel),
          a.valuation_ + b.valuation_, false};
}

std::string PadicScalarQ::to_string() const {
  if (exact_zero_) return "0";
  const std::string p = std::to_string(prime().value());
  const std::string tail = "O(" + p + "^" + std::to_string(absolute_precision()) + ")";
  if (unit_.precision() == 0) return tail;
  std::string head = unit_.residue().get_str();
  if (valuation_ != 0) head += "*" + p + "^" + std::to_string(valuation_);
  return head + "+" + tail;
}

// -------------------------------------------------------------------- Disk

Disk Disk::empty(Prime p) { return Disk(Kind::empty, p, PadicScalarQ::exact_zero(p), 0); }

Disk Disk::ball(PadicScalarQ center, long radius_exponent) {
  const Prime p = center.prime();
  if (radius_exponent >= center.absolute_precision()) return point(std::move(center));
  return Disk(Kind::ball, p, std::move(center), radius_exponent);
}

Disk Disk::point(PadicScalarQ center) {
  const Prime p = center.prime();
  const long e = center.absolute_precision();
  return Disk(Kind::point, p, std::move(center), e);
}

long Disk::radius_exponent() const noexcept { return e_; }

bool Disk::contains(const PadicScalarQ& a) const {
  if (kind_ == Kind::empty) return false;
  const Valuation d = (a - center_).valuation();
  return d.is_infinite() || d.value() >= e_;
}

std::string Disk::to_string() const {
  const std::string p = std::to_string(p_.value());
  switch (kind_) {
    case Kind::empty: return "empty";
    case Kind::point: return "{" + center_.to_string() + "}";
    case Kind::ball:
      return "B(" + center_.to_string() + ", " + p + "^" + std::to_string(-e_) + ")";
  }
  return {};
}

Disk disk_intersect(const Disk& d1, const Disk& d2) {
  if (d1.prime() != d2.prime()) throw PrimeMismatch("disks over different primes");
  if (d1.kind() == Disk::Kind::empty) return d1;
  if (d2.kind() == Disk::Kind::empty) return d2;
  const long e1 = d1.radius_exponent();
  const long e2 = d2.radius_exponent();
  const long needed = std::min(e1, e2);
  const Valuation gap = (d1.center() - d2.center()).valuation();
  if (!gap.is_infinite() && gap.value() < needed) {
    if (!gap.is_exact())
      throw PrecisionExhausted("disk centers are not known precisely enough to compare");
    return Disk::empty(d1.prime());
  }
  // Nested: the one with the larger exponent is the smaller disk.
  return e2 > e1 ? d2 : d1;
}

// ----------------------------------------------------------------- parsing

PadicInt parse_padic_literal(std::string_view text, Prime p, int default_precision) {
  auto fail = [&](const std::string& why) {
    return ParseError("bad p-adic literal '" + std::string(text) + "': " + why);
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw fail("empty");

  std::size_t pos = 0;
  const bool negative = s[pos] == '-';
  if (s[pos] == '+' || s[pos] == '-') ++pos;
  const std::size_t digits_begin = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == digits_begin) throw fail("expected an integer");
  mpz_class value(s.substr(digits_begin, pos - digits_begin), 10);
  if (negative) value = -value;
  int precision = default_precision;
  if (pos < s.size()) {
    const std::string rest = s.substr(pos);
    if (rest.rfind("+O(", 0) != 0 || rest.back() != ')') throw fail("expected +O(p^N)");
    const std::string inner = rest.substr(3, rest.size() - 4);
    const auto caret = inner.find('^');
    if (caret == std::string::npos) throw fail("expected p^N inside O()");
    try {
      std::size_t used = 0;
      const unsigned long lp = std::stoul(inner.substr(0, caret), &used);
      if (used != caret) throw fail("bad prime");
      const std::string exp = inner.substr(caret + 1);
      const int n = std::stoi(exp, &used);
      if (used != exp.size() || n < 0) throw fail("bad precision");
      if (lp != p.value())
        throw PrimeMismatch("literal '" + std::string(text) + "' is over " + std::to_string(lp) +
                            ", expected " + std::to_string(p.value()));
      precision = n;
    } catch (const std::logic_error&) {
      throw fail("bad O() term");
    }
  }
  return PadicInt(p, value, precision);
}

}  // namespace padicdual
