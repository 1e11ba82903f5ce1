#pragma once

#include <memory>
#include <vector>

#include "padicdual/groups.hpp"

namespace padicdual {

/// A p-adic functional f(v) = c . (A_p v), stored by its coordinates c over the
/// rows of A_p. Those rows form a basis of the dual, so two functionals on the
/// same form are equal iff their coefficients agree.
class Functional {
 public:
  Functional(std::shared_ptr<const FactoredForm> form, Prime p, std::vector<PadicInt> coefficients);

  const FactoredForm& form() const noexcept { return *form_; }
  std::shared_ptr<const FactoredForm> form_ptr() const noexcept { return form_; }
  Prime prime() const noexcept { return p_; }
  const std::vector<PadicInt>& coefficients() const noexcept { return c_; }
  int precision() const noexcept { return precision_; }

  friend bool operator==(const Functional& a, const Functional& b);

 private:
  std::shared_ptr<const FactoredForm> form_;
  Prime p_;
  std::vector<PadicInt> c_;
  int precision_;
};

/// f(v) in Z_p. The value is known modulo p^(N - d), where p^d is the p-part of
/// the denominator of v. Throws NotAMember.
PadicInt evaluate(const Functional& f, const GroupElement& v);

/// A functional taking the prescribed values on the generators. Among all
/// solutions the one built from the normal-form particular solution is
/// returned. Throws NotContractive naming the first generator whose value
/// cannot be met together with the earlier ones.
Functional extend_from_subgroup(std::shared_ptr<const FactoredForm> form, Prime p,
                                const std::vector<GroupElement>& gens, const std::vector<PadicInt>& values);

/// The set of values f(g) over all extensions f of the prescribed data.
Disk admissible_values(std::shared_ptr<const FactoredForm> form, Prime p, const std::vector<GroupElement>& gens,
                       const std::vector<PadicInt>& values, const GroupElement& g);

/// A functional with |f(h)|_p <= p^-m on every generator of H and
/// |f(g)|_p > p^-m. Throws NotFound when no such functional exists at the
/// working precision.
Functional separating_functional(std::shared_ptr<const FactoredForm> form, Prime p,
                                 const std::vector<GroupElement>& h_gens, const GroupElement& g, long m);

}  // namespace padicdual
