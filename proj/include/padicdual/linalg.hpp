#pragma once

#include <optional>
#include <vector>

#include "padicdual/matrix.hpp"

namespace padicdual {

/// U * A * V = D (mod p^N) with U, V invertible over Z_p and D diagonal with
/// ascending pure p-power entries. `exponents[i]` is the exponent of D(i,i), or
/// at_least(N) where the diagonal entry vanishes at the working precision.
struct NormalForm {
  PadicMatrix U;
  PadicMatrix D;
  PadicMatrix V;
  std::vector<Valuation> exponents;
};

/// Pivot rule: smallest valuation, then lowest row, then lowest column.
NormalForm smith_normal_form(const PadicMatrix& a);

/// {x : A x = b mod p^N} = particular + Z_p-span(kernel).
struct SolutionSet {
  std::vector<PadicInt> particular;
  std::vector<std::vector<PadicInt>> kernel;
  /// Digits of the solution that are pinned down: min over pivots of (N - e).
  int margin = 0;
};

/// Returns nullopt when the system is inconsistent modulo p^N. Free
/// coordinates are set to zero and divided residues keep zero top digits,
/// which makes the particular solution deterministic.
std::optional<SolutionSet> solve_unit_system(const PadicMatrix& a, const std::vector<PadicInt>& b);

struct SpanMembership {
  bool member = false;
  std::vector<PadicInt> coefficients;  ///< c with c * A = w when member
  int margin = 0;
  bool precision_warning() const noexcept { return margin < kSafetyMargin; }
};

/// Decides whether w lies in the Z_p-row-span of A modulo p^N.
SpanMembership row_span_member(const std::vector<PadicInt>& w, const PadicMatrix& a);

/// Rank of the reduction mod p.
std::size_t rank_mod_p(const PadicMatrix& a);

/// True iff det(A) is a p-adic unit.
bool is_gl_zp(const PadicMatrix& a);

/// Canonical generating rows of the row module of A over Z/p^N: echelon form,
/// pivots p^e, entries above each pivot reduced into [0, p^e), zero rows
/// dropped, and closed under the annihilator multiples p^(N-e) * row (Howell
/// property). Two matrices have the same row module iff their forms are equal.
PadicMatrix howell_form(const PadicMatrix& a);

bool same_row_module(const PadicMatrix& a, const PadicMatrix& b);

/// Canonical basis of the intersection over n of rowspan_{Z_p}(A^n), mod p^N.
///
/// Write K_n for rowspan(A^n) + p^N Z_p^r. Then K_{n+1} = K_n A + p^N Z_p^r,
/// so K_{n+1} depends on K_n alone and the first repeat is a fixed point; the
/// fixed point equals the intersection reduced mod p^N. A strictly decreasing
/// chain in (Z/p^N)^r has at most N*r steps, so at most N*r products are needed.
PadicMatrix stable_row_module(const IntMatrix& a, Prime p, int precision);

/// Number of products A taken before the fixed point repeated.
struct StableModuleTrace {
  PadicMatrix basis;
  int steps;
};
StableModuleTrace stable_row_module_trace(const IntMatrix& a, Prime p, int precision);

/// Whether the Z-span of the unit-normalized nonzero columns is dense in
/// Z_p^rows. Decided on residues: the closure is the Z_p-span, which is all of
/// Z_p^rows iff the normalized columns span the residue space (Nakayama).
/// Columns vanishing at the working precision are treated as zero.
bool column_span_dense(const PadicMatrix& a);

/// The unit-normalized nonzero columns v / p^k (k = min val) as columns of a
/// matrix at precision N - max k, where every column is fully known.
PadicMatrix normalized_columns(const PadicMatrix& a);

}  // namespace padicdual
