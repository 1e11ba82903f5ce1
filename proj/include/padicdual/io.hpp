#pragma once

#include <json.hpp>

#include <optional>
#include <string_view>

#include "padicdual/classify.hpp"
#include "padicdual/functionals.hpp"

namespace padicdual {

/// A parsed input document. Inductive-limit specs keep their matrix so that
/// oracle cross-checks can be run against them.
struct LoadedForm {
  FactoredForm form;
  std::optional<IntMatrix> limit;
};

/// Group spec:
///   {"rank": n, "precision": N,
///    "exceptional": [{"p": 3, "rows": [["1","7"]]}, {"p": 5, "zero_row": true}],
///    "comment": "..."}
/// or inductive-limit spec {"limit_matrix": [[1,1],[1,4]]}. A positive
/// `precision` overrides the document's; otherwise the document's value or 32
/// is used. Entries are p-adic literals; an explicit O(p^M) below N lowers
/// the precision of the whole form. Throws ParseError.
LoadedForm load_form(std::string_view text, int precision = 0);

IntMatrix parse_limit_matrix(const nlohmann::json& j);

/// Group-spec document for the form; `only` restricts the exceptional list.
nlohmann::json form_to_json(const FactoredForm& ff, std::optional<Prime> only = std::nullopt);

nlohmann::json matrix_rows_json(const PadicMatrix& m);
nlohmann::json functional_to_json(const Functional& f);
nlohmann::json report_to_json(const CheckReport& r);
nlohmann::json disk_to_json(const Disk& d);

/// Comma-separated p-adic literals.
std::vector<PadicInt> parse_padic_list(std::string_view text, Prime p, int precision);

}  // namespace padicdual
