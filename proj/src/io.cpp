#include "padicdual/io.hpp"

#include <algorithm>

#include "padicdual/errors.hpp"

namespace padicdual {

using nlohmann::json;

namespace {

json parse_document(std::string_view text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("input is not valid JSON");
  if (!j.is_object()) throw ParseError("input must be a JSON object");
  return j;
}

std::string literal_text(const json& e) {
  if (e.is_string()) return e.get<std::string>();
  if (e.is_number_integer()) return std::to_string(e.get<long long>());
  throw ParseError("matrix entries must be integers or p-adic literal strings");
}

int positive_int(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1 || j.get<long long>() > 1 << 20)
    throw ParseError(std::string(what) + " must be a positive integer");
  return static_cast<int>(j.get<long long>());
}

FactoredForm parse_group_spec(const json& j, int precision) {
  if (!j.contains("rank")) throw ParseError("group spec needs a \"rank\"");
  const json& rank_j = j["rank"];
  if (!rank_j.is_number_integer() || rank_j.get<long long>() < 0) throw ParseError("rank must be a nonnegative integer");
  const auto rank = static_cast<std::size_t>(rank_j.get<long long>());
  int n = precision > 0 ? precision : (j.contains("precision") ? positive_int(j["precision"], "precision")
                                                               : kDefaultPrecision);

  struct Entry {
    Prime p;
    std::optional<PadicMatrix> matrix;
  };
  std::vector<Entry> entries;
  const json exc = j.value("exceptional", json::array());
  if (!exc.is_array()) throw ParseError("\"exceptional\" must be an array");
  for (const auto& e : exc) {
    if (!e.is_object() || !e.contains("p") || !e["p"].is_number_unsigned())
      throw ParseError("each exceptional entry needs a prime \"p\"");
    const auto pv = e["p"].get<unsigned long>();
    if (!is_prime(pv)) throw ParseError(std::to_string(pv) + " is not a prime");
    const Prime p(pv);
    if (std::any_of(entries.begin(), entries.end(), [&](const Entry& x) { return x.p == p; }))
      throw ParseError("prime " + std::to_string(pv) + " listed twice");
    if (e.value("zero_row", false)) {
      entries.push_back({p, std::nullopt});
      continue;
    }
    if (!e.contains("rows") || !e["rows"].is_array()) throw ParseError("entry for p=" + std::to_string(pv) + " needs \"rows\" or \"zero_row\"");
    std::vector<std::vector<PadicInt>> rows;
    for (const auto& r : e["rows"]) {
      if (!r.is_array()) throw ParseError("rows must be arrays");
      std::vector<PadicInt> row;
      for (const auto& x : r) row.push_back(parse_padic_literal(literal_text(x), p, n));
      if (row.size() != rank)
        throw ParseError("row at p=" + std::to_string(pv) + " has " + std::to_string(row.size()) +
                         " entries, rank is " + std::to_string(rank));
      rows.push_back(std::move(row));
    }
    entries.push_back({p, PadicMatrix::from_padic_rows(p, rows, rank)});
  }
  for (const auto& e : entries)
    if (e.matrix && e.matrix->rows() > 0) n = std::min(n, e.matrix->precision());

  FactoredForm ff(rank, n);
  for (const auto& e : entries) {
    if (e.matrix)
      ff.set_matrix(e.p, e.matrix->rows() > 0 ? e.matrix->reduce(n) : PadicMatrix(e.p, n, 0, rank));
    else
      ff.set_zero_row(e.p);
  }
  return ff;
}

}  // namespace

IntMatrix parse_limit_matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("limit_matrix must be a nonempty array of rows");
  IntMatrix m(j.size(), j.front().is_array() ? j.front().size() : 0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (!j[i].is_array() || j[i].size() != m.cols) throw ParseError("limit_matrix is ragged");
    for (std::size_t c = 0; c < m.cols; ++c) {
      const json& x = j[i][c];
      if (x.is_number_integer())
        m(i, c) = mpz_class(std::to_string(x.get<long long>()));
      else if (x.is_string() && m(i, c).set_str(x.get<std::string>(), 10) == 0)
        continue;
      else
        throw ParseError("limit_matrix entries must be integers");
    }
  }
  return m;
}

LoadedForm load_form(std::string_view text, int precision) {
  const json j = parse_document(text);
  if (j.contains("limit_matrix")) {
    const int n = precision > 0 ? precision
                                : (j.contains("precision") ? positive_int(j["precision"], "precision") : kDefaultPrecision);
    IntMatrix a = parse_limit_matrix(j["limit_matrix"]);
    FactoredForm ff = factored_form_of_inductive_limit(a, n);
    return {std::move(ff), std::move(a)};
  }
  return {parse_group_spec(j, precision), std::nullopt};
}

json matrix_rows_json(const PadicMatrix& m) {
  json rows = json::array();
  for (const auto& r : m.to_strings()) rows.push_back(r);
  return rows;
}

json form_to_json(const FactoredForm& ff, std::optional<Prime> only) {
  json exc = json::array();
  for (Prime p : ff.exceptional_primes()) {
    if (only && *only != p) continue;
    if (ff.is_zero_row(p))
      exc.push_back({{"p", p.value()}, {"zero_row", true}});
    else
      exc.push_back({{"p", p.value()}, {"rows", matrix_rows_json(ff.dual_basis(p))}});
  }
  return {{"rank", ff.rank()}, {"precision", ff.precision()}, {"exceptional", exc}};
}

json functional_to_json(const Functional& f) {
  json coeffs = json::array();
  for (const auto& c : f.coefficients()) coeffs.push_back(c.residue().get_str());
  return {{"p", f.prime().value()},
          {"coefficients", coeffs},
          {"precision", std::to_string(f.prime().value()) + "^" + std::to_string(f.precision())}};
}

json report_to_json(const CheckReport& r) {
  json primes = json::array();
  json details = json::array();
  for (const auto& pv : r.primes) {
    primes.push_back(pv.p);
    json d = {{"p", pv.p}, {"verdict", pv.verdict}, {"margin", pv.margin}};
    if (!pv.reason.empty()) d["reason"] = pv.reason;
    details.push_back(d);
  }
  return {{"verdict", r.verdict},
          {"checked_primes", primes},
          {"min_margin", r.min_margin},
          {"precision", r.precision},
          {"per_prime", details}};
}

json disk_to_json(const Disk& d) {
  const std::string p = std::to_string(d.prime().value());
  switch (d.kind()) {
    case Disk::Kind::empty: return {{"kind", "empty"}};
    case Disk::Kind::point:
      return {{"kind", "point"}, {"center", d.center().to_string()}};
    case Disk::Kind::ball:
      return {{"kind", "ball"},
              {"center", d.center().to_string()},
              {"radius_exponent", d.radius_exponent()},
              {"radius", p + "^" + std::to_string(-d.radius_exponent())}};
  }
  return {};
}

std::vector<PadicInt> parse_padic_list(std::string_view text, Prime p, int precision) {
  std::vector<PadicInt> out;
  std::size_t start = 0;
  if (text.find_first_not_of(" \t") == std::string_view::npos) return out;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_padic_literal(text.substr(start, comma - start), p, precision));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace padicdual
