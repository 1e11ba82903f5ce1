#include "padicdual/padicdual.h"

#include <algorithm>
#include <cstring>
#include <string>

#include "padicdual/errors.hpp"
#include "padicdual/io.hpp"
#include "padicdual/oracle.hpp"

using nlohmann::json;
using namespace padicdual;

struct pd_form {
  std::shared_ptr<const FactoredForm> form;
  std::optional<IntMatrix> limit;
};

namespace {

thread_local std::string last_error;

pd_status status_of(Errc code) {
  switch (code) {
    case Errc::parse_error: return PD_ERR_PARSE;
    case Errc::invalid_argument:
    case Errc::prime_mismatch:
    case Errc::not_a_simple_root: return PD_ERR_INVALID_ARGUMENT;
    case Errc::dimension_mismatch: return PD_ERR_DIMENSION;
    case Errc::singular_matrix: return PD_ERR_SINGULAR;
    case Errc::not_a_member: return PD_ERR_NOT_MEMBER;
    case Errc::precision_exhausted: return PD_ERR_PRECISION;
    case Errc::not_contractive: return PD_ERR_NOT_CONTRACTIVE;
    case Errc::not_found: return PD_ERR_NOT_FOUND;
    case Errc::non_unit: return PD_ERR_NON_UNIT;
  }
  return PD_ERR_INTERNAL;
}

pd_status fail(pd_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

template <class F>
pd_status guard(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PD_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out_json, const json& j) {
  if (out_json) *out_json = dup_string(j.dump());
}

void require(const void* ptr, const char* what) {
  if (!ptr) throw InvalidArgument(std::string(what) + " is null");
}

Prime prime_arg(unsigned long p) {
  if (p == 0) throw InvalidArgument("a prime is required (--p)");
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not a prime");
  return Prime(p);
}

json metric_json(Prime p, const MetricValue& m) {
  json j = {{"p", p.value()}, {"metric", m.valuation.abs_string(p)}, {"margin", m.margin}};
  switch (m.valuation.kind()) {
    case Valuation::Kind::exact:
      j["exact"] = true;
      j["valuation"] = m.valuation.value();
      break;
    case Valuation::Kind::at_least:
      j["exact"] = false;
      j["valuation_at_least"] = m.valuation.value();
      break;
    case Valuation::Kind::infinite:
      j["exact"] = true;
      j["valuation"] = nullptr;
      break;
  }
  return j;
}

json padic_list_json(const std::vector<PadicInt>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

json primes_json(const std::vector<Prime>& ps) {
  json out = json::array();
  for (Prime p : ps) out.push_back(p.value());
  return out;
}

std::string type_key(const Rank1Type& t) { return to_string(t); }

json type_json(const Rank1Type& t) {
  json j = json::object();
  for (const auto& [p, k] : t) j[std::to_string(p)] = k ? json(*k) : json("inf");
  return j;
}

}  // namespace

extern "C" {

const char* pd_version(void) { return "0.1.0"; }

const char* pd_status_name(pd_status status) {
  switch (status) {
    case PD_OK: return "ok";
    case PD_ERR_PARSE: return "parse_error";
    case PD_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case PD_ERR_DIMENSION: return "dimension_mismatch";
    case PD_ERR_SINGULAR: return "singular_matrix";
    case PD_ERR_NOT_MEMBER: return "not_a_member";
    case PD_ERR_PRECISION: return "precision_exhausted";
    case PD_ERR_NOT_CONTRACTIVE: return "not_contractive";
    case PD_ERR_NOT_FOUND: return "not_found";
    case PD_ERR_NON_UNIT: return "non_unit";
    case PD_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* pd_last_error(void) { return last_error.c_str(); }

void pd_string_free(char* s) { std::free(s); }

pd_status pd_form_load(const char* json_text, int precision, pd_form** out) {
  return guard([&] {
    require(json_text, "document");
    require(out, "output handle");
    LoadedForm loaded = load_form(json_text, precision);
    const ValidationReport report = validate_factored_form(loaded.form);
    if (!report.ok()) {
      const auto& v = report.violations.front();
      return fail(PD_ERR_INVALID_ARGUMENT,
                  "invalid factored form at p=" + std::to_string(v.p) + ": " + v.condition);
    }
    *out = new pd_form{std::make_shared<const FactoredForm>(std::move(loaded.form)), std::move(loaded.limit)};
    return PD_OK;
  });
}

pd_status pd_form_validate(const char* json_text, int precision, int* ok, char** out_json) {
  return guard([&] {
    require(json_text, "document");
    const LoadedForm loaded = load_form(json_text, precision);
    const ValidationReport report = validate_factored_form(loaded.form);
    json violations = json::array();
    for (const auto& v : report.violations) violations.push_back({{"p", v.p}, {"condition", v.condition}});
    if (ok) *ok = report.ok();
    emit(out_json, {{"ok", report.ok()}, {"violations", violations}});
    return PD_OK;
  });
}

void pd_form_free(pd_form* form) { delete form; }

int pd_form_rank(const pd_form* form) { return form ? static_cast<int>(form->form->rank()) : -1; }

int pd_form_precision(const pd_form* form) { return form ? form->form->precision() : -1; }

pd_status pd_form_to_json(const pd_form* form, unsigned long p, char** out_json) {
  return guard([&] {
    require(form, "form");
    std::optional<Prime> only;
    if (p != 0) only = prime_arg(p);
    emit(out_json, form_to_json(*form->form, only));
    return PD_OK;
  });
}

pd_status pd_dual(const char* limit_json, unsigned long p, int precision, char** out_json) {
  return guard([&] {
    require(limit_json, "document");
    const json doc = json::parse(limit_json, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("limit_matrix"))
      throw ParseError("expected an inductive-limit spec {\"limit_matrix\": [...]}");
    if (p == 0) {
      emit(out_json, form_to_json(load_form(limit_json, precision).form));
      return PD_OK;
    }
    const Prime q = prime_arg(p);
    const int n = precision > 0 ? precision : doc.value("precision", kDefaultPrecision);
    const IntMatrix a = parse_limit_matrix(doc["limit_matrix"]);
    const PadicMatrix dual = dual_from_inductive_limit(a, q, n);
    json entry = {{"p", p}};
    if (dual.rows() == 0)
      entry["zero_row"] = true;
    else
      entry["rows"] = matrix_rows_json(dual);
    emit(out_json, {{"rank", a.rows}, {"precision", n}, {"exceptional", json::array({entry})}});
    return PD_OK;
  });
}

pd_status pd_member(const pd_form* form, const char* v, int* verdict, char** out_json) {
  return guard([&] {
    require(form, "form");
    require(v, "vector");
    const GroupElement g = parse_group_element(v);
    const bool in = membership(*form->form, g);
    if (verdict) *verdict = in;
    const auto primes = relevant_primes(*form->form, g);
    const mpz_class den = common_denominator(g);
    long margin = form->form->precision();
    for (Prime q : primes)
      if (!form->form->is_zero_row(q)) margin = std::min(margin, form->form->precision() - valuation_of(den, q));
    emit(out_json, {{"verdict", in},
                    {"checked_primes", primes_json(primes)},
                    {"min_margin", margin},
                    {"precision", form->form->precision()}});
    return PD_OK;
  });
}

pd_status pd_metric(const pd_form* form, unsigned long p, const char* v, char** out_json) {
  return guard([&] {
    require(form, "form");
    require(v, "vector");
    const Prime q = prime_arg(p);
    emit(out_json, metric_json(q, p_metric(*form->form, q, parse_group_element(v))));
    return PD_OK;
  });
}

pd_status pd_divisible(const pd_form* form, unsigned long p, long k, const char* v, int* verdict, char** out_json) {
  return guard([&] {
    require(form, "form");
    require(v, "vector");
    const Prime q = prime_arg(p);
    const GroupElement g = parse_group_element(v);
    const bool d = divisible(*form->form, q, k, g);
    if (verdict) *verdict = d;
    json j = metric_json(q, p_metric(*form->form, q, g));
    j["verdict"] = d;
    j["k"] = k;
    j["checked_primes"] = json::array({p});
    j["min_margin"] = form->form->precision() - valuation_of(common_denominator(g), q) - std::max(k, 0L);
    j["precision"] = form->form->precision();
    emit(out_json, j);
    return PD_OK;
  });
}

pd_status pd_in_gp(const pd_form* form, unsigned long p, const char* v, int* verdict, char** out_json) {
  return guard([&] {
    require(form, "form");
    require(v, "vector");
    const Prime q = prime_arg(p);
    const GroupElement g = parse_group_element(v);
    const bool in = in_gp_at_precision(*form->form, q, g);
    if (verdict) *verdict = in;
    json j = metric_json(q, p_metric(*form->form, q, g));
    j["verdict"] = in;
    j["checked_primes"] = json::array({p});
    j["min_margin"] = j["margin"];
    j["precision"] = form->form->precision();
    emit(out_json, j);
    return PD_OK;
  });
}

pd_status pd_simple(const pd_form* form, unsigned long p, char** out_json) {
  return guard([&] {
    require(form, "form");
    const Prime q = prime_arg(p);
    emit(out_json, {{"p", p}, {"simplicity", simplicity_name(is_p_simple(*form->form, q))},
                    {"n_p", form->form->n_p(q)}});
    return PD_OK;
  });
}

pd_status pd_phi(const pd_form* form, unsigned long p, const char* v, char** out_json) {
  return guard([&] {
    require(form, "form");
    require(v, "vector");
    const Prime q = prime_arg(p);
    emit(out_json, {{"p", p}, {"coordinates", padic_list_json(phi_p(*form->form, q, parse_group_element(v)))}});
    return PD_OK;
  });
}

pd_status pd_quotient(const pd_form* form, unsigned long p, int k, char** out_json) {
  return guard([&] {
    require(form, "form");
    const Prime q = prime_arg(p);
    json inv = json::array();
    std::string display = "[";
    for (const auto& d : quotient_structure(*form->form, q, k)) {
      display += (inv.empty() ? "" : ", ") + d.get_str();
      inv.push_back(d.get_str());
    }
    emit(out_json, {{"p", p}, {"k", k}, {"invariants", inv}, {"display", display + "]"}});
    return PD_OK;
  });
}

pd_status pd_type(const pd_form* form, char** out_json) {
  return guard([&] {
    require(form, "form");
    const Rank1Type t = rank1_type(*form->form);
    emit(out_json, {{"type", type_json(t)}, {"display", type_key(t)}});
    return PD_OK;
  });
}

pd_status pd_hom(const pd_form* a, const pd_form* b, const char* v, int* verdict, char** out_json) {
  return guard([&] {
    require(a, "source form");
    require(b, "target form");
    require(v, "matrix V");
    const RationalMatrix m = parse_rational_matrix(v, a->form->rank());
    const CheckReport r = hom_check(*a->form, *b->form, m);
    if (verdict) *verdict = r.verdict;
    emit(out_json, report_to_json(r));
    return PD_OK;
  });
}

pd_status pd_iso(const pd_form* a, const pd_form* b, const char* v, int* verdict, char** out_json) {
  return guard([&] {
    require(a, "source form");
    require(b, "target form");
    if (v) {
      const CheckReport r = iso_check(*a->form, *b->form, parse_rational_matrix(v, a->form->rank()));
      if (verdict) *verdict = r.verdict;
      emit(out_json, report_to_json(r));
      return PD_OK;
    }
    const Rank1Type ta = rank1_type(*a->form);
    const Rank1Type tb = rank1_type(*b->form);
    const bool same = rank1_iso(ta, tb);
    json j = {{"verdict", same}, {"type_a", type_key(ta)}, {"type_b", type_key(tb)}};
    if (same) {
      const mpq_class w = rank1_witness(ta, tb);
      const CheckReport r = iso_check(*a->form, *b->form, RationalMatrix::scalar(1, w));
      j["witness"] = w.get_str();
      j["witness_check"] = report_to_json(r);
      if (!r.verdict)
        return fail(PD_ERR_INTERNAL, "types agree but the witness " + w.get_str() + " was rejected");
    }
    if (verdict) *verdict = same;
    emit(out_json, j);
    return PD_OK;
  });
}

pd_status pd_extend(const pd_form* form, unsigned long p, const char* gens, const char* values, char** out_json) {
  return guard([&] {
    require(form, "form");
    require(gens, "generators");
    require(values, "values");
    const Prime q = prime_arg(p);
    const auto f = extend_from_subgroup(form->form, q, parse_group_elements(gens),
                                        parse_padic_list(values, q, form->form->precision()));
    emit(out_json, {{"functional", functional_to_json(f)}});
    return PD_OK;
  });
}

pd_status pd_admissible(const pd_form* form, unsigned long p, const char* gens, const char* values, const char* at,
                        char** out_json) {
  return guard([&] {
    require(form, "form");
    require(gens, "generators");
    require(values, "values");
    require(at, "evaluation point");
    const Prime q = prime_arg(p);
    const Disk d = admissible_values(form->form, q, parse_group_elements(gens),
                                     parse_padic_list(values, q, form->form->precision()), parse_group_element(at));
    emit(out_json, {{"disk", disk_to_json(d)}, {"display", d.to_string()}});
    return PD_OK;
  });
}

pd_status pd_separate(const pd_form* form, unsigned long p, const char* h_gens, const char* g, long m,
                      char** out_json) {
  return guard([&] {
    require(form, "form");
    require(h_gens, "subgroup generators");
    require(g, "element");
    const Prime q = prime_arg(p);
    const GroupElement x = parse_group_element(g);
    const auto hs = parse_group_elements(h_gens);
    const Functional f = separating_functional(form->form, q, hs, x, m);
    json hv = json::array();
    for (const auto& h : hs) hv.push_back(evaluate(f, h).to_string());
    emit(out_json, {{"functional", functional_to_json(f)}, {"value_at_g", evaluate(f, x).to_string()},
                    {"values_on_h", hv}});
    return PD_OK;
  });
}

pd_status pd_evaluate(const pd_form* form, unsigned long p, const char* coefficients, const char* v,
                      char** out_json) {
  return guard([&] {
    require(form, "form");
    require(coefficients, "coefficients");
    require(v, "vector");
    const Prime q = prime_arg(p);
    const Functional f(form->form, q, parse_padic_list(coefficients, q, form->form->precision()));
    emit(out_json, {{"value", evaluate(f, parse_group_element(v)).to_string()}});
    return PD_OK;
  });
}

pd_status pd_oracle_divisible(const pd_form* form, unsigned long p, long k, const char* v, int* verdict,
                              char** out_json) {
  return guard([&] {
    require(form, "form");
    require(v, "vector");
    if (!form->limit) throw InvalidArgument("oracle checks need an inductive-limit spec");
    prime_arg(p);
    const GroupElement g = parse_group_element(v);
    oracle::IntVec gi;
    for (const auto& x : g) {
      if (x.get_den() != 1) throw InvalidArgument("oracle checks need an integer vector");
      gi.push_back(x.get_num());
    }
    oracle::IntMat a(form->limit->rows, oracle::IntVec(form->limit->cols));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] = (*form->limit)(i, j);
    oracle::DivisibleResult r = oracle::oracle_divisible(a, gi, p, static_cast<int>(k));
    if (r.exhausted) r = oracle::oracle_divisible(a, gi, p, static_cast<int>(k), 100000);
    if (verdict) *verdict = r.divisible;
    emit(out_json, {{"verdict", r.divisible}, {"exhausted", r.exhausted}, {"steps", r.steps}});
    return PD_OK;
  });
}

pd_status pd_oracle_quotient(const pd_form* form, unsigned long p, int k, char** out_json) {
  return guard([&] {
    require(form, "form");
    if (!form->limit) throw InvalidArgument("oracle checks need an inductive-limit spec");
    prime_arg(p);
    if (k < 1) throw InvalidArgument("quotient exponent must be at least 1");
    oracle::IntMat a(form->limit->rows, oracle::IntVec(form->limit->cols));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] = (*form->limit)(i, j);
    json inv = json::array();
    std::string display = "[";
    for (const auto& d : oracle::oracle_quotient(a, p, k)) {
      display += (inv.empty() ? "" : ", ") + d.get_str();
      inv.push_back(d.get_str());
    }
    emit(out_json, {{"p", p}, {"k", k}, {"invariants", inv}, {"display", display + "]"}});
    return PD_OK;
  });
}

}  // extern "C"
