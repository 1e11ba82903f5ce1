// Command-line front end. Talks to the library only through padicdual.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "padicdual/padicdual.h"

namespace {

enum Exit { kTrue = 0, kFalse = 1, kParse = 2, kInvalid = 3, kPrecision = 4, kOracleMismatch = 5 };

struct Options {
  int precision = 0;
  unsigned long p = 0;
  long k = 0;
  long m = 0;
  bool json = false;
  bool oracle = false;
  std::string spec, spec_b, vec, V, gens, values, at;
};

struct Failure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{kParse, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// `@file` arguments are replaced by the file's contents.
std::string maybe_file(const std::string& arg) { return !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg; }

int exit_for(pd_status s) {
  switch (s) {
    case PD_OK: return kTrue;
    case PD_ERR_PARSE: return kParse;
    case PD_ERR_PRECISION: return kPrecision;
    default: return kInvalid;
  }
}

void check(pd_status s) {
  if (s == PD_OK) return;
  std::string msg = std::string(pd_status_name(s)) + ": " + pd_last_error();
  if (s == PD_ERR_PRECISION) msg += " (try a larger --precision)";
  throw Failure{exit_for(s), msg};
}

/// Owns a JSON string returned by the library.
class Doc {
 public:
  Doc() = default;
  Doc(const Doc&) = delete;
  Doc& operator=(const Doc&) = delete;
  ~Doc() { pd_string_free(ptr_); }
  char** out() { return &ptr_; }
  std::string str() const { return ptr_ ? ptr_ : ""; }
  nlohmann::json json() const { return nlohmann::json::parse(str()); }

 private:
  char* ptr_ = nullptr;
};

class Form {
 public:
  Form(const std::string& path, int precision) { check(pd_form_load(read_file(path).c_str(), precision, &form_)); }
  Form(const Form&) = delete;
  Form& operator=(const Form&) = delete;
  ~Form() { pd_form_free(form_); }
  const pd_form* get() const { return form_; }

 private:
  pd_form* form_ = nullptr;
};

int report(const Options& o, const Doc& doc, const std::string& human, int code = kTrue) {
  std::cout << (o.json ? doc.str() : human) << "\n";
  return code;
}

int verdict_report(const Options& o, const Doc& doc, int verdict) {
  return report(o, doc, verdict ? "true" : "false", verdict ? kTrue : kFalse);
}

void warn_precision(const Options& o) {
  if (o.precision > 0 && o.precision < 8)
    std::cerr << "warning: precision " << o.precision << " leaves little room for decisions\n";
}

int oracle_mismatch(const std::string& what, const std::string& main, const std::string& oracle) {
  std::cerr << "oracle mismatch in " << what << ": main path " << main << ", oracle " << oracle << "\n";
  return kOracleMismatch;
}

int run_dual(const Options& o) {
  Doc doc;
  check(pd_dual(read_file(o.spec).c_str(), o.p, o.precision, doc.out()));
  if (o.json) return report(o, doc, "");
  const auto j = doc.json();
  std::cout << "rank " << j["rank"] << ", precision " << j["precision"] << "\n";
  if (j["exceptional"].empty()) std::cout << "no exceptional primes\n";
  for (const auto& e : j["exceptional"]) {
    std::cout << "p=" << e["p"] << ":";
    if (e.value("zero_row", false)) std::cout << " zero_row";
    for (const auto& r : e.value("rows", nlohmann::json::array())) {
      std::cout << " [";
      for (std::size_t i = 0; i < r.size(); ++i) std::cout << (i ? ", " : "") << r[i].get<std::string>();
      std::cout << "]";
    }
    std::cout << "\n";
  }
  return kTrue;
}

int run_member(const Options& o) {
  Form f(o.spec, o.precision);
  Doc doc;
  int v = 0;
  check(pd_member(f.get(), o.vec.c_str(), &v, doc.out()));
  return verdict_report(o, doc, v);
}

int run_metric(const Options& o) {
  Form f(o.spec, o.precision);
  Doc doc;
  check(pd_metric(f.get(), o.p, o.vec.c_str(), doc.out()));
  return report(o, doc, doc.json()["metric"].get<std::string>());
}

int run_divisible(const Options& o) {
  Form f(o.spec, o.precision);
  Doc doc;
  int v = 0;
  check(pd_divisible(f.get(), o.p, o.k, o.vec.c_str(), &v, doc.out()));
  if (o.oracle) {
    Doc od;
    int ov = 0;
    check(pd_oracle_divisible(f.get(), o.p, o.k, o.vec.c_str(), &ov, od.out()));
    if (ov != v) return oracle_mismatch("divisible", v ? "true" : "false", ov ? "true" : "false");
  }
  return verdict_report(o, doc, v);
}

int run_gp(const Options& o) {
  Form f(o.spec, o.precision);
  Doc doc;
  int v = 0;
  check(pd_in_gp(f.get(), o.p, o.vec.c_str(), &v, doc.out()));
  return verdict_report(o, doc, v);
}

int run_phi(const Options& o) {
  Form f(o.spec, o.precision);
  Doc doc;
  check(pd_phi(f.get(), o.p, o.vec.c_str(), doc.out()));
  const auto j = doc.json();
  std::string human = "(";
  for (const auto& c : j["coordinates"]) human += (human.size() > 1 ? ", " : "") + c.get<std::string>();
  return report(o, doc, human + ")");
}

int run_hom(const Options& o) {
  Form a(o.spec, o.precision), b(o.spec_b, o.precision);
  Doc doc;
  int v = 0;
  check(pd_hom(a.get(), b.get(), maybe_file(o.V).c_str(), &v, doc.out()));
  return verdict_report(o, doc, v);
}

int run_iso(const Options& o) {
  Form a(o.spec, o.precision), b(o.spec_b, o.precision);
  Doc doc;
  int v = 0;
  const std::string V = maybe_file(o.V);
  check(pd_iso(a.get(), b.get(), o.V.empty() ? nullptr : V.c_str(), &v, doc.out()));
  return verdict_report(o, doc, v);
}

int run_type(const Options& o) {
  Form f(o.spec, o.precision);
  Doc doc;
  check(pd_type(f.get(), doc.out()));
  return report(o, doc, doc.json()["display"].get<std::string>());
}

int run_quotient(const Options& o) {
  Form f(o.spec, o.precision);
  Doc doc;
  check(pd_quotient(f.get(), o.p, static_cast<int>(o.k), doc.out()));
  const std::string main = doc.json()["display"].get<std::string>();
  if (o.oracle) {
    Doc od;
    check(pd_oracle_quotient(f.get(), o.p, static_cast<int>(o.k), od.out()));
    const std::string ref = od.json()["display"].get<std::string>();
    if (ref != main) return oracle_mismatch("quotient", main, ref);
  }
  return report(o, doc, main);
}

int run_simple(const Options& o) {
  Form f(o.spec, o.precision);
  Doc doc;
  check(pd_simple(f.get(), o.p, doc.out()));
  return report(o, doc, doc.json()["simplicity"].get<std::string>());
}

int run_extend(const Options& o) {
  Form f(o.spec, o.precision);
  Doc doc;
  check(pd_extend(f.get(), o.p, o.gens.c_str(), o.values.c_str(), doc.out()));
  return report(o, doc, doc.json()["functional"].dump());
}

int run_admissible(const Options& o) {
  Form f(o.spec, o.precision);
  Doc doc;
  check(pd_admissible(f.get(), o.p, o.gens.c_str(), o.values.c_str(), o.at.c_str(), doc.out()));
  return report(o, doc, doc.json()["display"].get<std::string>());
}

int run_separate(const Options& o) {
  Form f(o.spec, o.precision);
  Doc doc;
  check(pd_separate(f.get(), o.p, o.gens.c_str(), o.at.c_str(), o.m, doc.out()));
  return report(o, doc, doc.json()["functional"].dump());
}

int run_validate(const Options& o) {
  Doc doc;
  int ok = 0;
  check(pd_form_validate(read_file(o.spec).c_str(), o.precision, &ok, doc.out()));
  const auto j = doc.json();
  std::string human = ok ? "ok" : "invalid";
  for (const auto& v : j["violations"])
    human += "\n  p=" + std::to_string(v["p"].get<unsigned long>()) + ": " + v["condition"].get<std::string>();
  return report(o, doc, human, ok ? kTrue : kFalse);
}

/// Vectors such as "-1,1" look like options to the parser; a leading "--" is
/// not convenient on the command line, so such arguments are rewritten to a
/// form the parser accepts and restored afterwards.
std::vector<std::string> protect_negative_args(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a.size() > 1 && a[0] == '-' && (std::isdigit(static_cast<unsigned char>(a[1])) != 0)) a = "\x01" + a;
    args.push_back(a);
  }
  return args;
}

std::string restore(std::string s) { return !s.empty() && s[0] == '\x01' ? s.substr(1) : s; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic duals, functionals and classification of torsion-free abelian groups of finite rank"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--precision", o.precision, "working precision N (default: from the input document, else 32)")
      ->check(CLI::Range(1, 100000));
  app.add_flag("--json", o.json, "print the machine-readable result");

  auto prime_opt = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--p", o.p, "prime");
    if (required) opt->required();
  };
  auto spec_arg = [&](CLI::App* c) { c->add_option("spec", o.spec, "group spec or inductive-limit spec (JSON)")->required(); };
  auto vec_arg = [&](CLI::App* c) { c->add_option("vector", o.vec, "comma-separated rationals, e.g. 1/5,1/5")->required(); };

  auto* dual = app.add_subcommand("dual", "factored form of an inductive limit union A^-n Z^r");
  spec_arg(dual);
  prime_opt(dual, false);

  auto* member = app.add_subcommand("member", "membership of a vector in the group");
  spec_arg(member);
  vec_arg(member);

  auto* metric = app.add_subcommand("metric", "p-adic distance of a vector to 0");
  spec_arg(metric);
  vec_arg(metric);
  prime_opt(metric, true);

  auto* div = app.add_subcommand("divisible", "whether a vector lies in p^k G");
  spec_arg(div);
  vec_arg(div);
  prime_opt(div, true);
  div->add_option("--k", o.k, "exponent")->required();
  div->add_flag("--oracle", o.oracle, "cross-check against the brute-force oracle");

  auto* gp = app.add_subcommand("gp", "whether a vector is indistinguishable from G_p at the working precision");
  spec_arg(gp);
  vec_arg(gp);
  prime_opt(gp, true);

  auto* phi = app.add_subcommand("phi", "coordinates of the double-dual image A_p v");
  spec_arg(phi);
  vec_arg(phi);
  prime_opt(phi, true);

  auto* hom = app.add_subcommand("hom", "verify that V maps G(A) into G(B)");
  hom->add_option("spec_a", o.spec, "source group")->required();
  hom->add_option("spec_b", o.spec_b, "target group")->required();
  hom->add_option("--V", o.V, "rank(B) x rank(A) matrix: JSON rows, identity, a rational, or @file")->required();

  auto* iso = app.add_subcommand("iso", "verify that V is an isomorphism G(A) -> G(B)");
  iso->add_option("spec_a", o.spec, "source group")->required();
  iso->add_option("spec_b", o.spec_b, "target group")->required();
  iso->add_option("--V", o.V, "witness matrix; omit for rank-one groups to decide by type");

  auto* type = app.add_subcommand("type", "type of a rank-one group");
  spec_arg(type);

  auto* quot = app.add_subcommand("quotient", "elementary divisors of G / p^k G");
  spec_arg(quot);
  prime_opt(quot, true);
  quot->add_option("--k", o.k, "exponent")->required();
  quot->add_flag("--oracle", o.oracle, "cross-check against the brute-force oracle");

  auto* simple = app.add_subcommand("simple", "p-simplicity of the group");
  spec_arg(simple);
  prime_opt(simple, true);

  auto* extend = app.add_subcommand("extend", "extend prescribed values on generators to a p-adic functional");
  spec_arg(extend);
  prime_opt(extend, true);
  extend->add_option("--gens", o.gens, "generators, e.g. \"1,0;0,1\"")->required();
  extend->add_option("--values", o.values, "values, comma-separated p-adic literals")->required();

  auto* adm = app.add_subcommand("admissible", "disk of admissible values at a point");
  spec_arg(adm);
  prime_opt(adm, true);
  adm->add_option("--gens", o.gens, "generators")->required();
  adm->add_option("--values", o.values, "values")->required();
  adm->add_option("--at", o.at, "evaluation point")->required();

  auto* sep = app.add_subcommand("separate", "functional separating a point from a subgroup at p^m");
  spec_arg(sep);
  prime_opt(sep, true);
  sep->add_option("--gens", o.gens, "subgroup generators")->required();
  sep->add_option("--at", o.at, "the point g")->required();
  sep->add_option("--m", o.m, "exponent m")->required();

  auto* val = app.add_subcommand("validate", "check the factored-form conditions");
  spec_arg(val);

  const auto args = protect_negative_args(argc, argv);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kParse;
  }
  for (auto* s : {&o.spec, &o.spec_b, &o.vec, &o.V, &o.gens, &o.values, &o.at}) *s = restore(*s);

  try {
    warn_precision(o);
    const CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "dual") return run_dual(o);
    if (name == "member") return run_member(o);
    if (name == "metric") return run_metric(o);
    if (name == "divisible") return run_divisible(o);
    if (name == "gp") return run_gp(o);
    if (name == "phi") return run_phi(o);
    if (name == "hom") return run_hom(o);
    if (name == "iso") return run_iso(o);
    if (name == "type") return run_type(o);
    if (name == "quotient") return run_quotient(o);
    if (name == "simple") return run_simple(o);
    if (name == "extend") return run_extend(o);
    if (name == "admissible") return run_admissible(o);
    if (name == "separate") return run_separate(o);
    if (name == "validate") return run_validate(o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
