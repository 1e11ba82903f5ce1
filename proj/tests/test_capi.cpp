#include <doctest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <thread>

#include "padicdual/padicdual.h"

using nlohmann::json;

namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(PADICDUAL_FIXTURES) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct FormHandle {
  pd_form* form = nullptr;
  explicit FormHandle(const std::string& fixture, int precision = 0) {
    REQUIRE(pd_form_load(read_fixture(fixture).c_str(), precision, &form) == PD_OK);
  }
  ~FormHandle() { pd_form_free(form); }
};

/// Takes ownership of a library string and parses it.
json take(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  pd_string_free(s);
  return j;
}

}  // namespace

TEST_CASE("library metadata") {
  CHECK(std::string(pd_version()).size() > 0);
  CHECK(std::string(pd_status_name(PD_ERR_PRECISION)) == "precision_exhausted");
  pd_string_free(nullptr);
}

TEST_CASE("dual of the favourite limit") {
  char* out = nullptr;
  REQUIRE(pd_dual(read_fixture("ex21.json").c_str(), 3, 3, &out) == PD_OK);
  const json j = take(out);
  CHECK(j["exceptional"][0]["rows"] == json::parse(R"([["1","7"]])"));
  CHECK(j["precision"] == 3);

  REQUIRE(pd_dual(read_fixture("identity.json").c_str(), 0, 0, &out) == PD_OK);
  CHECK(take(out)["exceptional"].empty());
  REQUIRE(pd_dual(read_fixture("ex21.json").c_str(), 5, 8, &out) == PD_OK);
  CHECK(take(out)["exceptional"][0]["rows"] == json::parse(R"([["1","0"],["0","1"]])"));
  CHECK(pd_dual(R"({"limit_matrix":[[1,2],[2,4]]})", 0, 0, &out) == PD_ERR_SINGULAR);
  CHECK(pd_dual("{", 0, 0, &out) == PD_ERR_PARSE);
  CHECK(std::string(pd_last_error()).size() > 0);
}

TEST_CASE("form handles") {
  FormHandle ttf("ttf.json");
  CHECK(pd_form_rank(ttf.form) == 2);
  CHECK(pd_form_precision(ttf.form) == 32);
  char* out = nullptr;
  REQUIRE(pd_form_to_json(ttf.form, 5, &out) == PD_OK);
  CHECK(take(out)["exceptional"].size() == 1);

  pd_form* bad = nullptr;
  CHECK(pd_form_load(R"({"rank":2,"exceptional":[{"p":3,"rows":[[1,1],[0,3]]}]})", 0, &bad) ==
        PD_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  int ok = 1;
  REQUIRE(pd_form_validate(R"({"rank":2,"exceptional":[{"p":3,"rows":[[1,1],[0,3]]}]})", 0, &ok, &out) == PD_OK);
  CHECK(ok == 0);
  CHECK(take(out)["violations"][0]["p"] == 3);
  CHECK(pd_form_load(nullptr, 0, &bad) != PD_OK);
}

TEST_CASE("membership, metric and divisibility") {
  FormHandle ttf("ttf.json");
  int verdict = -1;
  char* out = nullptr;
  for (const char* v : {"1/2,0", "0,1/3", "1/5,1/5"}) {
    REQUIRE(pd_member(ttf.form, v, &verdict, &out) == PD_OK);
    CHECK(verdict == 1);
    const json j = take(out);
    CHECK(j["verdict"] == true);
    CHECK(j.contains("checked_primes"));
  }
  REQUIRE(pd_member(ttf.form, "1/5,0", &verdict, &out) == PD_OK);
  CHECK(verdict == 0);
  pd_string_free(out);
  CHECK(pd_member(ttf.form, "1,2,3", &verdict, &out) == PD_ERR_DIMENSION);
  CHECK(pd_member(ttf.form, "x", &verdict, &out) == PD_ERR_PARSE);

  FormHandle fav("ex21.json");
  REQUIRE(pd_metric(fav.form, 3, "-1,1", &out) == PD_OK);
  const json m = take(out);
  CHECK(m["metric"] == "3^-1");
  CHECK(m["exact"] == true);
  CHECK(pd_metric(fav.form, 3, "1/3,0", &out) == PD_ERR_NOT_MEMBER);
  CHECK(pd_metric(fav.form, 4, "1,0", &out) == PD_ERR_INVALID_ARGUMENT);

  REQUIRE(pd_divisible(fav.form, 3, 2, "-7,1", &verdict, &out) == PD_OK);
  CHECK(verdict == 1);
  pd_string_free(out);
  REQUIRE(pd_oracle_divisible(fav.form, 3, 2, "-7,1", &verdict, &out) == PD_OK);
  CHECK(verdict == 1);
  pd_string_free(out);
  CHECK(pd_divisible(fav.form, 3, 40, "1,0", &verdict, &out) == PD_ERR_PRECISION);
  CHECK(pd_oracle_divisible(ttf.form, 3, 1, "1,0", &verdict, &out) == PD_ERR_INVALID_ARGUMENT);
  REQUIRE(pd_in_gp(fav.form, 3, "0,0", &verdict, &out) == PD_OK);
  CHECK(verdict == 1);
  pd_string_free(out);
}

TEST_CASE("structure queries") {
  FormHandle fav("ex21.json");
  char* out = nullptr;
  REQUIRE(pd_simple(fav.form, 3, &out) == PD_OK);
  CHECK(take(out)["simplicity"] == "simple_not_divisible");
  REQUIRE(pd_quotient(fav.form, 3, 2, &out) == PD_OK);
  CHECK(take(out)["display"] == "[9]");
  REQUIRE(pd_oracle_quotient(fav.form, 3, 2, &out) == PD_OK);
  CHECK(take(out)["display"] == "[9]");
  REQUIRE(pd_phi(fav.form, 3, "-1,1", &out) == PD_OK);
  CHECK(take(out)["coordinates"].size() == 1);

  FormHandle zhalf("zhalf.json");
  REQUIRE(pd_type(zhalf.form, &out) == PD_OK);
  CHECK(take(out)["display"] == "{2: inf}");
  CHECK(pd_type(fav.form, &out) == PD_ERR_INVALID_ARGUMENT);
}

TEST_CASE("classification") {
  FormHandle z("z.json"), nine("nine.json"), ttf("ttf.json"), zhalf("zhalf.json");
  int verdict = -1;
  char* out = nullptr;
  REQUIRE(pd_iso(z.form, nine.form, "1/9", &verdict, &out) == PD_OK);
  CHECK(verdict == 1);
  const json r = take(out);
  for (const char* key : {"verdict", "checked_primes", "min_margin", "precision"}) CHECK(r.contains(key));

  REQUIRE(pd_iso(z.form, nine.form, nullptr, &verdict, &out) == PD_OK);
  CHECK(verdict == 1);
  CHECK(take(out)["witness"] == "1/9");
  REQUIRE(pd_iso(z.form, zhalf.form, nullptr, &verdict, &out) == PD_OK);
  CHECK(verdict == 0);
  pd_string_free(out);
  CHECK(pd_iso(ttf.form, ttf.form, nullptr, &verdict, &out) == PD_ERR_INVALID_ARGUMENT);

  REQUIRE(pd_hom(ttf.form, ttf.form, "[[0,1],[1,0]]", &verdict, &out) == PD_OK);
  CHECK(verdict == 0);
  pd_string_free(out);
  REQUIRE(pd_hom(ttf.form, ttf.form, "identity", &verdict, &out) == PD_OK);
  CHECK(verdict == 1);
  pd_string_free(out);
  CHECK(pd_hom(ttf.form, z.form, "identity", &verdict, &out) == PD_ERR_DIMENSION);
}

TEST_CASE("functionals") {
  FormHandle fav("ex21.json"), ttf("ttf.json");
  char* out = nullptr;
  REQUIRE(pd_extend(fav.form, 3, "1,0", "1", &out) == PD_OK);
  const json f = take(out);
  CHECK(f["functional"]["coefficients"][0] == "1");
  CHECK(f["functional"]["precision"] == "3^32");
  CHECK(pd_extend(fav.form, 3, "1,0;-1,1", "1,1", &out) == PD_ERR_NOT_CONTRACTIVE);

  REQUIRE(pd_admissible(ttf.form, 5, "1,1", "0", "1,0", &out) == PD_OK);
  CHECK(take(out)["disk"]["kind"] == "ball");

  REQUIRE(pd_separate(fav.form, 3, "3,0;0,3", "1,0", 1, &out) == PD_OK);
  CHECK(take(out).contains("value_at_g"));
  CHECK(pd_separate(fav.form, 3, "1,0", "1,0", 1, &out) == PD_ERR_NOT_FOUND);

  REQUIRE(pd_evaluate(ttf.form, 5, "1", "1/5,1/5", &out) == PD_OK);
  CHECK(take(out)["value"] == "0+O(5^31)");
}

TEST_CASE("errors are reported per thread") {
  char* out = nullptr;
  CHECK(pd_dual("{", 0, 0, &out) == PD_ERR_PARSE);
  const std::string here = pd_last_error();
  std::string there;
  std::thread t([&] {
    pd_form* f = nullptr;
    CHECK(pd_form_load(R"({"rank":-1})", 0, &f) == PD_ERR_PARSE);
    there = pd_last_error();
  });
  t.join();
  CHECK(here == pd_last_error());
  CHECK(here != there);
}
