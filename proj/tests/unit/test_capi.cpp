#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "stepanov/stepanov.h"

using nlohmann::json;

namespace {

json take(char* s) {
  REQUIRE(s != nullptr);
  auto j = json::parse(s);
  stp_string_free(s);
  return j;
}

}  // namespace

TEST_CASE("norm through the C interface") {
  stp_function* u = nullptr;
  REQUIRE(stp_function_from_dsl("sin(2*pi*t)", 1000, -2, 2, nullptr, &u) == STP_OK);
  char* out = nullptr;
  REQUIRE(stp_norm(u, 2.0, &out) == STP_OK);
  const auto j = take(out);
  CHECK(j["type"] == "norm");
  CHECK(j["grid_sup"].get<double>() == doctest::Approx(0.7071067811865476).epsilon(1e-12));
  size_t dim = 0;
  CHECK(stp_function_dim(u, &dim) == STP_OK);
  CHECK(dim == 1);
  stp_function_free(u);
}

TEST_CASE("errors map to status codes with JSON detail") {
  stp_function* u = nullptr;
  CHECK(stp_function_from_dsl("sin(t", 10, 0, 1, nullptr, &u) == STP_ERR_PARSE);
  CHECK(u == nullptr);
  auto err = json::parse(stp_last_error());
  CHECK(err["offset"] == 5);
  CHECK(stp_function_from_dsl("ln(t)", 4, -1, 1, nullptr, &u) == STP_ERR_EVALUATION);
  err = json::parse(stp_last_error());
  CHECK(err["t"] == -1.0);
  CHECK(stp_norm(nullptr, 1.0, nullptr) == STP_ERR_NULL);
  CHECK(stp_function_from_dsl("t", 4, 0, 1, "l7", &u) == STP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("apply and hypothesis through handles") {
  stp_function* u = nullptr;
  stp_map* f = nullptr;
  REQUIRE(stp_function_from_catalog("sawtooth", "{}", 4, 0, 2, nullptr, &u) == STP_OK);
  REQUIRE(stp_map_from_dsl("2 * x", 1, 1.0, 1.0, nullptr, &f) == STP_OK);
  stp_function* v = nullptr;
  REQUIRE(stp_apply(f, u, &v) == STP_OK);
  char* out = nullptr;
  REQUIRE(stp_function_to_json(v, &out) == STP_OK);
  const auto j = take(out);
  CHECK(j["values"][1] == 0.5);
  stp_function_free(v);
  stp_map_free(f);

  REQUIRE(stp_map_from_catalog("identity", nullptr, 1, nullptr, &f) == STP_OK);
  REQUIRE(stp_hypothesis(f, "H1", nullptr, &out) == STP_OK);
  CHECK(take(out)["pass"] == true);
  CHECK(stp_hypothesis(f, "H9", nullptr, &out) == STP_ERR_INVALID_ARGUMENT);
  stp_map_free(f);
  stp_function_free(u);
}

TEST_CASE("divergent quotient of the exp-oscillation map") {
  stp_map* f = nullptr;
  REQUIRE(stp_map_from_catalog("section7", "{\"a\": \"1\"}", 1, nullptr, &f) == STP_OK);
  char* out = nullptr;
  REQUIRE(stp_hypothesis(f, "eq49", "{\"a\": \"1\"}", &out) == STP_OK);
  const auto j = take(out);
  CHECK(j["pass"] == false);
  CHECK(j["metrics"]["k"] == 10.0);
  const double expected = 1.0 + std::log(10.0 * std::numbers::pi) / std::log(1.05);
  CHECK(j["metrics"]["max_quotient"].get<double>() == doctest::Approx(expected).epsilon(1e-6));
  stp_map_free(f);
}

TEST_CASE("verify is reproducible") {
  char* a = nullptr;
  char* b = nullptr;
  int pass_a = 0, pass_b = 0;
  REQUIRE(stp_verify("certificates", 42, 0, &a, &pass_a) == STP_OK);
  REQUIRE(stp_verify("certificates", 42, 0, &b, &pass_b) == STP_OK);
  CHECK(std::string(a) == std::string(b));
  CHECK(pass_a == 1);
  stp_string_free(a);
  stp_string_free(b);
}

TEST_CASE("version string") { CHECK(std::string(stp_version()).size() > 0); }
