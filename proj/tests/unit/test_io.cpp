#include <sstream>

#include "doctest.h"
#include "stepanov/catalog.hpp"
#include "stepanov/error.hpp"
#include "stepanov/io.hpp"

using namespace stepanov;

TEST_CASE("grid function JSON round trip is exact") {
  const GridSpec spec(7, -2, 3);
  const auto u = catalog::sample_components({"quasi2", "levitan"}, {{}, {}}, spec, NormKind::Linf);
  const auto j = io::to_json(u);
  CHECK(io::grid_function_from_json(j) == u);
  CHECK(io::grid_function_from_json(io::json::parse(j.dump())) == u);
}

TEST_CASE("sequence and Bochner function round trips") {
  const GridSpec spec(5, -2, 2);
  const auto u = catalog::sample("sin2pi", {}, spec);
  const auto seq = discrete_bochner(u, 3.0);
  CHECK(io::bochner_sequence_from_json(io::json::parse(io::to_json(seq).dump())) == seq);
  const auto v = bochner(u);
  const auto back = io::bochner_function_from_json(io::json::parse(io::to_json(v).dump()));
  CHECK(left_inverse(back) == u);
}

TEST_CASE("non-finite reals serialize as null") {
  HypothesisReport r;
  r.max_violation = INFINITY;
  const auto j = io::to_json(r);
  CHECK(j["max_violation"].is_null());
  CHECK(j["witness"].is_null());
}

TEST_CASE("envelope tags type and version") {
  const auto j = io::envelope("norm", {{"lower", 1.0}});
  CHECK(j["schema_version"] == io::kSchemaVersion);
  CHECK(j["type"] == "norm");
  CHECK(j["lower"] == 1.0);
}

TEST_CASE("CSV round trip") {
  const GridSpec spec(4, -1, 2);
  const auto u = catalog::sample_components({"sawtooth", "step"}, {{}, {}}, spec);
  std::stringstream ss;
  io::write_csv(ss, u);
  CHECK(io::read_csv(ss) == u);
}

TEST_CASE("CSV alignment errors") {
  const auto code_of = [](const std::string& text) {
    std::istringstream in(text);
    try {
      io::read_csv(in);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of("t,x_1\n0.5,1\n1,2\n1.5,3\n2,4\n") == ErrorCode::Alignment);
  CHECK(code_of("t,x_1\n0,1\n0.5,2\n1,3\n") == ErrorCode::Alignment);
  CHECK(code_of("t,x_1\n0,1\n0.5,2\n1.25,3\n1.5,4\n") == ErrorCode::Alignment);
  std::istringstream good("t,x_1\n0,1\n0.5,2\n");
  CHECK(io::read_csv(good).spec() == GridSpec(2, 0, 1));
}
