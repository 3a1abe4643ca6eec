#include <cmath>
#include <numbers>

#include "doctest.h"
#include "stepanov/error.hpp"
#include "stepanov/expr.hpp"

using namespace stepanov;
using stepanov::expr::Context;
using stepanov::expr::parse;

namespace {

std::size_t offset_of(const char* text, Context ctx = {}) {
  try {
    parse(text, ctx);
  } catch (const ParseError& e) {
    return e.offset();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST_CASE("pretty printing round-trips modulo whitespace") {
  const Context ctx{2, NormKind::L2};
  for (const char* src : {"sin(2*pi*t)", "-x[0]^2 + 3.5e-1 * (t - 1)", "vec(x[1], -x[0]) / (1 + norm(x))",
                          "2^3^2", "exp( -abs(t) )*frac(t)", "((t))", "- - t", "sqrt(abs(x))"}) {
    const auto e = parse(src, ctx);
    CHECK(expr::strip_whitespace(e.pretty()) == expr::strip_whitespace(src));
    CHECK(parse(e.pretty(), ctx).pretty() == e.pretty());
  }
}

TEST_CASE("precedence and associativity") {
  CHECK(parse("2^3^2").evaluate_scalar(0.0) == 512.0);
  CHECK(parse("-2^2").evaluate_scalar(0.0) == -4.0);
  CHECK(parse("1 - 2 - 3").evaluate_scalar(0.0) == -4.0);
  CHECK(parse("8 / 4 / 2").evaluate_scalar(0.0) == 1.0);
  CHECK(parse("2 * pi").evaluate_scalar(0.0) == 2.0 * std::numbers::pi);
  CHECK(parse("floor(t) + frac(t)").evaluate_scalar(-1.25) == -1.25);
}

TEST_CASE("frac sampled on four cells") {
  const auto u = expr::sample(parse("frac(t)"), GridSpec(4, 0, 1));
  CHECK(std::vector<double>(u.values().begin(), u.values().end()) == std::vector<double>{0.0, 0.25, 0.5, 0.75});
}

TEST_CASE("types and dimensions") {
  const Context ctx{3, NormKind::L2};
  const auto v = parse("vec(x[0], t, 1)", ctx);
  CHECK(v.is_vector());
  CHECK(v.dim() == 3);
  CHECK(parse("x * 2", ctx).dim() == 3);
  CHECK_FALSE(parse("norm(x)", ctx).is_vector());
  CHECK(parse("x[2]", ctx).uses_x());
  CHECK_FALSE(parse("sin(t)", ctx).uses_x());
  std::vector<double> out(1);
  parse("norm(x)", {2, NormKind::L1}).evaluate(0.0, std::vector<double>{3.0, -4.0}, out);
  CHECK(out[0] == 7.0);
}

TEST_CASE("parse errors carry byte offsets") {
  const Context ctx{2, NormKind::L2};
  CHECK(offset_of("1 + ") == 4);
  CHECK(offset_of("foo(t)") == 0);
  CHECK(offset_of("sin(t") == 5);
  CHECK(offset_of("t $ 2") == 2);
  CHECK(offset_of("x + 1") == 0);
  CHECK(offset_of("x[2]", ctx) == 2);
  CHECK(offset_of("x + vec(1, 2, 3)", ctx) == 2);
}

TEST_CASE("warnings for literal hazards") {
  CHECK(parse("1 / 0").warnings().size() == 1);
  CHECK(parse("ln(-1) + t").warnings().size() == 1);
  CHECK(parse("ln(t)").warnings().empty());
}

TEST_CASE("runtime errors locate the failing sample") {
  const auto e = parse("ln(t)");
  try {
    expr::sample(e, GridSpec(4, -1, 1));
    FAIL("expected an evaluation error");
  } catch (const EvaluationError& err) {
    CHECK(err.t() == -1.0);
    CHECK(err.cell() == 0);
  }
  CHECK_THROWS_AS(parse("1 / t").evaluate_scalar(0.0), EvaluationError);
  CHECK_THROWS_AS(parse("sqrt(t)").evaluate_scalar(-1.0), EvaluationError);
}

TEST_CASE("expressions become maps") {
  const auto f = expr::to_map(parse("sin(t) * x", {2, NormKind::L2}), "m", 2.0, 2.0);
  CHECK(f.d_in() == 2);
  CHECK(f.d_out() == 2);
  const auto y = f(std::numbers::pi / 2, std::vector<double>{1.0, -2.0});
  CHECK(y[0] == doctest::Approx(1.0));
  CHECK(y[1] == doctest::Approx(-2.0));
}
