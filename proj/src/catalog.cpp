#include "stepanov/catalog.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "stepanov/error.hpp"
#include "stepanov/expr.hpp"
#include "stepanov/random.hpp"

namespace stepanov::catalog {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double number(const json& params, const char* key, double fallback) {
  if (!params.is_object() || !params.contains(key)) return fallback;
  const auto& v = params.at(key);
  if (!v.is_number()) throw Error(ErrorCode::InvalidArgument, std::string("parameter '") + key + "' must be a number");
  return v.get<double>();
}

std::string text(const json& params, const char* key, std::string fallback) {
  if (!params.is_object() || !params.contains(key)) return fallback;
  const auto& v = params.at(key);
  if (v.is_number()) return v.dump();
  if (!v.is_string()) throw Error(ErrorCode::InvalidArgument, std::string("parameter '") + key + "' must be a string");
  return v.get<std::string>();
}

ScalarFn dsl_scalar(const std::string& source) {
  auto e = expr::parse(source);
  if (e.is_vector()) throw Error(ErrorCode::InvalidArgument, "expected a scalar expression, got '" + source + "'");
  return [e](double t) { return e.evaluate_scalar(t); };
}

ScalarFn base_function(std::string_view name, const json& params) {
  if (name == "sin2pi") return [](double t) { return std::sin(kTwoPi * t); };
  if (name == "quasi2")
    return [](double t) { return std::sin(kTwoPi * t) + std::sin(kTwoPi * std::numbers::sqrt2 * t); };
  if (name == "sawtooth") return [](double t) { return t - std::floor(t); };
  if (name == "levitan")
    return [](double t) { return std::sin(1.0 / (2.0 + std::cos(t) + std::cos(std::numbers::sqrt2 * t))); };
  if (name == "spike") {
    const double center = number(params, "center", 0.0);
    const double width = number(params, "width", 0.25);
    const double height = number(params, "height", 1.0);
    if (!(width > 0.0)) throw Error(ErrorCode::InvalidArgument, "spike width must be > 0");
    return [=](double t) { return t >= center - width / 2 && t < center + width / 2 ? height : 0.0; };
  }
  if (name == "step")
    return [](double t) { return std::fmod(std::floor(t), 2.0) == 0.0 ? 1.0 : -1.0; };
  if (name == "noise") {
    const auto seed = static_cast<std::uint64_t>(number(params, "seed", 0.0));
    const double resolution = number(params, "resolution", 4.0);
    if (!(resolution >= 1.0)) throw Error(ErrorCode::InvalidArgument, "noise resolution must be >= 1");
    return [=](double t) {
      const auto piece = static_cast<std::int64_t>(std::floor(t * resolution));
      Rng rng(Rng::mix(seed, static_cast<std::uint64_t>(piece)));
      return rng.uniform(-1.0, 1.0);
    };
  }
  throw Error(ErrorCode::InvalidArgument, "unknown catalog function '" + std::string(name) + "'");
}

std::vector<std::vector<double>> matrix_param(const json& params, std::size_t dim) {
  std::vector<std::vector<double>> a(dim, std::vector<double>(dim, 0.0));
  if (!params.is_object() || !params.contains("matrix")) {
    for (std::size_t i = 0; i < dim; ++i) a[i][i] = 1.0;
    return a;
  }
  const auto& m = params.at("matrix");
  if (!m.is_array() || m.size() != dim)
    throw Error(ErrorCode::Shape, "matrix must have " + std::to_string(dim) + " rows");
  for (std::size_t i = 0; i < dim; ++i) {
    if (!m[i].is_array() || m[i].size() != dim)
      throw Error(ErrorCode::Shape, "matrix rows must have " + std::to_string(dim) + " entries");
    for (std::size_t j = 0; j < dim; ++j) a[i][j] = m[i][j].get<double>();
  }
  return a;
}

}  // namespace

ScalarFn function(std::string_view name, const json& params) {
  auto base = base_function(name, params);
  const double amplitude = number(params, "amplitude", 1.0);
  const double shift = number(params, "shift", 0.0);
  if (amplitude == 1.0 && shift == 0.0) return base;
  return [base, amplitude, shift](double t) { return amplitude * base(t + shift); };
}

std::vector<std::string> function_names() {
  return {"sin2pi", "quasi2", "sawtooth", "levitan", "spike", "step", "noise"};
}

GridFunction sample_components(const std::vector<std::string>& names, const std::vector<json>& params, const GridSpec& spec,
                    NormKind kind) {
  if (names.empty()) throw Error(ErrorCode::Shape, "need at least one component");
  if (params.size() != names.size()) throw Error(ErrorCode::Shape, "one parameter object per component");
  std::vector<ScalarFn> fns;
  for (std::size_t i = 0; i < names.size(); ++i) fns.push_back(function(names[i], params[i]));
  return GridFunction::sample(spec, fns.size(), kind, [&](double t, std::span<double> out) {
    for (std::size_t i = 0; i < fns.size(); ++i) out[i] = fns[i](t);
  });
}

GridFunction sample(std::string_view name, const json& params, const GridSpec& spec, NormKind kind) {
  return sample_components(std::vector<std::string>{std::string(name)}, std::vector<json>{params}, spec, kind);
}

double operator_norm(const std::vector<std::vector<double>>& a, NormKind kind) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a.front().size() : 0;
  double best = 0.0;
  switch (kind) {
    case NormKind::L1:
      for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += std::fabs(a[i][j]);
        best = std::max(best, s);
      }
      return best;
    case NormKind::Linf:
      for (const auto& row : a) {
        double s = 0.0;
        for (double v : row) s += std::fabs(v);
        best = std::max(best, s);
      }
      return best;
    case NormKind::L2: {
      Eigen::MatrixXd m(rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(static_cast<long>(i), static_cast<long>(j)) = a[i][j];
      if (m.size() == 0) return 0.0;
      return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
    }
  }
  return best;
}

NemytskiiMap map(std::string_view name, const json& params, std::size_t dim, NormKind kind) {
  if (dim < 1) throw Error(ErrorCode::Shape, "map dimension must be >= 1");
  const auto constant = [](double c) -> ScalarFn { return [c](double) { return c; }; };

  if (name == "identity") {
    NemytskiiMap f("identity", dim, dim,
                   [](double, std::span<const double> x, std::span<double> out) { std::copy(x.begin(), x.end(), out.begin()); },
                   1.0, 1.0, kind);
    f.growth = GrowthBound{1.0, constant(0.0), "|x|"};
    f.lipschitz = LipschitzWeight{constant(1.0), INFINITY, "1"};
    f.period = 1.0;
    f.autonomous = true;
    return f;
  }

  if (name == "constant-linear") {
    const auto a = matrix_param(params, dim);
    const double l = operator_norm(a, kind);
    NemytskiiMap f("constant-linear", dim, dim,
                   [a](double, std::span<const double> x, std::span<double> out) {
                     for (std::size_t i = 0; i < a.size(); ++i) {
                       double s = 0.0;
                       for (std::size_t j = 0; j < x.size(); ++j) s += a[i][j] * x[j];
                       out[i] = s;
                     }
                   },
                   1.0, 1.0, kind);
    f.growth = GrowthBound{l, constant(0.0), "|A| |x|"};
    f.lipschitz = LipschitzWeight{constant(l), INFINITY, "operator norm of A"};
    f.period = 1.0;
    f.autonomous = true;
    return f;
  }

  if (name == "lipschitz-weighted") {
    const std::string weight_src = text(params, "weight", "abs(sin(t)) + 0.1");
    const std::string g = text(params, "g", "sin");
    if (g != "sin" && g != "clamp") throw Error(ErrorCode::InvalidArgument, "g must be 'sin' or 'clamp'");
    const bool clamp = g == "clamp";
    auto weight = dsl_scalar(weight_src);
    NemytskiiMap f("lipschitz-weighted", dim, dim,
                   [weight, clamp](double t, std::span<const double> x, std::span<double> out) {
                     const double l = weight(t);
                     for (std::size_t i = 0; i < x.size(); ++i)
                       out[i] = l * (clamp ? std::clamp(x[i], -1.0, 1.0) : std::sin(x[i]));
                   },
                   1.0, 1.0, kind);
    // |L(t) g(x)| <= L(t) |x|, so a = sup L serves as the growth constant.
    f.growth = GrowthBound{number(params, "weight_bound", 1.1), constant(0.0), "sup L times |x|"};
    f.lipschitz = LipschitzWeight{weight, number(params, "r", 2.0), weight_src};
    return f;
  }

  if (name == "power-growth") {
    const double p = number(params, "p", 2.0);
    const double q = number(params, "q", 1.0);
    const double e = p / q - 1.0;
    const double b = number(params, "b", 1.0);
    NemytskiiMap f("power-growth", dim, dim,
                   [e, kind](double, std::span<const double> x, std::span<double> out) {
                     const double r = norm(x, kind);
                     const double s = r == 0.0 ? 0.0 : std::pow(r, e);
                     for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i];
                   },
                   p, q, kind);
    f.growth = GrowthBound{1.0, constant(b), "|x|^(p/q)"};
    if (p == q) f.lipschitz = LipschitzWeight{constant(1.0), INFINITY, "1"};
    f.period = 1.0;
    f.autonomous = true;
    return f;
  }

  if (name == "exp-oscillation" || name == "section7") {
    const std::string a_src = text(params, "a", "1");
    const double p = number(params, "p", 2.0);
    auto a = dsl_scalar(a_src);
    NemytskiiMap f("exp-oscillation", dim, dim,
                   [a, kind](double t, std::span<const double> x, std::span<double> out) {
                     const double s = std::sin(a(t) * std::exp(norm(x, kind)));
                     for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i];
                   },
                   p, p, kind);
    f.growth = GrowthBound{1.0, constant(0.0), "|x|"};
    return f;
  }

  if (name == "periodic-coefficient") {
    const double period = number(params, "T", 1.0);
    if (!(period > 0.0)) throw Error(ErrorCode::InvalidArgument, "T must be > 0");
    const auto square = [period](double t) {
      const double phase = t / period - std::floor(t / period);
      return phase < 0.5 ? 1.0 : 0.5;
    };
    NemytskiiMap f("periodic-coefficient", dim, dim,
                   [square, period](double t, std::span<const double> x, std::span<double> out) {
                     const double s = square(t);
                     for (std::size_t i = 0; i < x.size(); ++i) out[i] = s * x[i];
                     out[0] += 0.5 * std::cos(kTwoPi * t / period);
                   },
                   1.0, 1.0, kind);
    f.growth = GrowthBound{1.0, [period](double t) { return 0.5 * std::fabs(std::cos(kTwoPi * t / period)); },
                           "|x| + 0.5 |cos(2 pi t / T)|"};
    f.lipschitz = LipschitzWeight{square, INFINITY, "square wave"};
    f.period = period;
    return f;
  }

  if (name == "comb-step") {
    const double width = number(params, "width", 0.25);
    NemytskiiMap f("comb-step", dim, dim,
                   [width](double t, std::span<const double> x, std::span<double> out) {
                     const double gap = std::fabs(t - std::round(t));
                     std::fill(out.begin(), out.end(), 0.0);
                     if (gap < width / 2 && x[0] > 0.0) out[0] = 1.0;
                   },
                   1.0, 1.0, kind);
    f.growth = GrowthBound{0.0, constant(1.0), "1"};
    f.period = 1.0;
    return f;
  }

  throw Error(ErrorCode::InvalidArgument, "unknown catalog map '" + std::string(name) + "'");
}

std::vector<std::string> map_names() {
  return {"identity", "constant-linear", "lipschitz-weighted", "power-growth", "exp-oscillation",
          "periodic-coefficient", "comb-step"};
}

}  // namespace stepanov::catalog
