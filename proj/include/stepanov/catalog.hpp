#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "stepanov/grid.hpp"
#include "stepanov/nemytskii.hpp"

namespace stepanov::catalog {

using json = nlohmann::json;

/// Scalar catalog functions of t. Every entry accepts "amplitude" (default 1)
/// and "shift" (default 0, evaluates at t + shift).
///
///   sin2pi    sin(2 pi t)
///   quasi2    sin(2 pi t) + sin(2 sqrt(2) pi t)
///   sawtooth  frac(t)
///   levitan   sin(1 / (2 + cos t + cos(sqrt(2) t)))
///   spike     height on [center - width/2, center + width/2), else 0
///   step      1 on [2k, 2k+1), -1 on [2k+1, 2k+2)
///   noise     piecewise-constant uniform values in [-1, 1], "resolution" pieces per unit, keyed by "seed"
ScalarFn function(std::string_view name, const json& params = json::object());

std::vector<std::string> function_names();

/// Component i of the result is function(names[i], params[i]).
GridFunction sample_components(const std::vector<std::string>& names, const std::vector<json>& params, const GridSpec& spec,
                    NormKind kind = NormKind::L2);
GridFunction sample(std::string_view name, const json& params, const GridSpec& spec, NormKind kind = NormKind::L2);

/// Map catalog on R^dim.
///
///   identity              f(t, x) = x
///   constant-linear       f(t, x) = A x with "matrix" (default identity); L = operator norm of A
///   lipschitz-weighted    f(t, x) = L(t) g(x), "weight" a DSL string (default abs(sin(t)) + 0.1),
///                         "g" = "sin" or "clamp" (componentwise, to [-1, 1])
///   power-growth          f(x) = |x|^(p/q - 1) x with "p", "q"
///   exp-oscillation       f(t, x) = sin(a(t) e^|x|) x with "a" a DSL string (default 1), "p" = q; alias section7
///   periodic-coefficient  f(t, x) = s(t) x + 0.5 cos(2 pi t / T) e_1 with s a square wave of period "T"
///   comb-step             f(t, x) = c(t) [x_1 > 0] e_1 with c = 1 within "width"/2 of an integer, else 0
NemytskiiMap map(std::string_view name, const json& params, std::size_t dim, NormKind kind = NormKind::L2);

std::vector<std::string> map_names();

/// Operator norm of a matrix for the given vector norm (L2 via the largest singular value).
double operator_norm(const std::vector<std::vector<double>>& a, NormKind kind);

}  // namespace stepanov::catalog
