#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "stepanov/grid.hpp"
#include "stepanov/nemytskii.hpp"

namespace stepanov::expr {

enum class NodeKind { Number, Pi, T, X, XIndex, Call, Vec, Negate, Binary, Group };

struct Node {
  NodeKind kind = NodeKind::Number;
  std::size_t offset = 0;     // byte offset of the node's first token
  std::string text;           // literal spelling for numbers, function name for calls
  char op = 0;                // '+', '-', '*', '/', '^' for Binary
  double value = 0.0;         // parsed number
  long index = 0;             // component for XIndex
  std::size_t dim = 1;        // result dimension
  bool vector = false;        // false for scalars even when dim == 1
  std::vector<std::unique_ptr<Node>> children;
};

/// What the free variable x means while parsing.
struct Context {
  std::size_t x_dim = 0;      // 0: x is not allowed (functions of t only)
  NormKind norm_kind = NormKind::L2;
};

struct Warning {
  std::size_t offset;
  std::string message;
};

/// Typed syntax tree. Copying shares the tree.
class Expression {
 public:
  const Node& root() const noexcept { return *root_; }
  const std::string& source() const noexcept { return source_; }
  const Context& context() const noexcept { return ctx_; }
  const std::vector<Warning>& warnings() const noexcept { return warnings_; }

  /// Output dimension; 1 for scalar expressions.
  std::size_t dim() const noexcept { return root_->dim; }
  bool is_vector() const noexcept { return root_->vector; }
  bool uses_x() const noexcept { return uses_x_; }

  /// Evaluates at (t, x) into out, which must hold dim() values.
  void evaluate(double t, std::span<const double> x, std::span<double> out) const;
  double evaluate_scalar(double t) const;

  std::string pretty() const;

 private:
  friend Expression parse(std::string_view text, const Context& ctx);
  std::shared_ptr<const Node> root_;
  std::string source_;
  Context ctx_;
  std::vector<Warning> warnings_;
  bool uses_x_ = false;
};

/// expr := term (('+'|'-') term)*; term := factor (('*'|'/') factor)*;
/// factor := '-' factor | power; power := base ('^' factor)?.
Expression parse(std::string_view text, const Context& ctx = {});

/// Pretty-printed tree; equals the source up to whitespace.
std::string pretty(const Node& node);

/// Samples a function of t on the grid's left endpoints.
GridFunction sample(const Expression& e, const GridSpec& spec, NormKind kind = NormKind::L2);

/// A map f(t, x) with x of dimension ctx.x_dim.
NemytskiiMap to_map(const Expression& e, std::string name, double p = 1.0, double q = 1.0);

/// Strips ASCII whitespace; used for round-trip comparisons.
std::string strip_whitespace(std::string_view s);

}  // namespace stepanov::expr
