#include "stepanov/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "stepanov/error.hpp"

namespace stepanov::expr {

namespace {

struct FunctionInfo {
  std::string_view name;
  bool reduces;  // vector -> scalar
};

constexpr FunctionInfo kFunctions[] = {
    {"sin", false}, {"cos", false}, {"exp", false},  {"ln", false},    {"abs", false},
    {"sqrt", false}, {"frac", false}, {"floor", false}, {"norm", true},
};

const FunctionInfo* find_function(std::string_view name) {
  for (const auto& f : kFunctions)
    if (f.name == name) return &f;
  return nullptr;
}

class Parser {
 public:
  Parser(std::string_view src, const Context& ctx, std::vector<Warning>& warnings, bool& uses_x)
      : src_(src), ctx_(ctx), warnings_(warnings), uses_x_(uses_x) {}

  std::unique_ptr<Node> run() {
    auto node = expression();
    skip_space();
    if (pos_ != src_.size()) throw ParseError(pos_, "unexpected '" + std::string(1, src_[pos_]) + "'");
    return node;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) throw ParseError(pos_, std::string("expected '") + c + "' but input ended");
      throw ParseError(pos_, std::string("expected '") + c + "'");
    }
  }

  static std::unique_ptr<Node> make(NodeKind kind, std::size_t offset) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->offset = offset;
    return n;
  }

  std::unique_ptr<Node> binary(char op, std::unique_ptr<Node> lhs, std::unique_ptr<Node> rhs, std::size_t at) {
    auto n = make(NodeKind::Binary, lhs->offset);
    n->op = op;
    const Node& a = *lhs;
    const Node& b = *rhs;
    switch (op) {
      case '+':
      case '-':
        if (a.vector != b.vector || a.dim != b.dim)
          throw ParseError(at, std::string("type mismatch: operands of '") + op + "' must both be scalars or vectors of equal dimension");
        n->vector = a.vector;
        n->dim = a.dim;
        break;
      case '*':
        if (a.vector && b.vector) throw ParseError(at, "type mismatch: cannot multiply two vectors");
        n->vector = a.vector || b.vector;
        n->dim = std::max(a.dim, b.dim);
        break;
      case '/':
        if (b.vector) throw ParseError(at, "type mismatch: divisor must be a scalar");
        if (b.kind == NodeKind::Number && b.value == 0.0) warnings_.push_back({b.offset, "division by literal zero"});
        n->vector = a.vector;
        n->dim = a.dim;
        break;
      case '^':
        if (a.vector || b.vector) throw ParseError(at, "type mismatch: '^' needs scalar operands");
        break;
    }
    n->children.push_back(std::move(lhs));
    n->children.push_back(std::move(rhs));
    return n;
  }

  std::unique_ptr<Node> expression() {
    auto lhs = term();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('+')) lhs = binary('+', std::move(lhs), term(), at);
      else if (accept('-')) lhs = binary('-', std::move(lhs), term(), at);
      else return lhs;
    }
  }

  std::unique_ptr<Node> term() {
    auto lhs = factor();
    for (;;) {
      skip_space();
      const std::size_t at = pos_;
      if (accept('*')) lhs = binary('*', std::move(lhs), factor(), at);
      else if (accept('/')) lhs = binary('/', std::move(lhs), factor(), at);
      else return lhs;
    }
  }

  // Unary minus binds looser than '^', so -2^2 is -(2^2).
  std::unique_ptr<Node> factor() {
    skip_space();
    const std::size_t at = pos_;
    if (accept('-')) {
      auto n = make(NodeKind::Negate, at);
      auto child = factor();
      n->vector = child->vector;
      n->dim = child->dim;
      n->children.push_back(std::move(child));
      return n;
    }
    return power();
  }

  std::unique_ptr<Node> power() {
    auto lhs = base();
    skip_space();
    const std::size_t at = pos_;
    if (accept('^')) return binary('^', std::move(lhs), factor(), at);
    return lhs;
  }

  std::unique_ptr<Node> number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    auto n = make(NodeKind::Number, start);
    n->text = std::string(src_.substr(start, pos_ - start));
    if (n->text == ".") throw ParseError(start, "malformed number");
    n->value = std::stod(n->text);
    return n;
  }

  std::vector<std::unique_ptr<Node>> arguments() {
    std::vector<std::unique_ptr<Node>> args;
    if (accept(')')) return args;
    do {
      args.push_back(expression());
    } while (accept(','));
    expect(')');
    return args;
  }

  std::unique_ptr<Node> base() {
    skip_space();
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      auto n = make(NodeKind::Group, start);
      auto inner = expression();
      expect(')');
      n->vector = inner->vector;
      n->dim = inner->dim;
      n->children.push_back(std::move(inner));
      return n;
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_'))
      throw ParseError(pos_, "unexpected '" + std::string(1, c) + "'");
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    const std::string name(src_.substr(start, pos_ - start));

    if (name == "t") return make(NodeKind::T, start);
    if (name == "pi") return make(NodeKind::Pi, start);
    if (name == "x") {
      if (ctx_.x_dim == 0) throw ParseError(start, "unknown identifier 'x' (functions may depend on t only)");
      uses_x_ = true;
      if (accept('[')) {
        skip_space();
        const std::size_t at = pos_;
        std::size_t end = pos_;
        while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
        if (end == pos_) throw ParseError(at, "expected a component index");
        auto n = make(NodeKind::XIndex, start);
        n->index = std::stol(std::string(src_.substr(pos_, end - pos_)));
        pos_ = end;
        if (static_cast<std::size_t>(n->index) >= ctx_.x_dim)
          throw ParseError(at, "component index " + std::to_string(n->index) + " out of range for dimension " +
                                   std::to_string(ctx_.x_dim));
        expect(']');
        return n;
      }
      auto n = make(NodeKind::X, start);
      n->vector = true;
      n->dim = ctx_.x_dim;
      return n;
    }
    if (name == "vec") {
      expect('(');
      auto n = make(NodeKind::Vec, start);
      n->children = arguments();
      if (n->children.empty()) throw ParseError(start, "arity mismatch: vec needs at least one argument");
      for (const auto& a : n->children)
        if (a->vector) throw ParseError(a->offset, "type mismatch: vec components must be scalars");
      n->vector = true;
      n->dim = n->children.size();
      return n;
    }
    const auto* fn = find_function(name);
    if (!fn) throw ParseError(start, "unknown identifier '" + name + "'");
    skip_space();
    if (pos_ >= src_.size() || src_[pos_] != '(') throw ParseError(pos_, "expected '(' after '" + name + "'");
    ++pos_;
    auto n = make(NodeKind::Call, start);
    n->text = name;
    n->children = arguments();
    if (n->children.size() != 1)
      throw ParseError(start, "arity mismatch: " + name + " takes 1 argument, got " + std::to_string(n->children.size()));
    const Node& arg = *n->children.front();
    if (fn->reduces) {
      n->vector = false;
      n->dim = 1;
    } else {
      n->vector = arg.vector;
      n->dim = arg.dim;
    }
    const bool negated_literal = arg.kind == NodeKind::Negate && arg.children.front()->kind == NodeKind::Number;
    if (name == "ln" && ((arg.kind == NodeKind::Number && arg.value <= 0.0) || negated_literal))
      warnings_.push_back({arg.offset, "ln of non-positive literal"});
    return n;
  }

  std::string_view src_;
  const Context& ctx_;
  std::vector<Warning>& warnings_;
  bool& uses_x_;
  std::size_t pos_ = 0;
};

[[noreturn]] void domain_error(const Node& n, const std::string& what, double t) {
  throw EvaluationError(what + " at offset " + std::to_string(n.offset), t, -1, n.offset);
}

double apply_function(const Node& n, double v, double t) {
  const std::string& f = n.text;
  if (f == "sin") return std::sin(v);
  if (f == "cos") return std::cos(v);
  if (f == "exp") return std::exp(v);
  if (f == "ln") {
    if (!(v > 0.0)) domain_error(n, "ln of non-positive value", t);
    return std::log(v);
  }
  if (f == "abs") return std::fabs(v);
  if (f == "sqrt") {
    if (v < 0.0) domain_error(n, "sqrt of negative value", t);
    return std::sqrt(v);
  }
  if (f == "frac") return v - std::floor(v);
  if (f == "floor") return std::floor(v);
  domain_error(n, "unknown function '" + f + "'", t);
}

// Writes node's value into out (size node.dim).
void eval(const Node& n, double t, std::span<const double> x, std::span<double> out, NormKind kind) {
  switch (n.kind) {
    case NodeKind::Number: out[0] = n.value; return;
    case NodeKind::Pi: out[0] = std::numbers::pi; return;
    case NodeKind::T: out[0] = t; return;
    case NodeKind::X: std::copy(x.begin(), x.end(), out.begin()); return;
    case NodeKind::XIndex: out[0] = x[static_cast<std::size_t>(n.index)]; return;
    case NodeKind::Group: eval(*n.children[0], t, x, out, kind); return;
    case NodeKind::Negate:
      eval(*n.children[0], t, x, out, kind);
      for (double& v : out) v = -v;
      return;
    case NodeKind::Vec:
      for (std::size_t i = 0; i < n.children.size(); ++i) eval(*n.children[i], t, x, out.subspan(i, 1), kind);
      return;
    case NodeKind::Call: {
      const Node& arg = *n.children[0];
      if (n.text == "norm") {
        std::vector<double> tmp(arg.dim);
        eval(arg, t, x, tmp, kind);
        out[0] = norm(tmp, kind);
        return;
      }
      eval(arg, t, x, out, kind);
      for (double& v : out) v = apply_function(n, v, t);
      return;
    }
    case NodeKind::Binary: {
      const Node& a = *n.children[0];
      const Node& b = *n.children[1];
      std::vector<double> lhs(a.dim), rhs(b.dim);
      eval(a, t, x, lhs, kind);
      eval(b, t, x, rhs, kind);
      switch (n.op) {
        case '+':
          for (std::size_t i = 0; i < n.dim; ++i) out[i] = lhs[i] + rhs[i];
          return;
        case '-':
          for (std::size_t i = 0; i < n.dim; ++i) out[i] = lhs[i] - rhs[i];
          return;
        case '*':
          for (std::size_t i = 0; i < n.dim; ++i) out[i] = lhs[a.vector ? i : 0] * rhs[b.vector ? i : 0];
          return;
        case '/':
          if (rhs[0] == 0.0) domain_error(b, "division by zero", t);
          for (std::size_t i = 0; i < n.dim; ++i) out[i] = lhs[i] / rhs[0];
          return;
        case '^':
          out[0] = std::pow(lhs[0], rhs[0]);
          return;
      }
      return;
    }
  }
}

}  // namespace

Expression parse(std::string_view text, const Context& ctx) {
  Expression e;
  e.source_ = std::string(text);
  e.ctx_ = ctx;
  Parser parser(e.source_, e.ctx_, e.warnings_, e.uses_x_);
  e.root_ = parser.run();
  return e;
}

void Expression::evaluate(double t, std::span<const double> x, std::span<double> out) const {
  eval(*root_, t, x, out, ctx_.norm_kind);
}

double Expression::evaluate_scalar(double t) const {
  if (root_->vector) throw Error(ErrorCode::Shape, "expression is vector-valued");
  double out = 0.0;
  eval(*root_, t, {}, std::span<double>(&out, 1), ctx_.norm_kind);
  return out;
}

std::string pretty(const Node& n) {
  switch (n.kind) {
    case NodeKind::Number: return n.text;
    case NodeKind::Pi: return "pi";
    case NodeKind::T: return "t";
    case NodeKind::X: return "x";
    case NodeKind::XIndex: return "x[" + std::to_string(n.index) + "]";
    case NodeKind::Group: return "(" + pretty(*n.children[0]) + ")";
    case NodeKind::Negate: return "-" + pretty(*n.children[0]);
    case NodeKind::Binary: return pretty(*n.children[0]) + " " + n.op + " " + pretty(*n.children[1]);
    case NodeKind::Vec:
    case NodeKind::Call: {
      std::string s = n.kind == NodeKind::Vec ? "vec(" : n.text + "(";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) s += ", ";
        s += pretty(*n.children[i]);
      }
      return s + ")";
    }
  }
  return {};
}

std::string Expression::pretty() const { return expr::pretty(*root_); }

std::string strip_whitespace(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

GridFunction sample(const Expression& e, const GridSpec& spec, NormKind kind) {
  if (e.uses_x()) throw Error(ErrorCode::InvalidArgument, "a function of t cannot reference x");
  const std::size_t dim = e.dim();
  std::vector<double> values(spec.cells() * dim);
  for (std::size_t i = 0; i < spec.cells(); ++i) {
    const double t = spec.cell_start(i);
    std::span<double> out(values.data() + i * dim, dim);
    try {
      e.evaluate(t, {}, out);
    } catch (const EvaluationError& err) {
      throw EvaluationError(std::string(err.what()) + " (t = " + std::to_string(t) + ", cell " + std::to_string(i) + ")",
                            t, static_cast<long>(i), err.offset());
    }
    for (double v : out)
      if (!std::isfinite(v))
        throw EvaluationError("expression is not finite at t = " + std::to_string(t), t, static_cast<long>(i));
  }
  return GridFunction(spec, dim, std::move(values), kind);
}

NemytskiiMap to_map(const Expression& e, std::string name, double p, double q) {
  const std::size_t d_in = e.context().x_dim;
  if (d_in == 0) throw Error(ErrorCode::InvalidArgument, "map expressions need an input dimension");
  return NemytskiiMap(std::move(name), d_in, e.dim(),
                      [e](double t, std::span<const double> x, std::span<double> out) { e.evaluate(t, x, out); }, p,
                      q, e.context().norm_kind);
}

}  // namespace stepanov::expr
