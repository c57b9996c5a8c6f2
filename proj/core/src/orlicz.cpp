#include "bohr/orlicz.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "bohr/error.hpp"

namespace bohr {
namespace detail {

struct OrliczExpr {
  enum class Op { constant, variable, add, mul, pow };
  Op op = Op::constant;
  double value = 0.0;  // constant, or exponent for pow
  std::vector<std::unique_ptr<OrliczExpr>> args;

  double eval(double x) const {
    switch (op) {
      case Op::constant:
        return value;
      case Op::variable:
        return x;
      case Op::add: {
        double s = 0.0;
        for (const auto& a : args) s += a->eval(x);
        return s;
      }
      case Op::mul: {
        double s = 1.0;
        for (const auto& a : args) s *= a->eval(x);
        return s;
      }
      case Op::pow:
        return std::pow(args.front()->eval(x), value);
    }
    return 0.0;
  }
};

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::unique_ptr<OrliczExpr> parse() {
    auto e = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return e;
  }

 private:
  std::unique_ptr<OrliczExpr> sum() {
    auto first = product();
    skip_space();
    if (!peek('+')) return first;
    auto node = std::make_unique<OrliczExpr>();
    node->op = OrliczExpr::Op::add;
    node->args.push_back(std::move(first));
    while (accept('+')) node->args.push_back(product());
    return node;
  }

  std::unique_ptr<OrliczExpr> product() {
    auto first = power();
    skip_space();
    if (!peek('*')) return first;
    auto node = std::make_unique<OrliczExpr>();
    node->op = OrliczExpr::Op::mul;
    node->args.push_back(std::move(first));
    while (accept('*')) node->args.push_back(power());
    return node;
  }

  std::unique_ptr<OrliczExpr> power() {
    auto base = primary();
    if (!accept('^')) return base;
    const double exponent = number();
    if (exponent <= 0.0) fail("exponent must be positive");
    auto node = std::make_unique<OrliczExpr>();
    node->op = OrliczExpr::Op::pow;
    node->value = exponent;
    node->args.push_back(std::move(base));
    return node;
  }

  std::unique_ptr<OrliczExpr> primary() {
    skip_space();
    if (accept('(')) {
      auto e = sum();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    auto node = std::make_unique<OrliczExpr>();
    if (accept('x')) {
      node->op = OrliczExpr::Op::variable;
      return node;
    }
    node->op = OrliczExpr::Op::constant;
    node->value = number();
    return node;
  }

  double number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.' || text_[pos_] == 'e' ||
            (pos_ > start && (text_[pos_] == '-') && text_[pos_ - 1] == 'e')))
      ++pos_;
    if (start == pos_) fail("expected a number or x");
    const std::string token(text_.substr(start, pos_ - start));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      fail("malformed number '" + token + "'");
    }
    if (used != token.size() || !std::isfinite(v) || v < 0.0)
      fail("malformed number '" + token + "'");
    return v;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("orlicz expression '" + std::string(text_) + "': " + what +
                          " at position " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Geometric grid 2^{-20} .. 2^{20}, four points per octave.
std::vector<double> sample_grid() {
  std::vector<double> g;
  for (int j = -80; j <= 80; ++j) g.push_back(std::exp2(j / 4.0));
  return g;
}

}  // namespace
}  // namespace detail

OrliczFunction::OrliczFunction(std::string_view expression,
                               std::optional<double> delta2_bound) {
  for (char c : expression)
    if (!std::isspace(static_cast<unsigned char>(c))) expression_.push_back(c);
  if (expression_.empty()) throw ValidationError("orlicz expression is empty");
  root_ = detail::Parser(expression_).parse();

  const auto& psi = *this;
  if (psi(0.0) != 0.0) throw ValidationError("orlicz function must satisfy psi(0) = 0");

  const auto grid = detail::sample_grid();
  double prev = 0.0;
  for (double x : grid) {
    const double y = psi(x);
    if (!std::isfinite(y) || !(y > prev))
      throw ValidationError("orlicz function '" + expression_ +
                            "' is not strictly increasing on the sample grid");
    prev = y;
  }
  // Convexity: midpoint test on adjacent grid triples.
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double a = grid[i], b = grid[i + 1];
    const double mid = psi(0.5 * (a + b));
    const double chord = 0.5 * (psi(a) + psi(b));
    if (mid > chord * (1.0 + 1e-12))
      throw ValidationError("orlicz function '" + expression_ + "' is not convex");
  }

  double ratio = 0.0;
  for (double x : grid) ratio = std::max(ratio, psi(2.0 * x) / psi(x));
  if (delta2_bound) {
    if (!(*delta2_bound > 0.0)) throw ValidationError("delta2 bound must be positive");
    if (ratio > *delta2_bound * (1.0 + 1e-12))
      throw ValidationError("orlicz function '" + expression_ +
                            "' violates the declared Delta_2 bound (sampled ratio " +
                            std::to_string(ratio) + ")");
    delta2_ = *delta2_bound;
    delta2_declared_ = true;
  } else {
    delta2_ = ratio;
  }
}

double OrliczFunction::operator()(double x) const { return root_->eval(x); }

double OrliczFunction::inverse(double y) const {
  if (!(y >= 0.0) || !std::isfinite(y))
    throw ValidationError("orlicz inverse needs a finite y >= 0");
  if (y == 0.0) return 0.0;
  const auto& psi = *this;
  const double tol = 1e-12 * std::max(1.0, y);

  double lo = 0.0, hi = 1.0;
  int grow = 0;
  while (psi(hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (++grow > 2000 || !std::isfinite(hi))
      throw NumericError("orlicz inverse: cannot bracket y = " + std::to_string(y));
  }
  if (lo == 0.0) {
    // shrink the lower end so that psi(lo) < y
    lo = 1.0;
    int shrink = 0;
    while (psi(lo) >= y) {
      hi = lo;
      lo *= 0.5;
      if (++shrink > 2000) throw NumericError("orlicz inverse: cannot bracket from below");
    }
  }
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = psi(mid);
    if (std::abs(v - y) <= tol) return mid;
    if (v < y)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  const double x = 0.5 * (lo + hi);
  if (std::abs(psi(x) - y) > tol)
    throw NumericError("orlicz inverse did not reach tolerance for y = " + std::to_string(y));
  return x;
}

}  // namespace bohr
