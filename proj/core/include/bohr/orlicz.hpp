#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace bohr {

namespace detail {
struct OrliczExpr;
}

// An Orlicz function psi: [0, inf) -> [0, inf) given as an expression over
// the variable `x`, nonnegative numbers, `+`, `*`, `^` (numeric exponent) and
// parentheses, e.g. "x^2", "x^2+x^3", "2*x^1.5".  Subtraction is not part of
// the grammar, so every accepted expression is nondecreasing on [0, inf).
//
// Construction validates psi(0) = 0, strict monotonicity and convexity on a
// geometric sample grid, and the Delta_2 condition psi(2a) <= C psi(a).
class OrliczFunction {
 public:
  explicit OrliczFunction(std::string_view expression,
                          std::optional<double> delta2_bound = std::nullopt);

  double operator()(double x) const;

  // Smallest x >= 0 with |psi(x) - y| <= 1e-12 * max(1, y), by monotone
  // bisection on a geometrically grown bracket.
  double inverse(double y) const;

  const std::string& expression() const { return expression_; }
  double delta2_bound() const { return delta2_; }
  // True when the bound was supplied by the user rather than sampled.
  bool delta2_declared() const { return delta2_declared_; }

 private:
  std::string expression_;
  std::shared_ptr<const detail::OrliczExpr> root_;
  double delta2_ = 0.0;
  bool delta2_declared_ = false;
};

}  // namespace bohr
