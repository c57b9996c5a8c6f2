#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bohr {

// alpha in N_0^n.  Ordered graded-lexicographically: by total degree, then
// lexicographically with larger leading exponents first (z1^2 < z1 z2 < z2^2).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : entries_(n, 0) {}
  MultiIndex(std::initializer_list<unsigned> entries) : entries_(entries) {}
  explicit MultiIndex(std::vector<unsigned> entries) : entries_(std::move(entries)) {}

  static MultiIndex unit(std::size_t n, std::size_t i, unsigned power = 1);

  std::size_t dim() const { return entries_.size(); }
  unsigned degree() const;
  unsigned operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<unsigned>& entries() const { return entries_; }
  bool is_zero() const { return degree() == 0; }

  // z^alpha and |z|^alpha.
  std::complex<double> monomial(std::span<const std::complex<double>> z) const;
  double monomial_abs(std::span<const double> moduli) const;

  // log(|alpha|^|alpha| / alpha^alpha), with 0^0 = 1.
  double log_multinomial_ratio() const;

  // "1,0,2"
  std::string to_string() const;
  static MultiIndex parse(std::string_view text);

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  std::vector<unsigned> entries_;
};

// All alpha in N_0^n with |alpha| = m, in graded-lex order.
std::vector<MultiIndex> indices_of_degree(std::size_t n, unsigned m);

// rho_alpha = (|alpha|^|alpha| / alpha^alpha)^{1/q}; 1 for q = inf.
double rho_alpha(const MultiIndex& alpha, double q);

}  // namespace bohr
