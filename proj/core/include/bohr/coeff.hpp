#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace bohr {

// Shape of a coefficient: a complex scalar, or a k x k complex matrix.
struct CoeffKind {
  bool matrix = false;
  std::size_t k = 1;

  static CoeffKind scalar() { return {}; }
  static CoeffKind square(std::size_t k);

  std::string to_string() const;
  friend bool operator==(const CoeffKind&, const CoeffKind&) = default;
};

// An element of the coefficient algebra: C or the k x k matrices M_k(C),
// stored row-major.
class CoeffValue {
 public:
  CoeffValue() = default;
  CoeffValue(std::complex<double> scalar);  // NOLINT: implicit by design of the algebra
  CoeffValue(double scalar) : CoeffValue(std::complex<double>(scalar)) {}  // NOLINT
  static CoeffValue zero(CoeffKind kind);
  static CoeffValue identity(CoeffKind kind, std::complex<double> factor = 1.0);
  static CoeffValue matrix(std::size_t k, std::vector<std::complex<double>> row_major);
  static CoeffValue matrix(
      std::initializer_list<std::initializer_list<std::complex<double>>> rows);
  static CoeffValue diagonal(std::initializer_list<std::complex<double>> diag);

  const CoeffKind& kind() const { return kind_; }
  bool is_matrix() const { return kind_.matrix; }
  std::size_t size() const { return kind_.k; }

  std::complex<double> operator()(std::size_t i, std::size_t j) const {
    return data_[i * kind_.k + j];
  }
  std::complex<double>& operator()(std::size_t i, std::size_t j) {
    return data_[i * kind_.k + j];
  }
  std::complex<double> scalar_value() const;
  const std::vector<std::complex<double>>& data() const { return data_; }

  CoeffValue adjoint() const;
  // (x + x*) / 2.
  CoeffValue real_part() const;
  bool is_zero() const;
  bool is_finite() const;

  CoeffValue& operator+=(const CoeffValue& other);
  CoeffValue& operator-=(const CoeffValue& other);
  CoeffValue& operator*=(std::complex<double> factor);
  friend CoeffValue operator+(CoeffValue a, const CoeffValue& b) { return a += b; }
  friend CoeffValue operator-(CoeffValue a, const CoeffValue& b) { return a -= b; }
  friend CoeffValue operator*(CoeffValue a, std::complex<double> c) { return a *= c; }
  friend CoeffValue operator*(std::complex<double> c, CoeffValue a) { return a *= c; }
  friend CoeffValue operator*(CoeffValue a, double c) { return a *= c; }
  friend CoeffValue operator*(double c, CoeffValue a) { return a *= c; }
  friend CoeffValue operator*(const CoeffValue& a, const CoeffValue& b);
  friend bool operator==(const CoeffValue&, const CoeffValue&) = default;

  // a += c * b without temporaries.
  void add_scaled(const CoeffValue& b, std::complex<double> c);

 private:
  CoeffValue(CoeffKind kind, std::vector<std::complex<double>> data)
      : kind_(kind), data_(std::move(data)) {}
  void require_same_kind(const CoeffValue& other) const;

  CoeffKind kind_;
  std::vector<std::complex<double>> data_{0.0};
};

// Largest singular value; the modulus for scalars.
double operator_norm(const CoeffValue& x);

}  // namespace bohr
