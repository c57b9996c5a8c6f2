#include "bohr/coeff.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "bohr/error.hpp"

namespace bohr {

CoeffKind CoeffKind::square(std::size_t k) {
  if (k == 0) throw ValidationError("matrix coefficient size must be positive");
  return {true, k};
}

std::string CoeffKind::to_string() const {
  return matrix ? "matrix " + std::to_string(k) : "scalar";
}

CoeffValue::CoeffValue(std::complex<double> scalar) : data_{scalar} {}

CoeffValue CoeffValue::zero(CoeffKind kind) {
  return CoeffValue(kind, std::vector<std::complex<double>>(kind.k * kind.k, 0.0));
}

CoeffValue CoeffValue::identity(CoeffKind kind, std::complex<double> factor) {
  CoeffValue out = zero(kind);
  for (std::size_t i = 0; i < kind.k; ++i) out(i, i) = factor;
  return out;
}

CoeffValue CoeffValue::matrix(std::size_t k, std::vector<std::complex<double>> row_major) {
  if (row_major.size() != k * k)
    throw ValidationError("matrix coefficient needs k*k = " + std::to_string(k * k) +
                          " entries, got " + std::to_string(row_major.size()));
  return CoeffValue(CoeffKind::square(k), std::move(row_major));
}

CoeffValue CoeffValue::matrix(
    std::initializer_list<std::initializer_list<std::complex<double>>> rows) {
  const std::size_t k = rows.size();
  std::vector<std::complex<double>> data;
  for (const auto& row : rows) {
    if (row.size() != k) throw ValidationError("matrix coefficient must be square");
    data.insert(data.end(), row.begin(), row.end());
  }
  return matrix(k, std::move(data));
}

CoeffValue CoeffValue::diagonal(std::initializer_list<std::complex<double>> diag) {
  CoeffValue out = zero(CoeffKind::square(diag.size()));
  std::size_t i = 0;
  for (auto v : diag) out(i, i) = v, ++i;
  return out;
}

std::complex<double> CoeffValue::scalar_value() const {
  if (kind_.matrix) throw ValidationError("scalar_value on a matrix coefficient");
  return data_[0];
}

CoeffValue CoeffValue::adjoint() const {
  CoeffValue out = *this;
  const std::size_t k = kind_.k;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out.data_[j * k + i] = std::conj(data_[i * k + j]);
  return out;
}

CoeffValue CoeffValue::real_part() const {
  CoeffValue out = *this;
  out += adjoint();
  out *= 0.5;
  return out;
}

bool CoeffValue::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](std::complex<double> v) { return v == std::complex<double>(0.0); });
}

bool CoeffValue::is_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](std::complex<double> v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  });
}

void CoeffValue::require_same_kind(const CoeffValue& other) const {
  if (kind_ != other.kind_)
    throw ValidationError("coefficient kind mismatch: " + kind_.to_string() + " vs " +
                          other.kind_.to_string());
}

CoeffValue& CoeffValue::operator+=(const CoeffValue& other) {
  require_same_kind(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CoeffValue& CoeffValue::operator-=(const CoeffValue& other) {
  require_same_kind(other);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CoeffValue& CoeffValue::operator*=(std::complex<double> factor) {
  for (auto& v : data_) v *= factor;
  return *this;
}

void CoeffValue::add_scaled(const CoeffValue& b, std::complex<double> c) {
  require_same_kind(b);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += c * b.data_[i];
}

CoeffValue operator*(const CoeffValue& a, const CoeffValue& b) {
  a.require_same_kind(b);
  const std::size_t k = a.kind_.k;
  CoeffValue out = CoeffValue::zero(a.kind_);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      const auto ail = a.data_[i * k + l];
      for (std::size_t j = 0; j < k; ++j) out.data_[i * k + j] += ail * b.data_[l * k + j];
    }
  return out;
}

double operator_norm(const CoeffValue& x) {
  if (!x.is_finite()) throw ValidationError("operator_norm of a non-finite coefficient");
  const std::size_t k = x.size();
  if (k == 1) return std::abs(x.data()[0]);
  if (k == 2) {
    const auto& d = x.data();
    double fro2 = 0.0;
    for (auto v : d) fro2 += std::norm(v);
    const double det = std::abs(d[0] * d[3] - d[1] * d[2]);
    const double disc = std::max(0.0, (fro2 - 2.0 * det) * (fro2 + 2.0 * det));
    return std::sqrt(0.5 * (fro2 + std::sqrt(disc)));
  }
  using Mat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const Mat> a(x.data().data(), static_cast<Eigen::Index>(k),
                                static_cast<Eigen::Index>(k));
  if (k <= 4) {
    const Eigen::MatrixXcd gram = a.adjoint() * a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

}  // namespace bohr
