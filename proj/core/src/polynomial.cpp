#include "bohr/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "bohr/error.hpp"

namespace bohr {

PluriharmonicPoly::PluriharmonicPoly(std::size_t n, CoeffKind kind) : dim_(n), kind_(kind) {
  if (n == 0) throw ValidationError("polynomial dimension must be positive");
}

void PluriharmonicPoly::check_entry(const MultiIndex& alpha, const CoeffValue& value) const {
  if (alpha.dim() != dim_)
    throw ValidationError("multi-index " + alpha.to_string() + " has dimension " +
                          std::to_string(alpha.dim()) + ", polynomial has " +
                          std::to_string(dim_));
  if (value.kind() != kind_)
    throw ValidationError("coefficient kind " + value.kind().to_string() +
                          " does not match polynomial kind " + kind_.to_string());
  if (!value.is_finite()) throw ValidationError("non-finite coefficient at " + alpha.to_string());
}

void PluriharmonicPoly::set_a(const MultiIndex& alpha, CoeffValue value) {
  check_entry(alpha, value);
  if (value.is_zero())
    a_.erase(alpha);
  else
    a_.insert_or_assign(alpha, std::move(value));
}

void PluriharmonicPoly::set_b(const MultiIndex& alpha, CoeffValue value) {
  check_entry(alpha, value);
  if (alpha.is_zero()) throw ValidationError("the anti-holomorphic part has no constant term");
  if (value.is_zero())
    b_.erase(alpha);
  else
    b_.insert_or_assign(alpha, std::move(value));
}

void PluriharmonicPoly::add_a(const MultiIndex& alpha, const CoeffValue& value) {
  auto it = a_.find(alpha);
  set_a(alpha, it == a_.end() ? value : it->second + value);
}

void PluriharmonicPoly::add_b(const MultiIndex& alpha, const CoeffValue& value) {
  auto it = b_.find(alpha);
  set_b(alpha, it == b_.end() ? value : it->second + value);
}

CoeffValue PluriharmonicPoly::constant_term() const {
  auto it = a_.find(MultiIndex(dim_));
  return it == a_.end() ? CoeffValue::zero(kind_) : it->second;
}

bool PluriharmonicPoly::is_homogeneous(unsigned m) const {
  auto deg_is_m = [m](const auto& kv) { return kv.first.degree() == m; };
  return std::all_of(a_.begin(), a_.end(), deg_is_m) &&
         std::all_of(b_.begin(), b_.end(), deg_is_m);
}

unsigned PluriharmonicPoly::max_degree() const {
  unsigned d = 0;
  for (const auto& [alpha, v] : a_) d = std::max(d, alpha.degree());
  for (const auto& [alpha, v] : b_) d = std::max(d, alpha.degree());
  return d;
}

std::vector<std::size_t> PluriharmonicPoly::active_variables() const {
  std::vector<bool> used(dim_, false);
  for (const auto* map : {&a_, &b_})
    for (const auto& [alpha, v] : *map)
      for (std::size_t i = 0; i < dim_; ++i)
        if (alpha[i] != 0) used[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim_; ++i)
    if (used[i]) out.push_back(i);
  return out;
}

std::optional<double> PluriharmonicPoly::known_sup_for(const SpaceDescriptor& space) const {
  if (!known_) return std::nullopt;
  for (const auto& s : known_->spaces)
    if (s.same_as(space)) return known_->value;
  return std::nullopt;
}

double PluriharmonicPoly::coefficient_norm_sum() const {
  double s = 0.0;
  for (const auto& [alpha, v] : a_) s += operator_norm(v);
  for (const auto& [alpha, v] : b_) s += operator_norm(v);
  return s;
}

CoeffValue evaluate(const PluriharmonicPoly& f, std::span<const Complex> z) {
  if (z.size() != f.dim())
    throw ValidationError("evaluate: point of dimension " + std::to_string(z.size()) +
                          " for polynomial of dimension " + std::to_string(f.dim()));
  CoeffValue out = CoeffValue::zero(f.kind());
  for (const auto& [alpha, v] : f.a()) out.add_scaled(v, alpha.monomial(z));
  if (!f.b().empty()) {
    ComplexVector zbar(z.begin(), z.end());
    for (auto& w : zbar) w = std::conj(w);
    for (const auto& [alpha, v] : f.b()) out.add_scaled(v.adjoint(), alpha.monomial(zbar));
  }
  return out;
}

PluriharmonicPoly homogeneous_part(const PluriharmonicPoly& f, unsigned m) {
  PluriharmonicPoly out(f.dim(), f.kind());
  for (const auto& [alpha, v] : f.a())
    if (alpha.degree() == m) out.set_a(alpha, v);
  for (const auto& [alpha, v] : f.b())
    if (alpha.degree() == m) out.set_b(alpha, v);
  if (!f.id().empty()) out.set_id(f.id() + "/m" + std::to_string(m));
  return out;
}

PluriharmonicPoly operator+(const PluriharmonicPoly& f, const PluriharmonicPoly& g) {
  if (f.dim() != g.dim() || f.kind() != g.kind())
    throw ValidationError("cannot add polynomials of different shape");
  PluriharmonicPoly out(f.dim(), f.kind());
  for (const auto* p : {&f, &g}) {
    for (const auto& [alpha, v] : p->a()) out.add_a(alpha, v);
    for (const auto& [alpha, v] : p->b()) out.add_b(alpha, v);
  }
  return out;
}

PluriharmonicPoly scaled(const PluriharmonicPoly& f, double c) {
  PluriharmonicPoly out(f.dim(), f.kind());
  for (const auto& [alpha, v] : f.a()) out.set_a(alpha, v * c);
  for (const auto& [alpha, v] : f.b()) out.set_b(alpha, v * c);
  if (f.known_sup_norm()) {
    KnownSupNorm k = *f.known_sup_norm();
    k.value *= std::abs(c);
    out.set_known_sup_norm(std::move(k));
  }
  out.set_id(f.id());
  return out;
}

}  // namespace bohr
