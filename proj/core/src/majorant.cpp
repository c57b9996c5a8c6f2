#include "bohr/majorant.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bohr/ascent.hpp"
#include "bohr/error.hpp"

namespace bohr {

BoundedOperatorU BoundedOperatorU::identity_scaled(double lambda0) {
  if (!(lambda0 >= 0.0) || !std::isfinite(lambda0))
    throw ValidationError("U = lambda0 * I needs a finite lambda0 >= 0");
  BoundedOperatorU u;
  u.lambda0_ = lambda0;
  u.norm_ = lambda0;
  return u;
}

BoundedOperatorU BoundedOperatorU::left_multiplier(CoeffValue m) {
  BoundedOperatorU u;
  u.norm_ = operator_norm(m);
  u.multiplier_ = std::move(m);
  return u;
}

CoeffValue BoundedOperatorU::apply(const CoeffValue& x) const {
  if (!multiplier_) return x * lambda0_;
  if (!multiplier_->is_matrix() && x.is_matrix()) return x * multiplier_->scalar_value();
  return *multiplier_ * x;
}

double BoundedOperatorU::image_norm(const CoeffValue& x) const {
  if (!multiplier_) return lambda0_ * operator_norm(x);
  return operator_norm(apply(x));
}

std::string BoundedOperatorU::to_string() const {
  if (!multiplier_) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", lambda0_);
    return std::string("identity_scaled(") + buf + ")";
  }
  return "left_multiplier(" + multiplier_->kind().to_string() + ")";
}

namespace {

struct PoweredTerm {
  MultiIndex alpha;
  double weight;  // ||U a||^p + ||U b||^p
};

}  // namespace

MajorantResult majorant_sum(const PluriharmonicPoly& f, const BoundedOperatorU& u,
                            const SpaceDescriptor& space, double r, double p,
                            const AscentOptions& options) {
  if (space.dim() != f.dim())
    throw ValidationError("majorant_sum: space dimension " + std::to_string(space.dim()) +
                          " differs from polynomial dimension " + std::to_string(f.dim()));
  if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("majorant_sum needs 0 <= r <= 1");
  if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("majorant_sum needs finite p >= 1");

  const std::size_t n = f.dim();
  double constant = 0.0;
  std::vector<PoweredTerm> terms;
  auto powered = [&](const CoeffValue& c) { return std::pow(u.image_norm(c), p); };
  for (const auto& [alpha, v] : f.a()) {
    if (alpha.is_zero())
      constant = powered(v);
    else
      terms.push_back({alpha, powered(v)});
  }
  for (const auto& [alpha, v] : f.b()) {
    auto it = std::find_if(terms.begin(), terms.end(),
                           [&](const PoweredTerm& t) { return t.alpha == alpha; });
    if (it == terms.end())
      terms.push_back({alpha, powered(v)});
    else
      it->weight += powered(v);
  }

  MajorantResult out;
  out.argmax.assign(n, 0.0);
  const double radius = r * space.scale();
  auto value_at = [&](std::span<const double> x) {
    double s = constant;
    for (const auto& t : terms) s += t.weight * std::pow(t.alpha.monomial_abs(x), p);
    return s;
  };
  if (terms.empty() || radius == 0.0) {
    out.value = constant;
    out.exact = true;
    return out;
  }

  const auto active = f.active_variables();
  std::vector<double> reach(n, 0.0);
  for (std::size_t i : active) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    reach[i] = 1.0 / space.base_norm(e);
  }
  // The coordinatewise-maximal point lies in the closed ball: it dominates the
  // whole ball (polydisc-like domains, or a single active variable).
  if (active.size() == 1 || space.base_norm(reach) <= 1.0 + 1e-14) {
    for (std::size_t i : active) out.argmax[i] = radius * reach[i];
    out.value = value_at(out.argmax);
    out.exact = true;
    return out;
  }
  // A single monomial on an l_q ball: max of y^alpha on the unit sphere is
  // (alpha^alpha / |alpha|^|alpha|)^{1/q}, attained at y_i = (alpha_i/|alpha|)^{1/q}.
  if (const auto* mk = std::get_if<Minkowski>(&space.kind()); mk && terms.size() == 1) {
    const auto& t = terms.front();
    const double m = t.alpha.degree();
    for (std::size_t i = 0; i < n; ++i)
      out.argmax[i] = radius * std::pow(t.alpha[i] / m, reciprocal(mk->q));
    const double peak = std::exp(-t.alpha.log_multinomial_ratio() * reciprocal(mk->q));
    out.value = constant + t.weight * std::pow(std::pow(radius, m) * peak, p);
    out.exact = true;
    return out;
  }

  const RealFunction objective = [&](std::span<const double> y) {
    std::vector<double> x(y.begin(), y.end());
    for (auto& v : x) v *= radius;
    return value_at(x);
  };
  const RealFunction sphere = [&](std::span<const double> y) { return space.base_norm(y); };
  const auto best = maximize_on_sphere(n, objective, sphere, options, active);
  out.value = best.value;
  out.exact = false;
  for (std::size_t i = 0; i < n; ++i) out.argmax[i] = radius * best.argmax[i];
  return out;
}

}  // namespace bohr
