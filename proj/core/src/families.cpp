#include "bohr/families.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bohr/error.hpp"
#include "bohr/rng.hpp"

namespace bohr {
namespace {

std::string fmt_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void check_mobius_parameter(double a) {
  if (!(a > 0.0 && a < 1.0)) throw ValidationError("Mobius parameter a must lie in (0, 1)");
}

}  // namespace

double MobiusFunction::majorant(double r) const { return a + (1.0 - a * a) * r / (1.0 - a * r); }

double MobiusFunction::critical_radius() const { return 1.0 / (1.0 + 2.0 * a); }

double MobiusFunction::tail_bound() const { return (1.0 + a) * std::pow(a, degree); }

unsigned mobius_min_degree(double a) {
  check_mobius_parameter(a);
  // (1 + a) a^N < 1e-12.
  const double n = std::log(1e-12 / (1.0 + a)) / std::log(a);
  unsigned degree = static_cast<unsigned>(std::max(1.0, std::ceil(n)));
  while ((1.0 + a) * std::pow(a, degree) >= 1e-12) ++degree;
  return degree;
}

MobiusFunction mobius_family(double a, unsigned degree) {
  check_mobius_parameter(a);
  const unsigned min_degree = mobius_min_degree(a);
  if (degree == 0) degree = min_degree;
  if (degree < min_degree)
    throw ValidationError("Mobius truncation degree " + std::to_string(degree) +
                          " leaves a tail above 1e-12 for a = " + fmt_param(a) +
                          "; need at least " + std::to_string(min_degree));
  const auto disc = SpaceDescriptor::polydisc(1);
  return MobiusFunction{a, degree, mobius_lift(a, disc, 0, degree)};
}

PluriharmonicPoly mobius_lift(double a, const SpaceDescriptor& space, std::size_t k,
                              unsigned degree) {
  check_mobius_parameter(a);
  const std::size_t n = space.dim();
  degree = std::max(degree, mobius_min_degree(a));
  PluriharmonicPoly f(n);
  f.set_a(MultiIndex(n), a);
  double c = 1.0 - a * a;
  for (unsigned j = 1; j <= degree; ++j, c *= a) f.set_a(MultiIndex::unit(n, k, j), -c);
  const double rho = coordinate_reach(space, k);
  const double sup = rho == 1.0 ? 1.0 : (a + rho) / (1.0 + a * rho);
  f.set_known_sup_norm({sup, {space}, (1.0 + a) * std::pow(a, degree)});
  f.set_id("mobius:a=" + fmt_param(a) + (n > 1 ? ":z" + std::to_string(k + 1) : ""));
  return f;
}

const std::vector<double>& default_mobius_parameters() {
  static const std::vector<double> params{0.1, 0.3, 0.5, 0.7, 0.9, 0.99};
  return params;
}

std::vector<PluriharmonicPoly> mobius_members(const SpaceDescriptor& space,
                                              const std::vector<double>& parameters) {
  std::vector<PluriharmonicPoly> out;
  for (double a : parameters) out.push_back(mobius_lift(a, space, 0));
  return out;
}

PluriharmonicPoly monomial(const MultiIndex& alpha, const SpaceDescriptor& space) {
  const auto* mk = std::get_if<Minkowski>(&space.kind());
  if (!mk) throw ValidationError("monomial sup norms are attached for l_q spaces only");
  if (alpha.dim() != space.dim()) throw ValidationError("monomial dimension mismatch");
  PluriharmonicPoly f(space.dim());
  f.set_a(alpha, 1.0);
  const double m = alpha.degree();
  const double sup =
      std::pow(space.scale(), m) * std::exp(-alpha.log_multinomial_ratio() * reciprocal(mk->q));
  f.set_known_sup_norm({sup, {space}});
  f.set_id("monomial:" + alpha.to_string());
  return f;
}

std::vector<PluriharmonicPoly> monomial_members(const SpaceDescriptor& space,
                                                unsigned max_degree) {
  std::vector<PluriharmonicPoly> out;
  for (unsigned m = 1; m <= max_degree; ++m)
    for (const auto& alpha : indices_of_degree(space.dim(), m)) out.push_back(monomial(alpha, space));
  return out;
}

PluriharmonicPoly quadratic_form_member(std::size_t n) {
  if (n < 2) throw ValidationError("the quadratic form member needs n >= 2");
  PluriharmonicPoly f(n);
  f.set_a(MultiIndex::unit(n, 0, 2), 1.0);
  MultiIndex mixed = MultiIndex::unit(n, 0);
  std::vector<unsigned> e = mixed.entries();
  e[1] = 1;
  f.set_a(MultiIndex(e), 2.0);
  f.set_a(MultiIndex::unit(n, 1, 2), -1.0);
  f.set_known_sup_norm({2.0 * std::sqrt(2.0), {SpaceDescriptor::polydisc(n)}});
  f.set_id("quadratic:z1^2+2z1z2-z2^2");
  return f;
}

PluriharmonicPoly example_member(unsigned k, const SpaceDescriptor& space, CoeffKind kind) {
  if (k == 0) throw ValidationError("example member index k must be positive");
  const std::size_t n = space.dim();
  const double c = std::cos(1.0 / k), s = std::sin(1.0 / k);
  PluriharmonicPoly f(n, kind);
  f.set_a(MultiIndex(n), CoeffValue::identity(kind, {0.0, c}));
  f.set_a(MultiIndex::unit(n, 0), CoeffValue::identity(kind, 0.5 * s));
  f.set_b(MultiIndex::unit(n, 0), CoeffValue::identity(kind, 0.5 * s));
  // |f(z)|^2 = cos^2 + sin^2 (Re z_1)^2.
  const double rho = coordinate_reach(space, 0);
  const double sup = rho == 1.0 ? 1.0 : std::sqrt(c * c + s * s * rho * rho);
  f.set_known_sup_norm({sup, {space}});
  f.set_id("example:k=" + std::to_string(k));
  return f;
}

std::vector<PluriharmonicPoly> certified_family(const SpaceDescriptor& space) {
  auto out = mobius_members(space, default_mobius_parameters());
  const auto* mk = std::get_if<Minkowski>(&space.kind());
  if (mk && space.dim() > 1) {
    auto mono = monomial_members(space, 3);
    out.insert(out.end(), mono.begin(), mono.end());
    if (mk->q == kInf && space.scale() == 1.0) out.push_back(quadratic_form_member(space.dim()));
  }
  return out;
}

std::vector<PluriharmonicPoly> random_family(const RandomFamilySpec& spec, std::uint64_t seed,
                                             const std::optional<SpaceDescriptor>& normalize_on,
                                             const SupNormBudget& budget) {
  if (spec.n == 0) throw ValidationError("random family needs n >= 1");
  if (!spec.allow_large && (spec.n > 8 || spec.max_degree > 8 || spec.kind.k > 4))
    throw ValidationError(
        "random family exceeds the desk-scale guardrails (n <= 8, degree <= 8, k <= 4); "
        "set allow_large to override");
  const SpaceDescriptor domain = normalize_on ? *normalize_on : SpaceDescriptor::polydisc(spec.n);
  if (domain.dim() != spec.n) throw ValidationError("normalization space dimension mismatch");

  auto random_coeff = [&](Rng& rng, double magnitude) {
    if (!spec.kind.matrix)
      return CoeffValue(Complex(standard_normal(rng), standard_normal(rng)) *
                        (magnitude / std::sqrt(2.0)));
    const std::size_t k = spec.kind.k;
    std::vector<Complex> data(k * k);
    for (auto& v : data)
      v = Complex(standard_normal(rng), standard_normal(rng)) *
          (magnitude / std::sqrt(2.0 * static_cast<double>(k)));
    return CoeffValue::matrix(k, std::move(data));
  };

  std::vector<PluriharmonicPoly> out;
  for (std::size_t i = 0; i < spec.count; ++i) {
    Rng rng(split_seed(seed, i));
    PluriharmonicPoly f(spec.n, spec.kind);
    for (unsigned m = 0; m <= spec.max_degree; ++m) {
      const auto indices = indices_of_degree(spec.n, m);
      const double magnitude = std::ldexp(1.0, -static_cast<int>(m));
      const std::size_t terms = std::min(spec.terms_per_degree, indices.size());
      std::set<std::size_t> chosen;
      while (chosen.size() < terms)
        chosen.insert(std::min(indices.size() - 1,
                               static_cast<std::size_t>(uniform01(rng) * indices.size())));
      for (std::size_t idx : chosen) {
        f.add_a(indices[idx], random_coeff(rng, magnitude));
        if (spec.include_antiholomorphic && m > 0) f.add_b(indices[idx], random_coeff(rng, magnitude));
      }
    }
    if (spec.normalize) {
      const auto s = sup_norm(f, domain, budget, split_seed(seed, 0x10000 + i));
      if (s.value > 0.0) f = scaled(f, 1.0 / s.value);
    }
    f.set_id("random:" + std::to_string(seed) + ":" + std::to_string(i));
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace bohr
