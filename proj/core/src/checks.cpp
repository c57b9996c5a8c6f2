#include "bohr/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "bohr/error.hpp"
#include "bohr/families.hpp"
#include "bohr/rng.hpp"

namespace bohr {
namespace {

constexpr std::size_t kMaxWitnesses = 20;

nlohmann::json num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

PluriharmonicPoly signed_part(const PluriharmonicPoly& f, unsigned m, double sign) {
  if (f.is_holomorphic() && f.is_homogeneous(m)) return f;
  PluriharmonicPoly out(f.dim(), f.kind());
  for (const auto& [alpha, v] : f.a())
    if (alpha.degree() == m) out.add_a(alpha, v);
  for (const auto& [alpha, v] : f.b())
    if (alpha.degree() == m) out.add_a(alpha, v * sign);
  return out;
}

void schwarz_pick_into(CheckReport& report, const SpaceDescriptor& space,
                       const PluriharmonicPoly& f, unsigned m, std::optional<double> q,
                       const SchwarzPickOptions& options, const nlohmann::json& tag) {
  const auto norm_f = sup_norm(f, space, options.budget, options.seed);
  CoeffValue centre = CoeffValue::identity(f.kind(), norm_f.value);
  centre -= f.constant_term().real_part();
  const double rhs = 4.0 * operator_norm(centre);

  for (const double sign : {1.0, -1.0}) {
    const auto part = signed_part(f, m, sign);
    const auto lhs = sup_norm(part, space, options.budget,
                              split_seed(options.seed, sign > 0 ? 1 : 2));
    nlohmann::json w = tag;
    w["sign"] = sign > 0 ? "+" : "-";
    w["m"] = m;
    w["lhs"] = lhs.value;
    w["rhs"] = rhs;
    report.record(rhs - lhs.value, lhs.uncertainty + 4.0 * norm_f.uncertainty, w);
    if (!q) continue;
    for (const auto& [alpha, coeff] : part.a()) {
      const double bound = 4.0 / M_PI * rho_alpha(alpha, *q) * lhs.value;
      const double c = operator_norm(coeff);
      nlohmann::json wc = tag;
      wc["sign"] = sign > 0 ? "+" : "-";
      wc["alpha"] = alpha.to_string();
      wc["coefficient_norm"] = c;
      wc["bound"] = bound;
      report.record(bound - c, 4.0 / M_PI * rho_alpha(alpha, *q) * lhs.uncertainty, wc);
    }
  }
}

void check_q_matches(const SpaceDescriptor& space, std::optional<double> q) {
  if (!q) return;
  const auto* mk = std::get_if<Minkowski>(&space.kind());
  if (!mk || mk->q != *q)
    throw ValidationError("the coefficient clause needs the space to be l_q with q = " +
                          std::to_string(*q) + ", got " + space.to_string());
}

}  // namespace

void CheckReport::record(double margin, double unc, const nlohmann::json& witness) {
  const double slack = margin + unc;
  if (!details.contains("checked")) details["checked"] = 0;
  details["checked"] = details["checked"].get<std::size_t>() + 1;
  if (details["checked"].get<std::size_t>() == 1 || slack < worst_margin + uncertainty) {
    worst_margin = margin;
    uncertainty = unc;
  }
  if (margin < -unc) {
    pass = false;
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(witness);
  }
}

CheckReport verify_lemma33_chain(const SpaceDescriptor& space, const RadiusEstimate& full,
                                 const std::map<unsigned, RadiusEstimate>& homogeneous, double p,
                                 double lambda, double norm_u) {
  if (homogeneous.empty()) throw ValidationError("lemma33 chain needs homogeneous estimates");
  if (!(p >= 1.0) || !(lambda >= 1.0) || !(norm_u >= 0.0) || norm_u >= lambda)
    throw ValidationError("lemma33 chain needs p >= 1, lambda >= 1 and 0 <= normU < lambda");
  std::set<std::string> ids;
  for (const auto& fm : full.per_function) ids.insert(fm.id);
  for (const auto& [m, est] : homogeneous)
    for (const auto& fm : est.per_function)
      if (!ids.count(fm.id))
        throw ValidationError("homogeneous member '" + fm.id + "' (m = " + std::to_string(m) +
                              ") is not in the full family");

  CheckReport report;
  report.name = "lemma33";
  double inf_m = std::numeric_limits<double>::infinity();
  double tol = full.tol;
  nlohmann::json per_m = nlohmann::json::object();
  for (const auto& [m, est] : homogeneous) {
    inf_m = std::min(inf_m, est.upper_bracket);
    tol = std::max(tol, est.tol);
    per_m[std::to_string(m)] = est.upper_bracket;
  }
  const double lp = std::pow(lambda, p), up = std::pow(norm_u, p);
  const double prefactor = std::pow((lp - up) / (2.0 * lp - up), 1.0 / p);
  nlohmann::json w{{"full_upper", full.upper_bracket}, {"inf_m_upper", inf_m}};
  report.record(inf_m + tol - full.upper_bracket, 0.0, w);
  report.details["space"] = space.to_string();
  report.details["full_upper"] = full.upper_bracket;
  report.details["homogeneous_upper"] = per_m;
  report.details["prefactor"] = prefactor;
  report.details["lower_reference"] = prefactor * inf_m;
  return report;
}

CheckReport verify_schwarz_pick(const SpaceDescriptor& space, const PluriharmonicPoly& f,
                                unsigned m, std::optional<double> q,
                                const SchwarzPickOptions& options) {
  if (m == 0) throw ValidationError("schwarz_pick needs m >= 1");
  if (f.dim() != space.dim()) throw ValidationError("schwarz_pick: dimension mismatch");
  check_q_matches(space, q);
  CheckReport report;
  report.name = "schwarz_pick";
  nlohmann::json tag{{"space", space.to_string()}};
  if (!f.id().empty()) tag["id"] = f.id();
  schwarz_pick_into(report, space, f, m, q, options, tag);
  return report;
}

CheckReport verify_schwarz_pick_suite(const SchwarzPickSuiteSpec& spec, std::uint64_t seed,
                                      const SchwarzPickOptions& options) {
  if (spec.max_n == 0 || spec.max_degree == 0 || spec.kinds.empty() || spec.qs.empty())
    throw ValidationError("schwarz_pick suite needs max_n, max_degree >= 1 and nonempty kinds, qs");
  CheckReport report;
  report.name = "schwarz_pick";
  std::size_t index = 0;
  auto pick = [](Rng& rng, std::size_t count) {
    return std::min(count - 1, static_cast<std::size_t>(uniform01(rng) * count));
  };
  for (std::size_t i = 0; i < spec.count; ++i) {
    Rng rng(split_seed(seed, i));
    RandomFamilySpec fs;
    fs.n = 1 + pick(rng, spec.max_n);
    fs.max_degree = 1 + static_cast<unsigned>(pick(rng, spec.max_degree));
    fs.kind = spec.kinds[pick(rng, spec.kinds.size())];
    fs.count = 1;
    fs.include_antiholomorphic = true;
    fs.normalize = false;
    const double q = spec.qs[pick(rng, spec.qs.size())];
    const unsigned m = 1 + static_cast<unsigned>(pick(rng, fs.max_degree));
    const auto space = SpaceDescriptor::minkowski(q, fs.n);
    const auto f = random_family(fs, split_seed(seed, 0x5eed0000 + i))[0];
    SchwarzPickOptions local = options;
    local.seed = split_seed(options.seed, i);
    nlohmann::json tag{{"index", i}, {"space", space.to_string()}, {"kind", fs.kind.to_string()},
                       {"degree", fs.max_degree}};
    schwarz_pick_into(report, space, f, m, q, local, tag);
    ++index;
  }
  report.details["polynomials"] = index;
  report.details["seed"] = seed;
  return report;
}

CheckReport verify_schwarz_pick_monomials(std::size_t n, unsigned max_degree,
                                          const std::vector<double>& qs) {
  CheckReport report;
  report.name = "schwarz_pick_monomials";
  for (double q : qs) {
    const auto space = SpaceDescriptor::minkowski(q, n);
    for (const auto& f : monomial_members(space, max_degree)) {
      const unsigned m = f.max_degree();
      schwarz_pick_into(report, space, f, m, q, {}, {{"space", space.to_string()}, {"id", f.id()}});
    }
  }
  return report;
}

CounterexampleResult counterexample_scan(const SpaceDescriptor& space, double r, double p,
                                         double lambda, unsigned k_max) {
  if (!(r > 0.0) || !(r < 1.0)) throw ValidationError("counterexample_scan needs 0 < r < 1");
  if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("p must satisfy 1 <= p < inf");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be positive");
  if (k_max == 0) throw ValidationError("k_max must be positive");
  CounterexampleResult out;
  out.witness_modulus = 0.99 * r * coordinate_reach(space, 0);
  out.witness.assign(space.dim(), 0.0);
  out.witness[0] = out.witness_modulus;
  const double lp = std::pow(lambda, p);
  out.rhs = lp;
  const double w = out.witness_modulus;
  for (unsigned k = 1; k <= k_max; ++k) {
    const double x = 1.0 / k;
    const double half = std::sin(0.5 * x);
    // cos^p + sin^p w^p > 1  <=>  sin^p w^p > 1 - cos^p, with 1 - cos^p
    // evaluated as -expm1(p log cos) to avoid cancellation.
    const double one_minus_cos_p = -std::expm1(p * std::log1p(-2.0 * half * half));
    const double gain = std::pow(std::sin(x) * w, p);
    if (gain > one_minus_cos_p) {
      out.k = k;
      out.margin = lp * (gain - one_minus_cos_p);
      out.lhs = lp * std::pow(std::cos(x), p) + lp * gain;
      return out;
    }
  }
  const double x = 1.0 / k_max;
  const double half = std::sin(0.5 * x);
  const double gain = std::pow(std::sin(x) * w, p);
  out.lhs = lp * std::pow(std::cos(x), p) + lp * gain;
  out.margin = lp * (gain + std::expm1(p * std::log1p(-2.0 * half * half)));
  return out;
}

CheckReport verify_homogeneous_scaling(const SpaceDescriptor& space, const PluriharmonicPoly& f,
                                       unsigned m, const std::vector<double>& lambdas, double p,
                                       const EstimatorOptions& options) {
  if (m == 0) throw ValidationError("homogeneous scaling needs m >= 1");
  if (!f.is_homogeneous(m)) throw ValidationError("member is not " + std::to_string(m) + "-homogeneous");
  const auto u = BoundedOperatorU::identity_scaled(1.0);
  if (!majorant_sum(f, u, space, 1.0, p, options.majorant_options).exact ||
      !sup_norm(f, space, options.sup_budget, options.seed).certified)
    throw ValidationError("homogeneous scaling is verified only on closed-form members");
  const std::vector<PluriharmonicPoly> family{f};
  const auto base = estimate_homogeneous_radius(space, m, family, u, p, 1.0, options, f.id());
  CheckReport report;
  report.name = "homogeneous_scaling";
  report.details["base_upper"] = base.upper_bracket;
  nlohmann::json rows = nlohmann::json::array();
  for (double lambda : lambdas) {
    const auto est = estimate_homogeneous_radius(space, m, family, u, p, lambda, options, f.id());
    const double expected = std::min(1.0, std::pow(lambda, 1.0 / m) * base.upper_bracket);
    const double diff = std::abs(est.upper_bracket - expected);
    nlohmann::json w{{"lambda", lambda}, {"estimate", est.upper_bracket}, {"expected", expected}};
    rows.push_back(w);
    report.record(4.0 * options.tol - diff, 0.0, w);
  }
  report.details["rows"] = rows;
  report.details["m"] = m;
  report.details["p"] = num(p);
  return report;
}

}  // namespace bohr
