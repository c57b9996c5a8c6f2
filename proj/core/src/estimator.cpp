#include "bohr/estimator.hpp"

#include <algorithm>
#include <cmath>

#include "bohr/error.hpp"
#include "bohr/rng.hpp"

namespace bohr {
namespace {

void check_common(double p, double lambda, double tol) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("p must satisfy 1 <= p < inf");
  if (!(lambda >= 1.0) || !std::isfinite(lambda))
    throw ValidationError("lambda must satisfy lambda >= 1");
  if (!(tol > 0.0)) throw ValidationError("tol must be positive");
}

}  // namespace

FunctionCheck check_function_at_r(const PluriharmonicPoly& f, const BoundedOperatorU& u,
                                  const SpaceDescriptor& space, double r, double p, double lambda,
                                  const SupNormResult& norm,
                                  const AscentOptions& majorant_options) {
  const auto maj = majorant_sum(f, u, space, r, p, majorant_options);
  FunctionCheck out;
  const double lp = std::pow(lambda, p);
  out.majorant = maj.value;
  out.rhs = lp * std::pow(norm.value, p);
  out.margin = out.rhs - out.majorant;
  const double u_majorant = 1e-12 * std::max(1.0, out.majorant);
  out.uncertainty = p * lp * std::pow(norm.value, p - 1.0) * norm.uncertainty + u_majorant;
  out.satisfied = out.margin >= -out.uncertainty;
  return out;
}

FunctionCheck check_function_at_r(const PluriharmonicPoly& f, const BoundedOperatorU& u,
                                  const SpaceDescriptor& space, double r, double p, double lambda,
                                  const EstimatorOptions& options) {
  const auto norm = sup_norm(f, space, options.sup_budget, options.seed);
  return check_function_at_r(f, u, space, r, p, lambda, norm, options.majorant_options);
}

RadiusEstimate estimate_radius(const SpaceDescriptor& space,
                               const std::vector<PluriharmonicPoly>& family,
                               const BoundedOperatorU& u, double p, double lambda,
                               const EstimatorOptions& options, const std::string& family_id) {
  check_common(p, lambda, options.tol);
  if (family.empty()) throw ValidationError("estimate_radius needs a nonempty family");
  for (const auto& f : family)
    if (f.dim() != space.dim())
      throw ValidationError("family member '" + f.id() + "' has dimension " +
                            std::to_string(f.dim()) + ", space has " + std::to_string(space.dim()));

  RadiusEstimate est;
  est.family_id = family_id;
  est.space = space.to_string();
  est.p = p;
  est.lambda = lambda;
  est.tol = options.tol;
  est.u = u.to_string();

  std::vector<SupNormResult> norms;
  norms.reserve(family.size());
  est.certified = true;
  for (std::size_t i = 0; i < family.size(); ++i) {
    norms.push_back(sup_norm(family[i], space, options.sup_budget, split_seed(options.seed, i)));
    est.certified = est.certified && norms.back().certified;
  }

  auto violates = [&](std::size_t i, double r) {
    return !check_function_at_r(family[i], u, space, r, p, lambda, norms[i],
                                options.majorant_options)
                .satisfied;
  };
  auto any_violates = [&](double r) {
    for (std::size_t i = 0; i < family.size(); ++i)
      if (violates(i, r)) return true;
    return false;
  };

  const bool all_zero =
      std::all_of(family.begin(), family.end(), [](const auto& f) { return f.is_zero(); });
  if (all_zero) {
    est.lower_bracket = est.upper_bracket = 1.0;
    est.note = "degenerate family: every member is zero";
  } else if (!any_violates(1.0)) {
    est.lower_bracket = est.upper_bracket = 1.0;
    est.note = "no violation in (0, 1]";
  } else {
    est.violation_found = true;
    double lo = 0.0, hi = 1.0;
    while (hi - lo > options.tol) {
      const double mid = 0.5 * (lo + hi);
      if (any_violates(mid))
        hi = mid;
      else
        lo = mid;
    }
    est.lower_bracket = lo;
    est.upper_bracket = hi;
  }

  for (std::size_t i = 0; i < family.size(); ++i) {
    FunctionMargin fm;
    fm.id = family[i].id().empty() ? "f" + std::to_string(i) : family[i].id();
    fm.sup_norm = norms[i].value;
    fm.sup_certified = norms[i].certified;
    if (violates(i, 1.0)) {
      double lo = 0.0, hi = 1.0;
      while (hi - lo > options.tol) {
        const double mid = 0.5 * (lo + hi);
        (violates(i, mid) ? hi : lo) = mid;
      }
      fm.critical_r = hi;
    }
    fm.margin_at_r = check_function_at_r(family[i], u, space, est.upper_bracket, p, lambda,
                                         norms[i], options.majorant_options)
                         .margin;
    est.per_function.push_back(std::move(fm));
  }
  if (!est.certified) {
    const std::string extra = "sup norms estimated by sampling (uncertified)";
    est.note = est.note.empty() ? extra : est.note + "; " + extra;
  }
  return est;
}

RadiusEstimate estimate_homogeneous_radius(const SpaceDescriptor& space, unsigned m,
                                           const std::vector<PluriharmonicPoly>& family,
                                           const BoundedOperatorU& u, double p, double lambda,
                                           const EstimatorOptions& options,
                                           const std::string& family_id) {
  for (const auto& f : family)
    if (!f.is_homogeneous(m))
      throw ValidationError("family member '" + f.id() + "' is not " + std::to_string(m) +
                            "-homogeneous");
  auto est = estimate_radius(space, family, u, p, lambda, options, family_id);
  est.homogeneous_degree = m;
  return est;
}

}  // namespace bohr
