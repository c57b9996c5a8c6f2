#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bohr/majorant.hpp"
#include "bohr/polynomial.hpp"
#include "bohr/spaces.hpp"
#include "bohr/sup_norm.hpp"

namespace bohr {

struct EstimatorOptions {
  double tol = 1e-4;
  SupNormBudget sup_budget{4, 32, 150};
  AscentOptions majorant_options{4, 20000, 0};
  std::uint64_t seed = 0;
};

struct FunctionCheck {
  bool satisfied = true;
  double margin = 0.0;       // lambda^p ||f||^p - majorant
  double uncertainty = 0.0;  // p lambda^p ||f||^{p-1} u + u_majorant
  double majorant = 0.0;
  double rhs = 0.0;          // lambda^p ||f||^p
};

// Checks the powered Bohr inequality for f at radius r given an estimate of
// ||f||.  A violation counts only when margin < -uncertainty.
FunctionCheck check_function_at_r(const PluriharmonicPoly& f, const BoundedOperatorU& u,
                                  const SpaceDescriptor& space, double r, double p, double lambda,
                                  const SupNormResult& norm,
                                  const AscentOptions& majorant_options = {});
// Same, estimating ||f|| with the given budget.
FunctionCheck check_function_at_r(const PluriharmonicPoly& f, const BoundedOperatorU& u,
                                  const SpaceDescriptor& space, double r, double p, double lambda,
                                  const EstimatorOptions& options = {});

struct FunctionMargin {
  std::string id;
  double critical_r = 1.0;    // bisection estimate of where f starts to violate
  double margin_at_r = 0.0;   // margin at the returned upper bracket
  double sup_norm = 0.0;
  bool sup_certified = false;
};

// An empirical upper estimate of the radius restricted to a family: any
// violation at r shows the radius is below r.
struct RadiusEstimate {
  double lower_bracket = 0.0;
  double upper_bracket = 1.0;
  std::string family_id;
  std::string space;
  double p = 1.0;
  double lambda = 1.0;
  double tol = 0.0;
  std::string u;
  std::optional<unsigned> homogeneous_degree;
  std::vector<FunctionMargin> per_function;
  bool certified = false;        // every sup norm came from a closed form
  bool violation_found = false;  // false: no violation in (0, 1], estimate 1
  std::string note;
};

RadiusEstimate estimate_radius(const SpaceDescriptor& space,
                               const std::vector<PluriharmonicPoly>& family,
                               const BoundedOperatorU& u, double p, double lambda,
                               const EstimatorOptions& options = {},
                               const std::string& family_id = "custom");

// As estimate_radius for a family of m-homogeneous members.
RadiusEstimate estimate_homogeneous_radius(const SpaceDescriptor& space, unsigned m,
                                           const std::vector<PluriharmonicPoly>& family,
                                           const BoundedOperatorU& u, double p, double lambda,
                                           const EstimatorOptions& options = {},
                                           const std::string& family_id = "custom");

}  // namespace bohr
