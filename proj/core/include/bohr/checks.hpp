#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bohr/estimator.hpp"
#include "bohr/polynomial.hpp"
#include "bohr/spaces.hpp"
#include "bohr/sup_norm.hpp"

namespace bohr {

// pass <=> worst_margin >= -uncertainty.
struct CheckReport {
  std::string name;
  bool pass = true;
  double worst_margin = 0.0;
  double uncertainty = 0.0;
  std::vector<nlohmann::json> witnesses;  // offending inputs
  nlohmann::json details = nlohmann::json::object();

  // Folds one inequality with the given margin and uncertainty into the report.
  void record(double margin, double uncertainty, const nlohmann::json& witness);
};

// The upper half of the homogeneous chain: the full-family estimate does not
// exceed min_m of the homogeneous estimates (+ tol).  Every homogeneous member
// must appear (by id) in the full family.  The lower reference
// ((lambda^p - ||U||^p)/(2 lambda^p - ||U||^p))^{1/p} inf_m R^m is reported in
// details.
CheckReport verify_lemma33_chain(const SpaceDescriptor& space, const RadiusEstimate& full,
                                 const std::map<unsigned, RadiusEstimate>& homogeneous, double p,
                                 double lambda, double norm_u);

struct SchwarzPickOptions {
  SupNormBudget budget{4, 32, 150};
  std::uint64_t seed = 0;
};

// For P_pm = sum_{|alpha|=m} (a_alpha +- b_alpha) z^alpha:
//   ||P_pm|| <= 4 || ||f|| I - Re a_0 ||,
// and when q is given (space must be l_q):
//   ||a_alpha +- b_alpha|| <= (4/pi) rho_alpha ||P_pm||.
CheckReport verify_schwarz_pick(const SpaceDescriptor& space, const PluriharmonicPoly& f,
                                unsigned m, std::optional<double> q = std::nullopt,
                                const SchwarzPickOptions& options = {});

struct SchwarzPickSuiteSpec {
  std::size_t count = 1000;
  std::size_t max_n = 3;
  unsigned max_degree = 4;
  std::vector<CoeffKind> kinds{CoeffKind::scalar(), CoeffKind::square(2), CoeffKind::square(3)};
  std::vector<double> qs{1.0, 2.0, kInf};
};

// Seeded random pluriharmonic polynomials, each checked at one degree m
// (with the coefficient clause on its l_q ball).
CheckReport verify_schwarz_pick_suite(const SchwarzPickSuiteSpec& spec, std::uint64_t seed,
                                      const SchwarzPickOptions& options = {});

// The coefficient clause on monomials z^alpha with closed-form sup norms.
CheckReport verify_schwarz_pick_monomials(std::size_t n, unsigned max_degree,
                                          const std::vector<double>& qs);

struct CounterexampleResult {
  std::optional<unsigned> k;  // smallest violating index
  ComplexVector witness;      // z = (w, 0, ..., 0)
  double witness_modulus = 0.0;
  double lhs = 0.0;           // lambda^p cos^p + lambda^p sin^p w^p at k
  double rhs = 0.0;           // lambda^p
  // lambda^p (sin^p w^p - (1 - cos^p)), evaluated without cancellation;
  // positive exactly when k is set.
  double margin = 0.0;
};

// Scans F_k (U = lambda I) for the first k with
//   lambda^p cos(1/k)^p + lambda^p sin(1/k)^p |z_1|^p > lambda^p
// at |z_1| = 0.99 r sup_{Omega} |z_1|.
CounterexampleResult counterexample_scan(const SpaceDescriptor& space, double r, double p,
                                         double lambda, unsigned k_max = 10000);

// R^m at lambda equals min(1, lambda^{1/m} R^m at 1) within 4 tol for a single
// m-homogeneous member with a closed-form majorant.
CheckReport verify_homogeneous_scaling(const SpaceDescriptor& space, const PluriharmonicPoly& f,
                                       unsigned m, const std::vector<double>& lambdas, double p,
                                       const EstimatorOptions& options = {});

}  // namespace bohr
