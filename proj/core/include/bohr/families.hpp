#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bohr/polynomial.hpp"
#include "bohr/spaces.hpp"
#include "bohr/sup_norm.hpp"

namespace bohr {

// The disc automorphism phi_a(z) = (a - z)/(1 - a z), 0 < a < 1, expanded as
// a - (1 - a^2) sum_{k>=1} a^{k-1} z^k and truncated at `degree`.
struct MobiusFunction {
  double a;
  unsigned degree;
  PluriharmonicPoly poly;

  // Closed-form majorant a + (1 - a^2) r / (1 - a r) of the infinite series.
  double majorant(double r) const;
  // 1/(1 + 2a): where the majorant reaches 1.
  double critical_radius() const;
  // Bound on sum_{k > degree} |c_k| = (1 + a) a^degree.
  double tail_bound() const;
};

// Smallest degree whose tail bound is below 1e-12.
unsigned mobius_min_degree(double a);

// One-variable member with known sup norm 1 on the unit disc.  degree = 0
// selects mobius_min_degree(a); smaller explicit degrees are rejected.
MobiusFunction mobius_family(double a, unsigned degree = 0);

// phi_a(z_k) on C^n with its sup norm over Omega attached:
// (a + rho)/(1 + a rho), rho = sup |z_k| on Omega (= 1 when rho = 1).
PluriharmonicPoly mobius_lift(double a, const SpaceDescriptor& space, std::size_t k = 0,
                              unsigned degree = 0);

// The default parameters a in {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}.
const std::vector<double>& default_mobius_parameters();
std::vector<PluriharmonicPoly> mobius_members(const SpaceDescriptor& space,
                                              const std::vector<double>& parameters);

// z^alpha with its sup norm over the l_q ball of radius s attached:
// s^|alpha| (alpha^alpha / |alpha|^|alpha|)^{1/q}.  Requires a Minkowski space.
PluriharmonicPoly monomial(const MultiIndex& alpha, const SpaceDescriptor& space);
std::vector<PluriharmonicPoly> monomial_members(const SpaceDescriptor& space,
                                                unsigned max_degree);

// z_1^2 + 2 z_1 z_2 - z_2^2 on the unit polydisc (n >= 2), sup norm 2 sqrt 2.
PluriharmonicPoly quadratic_form_member(std::size_t n);

// F_k(z) = i cos(1/k) I + (1/2) sin(1/k) I z_1 + (1/2) sin(1/k) I conj(z_1),
// with sup norm 1 on domains where sup |z_1| = 1.
PluriharmonicPoly example_member(unsigned k, const SpaceDescriptor& space,
                                 CoeffKind kind = CoeffKind::scalar());

// Members with closed-form sup norms on `space`: Mobius lifts, and for
// Minkowski spaces with n > 1 also monomials of degree <= 3 and, on the unit
// polydisc, the quadratic form.
std::vector<PluriharmonicPoly> certified_family(const SpaceDescriptor& space);

struct RandomFamilySpec {
  std::size_t n = 2;
  unsigned max_degree = 3;
  CoeffKind kind = CoeffKind::scalar();
  std::size_t count = 8;
  bool include_antiholomorphic = true;
  std::size_t terms_per_degree = 3;
  bool allow_large = false;  // lift the n, degree <= 8 and k <= 4 guardrails
  bool normalize = true;
};

// Seeded random polynomials with coefficient magnitudes decaying like 2^-m in
// the degree m.  With spec.normalize each is divided by its estimated sup norm
// on `normalize_on` (the unit polydisc by default).
std::vector<PluriharmonicPoly> random_family(const RandomFamilySpec& spec, std::uint64_t seed,
                                             const std::optional<SpaceDescriptor>& normalize_on =
                                                 std::nullopt,
                                             const SupNormBudget& budget = {});

}  // namespace bohr
