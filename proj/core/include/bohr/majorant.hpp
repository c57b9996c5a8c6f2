#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bohr/coeff.hpp"
#include "bohr/polynomial.hpp"
#include "bohr/spaces.hpp"

namespace bohr {

// The operator U: X -> Y applied to coefficients.  Two forms are modeled:
// lambda0 * I, and left multiplication x -> M x by a fixed matrix M (for which
// ||U|| = ||M||).
class BoundedOperatorU {
 public:
  static BoundedOperatorU identity_scaled(double lambda0 = 1.0);
  static BoundedOperatorU left_multiplier(CoeffValue m);

  CoeffValue apply(const CoeffValue& x) const;
  // ||U(x)||, without forming U(x) in the identity case.
  double image_norm(const CoeffValue& x) const;
  double norm() const { return norm_; }
  bool is_identity_scaled() const { return !multiplier_; }
  std::string to_string() const;

 private:
  BoundedOperatorU() = default;

  double lambda0_ = 1.0;
  std::optional<CoeffValue> multiplier_;
  double norm_ = 1.0;
};

struct MajorantResult {
  double value = 0.0;
  bool exact = false;             // closed form over the domain
  std::vector<double> argmax;     // moduli of a maximizing point of r * Omega
};

// sup_{z in r Omega} sum_alpha (||U a_alpha||^p + ||U b_alpha||^p) |z^alpha|^p.
// The sum is nondecreasing in every |z_i|, so the search runs over the
// nonnegative part of the boundary of r Omega, restricted to the variables f
// uses.  Closed forms: a single active variable, and the polydisc (the corner
// r (1, ..., 1) is maximal).
MajorantResult majorant_sum(const PluriharmonicPoly& f, const BoundedOperatorU& u,
                            const SpaceDescriptor& space, double r, double p,
                            const AscentOptions& options = {});

}  // namespace bohr
