#pragma once

#include <cstddef>
#include <cstdint>

#include "bohr/polynomial.hpp"
#include "bohr/spaces.hpp"

namespace bohr {

struct SupNormBudget {
  std::size_t restarts = 8;     // independent searches
  std::size_t samples = 64;     // random boundary points screened per restart
  std::size_t iterations = 400; // (1+1)-ES steps per restart
};

struct SupNormResult {
  double value = 0.0;        // best value found (a lower estimate unless certified)
  bool certified = false;    // taken from a known closed form
  double uncertainty = 0.0;  // spread max - min across restarts
  bool stable = true;        // the two best restarts agree within 1e-6
};

// sup_{z in Omega} ||f(z)||.  A matching known_sup_norm is returned as
// certified; constants are exact.  Otherwise the search runs over boundary
// points z_k = x_k e^{i theta_k}, with moduli x on the sphere of Omega, by a
// (1+1) evolution strategy started from the best of `samples` random points.
SupNormResult sup_norm(const PluriharmonicPoly& f, const SpaceDescriptor& space,
                       const SupNormBudget& budget = {}, std::uint64_t seed = 0);

}  // namespace bohr
