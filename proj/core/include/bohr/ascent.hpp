#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "bohr/spaces.hpp"

namespace bohr {

using RealFunction = std::function<double(std::span<const double>)>;

struct SphereAscentResult {
  std::vector<double> argmax;  // on the sphere, first argmax found
  double value = 0.0;
  bool converged = false;      // best start reached the minimum step
  std::size_t evaluations = 0;
};

// Maximizes objective(x) over nonnegative x with sphere_norm(x) = 1, using
// multiplicative coordinate pattern search from structured starts (each basis
// vector, the flat vector) plus options.random_starts random starts.  Only
// coordinates listed in `active` move; the rest stay at zero.  An empty
// `active` means all coordinates.
SphereAscentResult maximize_on_sphere(std::size_t dim,
                                      const RealFunction& objective,
                                      const RealFunction& sphere_norm,
                                      const AscentOptions& options,
                                      std::span<const std::size_t> active = {});

}  // namespace bohr
