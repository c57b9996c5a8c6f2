#pragma once

#include <cstdint>
#include <random>

namespace bohr {

using Rng = std::mt19937_64;

// Derives an independent child seed from a master seed (splitmix64 finalizer).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

double uniform01(Rng& rng);
double standard_normal(Rng& rng);

}  // namespace bohr
