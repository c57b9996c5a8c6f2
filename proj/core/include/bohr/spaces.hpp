#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bohr/orlicz.hpp"

namespace bohr {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Reciprocal in the extended reals: 1/inf = 0.
inline double reciprocal(double x) { return x == kInf ? 0.0 : 1.0 / x; }

// l_q on C^n, 1 <= q <= inf.
struct Minkowski {
  double q;
};

// l^blocks_outer(l^block_dim_inner): the outer l_outer norm of the inner
// l_inner norms of consecutive blocks of block_dim coordinates.
struct Mixed {
  std::size_t blocks;
  double outer;
  std::size_t block_dim;
  double inner;
};

// Lorentz l_{s,t}:
//   ||z|| = (sum_k (k^{t/s} - (k-1)^{t/s}) (z*_k)^t)^{1/t}   for t < inf,
//   ||z|| = max_k k^{1/s} z*_k                               for t = inf,
// with z* the decreasing rearrangement of |z|.  Normalized so that
// ||e_1 + ... + e_j|| = j^{1/s} exactly; a norm when t <= s.
struct Lorentz {
  double s;
  double t;
};

// Orlicz l_psi with the Luxemburg norm inf{rho > 0 : sum psi(|z_k|/rho) <= 1}.
struct Orlicz {
  OrliczFunction psi;
};

// A finite-dimensional sequence-space norm on C^n whose canonical basis is
// 1-unconditional, together with a dilation factor: the domain described is
// Omega = scale * B_Z.
//
// Text form (the CLI space grammar), fields in any order after the kind:
//   lq:q=2:n=8
//   mixed:s=1:m=2:t=2:n=3          (dim = m * n)
//   lorentz:s=2:t=1:n=4
//   orlicz:psi=x^2:n=4[:delta2=4]
// Any form accepts an optional `:scale=<r>`; exponents accept `inf`.
class SpaceDescriptor {
 public:
  using Kind = std::variant<Minkowski, Mixed, Lorentz, Orlicz>;

  static SpaceDescriptor minkowski(double q, std::size_t n, double scale = 1.0);
  static SpaceDescriptor mixed(std::size_t m, double s, std::size_t n_inner,
                               double t, double scale = 1.0);
  static SpaceDescriptor lorentz(double s, double t, std::size_t n,
                                 double scale = 1.0);
  static SpaceDescriptor orlicz(OrliczFunction psi, std::size_t n,
                                double scale = 1.0);
  static SpaceDescriptor polydisc(std::size_t n) { return minkowski(kInf, n); }

  static SpaceDescriptor parse(std::string_view text);
  std::string to_string() const;

  const Kind& kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  double scale() const { return scale_; }

  SpaceDescriptor with_scale(double scale) const;
  SpaceDescriptor unit() const { return with_scale(1.0); }

  // False only for Lorentz spaces with s < t (quasi-norms).
  bool is_normed() const;
  // Invariant under coordinate permutations (all families except mixed).
  bool is_symmetric() const;

  // ||x||_Z for a vector of moduli (scale ignored).
  double base_norm(std::span<const double> moduli) const;

  // Two descriptors describe the same norm and scale.
  bool same_as(const SpaceDescriptor& other) const {
    return to_string() == other.to_string();
  }

 private:
  SpaceDescriptor(Kind kind, std::size_t dim, double scale);

  Kind kind_;
  std::size_t dim_;
  double scale_;
};

// Norm of Omega = scale * B_Z: ||z||_Z / scale.
double norm(const SpaceDescriptor& space, std::span<const Complex> z);

// Same quantity computed from the definition inf{t > 0 : z/t in Omega} by
// bisection on the membership predicate.
double minkowski_functional(const SpaceDescriptor& space,
                            std::span<const Complex> z);

// z lies in the open domain Omega.
bool contains(const SpaceDescriptor& space, std::span<const Complex> z);

// Supremal modulus of coordinate k over Omega: scale / ||e_k||_Z.
double coordinate_reach(const SpaceDescriptor& space, std::size_t k);

struct Estimate {
  double value = 0.0;
  bool exact = false;      // closed form
  bool converged = true;   // numeric path stabilized
};

enum class EmbedMethod { automatic, closed_form, numeric };

struct AscentOptions {
  std::size_t random_starts = 16;
  std::size_t max_evaluations = 200000;
  std::uint64_t seed = 0;
};

// sup{ sum_k z_k : ||z||_Z <= 1, z_k >= 0 } (the dual norm of e*_1+...+e*_n).
Estimate dual_ones_norm(const SpaceDescriptor& space,
                        EmbedMethod method = EmbedMethod::automatic,
                        const AscentOptions& options = {});

// ||Id : Z_from -> Z_to|| = sup ||z||_to / ||z||_from.  Scales are ignored;
// see domain_scaling for the dilated version.
Estimate embed_norm(const SpaceDescriptor& from, const SpaceDescriptor& to,
                    EmbedMethod method = EmbedMethod::automatic,
                    const AscentOptions& options = {});

// sup_{z in Omega} ||z||_p.  Equals embed_norm(space, l_p) when scale = 1.
Estimate sup_pnorm_on_ball(const SpaceDescriptor& space, double p,
                           EmbedMethod method = EmbedMethod::automatic,
                           const AscentOptions& options = {});

// S(Omega_1, Omega_2) = inf{s > 0 : Omega_1 subset s Omega_2}.
Estimate domain_scaling(const SpaceDescriptor& omega1,
                        const SpaceDescriptor& omega2,
                        EmbedMethod method = EmbedMethod::automatic,
                        const AscentOptions& options = {});

struct UnconditionalityReport {
  bool pass = false;
  double max_deviation = 0.0;
};

// Max |‖eps z‖ - ‖z‖| over random z and random unimodular eps; pass iff the
// deviation is at most 1e-9.
UnconditionalityReport check_unconditionality(const SpaceDescriptor& space,
                                              std::size_t samples,
                                              std::uint64_t seed);

}  // namespace bohr
