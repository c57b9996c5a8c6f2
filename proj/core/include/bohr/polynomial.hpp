#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bohr/coeff.hpp"
#include "bohr/multi_index.hpp"
#include "bohr/spaces.hpp"

namespace bohr {

// An analytically known value of sup_{z in Omega} ||f(z)|| together with the
// domains it is valid for.
struct KnownSupNorm {
  double value = 0.0;
  std::vector<SpaceDescriptor> spaces;
  double uncertainty = 0.0;  // e.g. a truncation tail bound
};

// f(z) = sum_alpha a_alpha z^alpha + sum_{alpha != 0} b_alpha^* conj(z)^alpha,
// a finitely supported pluriharmonic polynomial on C^n with coefficients in
// C or M_k(C).  Zero coefficients are not stored.
class PluriharmonicPoly {
 public:
  using CoeffMap = std::map<MultiIndex, CoeffValue>;

  explicit PluriharmonicPoly(std::size_t n, CoeffKind kind = CoeffKind::scalar());

  std::size_t dim() const { return dim_; }
  const CoeffKind& kind() const { return kind_; }
  const CoeffMap& a() const { return a_; }
  const CoeffMap& b() const { return b_; }

  // Overwrites (set) or accumulates into (add) a coefficient.
  void set_a(const MultiIndex& alpha, CoeffValue value);
  void set_b(const MultiIndex& alpha, CoeffValue value);
  void add_a(const MultiIndex& alpha, const CoeffValue& value);
  void add_b(const MultiIndex& alpha, const CoeffValue& value);

  // a_0, or zero when absent.
  CoeffValue constant_term() const;

  bool is_zero() const { return a_.empty() && b_.empty(); }
  bool is_holomorphic() const { return b_.empty(); }
  bool is_homogeneous(unsigned m) const;
  unsigned max_degree() const;
  // Variables that occur in some stored term.
  std::vector<std::size_t> active_variables() const;

  const std::optional<KnownSupNorm>& known_sup_norm() const { return known_; }
  void set_known_sup_norm(KnownSupNorm known) { known_ = std::move(known); }
  void clear_known_sup_norm() { known_.reset(); }
  // The known value when one of its domains equals `space`.
  std::optional<double> known_sup_for(const SpaceDescriptor& space) const;

  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  // Sum over stored terms of ||a_alpha|| + ||b_alpha||.
  double coefficient_norm_sum() const;

 private:
  void check_entry(const MultiIndex& alpha, const CoeffValue& value) const;

  std::size_t dim_;
  CoeffKind kind_;
  CoeffMap a_;
  CoeffMap b_;
  std::optional<KnownSupNorm> known_;
  std::string id_;
};

CoeffValue evaluate(const PluriharmonicPoly& f, std::span<const Complex> z);

// Terms with |alpha| = m (no b part for m = 0).  The known sup norm is dropped.
PluriharmonicPoly homogeneous_part(const PluriharmonicPoly& f, unsigned m);

// Coefficientwise sum; known sup norms are dropped.
PluriharmonicPoly operator+(const PluriharmonicPoly& f, const PluriharmonicPoly& g);

// c * f for real c; a known sup norm is rescaled by |c|.
PluriharmonicPoly scaled(const PluriharmonicPoly& f, double c);

}  // namespace bohr
