#pragma once

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace bohr {

// The existence-only constants of the asymptotic bounds.  All default to 1;
// a report is certified only if every constant it uses was set explicitly.
class BoundConstants {
 public:
  static const std::array<std::string_view, 10>& names();

  double get(std::string_view name) const;
  void set(std::string_view name, double value);
  bool overridden(std::string_view name) const { return overridden_.count(std::string(name)) > 0; }

  // Applies "key = value" lines; `#` starts a comment.
  void load_text(std::string_view text);
  void load_file(const std::string& path);

  friend bool operator==(const BoundConstants&, const BoundConstants&) = default;

 private:
  std::size_t index_of(std::string_view name) const;

  std::array<double, 10> values_{1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  std::set<std::string> overridden_;
};

enum class BoundRole { lower, upper };

struct BoundReport {
  std::string formula_id;
  BoundRole role = BoundRole::lower;
  double value = 0.0;
  nlohmann::json params = nlohmann::json::object();
  // Constants that enter the formula, with the values used.
  std::vector<std::pair<std::string, double>> constants_used;
  std::vector<std::string> default_constants;  // subset left at the default
  bool certified = false;
  std::string note;
};

struct BoundPair {
  BoundReport lower;
  BoundReport upper;
};

std::string_view to_string(BoundRole role);

// Lower bounds with no free constants, divided by sup_{z in B_Z} ||z||_p.
enum class Thm11Variant {
  pluriharmonic_D,     // id "thm11"
  corollary_identity,  // id "cor11" (U = I)
  holomorphic_C,       // id "thm19"
};

// The constants D and C themselves (before dividing by sup_pnorm).
double pluriharmonic_constant_D(double p, double lambda, double norm_u);
double holomorphic_constant_C(double p, double lambda, double norm_u);

BoundReport eval_thm11_family(Thm11Variant variant, double p, double lambda, double norm_u,
                              double sup_pnorm);

enum class PCase { p_eq_1, p_ge_2, p_between };
PCase p_case_for(double p);
PCase parse_p_case(std::string_view text);
std::string_view to_string(PCase c);

// Lower bound for B_Z in terms of ||Id: l_2 -> Z|| and ||Id: Z -> l_1||.
BoundReport eval_thm12(PCase c, std::size_t n, double lambda, double p, double embed_l2_to_z,
                       double embed_z_to_l1, const BoundConstants& constants);

// d ||Id: Z -> l_q|| ||Id: l_q -> Z|| lambda^{2/log n} n^{1-1/p} (log n / n)^{1-1/min(q,2)}.
BoundReport eval_thm12_upper(std::size_t n, double lambda, double p, double q,
                             double embed_z_to_lq, double embed_lq_to_z,
                             const BoundConstants& constants);

enum class Cor14Regime { p_eq_1, p_ge_q, p_lt_q };
Cor14Regime cor14_regime_for(double p, double q);
Cor14Regime parse_cor14_regime(std::string_view text);
std::string_view to_string(Cor14Regime r);

// Lower bound on the l_q ball.
BoundReport eval_cor14(Cor14Regime regime, double q, double p, double lambda, std::size_t n,
                       const BoundConstants& constants);

enum class Thm13aItem { subset_l2, symmetric_2convex };
Thm13aItem parse_thm13a_item(std::string_view text);
std::string_view to_string(Thm13aItem item);

// Lower and upper bounds for Banach sequence spaces.  `embed_l2_to_zn` is
// ignored for symmetric_2convex.
BoundPair eval_thm13a(Thm13aItem item, PCase c, std::size_t n, double lambda, double p,
                      double embed_l2_to_zn, double dual_ones, const BoundConstants& constants);

struct PsiPair {
  BoundReport psi1;  // lower
  BoundReport psi2;  // upper
};

// Psi_1 and Psi_2 on the l_q ball for infinite dimensional X with cotype
// parameters t (finite cotype of X, may be inf) and Cot(X) >= 2.
PsiPair eval_thm13_psi(std::size_t n, double lambda, double p, double q, double cotype_t,
                       double cot_x, const BoundConstants& constants);

enum class SandwichMode {
  // lower / (S_f S_b), upper * S_f S_b with S_f = S(B_Z, B_q), S_b = S(B_q, B_Z).
  two_sided,
  // lower / S_b, upper * S_f: S_b = S(B_q, B_Z) and S_f = S(B_2, B_Z) for Z
  // inside l_2, or S_b = S_f = ||sum e*_k|| / sqrt n for symmetric 2-convex Z.
  one_sided,
};

// The factor ||sum e*_k||_{Z*} / sqrt n of the symmetric 2-convex sandwich.
double symmetric_2convex_factor(double dual_ones, std::size_t n);

BoundPair eval_sandwich(const BoundPair& inner, double s_forward, double s_backward,
                        SandwichMode mode = SandwichMode::two_sided);

}  // namespace bohr
