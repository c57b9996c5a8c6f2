#include "bohr/bounds.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bohr/error.hpp"

namespace bohr {
namespace {

const double kE = std::exp(1.0);

double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

nlohmann::json num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

void check_p(double p) { require(p >= 1.0 && std::isfinite(p), "p must satisfy 1 <= p < inf"); }
void check_lambda(double lambda) {
  require(lambda > 1.0 && std::isfinite(lambda), "lambda must satisfy lambda > 1");
}
void check_q(double q) { require(q >= 1.0, "q must satisfy 1 <= q <= inf"); }
void check_positive(const char* what, double v) {
  require(v > 0.0 && std::isfinite(v), std::string(what) + " must be positive and finite");
}
void check_log_n(std::size_t n) { require(n >= 2, "n must be at least 2 (log n > 0)"); }

// ((lambda^p - 1)/(2 lambda^p - 1))^{1/p}
double factor_f(double p, double lambda) {
  const double lp = std::pow(lambda, p);
  return std::pow((lp - 1.0) / (2.0 * lp - 1.0), 1.0 / p);
}

class Builder {
 public:
  Builder(std::string id, BoundRole role, const BoundConstants* constants = nullptr)
      : constants_(constants) {
    report_.formula_id = std::move(id);
    report_.role = role;
  }

  double use(std::string_view name) {
    const double v = constants_->get(name);
    const std::string key(name);
    auto it = std::find_if(report_.constants_used.begin(), report_.constants_used.end(),
                           [&](const auto& kv) { return kv.first == key; });
    if (it == report_.constants_used.end()) {
      report_.constants_used.emplace_back(key, v);
      if (!constants_->overridden(name)) report_.default_constants.push_back(key);
    }
    return v;
  }

  void param(const std::string& key, nlohmann::json value) { report_.params[key] = std::move(value); }
  void note(const std::string& text) { notes_.push_back(text); }

  BoundReport finish(double value) {
    require(std::isfinite(value) && value >= 0.0,
            report_.formula_id + ": evaluation produced an invalid value");
    report_.value = value;
    report_.certified = report_.default_constants.empty();
    if (!report_.certified) notes_.insert(notes_.begin(), "asymptotic shape up to unspecified constants");
    std::string joined;
    for (const auto& n : notes_) joined += (joined.empty() ? "" : "; ") + n;
    report_.note = joined;
    return report_;
  }

 private:
  const BoundConstants* constants_;
  BoundReport report_;
  std::vector<std::string> notes_;
};

}  // namespace

const std::array<std::string_view, 10>& BoundConstants::names() {
  static const std::array<std::string_view, 10> n{"E1", "E2", "E3", "E4", "E5",
                                                  "E6", "E2_prime", "E3_prime", "d", "c_misc"};
  return n;
}

std::size_t BoundConstants::index_of(std::string_view name) const {
  const auto& n = names();
  auto it = std::find(n.begin(), n.end(), name);
  if (it == n.end()) {
    std::string valid;
    for (auto v : n) valid += (valid.empty() ? "" : ", ") + std::string(v);
    throw ValidationError("unknown constant '" + std::string(name) + "' (valid: " + valid + ")");
  }
  return static_cast<std::size_t>(it - n.begin());
}

double BoundConstants::get(std::string_view name) const { return values_[index_of(name)]; }

void BoundConstants::set(std::string_view name, double value) {
  const std::size_t i = index_of(name);
  if (!(value > 0.0) || !std::isfinite(value))
    throw ValidationError("constant " + std::string(name) + " must be positive and finite");
  values_[i] = value;
  overridden_.insert(std::string(name));
}

void BoundConstants::load_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t number = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("constants file line " + std::to_string(number) +
                            ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size())
      throw ValidationError("constants file line " + std::to_string(number) +
                            ": malformed number '" + value + "'");
    set(key, v);
  }
}

void BoundConstants::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open constants file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  load_text(buffer.str());
}

std::string_view to_string(BoundRole role) { return role == BoundRole::lower ? "lower" : "upper"; }

double pluriharmonic_constant_D(double p, double lambda, double norm_u) {
  const double t = 1.0 / (4.0 * lambda * std::pow(2.0, 1.0 / p));
  const double lp = std::pow(lambda, p), up = std::pow(norm_u, p);
  const double a = std::pow((lp - up) / (2.0 * lp - norm_u), 1.0 / p);
  const double b = std::pow((lp - up) / (lp - up + 1.0), 1.0 / p);
  const double large = std::max(t * a, t * b / norm_u);
  const double small = std::max(t * a, t * b);
  if (norm_u > t) return large;
  if (norm_u < t) return small;
  return std::max(large, small);
}

double holomorphic_constant_C(double p, double lambda, double norm_u) {
  const double lp = std::pow(lambda, p), up = std::pow(norm_u, p);
  const double a = std::pow((lp - up) / (2.0 * lp - norm_u), 1.0 / p);
  const double b = std::pow((lp - up) / (lp - up + 1.0), 1.0 / p);
  const double large = std::max(a, b / norm_u);
  const double small = std::max(a, b);
  if (norm_u > 1.0) return large;
  if (norm_u < 1.0) return small;
  return std::max(large, small);
}

BoundReport eval_thm11_family(Thm11Variant variant, double p, double lambda, double norm_u,
                              double sup_pnorm) {
  check_p(p);
  check_lambda(lambda);
  check_positive("sup_pnorm", sup_pnorm);
  static const char* ids[] = {"thm11", "cor11", "thm19"};
  Builder b(ids[static_cast<int>(variant)], BoundRole::lower);
  b.param("p", p);
  b.param("lambda", lambda);
  b.param("sup_pnorm", sup_pnorm);
  if (variant == Thm11Variant::corollary_identity) {
    b.param("normU", 1.0);
    const double v = std::pow(2.0, -(2.0 + 1.0 / p)) * std::pow(std::pow(lambda, p) - 1.0, 1.0 / p) /
                     (lambda * lambda);
    return b.finish(v / sup_pnorm);
  }
  require(norm_u > 0.0 && std::isfinite(norm_u), "normU must be positive (U is non-null)");
  require(norm_u < lambda,
          "normU must be strictly below lambda; for ||U|| = lambda the radius can vanish "
          "(see `bohr verify --suite example11`)");
  b.param("normU", norm_u);
  double constant = 0.0;
  if (variant == Thm11Variant::pluriharmonic_D) {
    const double t = 1.0 / (4.0 * lambda * std::pow(2.0, 1.0 / p));
    b.param("threshold", t);
    if (norm_u == t)
      b.note("case boundary normU = 1/(4 lambda 2^(1/p)): max of both branches");
    else
      b.note(norm_u > t ? "branch normU >= 1/(4 lambda 2^(1/p))"
                        : "branch normU < 1/(4 lambda 2^(1/p))");
    constant = pluriharmonic_constant_D(p, lambda, norm_u);
    b.param("D", constant);
  } else {
    if (norm_u == 1.0)
      b.note("case boundary normU = 1: max of both branches");
    else
      b.note(norm_u > 1.0 ? "branch normU >= 1" : "branch normU < 1");
    constant = holomorphic_constant_C(p, lambda, norm_u);
    b.param("C", constant);
  }
  return b.finish(constant / sup_pnorm);
}

PCase p_case_for(double p) {
  check_p(p);
  if (p == 1.0) return PCase::p_eq_1;
  return p >= 2.0 ? PCase::p_ge_2 : PCase::p_between;
}

PCase parse_p_case(std::string_view text) {
  if (text == "p_eq_1") return PCase::p_eq_1;
  if (text == "p_ge_2") return PCase::p_ge_2;
  if (text == "p_between") return PCase::p_between;
  throw ValidationError("unknown case '" + std::string(text) +
                        "' (valid: p_eq_1, p_ge_2, p_between)");
}

std::string_view to_string(PCase c) {
  switch (c) {
    case PCase::p_eq_1: return "p_eq_1";
    case PCase::p_ge_2: return "p_ge_2";
    case PCase::p_between: return "p_between";
  }
  return "";
}

namespace {

void check_case(PCase c, double p) {
  switch (c) {
    case PCase::p_eq_1: require(p == 1.0, "case p_eq_1 needs p = 1"); break;
    case PCase::p_ge_2: require(p >= 2.0, "case p_ge_2 needs p >= 2"); break;
    case PCase::p_between: require(p > 1.0 && p <= 2.0, "case p_between needs 1 < p < 2"); break;
  }
}

// Shared three-case lower bound.  `a` is the l_2 factor (||Id: l_2 -> Z|| or
// 1), `w` the l_1 factor (||Id: Z -> l_1|| or the dual norm of the ones
// vector).
double three_case(Builder& b, PCase c, double p, double lambda, std::size_t n, double a, double w) {
  const double f = factor_f(p, lambda);
  const double rn = std::sqrt(static_cast<double>(n));
  auto eq1 = [&] { return b.use("E1") * std::max(1.0 / (rn * a), 1.0 / (kE * w)) * f; };
  auto ge2 = [&] { return b.use("E3") * std::pow(a, -2.0 / p) * f; };
  auto between = [&] {
    const double theta = 2.0 * (p - 1.0) / p;
    b.param("theta", theta);
    return b.use("E2") *
           std::max(1.0 / (std::pow(rn, 1.0 - theta) * a),
                    std::pow(a, -theta) / (std::pow(kE, 1.0 - theta) * std::pow(w, 1.0 - theta))) *
           f;
  };
  if (c != PCase::p_eq_1 && p == 2.0) {
    b.note("case boundary p = 2: max of p_ge_2 and p_between branches");
    return std::max(ge2(), between());
  }
  switch (c) {
    case PCase::p_eq_1: return eq1();
    case PCase::p_ge_2: return ge2();
    case PCase::p_between: return between();
  }
  return 0.0;
}

}  // namespace

BoundReport eval_thm12(PCase c, std::size_t n, double lambda, double p, double embed_l2_to_z,
                       double embed_z_to_l1, const BoundConstants& constants) {
  check_p(p);
  check_lambda(lambda);
  check_case(c, p);
  require(n >= 1, "n must be positive");
  check_positive("embed_l2_to_Z", embed_l2_to_z);
  check_positive("embed_Z_to_l1", embed_z_to_l1);
  Builder b("thm12", BoundRole::lower, &constants);
  b.param("case", std::string(to_string(c)));
  b.param("n", n);
  b.param("lambda", lambda);
  b.param("p", p);
  b.param("embed_l2_to_Z", embed_l2_to_z);
  b.param("embed_Z_to_l1", embed_z_to_l1);
  const double v = three_case(b, c, p, lambda, n, embed_l2_to_z, embed_z_to_l1);
  return b.finish(v);
}

BoundReport eval_thm12_upper(std::size_t n, double lambda, double p, double q,
                             double embed_z_to_lq, double embed_lq_to_z,
                             const BoundConstants& constants) {
  check_p(p);
  check_lambda(lambda);
  check_q(q);
  check_log_n(n);
  check_positive("embed_Z_to_lq", embed_z_to_lq);
  check_positive("embed_lq_to_Z", embed_lq_to_z);
  Builder b("thm12u", BoundRole::upper, &constants);
  b.param("n", n);
  b.param("lambda", lambda);
  b.param("p", p);
  b.param("q", num(q));
  b.param("embed_Z_to_lq", embed_z_to_lq);
  b.param("embed_lq_to_Z", embed_lq_to_z);
  b.note("stated for K_lambda; applies to R_lambda through R <= K");
  const double nn = static_cast<double>(n), ln = std::log(nn);
  const double v = b.use("d") * embed_z_to_lq * embed_lq_to_z * std::pow(lambda, 2.0 / ln) *
                   std::pow(nn, 1.0 - 1.0 / p) *
                   std::pow(ln / nn, 1.0 - 1.0 / std::min(q, 2.0));
  return b.finish(v);
}

Cor14Regime cor14_regime_for(double p, double q) {
  check_p(p);
  check_q(q);
  if (p == 1.0) return Cor14Regime::p_eq_1;
  return p >= q ? Cor14Regime::p_ge_q : Cor14Regime::p_lt_q;
}

Cor14Regime parse_cor14_regime(std::string_view text) {
  if (text == "p_eq_1") return Cor14Regime::p_eq_1;
  if (text == "p_ge_q") return Cor14Regime::p_ge_q;
  if (text == "p_lt_q") return Cor14Regime::p_lt_q;
  throw ValidationError("unknown regime '" + std::string(text) +
                        "' (valid: p_eq_1, p_ge_q, p_lt_q)");
}

std::string_view to_string(Cor14Regime r) {
  switch (r) {
    case Cor14Regime::p_eq_1: return "p_eq_1";
    case Cor14Regime::p_ge_q: return "p_ge_q";
    case Cor14Regime::p_lt_q: return "p_lt_q";
  }
  return "";
}

BoundReport eval_cor14(Cor14Regime regime, double q, double p, double lambda, std::size_t n,
                       const BoundConstants& constants) {
  check_p(p);
  check_q(q);
  check_lambda(lambda);
  check_log_n(n);
  switch (regime) {
    case Cor14Regime::p_eq_1: require(p == 1.0, "regime p_eq_1 needs p = 1"); break;
    case Cor14Regime::p_ge_q: require(p >= q, "regime p_ge_q needs p >= q"); break;
    case Cor14Regime::p_lt_q: require(p > 1.0 && p <= q, "regime p_lt_q needs 1 < p <= q"); break;
  }
  Builder b("cor14", BoundRole::lower, &constants);
  b.param("regime", std::string(to_string(regime)));
  b.param("q", num(q));
  b.param("p", p);
  b.param("lambda", lambda);
  b.param("n", n);
  const double f = factor_f(p, lambda);
  const double nn = static_cast<double>(n), ln = std::log(nn);
  const double log_exp = 1.0 - 1.0 / std::min(q, 2.0);
  auto eq1 = [&] { return b.use("E3_prime") * f * std::pow(ln / nn, log_exp); };
  auto geq = [&] { return b.use("E2_prime") * f * std::pow(nn, -1.0 / p); };
  auto ltq = [&] {
    // q = inf: (p-1)/(p(q-1)) -> 0 and (q-p)/(p(q-1)) -> 1/p.
    const double e1 = std::isinf(q) ? 0.0 : (p - 1.0) / (p * (q - 1.0));
    const double e2 = std::isinf(q) ? 1.0 / p : (q - p) / (p * (q - 1.0));
    return b.use("E4") * f * std::pow(nn, -e1) * std::pow(ln / nn, log_exp * e2);
  };
  double v = 0.0;
  if (regime != Cor14Regime::p_eq_1 && p == q) {
    b.note("case boundary p = q: max of p_ge_q and p_lt_q branches");
    v = std::max(geq(), ltq());
  } else if (regime == Cor14Regime::p_eq_1) {
    v = eq1();
  } else if (regime == Cor14Regime::p_ge_q) {
    v = geq();
  } else {
    v = ltq();
  }
  return b.finish(v);
}

Thm13aItem parse_thm13a_item(std::string_view text) {
  if (text == "subset_l2") return Thm13aItem::subset_l2;
  if (text == "symmetric_2convex") return Thm13aItem::symmetric_2convex;
  throw ValidationError("unknown item '" + std::string(text) +
                        "' (valid: subset_l2, symmetric_2convex)");
}

std::string_view to_string(Thm13aItem item) {
  return item == Thm13aItem::subset_l2 ? "subset_l2" : "symmetric_2convex";
}

BoundPair eval_thm13a(Thm13aItem item, PCase c, std::size_t n, double lambda, double p,
                      double embed_l2_to_zn, double dual_ones, const BoundConstants& constants) {
  check_p(p);
  check_lambda(lambda);
  check_case(c, p);
  check_log_n(n);
  check_positive("dual_ones", dual_ones);
  const bool subset = item == Thm13aItem::subset_l2;
  if (subset) check_positive("embed_l2_to_Zn", embed_l2_to_zn);
  const double a = subset ? embed_l2_to_zn : 1.0;

  auto fill = [&](Builder& b) {
    b.param("item", std::string(to_string(item)));
    b.param("case", std::string(to_string(c)));
    b.param("n", n);
    b.param("lambda", lambda);
    b.param("p", p);
    if (subset) b.param("embed_l2_to_Zn", embed_l2_to_zn);
    b.param("dual_ones", dual_ones);
  };

  Builder lo("thm13a", BoundRole::lower, &constants);
  fill(lo);
  const double lower = three_case(lo, c, p, lambda, n, a, dual_ones);

  Builder up("thm13a", BoundRole::upper, &constants);
  fill(up);
  const double nn = static_cast<double>(n), ln = std::log(nn);
  double upper = 0.0;
  if (subset) {
    upper = up.use("d") * std::pow(lambda, 2.0 / ln) * embed_l2_to_zn * std::pow(nn, 1.0 - 1.0 / p) *
            std::sqrt(ln / nn);
  } else {
    up.note("displayed for B_Z; evaluated on the n-dimensional section Z_n");
    upper = up.use("d") * std::pow(lambda, 2.0 / ln) * dual_ones * std::pow(nn, -1.0 / p) *
            std::sqrt(ln);
  }
  return {lo.finish(lower), up.finish(upper)};
}

PsiPair eval_thm13_psi(std::size_t n, double lambda, double p, double q, double cotype_t,
                       double cot_x, const BoundConstants& constants) {
  check_p(p);
  check_q(q);
  require(lambda >= 1.0 && std::isfinite(lambda), "lambda must satisfy lambda >= 1");
  require(n >= 1, "n must be positive");
  require(cotype_t >= 2.0, "cotype t must satisfy t >= 2 (or inf)");
  require(cot_x >= 2.0, "Cot(X) must satisfy Cot(X) >= 2 (or inf)");

  auto fill = [&](Builder& b) {
    b.param("n", n);
    b.param("lambda", lambda);
    b.param("p", p);
    b.param("q", num(q));
    b.param("cotype_t", num(cotype_t));
    b.param("cot_X", num(cot_x));
  };
  const double nn = static_cast<double>(n);
  const double base = std::pow(std::pow(lambda, p) - 1.0, 1.0 / p) / lambda;

  Builder b1("thm13_psi1", BoundRole::lower, &constants);
  fill(b1);
  const double m = std::min(cot_x, q);
  auto above = [&] { return b1.use("E5") * base; };
  auto below = [&] {
    return b1.use("E6") * base * std::pow(nn, inv(std::min(cotype_t, q)) - 1.0 / p);
  };
  double psi1 = 0.0;
  if (p == m) {
    b1.note("case boundary p = min(Cot(X), q): max of both branches");
    psi1 = std::max(above(), below());
  } else if (p > m) {
    b1.note("branch p > min(Cot(X), q)");
    psi1 = above();
  } else {
    b1.note("branch p <= min(Cot(X), q)");
    psi1 = below();
  }
  if (lambda == 1.0) b1.note("lambda = 1 lies outside the stated range lambda > 1");

  Builder b2("thm13_psi2", BoundRole::upper, &constants);
  fill(b2);
  double psi2 = 0.0;
  if (q <= cot_x) {
    b2.note("branch q <= Cot(X)");
    psi2 = 2.0 * lambda * std::pow(nn, inv(q) - 1.0 / p);
  } else {
    b2.note("branch q > Cot(X)");
    psi2 = 2.0 * lambda * std::pow(nn, inv(cot_x) - 1.0 / p);
  }
  if (lambda == 1.0) b2.note("lambda = 1 lies outside the stated range lambda > 1");
  return {b1.finish(psi1), b2.finish(psi2)};
}

double symmetric_2convex_factor(double dual_ones, std::size_t n) {
  check_positive("dual_ones", dual_ones);
  require(n >= 1, "n must be positive");
  return dual_ones / std::sqrt(static_cast<double>(n));
}

BoundPair eval_sandwich(const BoundPair& inner, double s_forward, double s_backward,
                        SandwichMode mode) {
  check_positive("S_forward", s_forward);
  check_positive("S_backward", s_backward);
  require(inner.lower.role == BoundRole::lower && inner.upper.role == BoundRole::upper,
          "sandwich needs a (lower, upper) pair");
  const bool two = mode == SandwichMode::two_sided;
  const double down = two ? s_forward * s_backward : s_backward;
  const double up = two ? s_forward * s_backward : s_forward;
  auto wrap = [&](const BoundReport& r, double value) {
    BoundReport out = r;
    out.formula_id = "sandwich";
    nlohmann::json params = nlohmann::json::object();
    params["inner_formula"] = r.formula_id;
    params["inner_value"] = r.value;
    params["inner_params"] = r.params;
    params["S_forward"] = s_forward;
    params["S_backward"] = s_backward;
    params["mode"] = two ? "two_sided" : "one_sided";
    out.params = std::move(params);
    out.value = value;
    return out;
  };
  return {wrap(inner.lower, inner.lower.value / down), wrap(inner.upper, inner.upper.value * up)};
}

}  // namespace bohr
