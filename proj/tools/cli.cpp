#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "bohr/checks.hpp"
#include "bohr/error.hpp"
#include "bohr/estimator.hpp"
#include "bohr/families.hpp"
#include "bohr/poly_io.hpp"
#include "bohr/report_io.hpp"
#include "bohr/rng.hpp"
#include "bohr/spaces.hpp"

namespace bohr::cli {
namespace {

const std::vector<std::string> kFormulaIds{"thm11", "cor11", "thm19", "thm12", "thm12u",
                                           "cor14", "thm13a", "thm13", "sandwich"};
const std::vector<std::string> kSuites{"schwarz_pick", "lemma33", "example11", "unconditional",
                                       "all"};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_real(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t == "inf" || t == "infinity") return kInf;
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ValidationError(what + ": cannot parse '" + text + "' as a number");
  return v;
}

template <typename T>
T parse_unsigned(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  T v{};
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    throw ValidationError(what + ": cannot parse '" + text + "' as a nonnegative integer");
  return v;
}

CoeffKind parse_kind(const std::string& text) {
  std::string t = trim(text);
  if (t == "scalar") return CoeffKind::scalar();
  if (t.rfind("matrix", 0) == 0) {
    const auto k = parse_unsigned<std::size_t>(trim(t.substr(6)), "--kind");
    if (k == 0) throw ValidationError("--kind: matrix size must be positive");
    return CoeffKind::square(k);
  }
  throw ValidationError("--kind must be 'scalar' or 'matrix<k>', got '" + text + "'");
}

EmbedMethod parse_method(const std::string& text) {
  if (text == "auto") return EmbedMethod::automatic;
  if (text == "closed") return EmbedMethod::closed_form;
  if (text == "numeric") return EmbedMethod::numeric;
  throw ValidationError("--method must be one of auto, closed, numeric");
}

std::optional<SpaceDescriptor> space_of(const RunConfig& c) {
  if (!c.space) return std::nullopt;
  return SpaceDescriptor::parse(*c.space);
}

SpaceDescriptor require_space(const RunConfig& c, const std::string& who) {
  if (!c.space) throw ValidationError(who + " needs --space");
  return SpaceDescriptor::parse(*c.space);
}

double require_lambda(const RunConfig& c, const std::string& who) {
  if (!c.lambda) throw ValidationError(who + " needs --lambda");
  return *c.lambda;
}

std::size_t dimension_of(const RunConfig& c, const std::optional<SpaceDescriptor>& space,
                         const std::string& who) {
  if (space) {
    if (c.n && *c.n != space->dim())
      throw ValidationError(who + ": --n " + std::to_string(*c.n) +
                            " disagrees with the space dimension " + std::to_string(space->dim()));
    return space->dim();
  }
  if (!c.n) throw ValidationError(who + " needs --n or --space");
  return *c.n;
}

double invariant(const std::optional<double>& given, const std::optional<SpaceDescriptor>& space,
                 const std::string& flag, const std::string& who,
                 const std::function<double(const SpaceDescriptor&)>& compute) {
  if (given) return *given;
  if (!space) throw ValidationError(who + " needs " + flag + " or --space");
  return compute(*space);
}

double optional_q(const RunConfig& c, const std::optional<SpaceDescriptor>& space,
                  const std::string& who) {
  if (c.q) return *c.q;
  if (space)
    if (const auto* mk = std::get_if<Minkowski>(&space->kind())) return mk->q;
  throw ValidationError(who + " needs --q");
}

void append(std::vector<BoundReport>& out, const BoundPair& pair) {
  out.push_back(pair.lower);
  out.push_back(pair.upper);
}

std::vector<BoundReport> bound_reports(const RunConfig& c, const std::string& formula,
                                       const BoundConstants& constants) {
  const auto space = space_of(c);
  std::vector<BoundReport> out;
  if (formula == "thm11" || formula == "cor11" || formula == "thm19") {
    const double lambda = require_lambda(c, formula);
    const auto variant = formula == "thm11"   ? Thm11Variant::pluriharmonic_D
                         : formula == "cor11" ? Thm11Variant::corollary_identity
                                              : Thm11Variant::holomorphic_C;
    const double sup = invariant(c.sup_pnorm, space, "--sup-pnorm", formula, [&](const auto& s) {
      return sup_pnorm_on_ball(s, c.p).value;
    });
    out.push_back(eval_thm11_family(variant, c.p, lambda, c.norm_u, sup));
  } else if (formula == "thm12") {
    const double lambda = require_lambda(c, formula);
    const std::size_t n = dimension_of(c, space, formula);
    const PCase pc = c.p_case ? parse_p_case(*c.p_case) : p_case_for(c.p);
    const double e2 = invariant(c.embed_l2_to_z, space, "--embed-l2-z", formula, [&](const auto& s) {
      return embed_norm(SpaceDescriptor::minkowski(2.0, n), s).value;
    });
    const double e1 = invariant(c.embed_z_to_l1, space, "--embed-z-l1", formula, [&](const auto& s) {
      return embed_norm(s, SpaceDescriptor::minkowski(1.0, n)).value;
    });
    out.push_back(eval_thm12(pc, n, lambda, c.p, e2, e1, constants));
  } else if (formula == "thm12u") {
    const double lambda = require_lambda(c, formula);
    const std::size_t n = dimension_of(c, space, formula);
    const double q = optional_q(c, space, formula);
    const auto lq = SpaceDescriptor::minkowski(q, n);
    const double ezq = invariant(c.embed_z_to_lq, space, "--embed-z-lq", formula,
                                 [&](const auto& s) { return embed_norm(s, lq).value; });
    const double eqz = invariant(c.embed_lq_to_z, space, "--embed-lq-z", formula,
                                 [&](const auto& s) { return embed_norm(lq, s).value; });
    out.push_back(eval_thm12_upper(n, lambda, c.p, q, ezq, eqz, constants));
  } else if (formula == "cor14") {
    const double lambda = require_lambda(c, formula);
    const std::size_t n = dimension_of(c, space, formula);
    const double q = optional_q(c, space, formula);
    const auto regime = c.regime ? parse_cor14_regime(*c.regime) : cor14_regime_for(c.p, q);
    out.push_back(eval_cor14(regime, q, c.p, lambda, n, constants));
  } else if (formula == "thm13a") {
    const double lambda = require_lambda(c, formula);
    if (!c.item) throw ValidationError("thm13a needs --item subset_l2|symmetric_2convex");
    const auto item = parse_thm13a_item(*c.item);
    const std::size_t n = dimension_of(c, space, formula);
    const PCase pc = c.p_case ? parse_p_case(*c.p_case) : p_case_for(c.p);
    double e2 = 1.0;
    if (item == Thm13aItem::subset_l2)
      e2 = invariant(c.embed_l2_to_z, space, "--embed-l2-z", formula, [&](const auto& s) {
        return embed_norm(SpaceDescriptor::minkowski(2.0, n), s).value;
      });
    const double dual = invariant(c.dual_ones, space, "--dual-ones", formula,
                                  [&](const auto& s) { return dual_ones_norm(s).value; });
    append(out, eval_thm13a(item, pc, n, lambda, c.p, e2, dual, constants));
  } else if (formula == "thm13") {
    const double lambda = require_lambda(c, formula);
    const std::size_t n = dimension_of(c, space, formula);
    const double q = optional_q(c, space, formula);
    const double cot = c.cot.value_or(2.0);
    const auto psi = eval_thm13_psi(n, lambda, c.p, q, c.cotype.value_or(cot), cot, constants);
    out.push_back(psi.psi1);
    out.push_back(psi.psi2);
  } else if (formula == "sandwich") {
    if (!c.inner_lower || !c.inner_upper)
      throw ValidationError("sandwich needs --inner-lower and --inner-upper");
    BoundPair inner;
    inner.lower.formula_id = inner.upper.formula_id = "input";
    inner.lower.role = BoundRole::lower;
    inner.upper.role = BoundRole::upper;
    inner.lower.value = *c.inner_lower;
    inner.upper.value = *c.inner_upper;
    std::optional<SpaceDescriptor> reference;
    if (c.reference_space) reference = SpaceDescriptor::parse(*c.reference_space);
    auto need_pair = [&](const std::string& flag) {
      if (!space || !reference)
        throw ValidationError("sandwich needs " + flag + " or both --space and --reference-space");
    };
    double sf = 0.0, sb = 0.0;
    if (c.s_forward) {
      sf = *c.s_forward;
    } else {
      need_pair("--s-forward");
      sf = domain_scaling(*space, *reference).value;
    }
    if (c.s_backward) {
      sb = *c.s_backward;
    } else {
      need_pair("--s-backward");
      sb = domain_scaling(*reference, *space).value;
    }
    SandwichMode mode;
    if (c.sandwich_mode == "two_sided")
      mode = SandwichMode::two_sided;
    else if (c.sandwich_mode == "one_sided")
      mode = SandwichMode::one_sided;
    else
      throw ValidationError("--mode must be two_sided or one_sided");
    append(out, eval_sandwich(inner, sf, sb, mode));
  } else {
    throw ValidationError("unknown formula id '" + formula + "'; valid ids: " + join(kFormulaIds));
  }
  return out;
}

void check_formulas(const RunConfig& c) {
  if (c.formulas.empty())
    throw ValidationError("--formula is required; valid ids: " + join(kFormulaIds));
  for (const auto& f : c.formulas)
    if (std::find(kFormulaIds.begin(), kFormulaIds.end(), f) == kFormulaIds.end())
      throw ValidationError("unknown formula id '" + f + "'; valid ids: " + join(kFormulaIds));
}

OutputFormat format_of(const RunConfig& c, OutputFormat fallback) {
  return c.format.value_or(fallback);
}

// ---- norms ----------------------------------------------------------------

ComplexVector parse_point(const std::vector<std::string>& tokens) {
  ComplexVector z;
  for (const auto& t : tokens) {
    const auto comma = t.find(',');
    if (comma == std::string::npos)
      z.emplace_back(parse_real(t, "--z"), 0.0);
    else
      z.emplace_back(parse_real(t.substr(0, comma), "--z"), parse_real(t.substr(comma + 1), "--z"));
  }
  return z;
}

nlohmann::json estimate_json(const std::string& op, const Estimate& e) {
  return {{"op", op}, {"value", json_number(e.value)}, {"exact", e.exact},
          {"converged", e.converged}};
}

std::vector<nlohmann::json> norm_results(const RunConfig& c) {
  const auto space = require_space(c, "norms");
  const auto method = parse_method(c.method);
  AscentOptions opts;
  opts.seed = c.seed;
  std::vector<std::string> ops = c.ops;
  if (ops.empty()) ops = {"dual_ones", "sup_pnorm", "reach"};
  auto point = [&](const std::string& op) {
    if (c.point.empty()) throw ValidationError(op + " needs --z");
    auto z = parse_point(c.point);
    if (z.size() != space.dim())
      throw ValidationError(op + ": --z has " + std::to_string(z.size()) +
                            " coordinates, the space has " + std::to_string(space.dim()));
    return z;
  };
  auto target = [&](const std::string& op) {
    if (!c.to_space) throw ValidationError(op + " needs --to");
    return SpaceDescriptor::parse(*c.to_space);
  };
  std::vector<nlohmann::json> out;
  for (const auto& op : ops) {
    if (op == "norm") {
      out.push_back({{"op", op}, {"value", json_number(norm(space, point(op)))}, {"exact", true}});
    } else if (op == "minkowski") {
      out.push_back({{"op", op},
                     {"value", json_number(minkowski_functional(space, point(op)))},
                     {"exact", false}});
    } else if (op == "contains") {
      out.push_back({{"op", op}, {"value", contains(space, point(op))}});
    } else if (op == "embed") {
      out.push_back(estimate_json(op, embed_norm(space, target(op), method, opts)));
      out.back()["to"] = target(op).to_string();
    } else if (op == "scaling") {
      out.push_back(estimate_json(op, domain_scaling(space, target(op), method, opts)));
      out.back()["to"] = target(op).to_string();
    } else if (op == "dual_ones") {
      out.push_back(estimate_json(op, dual_ones_norm(space, method, opts)));
    } else if (op == "sup_pnorm") {
      out.push_back(estimate_json(op, sup_pnorm_on_ball(space, c.p, method, opts)));
      out.back()["p"] = json_number(c.p);
    } else if (op == "reach") {
      if (c.coordinate >= space.dim()) throw ValidationError("--coordinate out of range");
      out.push_back({{"op", op},
                     {"coordinate", c.coordinate},
                     {"value", json_number(coordinate_reach(space, c.coordinate))},
                     {"exact", true}});
    } else if (op == "unconditional") {
      const auto r = check_unconditionality(space, c.samples, c.seed);
      out.push_back({{"op", op}, {"pass", r.pass}, {"value", json_number(r.max_deviation)}});
    } else if (op == "normed") {
      out.push_back({{"op", op}, {"value", space.is_normed()}, {"symmetric", space.is_symmetric()}});
    } else {
      throw ValidationError("unknown norms op '" + op +
                            "'; valid ops: norm, minkowski, contains, embed, scaling, dual_ones, "
                            "sup_pnorm, reach, unconditional, normed");
    }
  }
  return out;
}

// ---- estimate -------------------------------------------------------------

std::vector<PluriharmonicPoly> homogeneous_members(const SpaceDescriptor& space, unsigned degree) {
  if (std::holds_alternative<Minkowski>(space.kind())) return monomial_members(space, degree);
  std::vector<PluriharmonicPoly> out;
  for (unsigned m = 1; m <= degree; ++m)
    for (const auto& alpha : indices_of_degree(space.dim(), m)) {
      PluriharmonicPoly f(space.dim());
      f.set_a(alpha, 1.0);
      f.set_id("monomial:" + alpha.to_string());
      out.push_back(std::move(f));
    }
  return out;
}

std::vector<PluriharmonicPoly> build_family(const RunConfig& c, const SpaceDescriptor& space) {
  const std::string& fam = c.family;
  if (fam == "mobius")
    return mobius_members(space, c.mobius_a.empty() ? default_mobius_parameters() : c.mobius_a);
  if (fam == "certified") return certified_family(space);
  if (fam == "monomials") return homogeneous_members(space, c.degree);
  if (fam == "quadratic") {
    auto f = quadratic_form_member(space.dim());
    return {f};
  }
  if (fam == "example") {
    std::vector<PluriharmonicPoly> out;
    for (unsigned k = 1; k <= c.count; ++k) out.push_back(example_member(k, space, parse_kind(c.kind)));
    return out;
  }
  if (fam == "random") {
    RandomFamilySpec spec;
    spec.n = space.dim();
    spec.max_degree = c.degree;
    spec.kind = parse_kind(c.kind);
    spec.count = c.count;
    spec.allow_large = c.allow_large;
    return random_family(spec, c.seed, space);
  }
  if (fam.rfind("file:", 0) == 0) return read_family_file(fam.substr(5));
  throw ValidationError("unknown family '" + fam +
                        "'; valid: mobius, certified, monomials, quadratic, example, random, "
                        "file:<path>");
}

EstimatorOptions estimator_options(const RunConfig& c) {
  EstimatorOptions o;
  o.tol = c.tol;
  o.seed = c.seed;
  o.majorant_options.seed = c.seed;
  return o;
}

// ---- verify ---------------------------------------------------------------

CheckReport example11_report(const SpaceDescriptor& space, double r, double p, double lambda,
                             unsigned k_max) {
  const auto res = counterexample_scan(space, r, p, lambda, k_max);
  CheckReport rep;
  rep.name = "example11";
  auto j = to_json(res);
  j["r"] = r;
  j["p"] = json_number(p);
  j["lambda"] = lambda;
  j["space"] = space.to_string();
  rep.record(res.margin, 0.0, j);
  if (!res.k) rep.pass = false;
  rep.details["scan"] = j;
  return rep;
}

CheckReport unconditional_report(const std::vector<SpaceDescriptor>& spaces, std::size_t samples,
                                 std::uint64_t seed) {
  CheckReport rep;
  rep.name = "unconditional";
  nlohmann::json per = nlohmann::json::object();
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const auto r = check_unconditionality(spaces[i], samples, split_seed(seed, i));
    per[spaces[i].to_string()] = r.max_deviation;
    rep.record(1e-9 - r.max_deviation, 0.0,
               {{"space", spaces[i].to_string()}, {"deviation", r.max_deviation}});
  }
  rep.details["max_deviation"] = per;
  return rep;
}

std::vector<SpaceDescriptor> default_unconditional_spaces() {
  return {SpaceDescriptor::parse("lq:q=2:n=4"), SpaceDescriptor::parse("mixed:s=1:m=2:t=2:n=3"),
          SpaceDescriptor::parse("lorentz:s=2:t=1:n=4"),
          SpaceDescriptor::parse("orlicz:psi=x^2+x^3:n=4")};
}

CheckReport lemma33_report(const RunConfig& c) {
  const auto space = c.space ? SpaceDescriptor::parse(*c.space) : SpaceDescriptor::polydisc(2);
  const double lambda = c.lambda.value_or(2.0);
  const auto u = BoundedOperatorU::identity_scaled(c.norm_u);
  const auto opts = estimator_options(c);

  auto full = certified_family(space);
  std::set<std::string> ids;
  for (const auto& f : full) ids.insert(f.id());
  for (auto& f : homogeneous_members(space, c.degree))
    if (ids.insert(f.id()).second) full.push_back(std::move(f));

  std::map<unsigned, std::vector<PluriharmonicPoly>> by_degree;
  for (const auto& f : full) {
    const unsigned m = f.max_degree();
    if (m >= 1 && f.is_homogeneous(m)) by_degree[m].push_back(f);
  }
  const auto full_est = estimate_radius(space, full, u, c.p, lambda, opts, "lemma33:full");
  std::map<unsigned, RadiusEstimate> hom;
  for (const auto& [m, members] : by_degree)
    hom.emplace(m, estimate_homogeneous_radius(space, m, members, u, c.p, lambda, opts,
                                               "lemma33:m" + std::to_string(m)));
  return verify_lemma33_chain(space, full_est, hom, c.p, lambda, u.norm());
}

std::vector<CheckReport> run_suites(const RunConfig& c) {
  std::vector<std::string> suites = c.suites.empty() ? std::vector<std::string>{"all"} : c.suites;
  std::vector<std::string> expanded;
  for (const auto& s : suites) {
    if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end())
      throw ValidationError("unknown suite '" + s + "'; valid suites: " + join(kSuites));
    if (s == "all")
      expanded.insert(expanded.end(), {"schwarz_pick", "lemma33", "example11", "unconditional"});
    else
      expanded.push_back(s);
  }
  std::vector<CheckReport> out;
  for (const auto& s : expanded) {
    if (s == "schwarz_pick") {
      SchwarzPickSuiteSpec spec;
      spec.count = c.suite_count.value_or(1000);
      spec.max_n = c.max_n;
      spec.max_degree = c.max_degree;
      SchwarzPickOptions opts;
      opts.seed = c.seed;
      out.push_back(verify_schwarz_pick_suite(spec, c.seed, opts));
      out.push_back(verify_schwarz_pick_monomials(c.max_n, c.max_degree, spec.qs));
    } else if (s == "lemma33") {
      out.push_back(lemma33_report(c));
    } else if (s == "example11") {
      const auto space = c.space ? SpaceDescriptor::parse(*c.space) : SpaceDescriptor::polydisc(1);
      const std::vector<double> radii =
          c.radii.empty() ? std::vector<double>{0.5, 0.1, 0.01} : c.radii;
      for (double r : radii)
        out.push_back(example11_report(space, r, c.p, c.lambda.value_or(1.0), c.k_max));
    } else if (s == "unconditional") {
      const auto spaces = c.space ? std::vector<SpaceDescriptor>{SpaceDescriptor::parse(*c.space)}
                                  : default_unconditional_spaces();
      out.push_back(unconditional_report(spaces, c.samples, c.seed));
    }
  }
  return out;
}

// ---- output ---------------------------------------------------------------

int emit(const RunConfig& c, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (!c.output) {
    write(out);
    return 0;
  }
  std::ofstream file(*c.output, std::ios::binary);
  if (!file) throw ValidationError("cannot open output file '" + *c.output + "'");
  write(file);
  return 0;
}

void emit_bounds(const RunConfig& c, std::ostream& out, const std::vector<BoundReport>& reports) {
  emit(c, out, [&](std::ostream& os) {
    switch (format_of(c, OutputFormat::json)) {
      case OutputFormat::json: {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        os << dump(arr);
        break;
      }
      case OutputFormat::csv:
        write_bounds_csv(os, reports);
        break;
      case OutputFormat::table:
        write_bounds_table(os, reports);
        break;
    }
  });
}

}  // namespace

BoundConstants load_constants(const RunConfig& config) {
  BoundConstants constants;
  if (config.constants_file) constants.load_file(*config.constants_file);
  for (const auto& entry : config.constants) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw ValidationError("--const expects key=value, got '" + entry + "'");
    constants.set(trim(entry.substr(0, eq)), parse_real(entry.substr(eq + 1), "--const"));
  }
  return constants;
}

std::vector<std::size_t> parse_n_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos)
    throw ValidationError("--n range must look like 2..64, 2..64:x2 or 2..64:+2, got '" + text +
                          "'");
  const auto colon = text.find(':', dots);
  const auto lo = parse_unsigned<std::size_t>(text.substr(0, dots), "--n range start");
  const auto hi = parse_unsigned<std::size_t>(
      text.substr(dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2),
      "--n range end");
  bool doubling = false;
  std::size_t step = 1;
  if (colon != std::string::npos) {
    std::string s = text.substr(colon + 1);
    if (!s.empty() && s[0] == 'x') {
      doubling = true;
      step = parse_unsigned<std::size_t>(s.substr(1), "--n range factor");
      if (step < 2) throw ValidationError("--n range factor must be at least 2");
    } else {
      if (!s.empty() && s[0] == '+') s = s.substr(1);
      step = parse_unsigned<std::size_t>(s, "--n range step");
      if (step == 0) throw ValidationError("--n range step must be positive");
    }
  }
  if (lo == 0) throw ValidationError("--n range must start at n >= 1");
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; n = doubling ? n * step : n + step) out.push_back(n);
  if (out.empty()) throw ValidationError("--n range '" + text + "' is empty");
  return out;
}

int cmd_bounds(const RunConfig& c, std::ostream& out) {
  check_formulas(c);
  const auto constants = load_constants(c);
  std::vector<BoundReport> reports;
  for (const auto& f : c.formulas) {
    auto r = bound_reports(c, f, constants);
    reports.insert(reports.end(), r.begin(), r.end());
  }
  emit_bounds(c, out, reports);
  return 0;
}

int cmd_norms(const RunConfig& c, std::ostream& out) {
  const auto results = norm_results(c);
  const std::string space = SpaceDescriptor::parse(*c.space).to_string();
  return emit(c, out, [&](std::ostream& os) {
    switch (format_of(c, OutputFormat::json)) {
      case OutputFormat::json:
        os << dump({{"space", space}, {"results", results}});
        break;
      case OutputFormat::csv:
        os << "op,value\n";
        for (const auto& r : results) os << r["op"].get<std::string>() << ',' << r["value"].dump() << '\n';
        break;
      case OutputFormat::table:
        for (const auto& r : results) {
          char line[128];
          std::snprintf(line, sizeof line, "%-14s %s\n", r["op"].get<std::string>().c_str(),
                        r["value"].dump().c_str());
          os << line;
        }
        break;
    }
  });
}

int cmd_estimate(const RunConfig& c, std::ostream& out) {
  const auto space = require_space(c, "estimate");
  auto family = build_family(c, space);
  const auto u = BoundedOperatorU::identity_scaled(c.norm_u);
  const double lambda = c.lambda.value_or(1.0);
  const auto opts = estimator_options(c);
  RadiusEstimate est;
  if (c.m) {
    std::vector<PluriharmonicPoly> parts;
    for (const auto& f : family) {
      auto g = f.is_homogeneous(*c.m) ? f : homogeneous_part(f, *c.m);
      if (!g.is_zero()) parts.push_back(std::move(g));
    }
    if (parts.empty())
      throw ValidationError("family '" + c.family + "' has no terms of degree " +
                            std::to_string(*c.m));
    est = estimate_homogeneous_radius(space, *c.m, parts, u, c.p, lambda, opts, c.family);
  } else {
    est = estimate_radius(space, family, u, c.p, lambda, opts, c.family);
  }
  return emit(c, out, [&](std::ostream& os) {
    switch (format_of(c, OutputFormat::json)) {
      case OutputFormat::json:
        os << dump(to_json(est));
        break;
      case OutputFormat::csv:
        os << "id,critical_r,margin_at_r,sup_norm,sup_certified\n";
        for (const auto& fm : est.per_function)
          os << fm.id << ',' << format_double(fm.critical_r) << ',' << format_double(fm.margin_at_r)
             << ',' << format_double(fm.sup_norm) << ',' << (fm.sup_certified ? "true" : "false")
             << '\n';
        break;
      case OutputFormat::table:
        os << "family " << est.family_id << " on " << est.space << "\n"
           << "bracket [" << format_double(est.lower_bracket) << ", "
           << format_double(est.upper_bracket) << "]"
           << (est.certified ? " certified" : " uncertified") << "\n";
        if (!est.note.empty()) os << est.note << "\n";
        break;
    }
  });
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const auto reports = run_suites(c);
  std::size_t failures = 0;
  for (const auto& r : reports) failures += r.pass ? 0 : 1;
  emit(c, out, [&](std::ostream& os) {
    switch (format_of(c, OutputFormat::json)) {
      case OutputFormat::json: {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : reports) arr.push_back(to_json(r));
        os << dump(arr);
        break;
      }
      case OutputFormat::csv:
        os << "name,pass,worst_margin,uncertainty\n";
        for (const auto& r : reports)
          os << r.name << ',' << (r.pass ? "true" : "false") << ',' << format_double(r.worst_margin)
             << ',' << format_double(r.uncertainty) << '\n';
        break;
      case OutputFormat::table:
        write_check_table(os, reports);
        break;
    }
  });
  return verification_exit_code(failures);
}

int cmd_sweep(const RunConfig& c, std::ostream& out) {
  check_formulas(c);
  if (c.n_range.empty()) throw ValidationError("sweep needs --n with a range such as 2..64:x2");
  const auto ns = parse_n_range(c.n_range);
  if (c.space && c.space->find("n=") != std::string::npos)
    throw ValidationError("sweep --space is a template and must omit n=");
  const auto constants = load_constants(c);
  std::vector<SweepRow> rows;
  for (std::size_t n : ns) {
    RunConfig local = c;
    local.n = n;
    if (c.space) local.space = *c.space + ":n=" + std::to_string(n);
    for (const auto& f : c.formulas)
      for (auto& r : bound_reports(local, f, constants)) rows.push_back({n, std::move(r)});
  }
  return emit(c, out, [&](std::ostream& os) {
    switch (format_of(c, OutputFormat::csv)) {
      case OutputFormat::csv:
        write_sweep_csv(os, rows);
        break;
      case OutputFormat::json: {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& row : rows) arr.push_back({{"n", row.n}, {"report", to_json(row.report)}});
        os << dump(arr);
        break;
      }
      case OutputFormat::table: {
        std::vector<BoundReport> reports;
        for (const auto& row : rows) reports.push_back(row.report);
        write_bounds_table(os, reports);
        break;
      }
    }
  });
}

namespace {

void real_opt(CLI::App* app, const std::string& name, std::optional<double>& target,
              const std::string& desc) {
  app->add_option_function<std::string>(
      name, [&target, name](const std::string& s) { target = parse_real(s, name); }, desc);
}

void real_opt(CLI::App* app, const std::string& name, double& target, const std::string& desc) {
  app->add_option_function<std::string>(
      name, [&target, name](const std::string& s) { target = parse_real(s, name); }, desc);
}

void add_format(CLI::App* app, RunConfig& c) {
  app->add_option_function<std::string>(
      "--format",
      [&c](const std::string& s) {
        if (s == "json")
          c.format = OutputFormat::json;
        else if (s == "csv")
          c.format = OutputFormat::csv;
        else if (s == "table")
          c.format = OutputFormat::table;
        else
          throw ValidationError("--format must be json, csv or table");
      },
      "Output format: json, csv or table");
  app->add_option("--output", c.output, "Write to this file instead of stdout");
  app->add_option("--seed", c.seed, "Master seed");
}

void add_space(CLI::App* app, RunConfig& c) {
  app->add_option("--space", c.space, "Space, e.g. lq:q=2:n=4 or lorentz:s=2:t=1:n=4");
}

void add_bound_options(CLI::App* app, RunConfig& c) {
  add_space(app, c);
  app->add_option("--formula", c.formulas,
                  "Formula id (repeatable): thm11, cor11, thm19, thm12, thm12u, cor14, thm13a, "
                  "thm13, sandwich")
      ->delimiter(',');
  real_opt(app, "--p", c.p, "Power p >= 1");
  real_opt(app, "--q", c.q, "Exponent q of the l_q ball (inf allowed)");
  real_opt(app, "--lambda", c.lambda, "Relaxation lambda >= 1");
  real_opt(app, "--normU", c.norm_u, "Operator norm ||U||");
  app->add_option("--regime", c.regime, "cor14 regime: p_eq_1, p_ge_q, p_lt_q");
  app->add_option("--case", c.p_case, "p case: p_eq_1, p_ge_2, p_between");
  app->add_option("--item", c.item, "thm13a item: subset_l2, symmetric_2convex");
  real_opt(app, "--cot", c.cot, "Cot(X) >= 2 (default 2)");
  real_opt(app, "--cotype", c.cotype, "Finite cotype t of X (default Cot(X))");
  real_opt(app, "--sup-pnorm", c.sup_pnorm, "sup of ||z||_p over the ball (else from --space)");
  real_opt(app, "--embed-l2-z", c.embed_l2_to_z, "||Id: l_2 -> Z||");
  real_opt(app, "--embed-z-l1", c.embed_z_to_l1, "||Id: Z -> l_1||");
  real_opt(app, "--embed-z-lq", c.embed_z_to_lq, "||Id: Z -> l_q||");
  real_opt(app, "--embed-lq-z", c.embed_lq_to_z, "||Id: l_q -> Z||");
  real_opt(app, "--dual-ones", c.dual_ones, "||e*_1 + ... + e*_n|| in Z*");
  real_opt(app, "--inner-lower", c.inner_lower, "sandwich: inner lower bound");
  real_opt(app, "--inner-upper", c.inner_upper, "sandwich: inner upper bound");
  real_opt(app, "--s-forward", c.s_forward, "sandwich: S forward factor");
  real_opt(app, "--s-backward", c.s_backward, "sandwich: S backward factor");
  app->add_option("--reference-space", c.reference_space,
                  "sandwich: reference space for computing S factors");
  app->add_option("--mode", c.sandwich_mode, "sandwich mode: two_sided, one_sided");
  app->add_option("--const", c.constants, "Constant override key=value (repeatable)");
  app->add_option("--constants-file", c.constants_file, "File of key = value lines");
  add_format(app, c);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Bohr radius bounds, invariants, estimates and checks", "bohr"};
  app.require_subcommand(1);

  auto* bounds = app.add_subcommand("bounds", "Evaluate closed-form bounds");
  add_bound_options(bounds, c);

  auto* sweep = app.add_subcommand("sweep", "Evaluate bounds over a range of n");
  add_bound_options(sweep, c);
  sweep->add_option("--n", c.n_range, "Range: 2..64, 2..64:x2 or 2..64:+2")->required();
  bounds->add_option_function<std::size_t>("--n", [&c](std::size_t n) { c.n = n; }, "Dimension n");

  auto* norms = app.add_subcommand("norms", "Space invariants");
  add_space(norms, c);
  norms->add_option("--op", c.ops,
                    "Operation (repeatable): norm, minkowski, contains, embed, scaling, dual_ones, "
                    "sup_pnorm, reach, unconditional, normed")
      ->delimiter(',');
  norms->add_option("--to", c.to_space, "Target space for embed and scaling");
  norms->add_option("--z", c.point, "Point coordinates, each re or re,im");
  norms->add_option("--method", c.method, "auto, closed or numeric");
  real_opt(norms, "--p", c.p, "p for sup_pnorm");
  norms->add_option("--coordinate", c.coordinate, "Coordinate index for reach (from 0)");
  norms->add_option("--samples", c.samples, "Samples for unconditional");
  add_format(norms, c);

  auto* estimate = app.add_subcommand("estimate", "Empirical upper estimate of the radius");
  add_space(estimate, c);
  estimate->add_option("--family", c.family,
                       "mobius, certified, monomials, quadratic, example, random or file:<path>");
  estimate->add_option("--a", c.mobius_a, "Mobius parameters")->delimiter(',');
  real_opt(estimate, "--p", c.p, "Power p >= 1");
  real_opt(estimate, "--lambda", c.lambda, "Relaxation lambda >= 1 (default 1)");
  real_opt(estimate, "--normU", c.norm_u, "U = normU * I (default 1)");
  real_opt(estimate, "--tol", c.tol, "Bisection tolerance");
  estimate->add_option_function<unsigned>("--m", [&c](unsigned m) { c.m = m; },
                                          "Restrict to m-homogeneous parts");
  estimate->add_option("--kind", c.kind, "scalar or matrix<k>");
  estimate->add_option("--count", c.count, "Members for random and example families");
  estimate->add_option("--degree", c.degree, "Maximum degree for random and monomial families");
  estimate->add_flag("--allow-large", c.allow_large, "Lift the random-family size guardrails");
  add_format(estimate, c);

  auto* verify = app.add_subcommand("verify", "Run verification suites");
  add_space(verify, c);
  verify->add_option("--suite", c.suites,
                     "schwarz_pick, lemma33, example11, unconditional or all (repeatable)")
      ->delimiter(',');
  real_opt(verify, "--p", c.p, "Power p >= 1");
  real_opt(verify, "--lambda", c.lambda, "lambda (example11 default 1, lemma33 default 2)");
  real_opt(verify, "--normU", c.norm_u, "U = normU * I for lemma33");
  real_opt(verify, "--tol", c.tol, "Bisection tolerance for lemma33");
  verify->add_option("--r", c.radii, "Radii for example11")->delimiter(',');
  verify->add_option("--k-max", c.k_max, "Scan ceiling for example11");
  verify->add_option_function<std::size_t>("--count", [&c](std::size_t n) { c.suite_count = n; },
                                           "Polynomials in the schwarz_pick suite");
  verify->add_option("--max-n", c.max_n, "schwarz_pick: maximum dimension");
  verify->add_option("--max-degree", c.max_degree, "schwarz_pick: maximum degree");
  verify->add_option("--degree", c.degree, "lemma33: maximum monomial degree");
  verify->add_option("--samples", c.samples, "Samples for unconditional");
  add_format(verify, c);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(c, out);
    if (sweep->parsed()) return cmd_sweep(c, out);
    if (norms->parsed()) return cmd_norms(c, out);
    if (estimate->parsed()) return cmd_estimate(c, out);
    if (verify->parsed()) return cmd_verify(c, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace bohr::cli
