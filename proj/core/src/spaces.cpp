#include "bohr/spaces.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>

#include "bohr/ascent.hpp"
#include "bohr/error.hpp"
#include "bohr/rng.hpp"

namespace bohr {
namespace {

std::string format_number(double v) {
  if (v == kInf) return "inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_number(std::string_view key, std::string_view text) {
  if (text == "inf" || text == "infinity") return kInf;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
    throw ValidationError("space field '" + std::string(key) + "': malformed number '" +
                          std::string(text) + "'");
  return v;
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v == 0)
    throw ValidationError("space field '" + std::string(key) +
                          "' must be a positive integer, got '" + std::string(text) + "'");
  return v;
}

void check_exponent(const char* what, double q) {
  if (!(q >= 1.0)) throw ValidationError(std::string(what) + " must satisfy 1 <= q <= inf");
}

void check_scale(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw ValidationError("space scale must be a positive finite number");
}

// Scaled l_q norm of nonnegative entries.
double lq_norm(std::span<const double> x, double q) {
  double m = 0.0;
  for (double v : x) m = std::max(m, v);
  if (m == 0.0 || q == kInf) return m;
  if (q == 1.0) return std::accumulate(x.begin(), x.end(), 0.0);
  double s = 0.0;
  if (q == 2.0) {
    for (double v : x) s += (v / m) * (v / m);
    return m * std::sqrt(s);
  }
  for (double v : x) s += std::pow(v / m, q);
  return m * std::pow(s, 1.0 / q);
}

double lorentz_norm(std::span<const double> x, double s_exp, double t_exp) {
  std::vector<double> d(x.begin(), x.end());
  std::sort(d.begin(), d.end(), std::greater<>());
  if (d.empty() || d.front() == 0.0) return 0.0;
  const double inv_s = reciprocal(s_exp);
  if (t_exp == kInf) {
    double best = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k)
      best = std::max(best, std::pow(static_cast<double>(k + 1), inv_s) * d[k]);
    return best;
  }
  const double m = d.front();
  const double ratio = t_exp * inv_s;
  double sum = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] == 0.0) break;
    const double kk = static_cast<double>(k + 1);
    const double w = std::pow(kk, ratio) - std::pow(kk - 1.0, ratio);
    if (w == 0.0) continue;
    sum += w * std::pow(d[k] / m, t_exp);
  }
  return m * std::pow(sum, 1.0 / t_exp);
}

double luxemburg_norm(std::span<const double> x, const OrliczFunction& psi) {
  double m = 0.0;
  for (double v : x) m = std::max(m, v);
  if (m == 0.0) return 0.0;
  auto modular = [&](double rho) {
    double s = 0.0;
    for (double v : x)
      if (v > 0.0) s += psi(v / rho);
    return s;
  };
  double hi = m, lo = m;
  int guard = 0;
  while (modular(hi) > 1.0) {
    hi *= 2.0;
    if (++guard > 4000) throw NumericError("luxemburg norm: cannot bracket");
  }
  guard = 0;
  while (modular(lo) <= 1.0) {
    lo *= 0.5;
    if (++guard > 4000) throw NumericError("luxemburg norm: cannot bracket");
  }
  for (int it = 0; it < 200 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (modular(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// l_q-equivalent exponent when the norm is exactly an l_q norm.
std::optional<double> as_lq(const SpaceDescriptor& s) {
  return std::visit(
      [](const auto& k) -> std::optional<double> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Minkowski>) {
          return k.q;
        } else if constexpr (std::is_same_v<T, Lorentz>) {
          if (k.s == k.t || k.s == kInf) return k.s;
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, Mixed>) {
          if (k.outer == k.inner) return k.outer;
          return std::nullopt;
        } else {
          return std::nullopt;
        }
      },
      s.kind());
}

double identity_lq(double from_q, double to_q, std::size_t n) {
  if (from_q <= to_q) return 1.0;
  return std::pow(static_cast<double>(n), reciprocal(to_q) - reciprocal(from_q));
}

// Block structure (m, n_inner, outer, inner) when the space can be read as a
// mixed space with the given block size.
std::optional<Mixed> as_mixed(const SpaceDescriptor& s, std::optional<Mixed> shape) {
  if (const auto* mx = std::get_if<Mixed>(&s.kind())) return *mx;
  if (!shape) return std::nullopt;
  if (auto q = as_lq(s)) return Mixed{shape->blocks, *q, shape->block_dim, *q};
  return std::nullopt;
}

std::vector<double> ones(std::size_t n) { return std::vector<double>(n, 1.0); }

double basis_norm(const SpaceDescriptor& s, std::size_t k) {
  std::vector<double> e(s.dim(), 0.0);
  e.at(k) = 1.0;
  return s.base_norm(e);
}

double max_basis_norm(const SpaceDescriptor& s) {
  double m = 0.0;
  for (std::size_t k = 0; k < s.dim(); ++k) m = std::max(m, basis_norm(s, k));
  return m;
}

double min_basis_norm(const SpaceDescriptor& s) {
  double m = kInf;
  for (std::size_t k = 0; k < s.dim(); ++k) m = std::min(m, basis_norm(s, k));
  return m;
}

std::optional<double> closed_dual_ones(const SpaceDescriptor& space) {
  const double n = static_cast<double>(space.dim());
  return std::visit(
      [&](const auto& k) -> std::optional<double> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Minkowski>) {
          return std::pow(n, 1.0 - reciprocal(k.q));
        } else if constexpr (std::is_same_v<T, Mixed>) {
          return std::pow(static_cast<double>(k.blocks), 1.0 - reciprocal(k.outer)) *
                 std::pow(static_cast<double>(k.block_dim), 1.0 - reciprocal(k.inner));
        } else if constexpr (std::is_same_v<T, Lorentz>) {
          if (!space.is_normed()) return std::nullopt;
          return std::pow(n, 1.0 - reciprocal(k.s));
        } else {
          return n * k.psi.inverse(1.0 / n);
        }
      },
      space.kind());
}

std::optional<double> closed_embed(const SpaceDescriptor& from, const SpaceDescriptor& to) {
  const std::size_t n = from.dim();
  if (from.unit().same_as(to.unit())) return 1.0;

  const auto qf = as_lq(from);
  const auto qt = as_lq(to);
  if (qf && qt) return identity_lq(*qf, *qt, n);

  const auto* mf = std::get_if<Mixed>(&from.kind());
  const auto* mt = std::get_if<Mixed>(&to.kind());
  if (mf || mt) {
    const Mixed shape = mf ? *mf : *mt;
    auto a = as_mixed(from, shape);
    auto b = as_mixed(to, shape);
    if (a && b && a->blocks == b->blocks && a->block_dim == b->block_dim)
      return identity_lq(a->outer, b->outer, a->blocks) *
             identity_lq(a->inner, b->inner, a->block_dim);
  }

  if (qf && *qf == 1.0 && to.is_normed()) return max_basis_norm(to);
  if (qt && *qt == kInf) return 1.0 / min_basis_norm(from);
  if (qf && *qf == kInf) return to.base_norm(ones(n));
  if (qt && *qt == 1.0 && from.is_normed()) return closed_dual_ones(from);
  return std::nullopt;
}

Estimate numeric_embed(const SpaceDescriptor& from, const SpaceDescriptor& to,
                       const AscentOptions& options) {
  const RealFunction objective = [&](std::span<const double> x) { return to.base_norm(x); };
  const RealFunction sphere = [&](std::span<const double> x) { return from.base_norm(x); };
  const auto r = maximize_on_sphere(from.dim(), objective, sphere, options);
  return Estimate{r.value, false, r.converged};
}

void check_same_dim(const SpaceDescriptor& a, const SpaceDescriptor& b) {
  if (a.dim() != b.dim())
    throw ValidationError("dimension mismatch: " + a.to_string() + " vs " + b.to_string());
}

std::vector<double> moduli_of(const SpaceDescriptor& space, std::span<const Complex> z) {
  if (z.size() != space.dim())
    throw ValidationError("dimension mismatch: vector of length " + std::to_string(z.size()) +
                          " for space of dimension " + std::to_string(space.dim()));
  std::vector<double> x(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag()))
      throw ValidationError("non-finite vector component at index " + std::to_string(i));
    x[i] = std::abs(z[i]);
  }
  return x;
}

}  // namespace

SpaceDescriptor::SpaceDescriptor(Kind kind, std::size_t dim, double scale)
    : kind_(std::move(kind)), dim_(dim), scale_(scale) {
  if (dim_ == 0) throw ValidationError("space dimension must be positive");
  check_scale(scale_);
}

SpaceDescriptor SpaceDescriptor::minkowski(double q, std::size_t n, double scale) {
  check_exponent("lq exponent q", q);
  return SpaceDescriptor(Minkowski{q}, n, scale);
}

SpaceDescriptor SpaceDescriptor::mixed(std::size_t m, double s, std::size_t n_inner, double t,
                                       double scale) {
  check_exponent("mixed outer exponent s", s);
  check_exponent("mixed inner exponent t", t);
  if (m == 0 || n_inner == 0) throw ValidationError("mixed space needs m, n >= 1");
  return SpaceDescriptor(Mixed{m, s, n_inner, t}, m * n_inner, scale);
}

SpaceDescriptor SpaceDescriptor::lorentz(double s, double t, std::size_t n, double scale) {
  check_exponent("lorentz exponent s", s);
  check_exponent("lorentz exponent t", t);
  return SpaceDescriptor(Lorentz{s, t}, n, scale);
}

SpaceDescriptor SpaceDescriptor::orlicz(OrliczFunction psi, std::size_t n, double scale) {
  return SpaceDescriptor(Orlicz{std::move(psi)}, n, scale);
}

SpaceDescriptor SpaceDescriptor::with_scale(double scale) const {
  SpaceDescriptor copy = *this;
  check_scale(scale);
  copy.scale_ = scale;
  return copy;
}

bool SpaceDescriptor::is_normed() const {
  if (const auto* l = std::get_if<Lorentz>(&kind_)) return l->t <= l->s;
  return true;
}

bool SpaceDescriptor::is_symmetric() const { return !std::holds_alternative<Mixed>(kind_); }

double SpaceDescriptor::base_norm(std::span<const double> x) const {
  if (x.size() != dim_) throw ValidationError("dimension mismatch in base_norm");
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Minkowski>) {
          return lq_norm(x, k.q);
        } else if constexpr (std::is_same_v<T, Mixed>) {
          std::vector<double> inner(k.blocks);
          for (std::size_t b = 0; b < k.blocks; ++b)
            inner[b] = lq_norm(x.subspan(b * k.block_dim, k.block_dim), k.inner);
          return lq_norm(inner, k.outer);
        } else if constexpr (std::is_same_v<T, Lorentz>) {
          return lorentz_norm(x, k.s, k.t);
        } else {
          return luxemburg_norm(x, k.psi);
        }
      },
      kind_);
}

SpaceDescriptor SpaceDescriptor::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  const std::string_view kind = parts.front();
  std::map<std::string, std::string, std::less<>> fields;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw ValidationError("space '" + std::string(text) + "': expected key=value, got '" +
                            std::string(parts[i]) + "'");
    const std::string key(parts[i].substr(0, eq));
    if (!fields.emplace(key, std::string(parts[i].substr(eq + 1))).second)
      throw ValidationError("space '" + std::string(text) + "': duplicate field '" + key + "'");
  }

  auto take = [&](const char* key) -> std::string {
    auto it = fields.find(key);
    if (it == fields.end())
      throw ValidationError("space '" + std::string(text) + "': missing field '" + key + "'");
    std::string v = it->second;
    fields.erase(it);
    return v;
  };
  auto take_optional = [&](const char* key) -> std::optional<std::string> {
    auto it = fields.find(key);
    if (it == fields.end()) return std::nullopt;
    std::string v = it->second;
    fields.erase(it);
    return v;
  };

  const double scale = [&] {
    auto s = take_optional("scale");
    return s ? parse_number("scale", *s) : 1.0;
  }();

  std::optional<SpaceDescriptor> result;
  if (kind == "lq") {
    const double q = parse_number("q", take("q"));
    result = minkowski(q, parse_count("n", take("n")), scale);
  } else if (kind == "mixed") {
    const double s = parse_number("s", take("s"));
    const std::size_t m = parse_count("m", take("m"));
    const double t = parse_number("t", take("t"));
    result = mixed(m, s, parse_count("n", take("n")), t, scale);
  } else if (kind == "lorentz") {
    const double s = parse_number("s", take("s"));
    const double t = parse_number("t", take("t"));
    result = lorentz(s, t, parse_count("n", take("n")), scale);
  } else if (kind == "orlicz") {
    const std::string psi = take("psi");
    std::optional<double> delta2;
    if (auto d = take_optional("delta2")) delta2 = parse_number("delta2", *d);
    result = orlicz(OrliczFunction(psi, delta2), parse_count("n", take("n")), scale);
  } else {
    throw ValidationError("unknown space kind '" + std::string(kind) +
                          "' (expected lq, mixed, lorentz or orlicz)");
  }
  if (!fields.empty())
    throw ValidationError("space '" + std::string(text) + "': unknown field '" +
                          fields.begin()->first + "'");
  return *result;
}

std::string SpaceDescriptor::to_string() const {
  std::string out = std::visit(
      [&](const auto& k) -> std::string {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Minkowski>) {
          return "lq:q=" + format_number(k.q) + ":n=" + std::to_string(dim_);
        } else if constexpr (std::is_same_v<T, Mixed>) {
          return "mixed:s=" + format_number(k.outer) + ":m=" + std::to_string(k.blocks) +
                 ":t=" + format_number(k.inner) + ":n=" + std::to_string(k.block_dim);
        } else if constexpr (std::is_same_v<T, Lorentz>) {
          return "lorentz:s=" + format_number(k.s) + ":t=" + format_number(k.t) +
                 ":n=" + std::to_string(dim_);
        } else {
          std::string s = "orlicz:psi=" + k.psi.expression() + ":n=" + std::to_string(dim_);
          if (k.psi.delta2_declared()) s += ":delta2=" + format_number(k.psi.delta2_bound());
          return s;
        }
      },
      kind_);
  if (scale_ != 1.0) out += ":scale=" + format_number(scale_);
  return out;
}

double norm(const SpaceDescriptor& space, std::span<const Complex> z) {
  const auto x = moduli_of(space, z);
  return space.base_norm(x) / space.scale();
}

bool contains(const SpaceDescriptor& space, std::span<const Complex> z) {
  const auto x = moduli_of(space, z);
  return space.base_norm(x) < space.scale();
}

double minkowski_functional(const SpaceDescriptor& space, std::span<const Complex> z) {
  const auto x = moduli_of(space, z);
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) return 0.0;
  ComplexVector w(z.begin(), z.end());
  auto inside_at = [&](double t) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = z[i] / t;
    return contains(space, w);
  };
  double hi = 1.0;
  int guard = 0;
  while (!inside_at(hi)) {
    hi *= 2.0;
    if (++guard > 3000) throw NumericError("minkowski functional: cannot bracket");
  }
  double lo = hi;
  guard = 0;
  while (inside_at(lo)) {
    lo *= 0.5;
    if (++guard > 3000) throw NumericError("minkowski functional: cannot bracket");
  }
  for (int it = 0; it < 200 && hi - lo > 2.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (inside_at(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double coordinate_reach(const SpaceDescriptor& space, std::size_t k) {
  if (k >= space.dim()) throw ValidationError("coordinate index out of range");
  return space.scale() / basis_norm(space, k);
}

Estimate dual_ones_norm(const SpaceDescriptor& space, EmbedMethod method,
                        const AscentOptions& options) {
  if (method != EmbedMethod::numeric) {
    if (auto v = closed_dual_ones(space)) return Estimate{*v, true, true};
    if (method == EmbedMethod::closed_form)
      throw NoClosedFormError("no closed form for the dual norm of the ones vector in " +
                              space.to_string());
  }
  const RealFunction objective = [](std::span<const double> x) {
    return std::accumulate(x.begin(), x.end(), 0.0);
  };
  const RealFunction sphere = [&](std::span<const double> x) { return space.base_norm(x); };
  const auto r = maximize_on_sphere(space.dim(), objective, sphere, options);
  return Estimate{r.value, false, r.converged};
}

Estimate embed_norm(const SpaceDescriptor& from, const SpaceDescriptor& to, EmbedMethod method,
                    const AscentOptions& options) {
  check_same_dim(from, to);
  if (method != EmbedMethod::numeric) {
    if (auto v = closed_embed(from, to)) return Estimate{*v, true, true};
    if (method == EmbedMethod::closed_form)
      throw NoClosedFormError("no closed form for ||Id: " + from.unit().to_string() + " -> " +
                              to.unit().to_string() + "||; use the numeric method");
  }
  return numeric_embed(from, to, options);
}

Estimate sup_pnorm_on_ball(const SpaceDescriptor& space, double p, EmbedMethod method,
                           const AscentOptions& options) {
  if (!(p >= 1.0)) throw ValidationError("sup_pnorm_on_ball needs p >= 1");
  auto e = embed_norm(space.unit(), SpaceDescriptor::minkowski(p, space.dim()), method, options);
  e.value *= space.scale();
  return e;
}

Estimate domain_scaling(const SpaceDescriptor& omega1, const SpaceDescriptor& omega2,
                        EmbedMethod method, const AscentOptions& options) {
  check_same_dim(omega1, omega2);
  const double ratio = omega1.scale() / omega2.scale();
  if (omega1.unit().same_as(omega2.unit())) return Estimate{ratio, true, true};
  auto e = embed_norm(omega1, omega2, method, options);
  e.value *= ratio;
  return e;
}

UnconditionalityReport check_unconditionality(const SpaceDescriptor& space, std::size_t samples,
                                              std::uint64_t seed) {
  if (samples == 0) throw ValidationError("check_unconditionality needs samples >= 1");
  Rng rng(split_seed(seed, 0x51ce));
  UnconditionalityReport report;
  ComplexVector z(space.dim()), rotated(space.dim());
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] = Complex(standard_normal(rng), standard_normal(rng));
      const double theta = 2.0 * M_PI * uniform01(rng);
      rotated[i] = z[i] * std::polar(1.0, theta);
    }
    report.max_deviation =
        std::max(report.max_deviation, std::abs(norm(space, rotated) - norm(space, z)));
  }
  report.pass = report.max_deviation <= 1e-9;
  return report;
}

}  // namespace bohr
