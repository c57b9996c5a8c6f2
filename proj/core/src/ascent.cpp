#include "bohr/ascent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bohr/rng.hpp"

namespace bohr {
namespace {

constexpr double kMinStep = 1e-10;

struct Evaluator {
  const RealFunction& objective;
  const RealFunction& sphere_norm;
  std::vector<double> point;
  std::size_t count = 0;

  double operator()(std::span<const double> w) {
    ++count;
    const double nrm = sphere_norm(w);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) return -std::numeric_limits<double>::infinity();
    point.assign(w.begin(), w.end());
    for (double& x : point) x /= nrm;
    return objective(point);
  }
};

}  // namespace

SphereAscentResult maximize_on_sphere(std::size_t dim, const RealFunction& objective,
                                      const RealFunction& sphere_norm,
                                      const AscentOptions& options,
                                      std::span<const std::size_t> active) {
  std::vector<std::size_t> coords(active.begin(), active.end());
  if (coords.empty()) {
    coords.resize(dim);
    std::iota(coords.begin(), coords.end(), std::size_t{0});
  }

  std::vector<std::vector<double>> starts;
  for (std::size_t i : coords) {
    std::vector<double> e(dim, 0.0);
    e[i] = 1.0;
    starts.push_back(std::move(e));
  }
  if (coords.size() > 1) {
    std::vector<double> flat(dim, 0.0);
    for (std::size_t i : coords) flat[i] = 1.0;
    starts.push_back(std::move(flat));
    Rng rng(split_seed(options.seed, 0xa5c3));
    for (std::size_t s = 0; s < options.random_starts; ++s) {
      std::vector<double> w(dim, 0.0);
      for (std::size_t i : coords) w[i] = 0.05 + uniform01(rng);
      starts.push_back(std::move(w));
    }
  }

  Evaluator eval{objective, sphere_norm, {}, 0};
  SphereAscentResult best;
  best.value = -std::numeric_limits<double>::infinity();
  const std::size_t budget_per_start =
      std::max<std::size_t>(64, options.max_evaluations / std::max<std::size_t>(1, starts.size()));

  for (auto& w : starts) {
    const std::size_t start_count = eval.count;
    double f = eval(w);
    double step = coords.size() > 1 ? 0.5 : 0.0;
    while (step > kMinStep && eval.count - start_count < budget_per_start) {
      bool improved = false;
      for (std::size_t i : coords) {
        const double old = w[i];
        const double wmax = *std::max_element(w.begin(), w.end());
        double cand[3];
        int nc = 0;
        if (old > 0.0) {
          cand[nc++] = old * (1.0 + step);
          cand[nc++] = old * (1.0 - step);
          if (step >= 0.25) cand[nc++] = 0.0;
        } else {
          cand[nc++] = step * wmax;
        }
        double best_c = old, best_f = f;
        for (int c = 0; c < nc; ++c) {
          w[i] = cand[c];
          const double fc = eval(w);
          if (fc > best_f + 1e-15 * std::abs(best_f)) {
            best_f = fc;
            best_c = cand[c];
          }
        }
        w[i] = best_c;
        if (best_c != old) {
          f = best_f;
          improved = true;
        }
      }
      // Transfers between coordinates leave ridges that single moves cannot.
      if (!improved) {
        for (std::size_t j : coords) {
          if (w[j] <= 0.0) continue;
          for (std::size_t i : coords) {
            if (i == j || w[j] <= 0.0) continue;
            const double oi = w[i], oj = w[j], delta = step * oj;
            w[i] = oi + delta;
            w[j] = oj - delta;
            const double fc = eval(w);
            if (fc > f + 1e-15 * std::abs(f)) {
              f = fc;
              improved = true;
            } else {
              w[i] = oi;
              w[j] = oj;
            }
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (f > best.value) {
      best.value = f;
      const double nrm = sphere_norm(w);
      best.argmax = w;
      for (double& x : best.argmax) x /= nrm;
      best.converged = step <= kMinStep;
    }
    if (eval.count >= options.max_evaluations) break;
  }
  best.evaluations = eval.count;
  return best;
}

}  // namespace bohr
