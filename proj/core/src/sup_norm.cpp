#include "bohr/sup_norm.hpp"

#include <algorithm>
#include <cmath>

#include "bohr/error.hpp"
#include "bohr/rng.hpp"

namespace bohr {
namespace {

struct Candidate {
  std::vector<double> w;      // unnormalized moduli of the active variables
  std::vector<double> theta;  // phases of the active variables
  double value = -1.0;
};

class BoundaryObjective {
 public:
  BoundaryObjective(const PluriharmonicPoly& f, const SpaceDescriptor& space,
                    std::vector<std::size_t> active)
      : f_(f), space_(space), active_(std::move(active)), moduli_(space.dim(), 0.0),
        z_(space.dim(), 0.0) {}

  double operator()(const Candidate& c) {
    std::fill(moduli_.begin(), moduli_.end(), 0.0);
    for (std::size_t j = 0; j < active_.size(); ++j) moduli_[active_[j]] = c.w[j];
    const double nrm = space_.base_norm(moduli_);
    if (!(nrm > 0.0)) return 0.0;
    const double factor = space_.scale() / nrm;
    std::fill(z_.begin(), z_.end(), Complex(0.0));
    for (std::size_t j = 0; j < active_.size(); ++j)
      z_[active_[j]] = std::polar(c.w[j] * factor, c.theta[j]);
    return operator_norm(evaluate(f_, z_));
  }

  std::size_t active_count() const { return active_.size(); }

 private:
  const PluriharmonicPoly& f_;
  const SpaceDescriptor& space_;
  std::vector<std::size_t> active_;
  std::vector<double> moduli_;
  ComplexVector z_;
};

Candidate random_candidate(std::size_t a, Rng& rng) {
  Candidate c{std::vector<double>(a), std::vector<double>(a)};
  for (std::size_t j = 0; j < a; ++j) {
    c.w[j] = 0.02 + uniform01(rng);
    c.theta[j] = 2.0 * M_PI * uniform01(rng);
  }
  return c;
}

std::vector<Candidate> structured_candidates(std::size_t a) {
  std::vector<Candidate> out;
  out.push_back({std::vector<double>(a, 1.0), std::vector<double>(a, 0.0)});
  if (a > 1)
    for (std::size_t j = 0; j < a; ++j) {
      Candidate c{std::vector<double>(a, 1e-9), std::vector<double>(a, 0.0)};
      c.w[j] = 1.0;
      out.push_back(std::move(c));
    }
  return out;
}

Candidate evolve(Candidate best, BoundaryObjective& objective, std::size_t iterations, Rng& rng) {
  const std::size_t a = objective.active_count();
  double sigma = 0.3;
  const double grow = 1.5;
  const double shrink = std::pow(grow, -0.25);
  for (std::size_t it = 0; it < iterations && sigma > 1e-10; ++it) {
    Candidate trial = best;
    if (uniform01(rng) < 0.5) {
      for (std::size_t j = 0; j < a; ++j) {
        if (a > 1) trial.w[j] *= std::exp(sigma * standard_normal(rng));
        trial.theta[j] += M_PI * sigma * standard_normal(rng);
      }
    } else {
      const std::size_t j = std::min(a - 1, static_cast<std::size_t>(uniform01(rng) * a));
      if (a > 1 && uniform01(rng) < 0.5)
        trial.w[j] *= std::exp(sigma * standard_normal(rng));
      else
        trial.theta[j] += M_PI * sigma * standard_normal(rng);
    }
    trial.value = objective(trial);
    if (trial.value > best.value) {
      best = std::move(trial);
      sigma = std::min(1.0, sigma * grow);
    } else {
      sigma *= shrink;
    }
  }
  return best;
}

}  // namespace

SupNormResult sup_norm(const PluriharmonicPoly& f, const SpaceDescriptor& space,
                       const SupNormBudget& budget, std::uint64_t seed) {
  if (space.dim() != f.dim())
    throw ValidationError("sup_norm: space dimension " + std::to_string(space.dim()) +
                          " differs from polynomial dimension " + std::to_string(f.dim()));
  if (auto known = f.known_sup_for(space))
    return SupNormResult{*known, true, f.known_sup_norm()->uncertainty, true};
  const auto active = f.active_variables();
  if (active.empty()) return SupNormResult{operator_norm(f.constant_term()), true, 0.0, true};
  if (budget.restarts == 0) throw ValidationError("sup_norm budget needs restarts >= 1");

  BoundaryObjective objective(f, space, active);
  const std::size_t a = active.size();
  std::vector<double> finals;
  for (std::size_t r = 0; r < budget.restarts; ++r) {
    Rng rng(split_seed(seed, r));
    Candidate start;
    if (r == 0)
      for (auto c : structured_candidates(a)) {
        c.value = objective(c);
        if (c.value > start.value) start = std::move(c);
      }
    for (std::size_t s = 0; s < std::max<std::size_t>(budget.samples, 1); ++s) {
      Candidate c = random_candidate(a, rng);
      c.value = objective(c);
      if (c.value > start.value) start = std::move(c);
    }
    finals.push_back(evolve(std::move(start), objective, budget.iterations, rng).value);
  }
  std::sort(finals.begin(), finals.end(), std::greater<>());
  SupNormResult out;
  out.value = finals.front();
  out.certified = false;
  out.uncertainty = finals.front() - finals.back();
  out.stable = finals.size() < 2 || finals[0] - finals[1] <= 1e-6 * std::max(1.0, finals[0]);
  return out;
}

}  // namespace bohr
