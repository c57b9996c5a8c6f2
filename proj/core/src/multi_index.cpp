#include "bohr/multi_index.hpp"

#include <charconv>
#include <cmath>
#include <numeric>

#include "bohr/error.hpp"

namespace bohr {

MultiIndex MultiIndex::unit(std::size_t n, std::size_t i, unsigned power) {
  if (i >= n) throw ValidationError("multi-index unit position out of range");
  MultiIndex out(n);
  out.entries_[i] = power;
  return out;
}

unsigned MultiIndex::degree() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0u);
}

std::complex<double> MultiIndex::monomial(std::span<const std::complex<double>> z) const {
  if (z.size() != entries_.size()) throw ValidationError("multi-index dimension mismatch");
  std::complex<double> out = 1.0;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    for (unsigned e = 0; e < entries_[i]; ++e) out *= z[i];
  return out;
}

double MultiIndex::monomial_abs(std::span<const double> moduli) const {
  if (moduli.size() != entries_.size()) throw ValidationError("multi-index dimension mismatch");
  double out = 1.0;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] != 0) out *= std::pow(moduli[i], static_cast<double>(entries_[i]));
  return out;
}

double MultiIndex::log_multinomial_ratio() const {
  auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
  double out = xlogx(static_cast<double>(degree()));
  for (unsigned e : entries_) out -= xlogx(static_cast<double>(e));
  return out;
}

std::string MultiIndex::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(entries_[i]);
  }
  return out;
}

MultiIndex MultiIndex::parse(std::string_view text) {
  std::vector<unsigned> entries;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string_view part =
        text.substr(start, comma == std::string_view::npos ? comma : comma - start);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size())
      throw ValidationError("malformed multi-index '" + std::string(text) + "'");
    entries.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return MultiIndex(std::move(entries));
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  if (auto c = a.dim() <=> b.dim(); c != 0) return c;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (auto c = b.entries_[i] <=> a.entries_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

namespace {

void fill_indices(std::vector<unsigned>& current, std::size_t pos, unsigned remaining,
                  std::vector<MultiIndex>& out) {
  if (pos + 1 == current.size()) {
    current[pos] = remaining;
    out.emplace_back(current);
    return;
  }
  for (unsigned e = remaining + 1; e-- > 0;) {
    current[pos] = e;
    fill_indices(current, pos + 1, remaining - e, out);
  }
  current[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> indices_of_degree(std::size_t n, unsigned m) {
  if (n == 0) throw ValidationError("multi-index dimension must be positive");
  std::vector<MultiIndex> out;
  std::vector<unsigned> current(n, 0);
  fill_indices(current, 0, m, out);
  return out;
}

double rho_alpha(const MultiIndex& alpha, double q) {
  if (!(q >= 1.0)) throw ValidationError("rho_alpha needs q >= 1");
  if (std::isinf(q)) return 1.0;
  return std::exp(alpha.log_multinomial_ratio() / q);
}

}  // namespace bohr
