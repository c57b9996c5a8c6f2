#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bohr/bounds.hpp"

namespace bohr::cli {

enum class OutputFormat { json, csv, table };

// Everything the subcommands read.  Unset optionals fall back to values
// derived from the space (embedding norms, dual norms, n) or to defaults.
struct RunConfig {
  std::string command;

  std::optional<std::string> space;
  double p = 1.0;
  std::optional<double> q;
  std::optional<double> lambda;  // per-command default
  double norm_u = 1.0;           // ||U||; U = norm_u * I for estimates
  std::optional<std::size_t> n;
  std::string n_range;
  std::vector<std::string> formulas;
  std::optional<std::string> regime;
  std::optional<std::string> p_case;
  std::optional<std::string> item;
  std::optional<double> cot;
  std::optional<double> cotype;
  std::optional<double> sup_pnorm;
  std::optional<double> embed_l2_to_z;
  std::optional<double> embed_z_to_l1;
  std::optional<double> embed_z_to_lq;
  std::optional<double> embed_lq_to_z;
  std::optional<double> dual_ones;
  std::optional<double> inner_lower;
  std::optional<double> inner_upper;
  std::optional<double> s_forward;
  std::optional<double> s_backward;
  std::optional<std::string> reference_space;
  std::string sandwich_mode = "two_sided";

  // norms
  std::vector<std::string> ops;
  std::optional<std::string> to_space;
  std::vector<std::string> point;
  std::string method = "auto";
  std::size_t coordinate = 0;
  std::size_t samples = 256;

  // estimate
  std::string family = "mobius";
  std::vector<double> mobius_a;
  std::optional<unsigned> m;
  std::string kind = "scalar";
  std::size_t count = 8;
  unsigned degree = 3;
  bool allow_large = false;
  double tol = 1e-4;

  // verify
  std::vector<std::string> suites;
  std::vector<double> radii;
  unsigned k_max = 10000;
  std::optional<std::size_t> suite_count;
  std::size_t max_n = 3;
  unsigned max_degree = 4;

  std::vector<std::string> constants;  // "key=value"
  std::optional<std::string> constants_file;
  std::uint64_t seed = 0;
  std::optional<OutputFormat> format;  // json, except csv for sweep
  std::optional<std::string> output;
};

// Parses argv (without the program name) and runs the command.  Returns the
// process exit code: 0 success, 2 invalid input, 3 numeric failure, and
// 9 + (number of failed checks) capped at 125 for `verify`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_bounds(const RunConfig& config, std::ostream& out);
int cmd_norms(const RunConfig& config, std::ostream& out);
int cmd_estimate(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_sweep(const RunConfig& config, std::ostream& out);

// `--constants-file` first, then inline `--const key=value` entries.
BoundConstants load_constants(const RunConfig& config);

// "2..64:x2" (doubling), "2..64:+2" or "2..64:2" (step), "2..64" (step 1).
std::vector<std::size_t> parse_n_range(const std::string& text);

inline int verification_exit_code(std::size_t failures) {
  return failures == 0 ? 0 : static_cast<int>(std::min<std::size_t>(125, 9 + failures));
}

}  // namespace bohr::cli
