#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace girthlab {

/// Budgets for one certificate run. Each field names the size of one stage.
struct VerifyBudget {
  int girth_rmax = 6;
  int kernel_radius = 8;       // ball for the walk inequalities
  int kernel_steps = 8;
  int rho_steps = 200;         // return-probability sequence length
  int perc_radius = 12;        // ball for the p_c scan
  std::uint64_t perc_trials = 20000;
  double pc_grid_step = 0.0025;
  int triangle_truncation = 3; // Monte Carlo triangle on a ball of twice this radius
  std::uint64_t triangle_trials = 4000;
  int tree_triangle_truncation = 200;
  int saw_nmax = 10;
  std::uint64_t rosenbluth_trials = 10000;
  int tree_saw_nmax = 400;     // formula census on trees

  friend bool operator==(const VerifyBudget&, const VerifyBudget&) = default;
};

/// Run configuration shared by every subcommand.
///
/// File format: `key = value` lines, `#` comments, `[section]` headers. Keys in
/// `[run]` apply to every subcommand; keys in `[graph]`, `[kernel]`, `[perc]`,
/// `[saw]`, `[verify]` or `[report]` apply only to that subcommand and
/// override `[run]`. Command-line flags override both.
struct RunConfig {
  std::string spec;
  std::vector<std::string> specs;  // verify: several graphs
  std::optional<std::uint64_t> seed;
  int workers = 1;
  std::string out;

  int R = 6;
  int N = 10;
  int n_max = 10;
  std::vector<double> p_grid;
  std::vector<double> z_grid;
  std::uint64_t trials = 1000;
  double theta_star = 0.5;
  std::string pc_method = "inverse-crossing";
  std::optional<double> eps;
  std::optional<double> alpha;
  std::optional<double> bnp_C;
  std::optional<double> rho_ub;
  std::map<std::string, double> rho_ub_by_spec;  // `rho-ub.<spec> = value`
  VerifyBudget verify;

  /// Supplied rho_ub for `spec`: the per-spec value, else the global one.
  std::optional<double> rho_ub_for(const std::string& spec) const;

  /// Throws std::invalid_argument when a grid is unsorted or out of range,
  /// the worker count is below 1, or a probability leaves [0, 1].
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Raw `section -> key -> value` view of a config file, in file order.
using ConfigSections = std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>;

ConfigSections parse_config_sections(std::string_view text);

/// Applies one key to the config. Throws std::invalid_argument on an unknown
/// key or a malformed value.
void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value);

/// Parses `text` for `subcommand`: `[run]` first, then the subcommand's section.
RunConfig parse_config(std::string_view text, const std::string& subcommand = "run");
RunConfig load_config(const std::string& path, const std::string& subcommand = "run");

/// Canonical `[run]` text holding every field; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

std::vector<double> parse_grid(const std::string& text);

}  // namespace girthlab
