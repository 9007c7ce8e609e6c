#include "girthlab/config.hpp"

#include "girthlab/format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace girthlab {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': expected a number, got '" + v + "'");
  }
}

template <typename Int>
Int to_int(const std::string& key, const std::string& v) {
  Int x{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw std::invalid_argument("config key '" + key + "': expected an integer, got '" + v + "'");
  return x;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + format_number(xs[i]);
  return s;
}

const std::vector<std::string> kSections = {"run", "graph", "kernel", "perc", "saw", "verify", "report"};

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  const std::string t = trim(text);
  std::vector<double> out;
  if (t.empty()) return out;
  // lo:hi:step
  if (std::count(t.begin(), t.end(), ':') == 2) {
    const auto a = t.find(':'), b = t.find(':', a + 1);
    const double lo = to_double("grid", trim(t.substr(0, a)));
    const double hi = to_double("grid", trim(t.substr(a + 1, b - a - 1)));
    const double step = to_double("grid", trim(t.substr(b + 1)));
    if (!(step > 0) || hi < lo) throw std::invalid_argument("grid range needs lo <= hi and step > 0");
    const long n = std::lround(std::floor((hi - lo) / step + 1e-9));
    for (long i = 0; i <= n; ++i) out.push_back(lo + i * step);
    return out;
  }
  for (const std::string& item : split_list(t)) out.push_back(to_double("grid", item));
  return out;
}

std::optional<double> RunConfig::rho_ub_for(const std::string& s) const {
  if (auto it = rho_ub_by_spec.find(s); it != rho_ub_by_spec.end()) return it->second;
  return rho_ub;
}

void RunConfig::validate() const {
  if (workers < 1) throw std::invalid_argument("worker count must be at least 1");
  auto check_grid = [](const std::vector<double>& g, double lo, double hi, const char* name) {
    if (!std::is_sorted(g.begin(), g.end())) throw std::invalid_argument(std::string(name) + " must be sorted");
    for (double x : g)
      if (x < lo || x > hi) throw std::invalid_argument(std::string(name) + " value out of range");
  };
  check_grid(p_grid, 0, 1, "p-grid");
  check_grid(z_grid, 0, 1, "z-grid");
  if (!(theta_star > 0 && theta_star < 1)) throw std::invalid_argument("theta-star must lie in (0, 1)");
  if (R < 0 || N < 0 || n_max < 0) throw std::invalid_argument("radii and lengths must be non-negative");
  if (trials < 1) throw std::invalid_argument("trial count must be at least 1");
  if (pc_method != "inverse-crossing" && pc_method != "threshold")
    throw std::invalid_argument("pc-method must be inverse-crossing or threshold");
  if (rho_ub && !(*rho_ub > 0 && *rho_ub <= 1)) throw std::invalid_argument("rho-ub must lie in (0, 1]");
  for (const auto& [s, v] : rho_ub_by_spec)
    if (!(v > 0 && v <= 1)) throw std::invalid_argument("rho-ub." + s + " must lie in (0, 1]");
}

void apply_config_key(RunConfig& c, const std::string& key, const std::string& v) {
  VerifyBudget& b = c.verify;
  static const std::map<std::string, std::function<void(RunConfig&, VerifyBudget&, const std::string&)>> table = {
      {"spec", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.spec = v; }},
      {"specs", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.specs = split_list(v); }},
      {"seed", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.seed = to_int<std::uint64_t>("seed", v); }},
      {"workers", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.workers = to_int<int>("workers", v); }},
      {"out", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.out = v; }},
      {"R", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.R = to_int<int>("R", v); }},
      {"N", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.N = to_int<int>("N", v); }},
      {"nmax", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.n_max = to_int<int>("nmax", v); }},
      {"p", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.p_grid = {to_double("p", v)}; }},
      {"p-grid", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.p_grid = parse_grid(v); }},
      {"z-grid", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.z_grid = parse_grid(v); }},
      {"trials", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.trials = to_int<std::uint64_t>("trials", v); }},
      {"theta-star", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.theta_star = to_double("theta-star", v); }},
      {"pc-method", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.pc_method = v; }},
      {"eps", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.eps = to_double("eps", v); }},
      {"alpha", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.alpha = to_double("alpha", v); }},
      {"bnp-C", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.bnp_C = to_double("bnp-C", v); }},
      {"rho-ub", [](RunConfig& c, VerifyBudget&, const std::string& v) { c.rho_ub = to_double("rho-ub", v); }},
      {"girth-rmax", [](RunConfig&, VerifyBudget& b, const std::string& v) { b.girth_rmax = to_int<int>("girth-rmax", v); }},
      {"kernel-radius", [](RunConfig&, VerifyBudget& b, const std::string& v) { b.kernel_radius = to_int<int>("kernel-radius", v); }},
      {"kernel-steps", [](RunConfig&, VerifyBudget& b, const std::string& v) { b.kernel_steps = to_int<int>("kernel-steps", v); }},
      {"rho-steps", [](RunConfig&, VerifyBudget& b, const std::string& v) { b.rho_steps = to_int<int>("rho-steps", v); }},
      {"perc-radius", [](RunConfig&, VerifyBudget& b, const std::string& v) { b.perc_radius = to_int<int>("perc-radius", v); }},
      {"perc-trials", [](RunConfig&, VerifyBudget& b, const std::string& v) { b.perc_trials = to_int<std::uint64_t>("perc-trials", v); }},
      {"pc-grid-step", [](RunConfig&, VerifyBudget& b, const std::string& v) { b.pc_grid_step = to_double("pc-grid-step", v); }},
      {"triangle-truncation", [](RunConfig&, VerifyBudget& b, const std::string& v) { b.triangle_truncation = to_int<int>("triangle-truncation", v); }},
      {"triangle-trials", [](RunConfig&, VerifyBudget& b, const std::string& v) { b.triangle_trials = to_int<std::uint64_t>("triangle-trials", v); }},
      {"tree-triangle-truncation", [](RunConfig&, VerifyBudget& b, const std::string& v) { b.tree_triangle_truncation = to_int<int>("tree-triangle-truncation", v); }},
      {"saw-nmax", [](RunConfig&, VerifyBudget& b, const std::string& v) { b.saw_nmax = to_int<int>("saw-nmax", v); }},
      {"rosenbluth-trials", [](RunConfig&, VerifyBudget& b, const std::string& v) { b.rosenbluth_trials = to_int<std::uint64_t>("rosenbluth-trials", v); }},
      {"tree-saw-nmax", [](RunConfig&, VerifyBudget& b, const std::string& v) { b.tree_saw_nmax = to_int<int>("tree-saw-nmax", v); }},
  };
  if (key.rfind("rho-ub.", 0) == 0) {
    c.rho_ub_by_spec[key.substr(7)] = to_double(key, v);
    return;
  }
  const auto it = table.find(key);
  if (it == table.end()) throw std::invalid_argument("unknown config key '" + key + "'");
  it->second(c, b, v);
}

ConfigSections parse_config_sections(std::string_view text) {
  ConfigSections out;
  out.push_back({"run", {}});
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument("line " + std::to_string(lineno) + ": bad section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), name) == kSections.end())
        throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown section [" + name + "]");
      out.push_back({name, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key = value");
    out.back().second.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

RunConfig parse_config(std::string_view text, const std::string& subcommand) {
  const ConfigSections sections = parse_config_sections(text);
  RunConfig cfg;
  for (const std::string& pass : {std::string("run"), subcommand}) {
    for (const auto& [name, keys] : sections) {
      if (name != pass) continue;
      for (const auto& [k, v] : keys) apply_config_key(cfg, k, v);
    }
    if (subcommand == "run") break;
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path, const std::string& subcommand) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), subcommand);
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream o;
  auto kv = [&](const std::string& k, const std::string& v) { o << k << " = " << v << "\n"; };
  o << "[run]\n";
  if (!c.spec.empty()) kv("spec", c.spec);
  if (!c.specs.empty()) {
    std::string s;
    for (std::size_t i = 0; i < c.specs.size(); ++i) s += (i ? ", " : "") + c.specs[i];
    kv("specs", s);
  }
  if (c.seed) kv("seed", std::to_string(*c.seed));
  kv("workers", std::to_string(c.workers));
  if (!c.out.empty()) kv("out", c.out);
  kv("R", std::to_string(c.R));
  kv("N", std::to_string(c.N));
  kv("nmax", std::to_string(c.n_max));
  if (!c.p_grid.empty()) kv("p-grid", join_numbers(c.p_grid));
  if (!c.z_grid.empty()) kv("z-grid", join_numbers(c.z_grid));
  kv("trials", std::to_string(c.trials));
  kv("theta-star", format_number(c.theta_star));
  kv("pc-method", c.pc_method);
  if (c.eps) kv("eps", format_number(*c.eps));
  if (c.alpha) kv("alpha", format_number(*c.alpha));
  if (c.bnp_C) kv("bnp-C", format_number(*c.bnp_C));
  if (c.rho_ub) kv("rho-ub", format_number(*c.rho_ub));
  for (const auto& [s, v] : c.rho_ub_by_spec) kv("rho-ub." + s, format_number(v));
  const VerifyBudget& b = c.verify;
  kv("girth-rmax", std::to_string(b.girth_rmax));
  kv("kernel-radius", std::to_string(b.kernel_radius));
  kv("kernel-steps", std::to_string(b.kernel_steps));
  kv("rho-steps", std::to_string(b.rho_steps));
  kv("perc-radius", std::to_string(b.perc_radius));
  kv("perc-trials", std::to_string(b.perc_trials));
  kv("pc-grid-step", format_number(b.pc_grid_step));
  kv("triangle-truncation", std::to_string(b.triangle_truncation));
  kv("triangle-trials", std::to_string(b.triangle_trials));
  kv("tree-triangle-truncation", std::to_string(b.tree_triangle_truncation));
  kv("saw-nmax", std::to_string(b.saw_nmax));
  kv("rosenbluth-trials", std::to_string(b.rosenbluth_trials));
  kv("tree-saw-nmax", std::to_string(b.tree_saw_nmax));
  return o.str();
}

}  // namespace girthlab
