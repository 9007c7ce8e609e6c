// girthlab command-line frontend.
#include "girthlab/certificate.hpp"
#include "girthlab/config.hpp"
#include "girthlab/format.hpp"
#include "girthlab/percolation.hpp"
#include "girthlab/plot.hpp"
#include "girthlab/report.hpp"
#include "girthlab/saw.hpp"
#include "girthlab/tree_oracle.hpp"
#include "girthlab/verify.hpp"
#include "girthlab/walk_kernels.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace girthlab;

namespace {

using json = nlohmann::ordered_json;

// Flags that mirror config keys; values are applied through apply_config_key.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void add(CLI::App* app, const std::string& key, const std::string& help) {
    options[key] = app->add_option("--" + key, values[key], help);
  }
  void apply(RunConfig& cfg) const {
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) apply_config_key(cfg, key, values.at(key));
  }
};

const std::vector<std::pair<std::string, std::string>> kCommonKeys = {
    {"spec", "group presentation, e.g. Z*Z or Z5*Z5"},
    {"seed", "master seed"},
    {"workers", "worker threads"},
    {"out", "output directory"},
};

const std::vector<std::pair<std::string, std::string>> kRunKeys = {
    {"R", "ball radius"},
    {"N", "kernel steps or truncation length"},
    {"nmax", "maximum walk length or cluster size"},
    {"p", "retention probability"},
    {"p-grid", "retention probabilities: list or lo:hi:step"},
    {"z-grid", "fugacities: list or lo:hi:step"},
    {"trials", "Monte Carlo trials"},
    {"theta-star", "crossing threshold for the threshold p_c method"},
    {"pc-method", "inverse-crossing or threshold"},
    {"eps", "epsilon in the endpoint decay rate"},
    {"alpha", "speed cut alpha"},
    {"bnp-C", "constant C of the p_c girth bound"},
    {"rho-ub", "certified upper bound on the spectral radius"},
};

const std::vector<std::pair<std::string, std::string>> kBudgetKeys = {
    {"specs", "comma separated group presentations"},
    {"girth-rmax", "girth search radius"},
    {"kernel-radius", "ball radius for walk inequalities"},
    {"kernel-steps", "steps for walk inequalities"},
    {"rho-steps", "return sequence length"},
    {"perc-radius", "ball radius for the p_c scan"},
    {"perc-trials", "trials per p in the p_c scan"},
    {"pc-grid-step", "p_c scan step"},
    {"triangle-truncation", "triangle truncation radius"},
    {"triangle-trials", "triangle Monte Carlo trials"},
    {"tree-triangle-truncation", "exact tree triangle truncation"},
    {"saw-nmax", "census length"},
    {"rosenbluth-trials", "Rosenbluth trials"},
    {"tree-saw-nmax", "tree census length for the bubble"},
};

// Files written by this run; removed again if the run fails.
class Outputs {
 public:
  void set_dir(const std::string& dir) { dir_ = dir.empty() ? "." : dir; }
  std::string path(const std::string& name) const { return (fs::path(dir_) / name).string(); }
  void write(const std::string& name, const std::string& text) {
    fs::create_directories(dir_);
    const std::string p = path(name);
    write_text(p, text);
    written_.push_back(p);
    std::cout << "wrote " << p << "\n";
  }
  void track(const std::string& p) { written_.push_back(p); }
  void rollback() {
    for (const auto& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    written_.clear();
  }

 private:
  std::string dir_ = ".";
  std::vector<std::string> written_;
};

std::string num(double v) { return format_number(v, 6); }

std::uint64_t require_seed(const RunConfig& cfg) {
  if (!cfg.seed) throw std::invalid_argument("--seed is required (no nondeterministic default)");
  return *cfg.seed;
}

std::vector<double> p_values(const RunConfig& cfg) {
  if (cfg.p_grid.empty()) throw std::invalid_argument("--p or --p-grid is required");
  return cfg.p_grid;
}

GroupSpec require_spec(const RunConfig& cfg) {
  if (cfg.spec.empty()) throw std::invalid_argument("--spec is required");
  return parse_group_spec(cfg.spec);
}

// --- graph ----------------------------------------------------------------------

void run_graph(const RunConfig& cfg, bool radius_given, Outputs& out) {
  const GroupSpec spec = require_spec(cfg);
  const GirthReport g = girth(spec, cfg.verify.girth_rmax);
  std::cout << "girth" << (g.exact ? "=" + std::to_string(g.value) : ">" + std::to_string(g.value))
            << " degree=" << spec.degree() << "\n";
  if (!radius_given) return;
  const Ball ball = build_ball(spec, cfg.R);
  std::cout << "ball R=" << cfg.R << " vertices=" << ball.size() << " edges=" << ball.edge_count() << "\n";
  std::ostringstream edges;
  ball.write_edge_list(edges);
  out.write("ball.txt", edges.str());
}

// --- kernel ---------------------------------------------------------------------

void run_kernel(const RunConfig& cfg, const std::string& task, bool exact, Outputs& out) {
  const GroupSpec spec = require_spec(cfg);
  const auto rho_ub = cfg.rho_ub_for(spec.to_string());
  if (task == "rho") {
    const RhoEstimate est = estimate_spectral_radius(spec, cfg.N, rho_ub);
    std::cout << "rho lower=" << num(est.lower_bound) << " upper="
              << (est.upper_bound ? num(*est.upper_bound) : std::string("missing"))
              << " provenance=" << to_string(est.provenance) << "\n";
    out.write("rho.csv", rho_csv(est));
    if (est.contradicts_upper_bound()) throw std::runtime_error("return sequence exceeds the supplied rho_ub");
    return;
  }
  const Ball ball = build_ball(spec, cfg.R);
  if (task == "kernels") {
    if (exact) {
      const auto srw = srw_kernel<BigInt>(ball, cfg.N);
      const auto nbw = nbw_kernel<BigInt>(ball, cfg.N);
      out.write("srw_kernel.csv", kernel_csv(ball, srw));
      out.write("nbw_kernel.csv", kernel_csv(ball, nbw));
      std::cout << "kernels exact horizon=" << srw.valid_horizon << " p2(0,0)="
                << (cfg.N >= 2 ? to_decimal(srw.at(2, 0)) + "/" + to_decimal(walk_denominator(WalkKind::Simple, spec.degree(), 2)) : "n/a")
                << "\n";
    } else {
      const auto srw = srw_kernel<double>(ball, cfg.N);
      const auto nbw = nbw_kernel<double>(ball, cfg.N);
      out.write("srw_kernel.csv", kernel_csv(ball, srw));
      out.write("nbw_kernel.csv", kernel_csv(ball, nbw));
      std::cout << "kernels float horizon=" << srw.valid_horizon << "\n";
    }
    return;
  }
  if (task == "lemma") {
    auto [ub, prov] = certified_rho(spec, rho_ub);
    if (!ub) throw std::invalid_argument("lemma checks need --rho-ub for a non-tree spec");
    const Arithmetic mode = exact ? Arithmetic::Exact : Arithmetic::Float;
    const int steps = std::min(cfg.N, cfg.R);
    json entries = json::array();
    for (const LemmaCheck& c : {check_lemma_nbw_tail(ball, steps, *ub, mode), check_lemma_nbw_rho(ball, steps, *ub, mode)}) {
      std::cout << c.id << " checks=" << c.checks << " violations=" << c.violations
                << " worst_margin=" << num(c.worst_margin()) << "\n";
      entries.push_back(to_json(lemma_entry(c, c.id == "nbw-rho" ? "nbw-rho-bound" : "nbw-tail-bound")));
    }
    out.write("lemma.json", entries.dump(2) + "\n");
    return;
  }
  throw std::invalid_argument("unknown kernel task '" + task + "'");
}

// --- perc -----------------------------------------------------------------------

PcInterval pc_for(const GroupSpec& spec, const Ball& ball, const RunConfig& cfg, std::uint64_t seed) {
  if (spec.is_tree()) {
    const double pc = gw::critical_probability(spec.degree());
    return {pc, pc};
  }
  PcOptions opt;
  opt.method = cfg.pc_method == "threshold" ? PcMethod::Threshold : PcMethod::InverseCrossing;
  opt.theta_star = cfg.theta_star;
  const PcEstimate est = estimate_pc(ball, PercRun{0, cfg.trials, seed, cfg.workers}, opt);
  return {est.lo, est.hi};
}

void print_fit(const ExponentFit& f) {
  std::cout << f.name << " slope=" << num(f.value) << " se=" << num(f.slope_se) << " target=" << num(f.target)
            << " points=" << f.points << (f.accepted ? " accepted" : " rejected: " + f.diagnostic) << "\n";
}

void run_perc(const RunConfig& cfg, const std::string& task, bool gw_mode, double fit_lo, double fit_hi,
              Outputs& out) {
  const GroupSpec spec = require_spec(cfg);
  const std::uint64_t seed = require_seed(cfg);
  const int d = spec.degree();
  const auto rho_ub = certified_rho(spec, cfg.rho_ub_for(spec.to_string())).first;
  PercRun run{0, cfg.trials, seed, cfg.workers};
  const FitWindow window{fit_lo, fit_hi > 0 ? fit_hi : static_cast<double>(cfg.n_max) / 10};

  if (gw_mode) {
    if (!spec.is_tree()) throw std::invalid_argument("--gw needs a tree spec");
    if (task == "tail") {
      run.p = p_values(cfg).front();
      const TailCurve t = cluster_size_tail_tree(d, run, cfg.n_max, window);
      out.write("tail.csv", tail_csv(t));
      print_fit(t.fit);
      return;
    }
    if (task == "susceptibility") {
      const auto pts = susceptibility_tree(d, p_values(cfg), run, cfg.n_max);
      out.write("susceptibility.csv", susceptibility_csv(pts));
      const double pc = gw::critical_probability(d);
      print_fit(fit_gamma(pts, pc, pc, {cfg.p_grid.front(), cfg.p_grid.back(), window.residual_cutoff}));
      return;
    }
    throw std::invalid_argument("--gw supports the tail and susceptibility tasks");
  }

  const Ball ball = build_ball(spec, cfg.R);
  if (task == "crossing") {
    std::vector<CrossingEstimate> rows;
    for (double p : p_values(cfg)) {
      run.p = p;
      const CrossingEstimate c = crossing_probability(ball, run);
      std::cout << "p=" << num(p) << " R=" << cfg.R << " crossing=" << num(c.estimate) << " ci=[" << num(c.ci.lo)
                << "," << num(c.ci.hi) << "]\n";
      rows.push_back(c);
    }
    out.write("crossing.csv", crossing_csv(rows, seed));
  } else if (task == "pc") {
    PcOptions opt;
    opt.method = cfg.pc_method == "threshold" ? PcMethod::Threshold : PcMethod::InverseCrossing;
    opt.theta_star = cfg.theta_star;
    const PcEstimate est = estimate_pc(ball, run, opt);
    std::cout << "pc in [" << num(est.lo) << "," << num(est.hi) << "] method=" << cfg.pc_method;
    if (!est.warning.empty()) std::cout << " warning: " << est.warning;
    std::cout << "\n";
    std::ostringstream csv;
    csv << "p,statistic,se\n";
    for (const auto& s : est.scan)
      csv << format_number(s.p) << ',' << format_number(s.statistic) << ',' << format_number(s.se) << '\n';
    out.write("pc_scan.csv", csv.str());
  } else if (task == "theta") {
    std::vector<int> radii;
    for (int r = 1; r <= cfg.R; ++r) radii.push_back(r);
    std::vector<CrossingEstimate> rows;
    for (double p : p_values(cfg)) {
      run.p = p;
      const ThetaEstimate t = theta(ball, run, radii);
      std::cout << "p=" << num(p) << " theta~" << num(t.limit) << (t.extrapolated ? " (extrapolated)" : "");
      if (spec.is_tree()) std::cout << " gw=" << num(gw::survival_probability(d, p));
      std::cout << "\n";
      rows.insert(rows.end(), t.curve.begin(), t.curve.end());
    }
    out.write("theta.csv", crossing_csv(rows, seed));
  } else if (task == "two-point") {
    run.p = p_values(cfg).front();
    std::ostringstream csv;
    csv << "distance,vertex,estimate,ci_lo,ci_hi,exact_tree,decay_bound\n";
    for (int r = 0; r <= cfg.R; ++r) {
      const VertexId x = static_cast<VertexId>(r == 0 ? 0 : ball.level_end(r - 1));
      const TwoPoint tp = two_point(ball, run, x, rho_ub);
      csv << r << ',' << ball.label_string(x) << ',' << format_number(tp.estimate) << ',' << format_number(tp.ci.lo)
          << ',' << format_number(tp.ci.hi) << ',' << (tp.exact_tree ? format_number(*tp.exact_tree) : "") << ','
          << (tp.decay_bound ? format_number(*tp.decay_bound) : "") << '\n';
    }
    out.write("two_point.csv", csv.str());
  } else if (task == "triangle") {
    std::vector<DiagramResult> rows;
    for (double p : p_values(cfg)) {
      if (spec.is_tree()) {
        rows.push_back(triangle_diagram_tree(d, p, cfg.R, rho_ub));
      } else {
        run.p = p;
        const int trunc = cfg.R / 2;
        rows.push_back(triangle_diagram_mc(ball, run, trunc, rho_ub));
      }
      const auto& r = rows.back();
      std::cout << "p=" << num(p) << " triangle=" << num(r.value) << " tail="
                << (r.tail_bound ? num(*r.tail_bound) : std::string("unavailable"))
                << (r.certified ? " certified" : " not certified") << "\n";
    }
    out.write("triangle.csv", diagram_csv(rows, "p"));
  } else if (task == "witness") {
    run.p = p_values(cfg).front();
    const WitnessResult w = nonuniqueness_witness(ball, run, cfg.R);
    std::cout << "p=" << num(w.p) << " theta=" << num(w.theta) << " r0="
              << (w.r0 ? std::to_string(*w.r0) : std::string("none (inconclusive)")) << "\n";
    out.write("witness.csv", witness_csv(w));
  } else if (task == "tail") {
    run.p = p_values(cfg).front();
    const TailCurve t = cluster_size_tail(ball, run, cfg.n_max, window);
    out.write("tail.csv", tail_csv(t));
    print_fit(t.fit);
  } else if (task == "susceptibility") {
    const auto pts = susceptibility(ball, p_values(cfg), run);
    out.write("susceptibility.csv", susceptibility_csv(pts));
    const PcInterval pc = pc_for(spec, ball, cfg, seed);
    print_fit(fit_gamma(pts, pc.lo, pc.hi, {cfg.p_grid.front(), cfg.p_grid.back(), window.residual_cutoff}));
  } else if (task == "beta") {
    const PcInterval pc = pc_for(spec, ball, cfg, seed);
    std::vector<int> radii;
    for (int r = 1; r <= cfg.R; ++r) radii.push_back(r);
    std::vector<double> thetas;
    std::vector<CrossingEstimate> rows;
    for (double p : p_values(cfg)) {
      run.p = p;
      const ThetaEstimate t = theta(ball, run, radii);
      thetas.push_back(t.limit);
      rows.insert(rows.end(), t.curve.begin(), t.curve.end());
    }
    out.write("theta.csv", crossing_csv(rows, seed));
    print_fit(fit_beta(cfg.p_grid, thetas, pc.lo, pc.hi,
                       {cfg.p_grid.front(), cfg.p_grid.back(), window.residual_cutoff}));
  } else {
    throw std::invalid_argument("unknown perc task '" + task + "'");
  }
}

// --- saw ------------------------------------------------------------------------

void run_saw(const RunConfig& cfg, const std::string& task, Outputs& out) {
  const GroupSpec spec = require_spec(cfg);
  const auto rho_ub = certified_rho(spec, cfg.rho_ub_for(spec.to_string())).first;

  // chi and bubble on trees use the formula census truncated at N
  const bool formula = spec.is_tree() && (task == "chi" || task == "bubble");
  const SawCensus census = formula ? tree_saw_census(spec, cfg.N)
                                   : enumerate_saw(make_ball(spec, cfg.n_max), cfg.n_max, cfg.workers);
  const MuBounds mu = connective_constant(census);
  if (task == "census") {
    out.write("census.csv", census_csv(census));
    std::cout << "c_" << census.n_max << "=" << to_decimal(census.counts.back()) << " mu_ub=" << num(mu.best)
              << (mu.tree_exact ? " mu=" + num(*mu.tree_exact) + " (tree)" : "") << "\n";
  } else if (task == "endpoint") {
    out.write("endpoint.csv", endpoint_csv(census));
    const EndpointLaw law = saw_endpoint_law(census, census.n_max);
    std::cout << "n=" << law.n << " max_multiplicity=" << law.max_multiplicity << " sup=" << num(law.sup) << "\n";
    if (rho_ub) {
      const DecayCheck decay = endpoint_decay(census, mu.value(), *rho_ub, cfg.eps);
      out.write("decay.csv", decay_csv(decay));
      std::cout << "lambda=" << num(decay.lambda) << " fitted_rate=" << num(decay.fitted_rate)
                << (decay.passed ? " decay ok" : " decay not certified") << "\n";
    }
  } else if (task == "speed") {
    if (!rho_ub) throw std::invalid_argument("speed needs --rho-ub for a non-tree spec");
    const DecayCheck decay = endpoint_decay(census, mu.value(), *rho_ub, cfg.eps);
    const SpeedCurve speed = saw_speed_exact(census, decay, cfg.alpha);
    std::optional<RosenbluthResult> sampled;
    if (cfg.seed) sampled = rosenbluth_sampler(*census.ball, census.n_max, PercRun{0, cfg.trials, *cfg.seed, cfg.workers});
    out.write("speed.csv", speed_csv(speed, sampled ? &*sampled : nullptr));
    std::cout << "n=" << census.n_max << " speed=" << num(speed.points.back().exact);
    if (sampled) std::cout << " rosenbluth=" << num(sampled->lengths.back().speed);
    std::cout << " alpha=" << num(speed.alpha) << (speed.mass_vanishes ? " mass below alpha n vanishes" : "") << "\n";
  } else if (task == "rosenbluth") {
    const RosenbluthResult r =
        rosenbluth_sampler(*census.ball, census.n_max, PercRun{0, cfg.trials, require_seed(cfg), cfg.workers});
    std::ostringstream csv;
    csv << "n,weight,se,exact,dead\n";
    for (const auto& l : r.lengths)
      csv << l.n << ',' << format_number(l.weight.mean) << ',' << format_number(l.weight.se) << ','
          << to_decimal(census.counts[l.n]) << ',' << l.dead << '\n';
    out.write("rosenbluth.csv", csv.str());
    const auto& last = r.lengths.back();
    std::cout << "n=" << r.n << " weight=" << num(last.weight.mean) << " se=" << num(last.weight.se)
              << " exact=" << to_decimal(census.counts[r.n]) << "\n";
  } else if (task == "green") {
    if (cfg.z_grid.empty()) throw std::invalid_argument("--z-grid is required");
    std::ostringstream csv;
    csv << "z,chi,chi_tail,vertex_tail,certified\n";
    for (double z : cfg.z_grid) {
      const GreenTable g = green_function(census, z, rho_ub);
      csv << format_number(z) << ',' << format_number(g.chi) << ','
          << (g.chi_tail ? format_number(*g.chi_tail) : "") << ','
          << (g.vertex_tail ? format_number(*g.vertex_tail) : "") << ',' << (g.certified ? 1 : 0) << '\n';
      std::cout << "z=" << num(z) << " chi=" << num(g.chi) << " G(0)=" << num(g.vertex.empty() ? 0 : g.vertex[0])
                << (g.certified ? " certified" : " tail unavailable") << "\n";
    }
    out.write("green.csv", csv.str());
  } else if (task == "chi") {
    if (cfg.z_grid.empty()) throw std::invalid_argument("--z-grid is required");
    const ChiCurve c = susceptibility_saw(census, cfg.z_grid, mu.value());
    out.write("chi.csv", chi_csv(c));
    std::cout << "ratio in [" << num(c.lower) << "," << num(c.upper) << "]" << (c.bounded ? " bounded" : "") << "\n";
  } else if (task == "bubble") {
    std::vector<double> zs = cfg.z_grid.empty() ? std::vector<double>{1 / mu.value()} : cfg.z_grid;
    std::vector<DiagramResult> rows;
    for (double z : zs) {
      rows.push_back(bubble_diagram(census, z, rho_ub));
      const auto& r = rows.back();
      std::cout << "z=" << num(z) << " bubble=" << format_number(r.value, 10)
                << " tail=" << (r.tail_bound ? num(*r.tail_bound) : std::string("unavailable")) << "\n";
    }
    out.write("bubble.csv", diagram_csv(rows, "z"));
  } else {
    throw std::invalid_argument("unknown saw task '" + task + "'");
  }
}

// --- verify ---------------------------------------------------------------------

int run_verify(const RunConfig& cfg, Outputs& out) {
  const Certificate cert = run_certificate(cfg);
  out.write("certificate.json", to_json(cert).dump(2) + "\n");
  for (const auto& g : cert.graphs) {
    std::size_t pass = 0, fail = 0, inc = 0;
    for (const auto& e : g.entries) (e.status == Status::Pass ? pass : e.status == Status::Fail ? fail : inc)++;
    std::cout << g.graph << ": " << pass << " pass, " << fail << " fail, " << inc << " inconclusive\n";
    for (const auto& e : g.entries)
      if (e.status == Status::Fail) std::cout << "  FAIL " << e.id << " margin=" << num(e.margin) << "\n";
  }
  return cert.any_failed() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"girthlab: random walks, percolation and self-avoiding walks on high-girth Cayley graphs"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "config file")->check(CLI::ExistingFile);

  struct Sub {
    CLI::App* app;
    FlagSet flags;
    std::string task;
  };
  std::map<std::string, Sub> subs;
  auto add_sub = [&](const std::string& name, const std::string& help, bool run_keys, bool budget_keys) -> Sub& {
    Sub& s = subs[name];
    s.app = app.add_subcommand(name, help);
    s.app->add_option("--config", config_path, "config file")->check(CLI::ExistingFile);
    for (const auto& [k, h] : kCommonKeys) s.flags.add(s.app, k, h);
    if (run_keys)
      for (const auto& [k, h] : kRunKeys) s.flags.add(s.app, k, h);
    if (budget_keys)
      for (const auto& [k, h] : kBudgetKeys) s.flags.add(s.app, k, h);
    return s;
  };

  Sub& graph = add_sub("graph", "girth, degree and ball export", false, false);
  graph.flags.add(graph.app, "R", "ball radius; writes ball.txt when given");
  graph.flags.add(graph.app, "girth-rmax", "girth search radius");

  Sub& kernel = add_sub("kernel", "walk kernels, spectral radius and walk inequalities", true, false);
  kernel.task = "kernels";
  kernel.app->add_option("--task", kernel.task, "kernels, rho or lemma")->check(CLI::IsMember({"kernels", "rho", "lemma"}));
  bool exact = false;
  kernel.app->add_flag("--exact", exact, "exact rational arithmetic");

  Sub& perc = add_sub("perc", "bond percolation", true, false);
  perc.task = "crossing";
  perc.app
      ->add_option("--task", perc.task, "crossing, pc, theta, two-point, triangle, witness, tail, susceptibility, beta")
      ->check(CLI::IsMember(
          {"crossing", "pc", "theta", "two-point", "triangle", "witness", "tail", "susceptibility", "beta"}));
  bool gw_mode = false;
  double fit_lo = 10, fit_hi = 0;
  perc.app->add_flag("--gw", gw_mode, "tree oracle mode: branching process, no ball");
  perc.app->add_option("--fit-lo", fit_lo, "fit window lower end");
  perc.app->add_option("--fit-hi", fit_hi, "fit window upper end (default nmax/10)");

  Sub& saw = add_sub("saw", "self-avoiding walks", true, false);
  saw.task = "census";
  saw.app->add_option("--task", saw.task, "census, endpoint, speed, rosenbluth, green, chi, bubble")
      ->check(CLI::IsMember({"census", "endpoint", "speed", "rosenbluth", "green", "chi", "bubble"}));

  add_sub("verify", "certificate over all checks", true, true);

  Sub& report = add_sub("report", "SVG plot from a CSV file", false, false);
  std::string kind, csv_in, svg_name;
  report.app->add_option("--kind", kind, "crossing-vs-p, tail-loglog, chi-ratio, speed-vs-n, decay-rate")->required();
  report.app->add_option("--csv", csv_in, "input CSV")->required();
  report.app->add_option("--svg", svg_name, "output file name inside --out (default <kind>.svg)");

  CLI11_PARSE(app, argc, argv);

  Outputs out;
  try {
    const auto it = std::find_if(subs.begin(), subs.end(), [](const auto& kv) { return kv.second.app->parsed(); });
    const std::string name = it->first;
    Sub& sub = it->second;
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path, name);
    sub.flags.apply(cfg);
    cfg.validate();
    if (cfg.out.empty())
      if (const char* env = std::getenv("GIRTHLAB_OUT")) cfg.out = env;
    out.set_dir(cfg.out);

    int code = 0;
    if (name == "graph") run_graph(cfg, sub.flags.options.at("R")->count() > 0, out);
    else if (name == "kernel") run_kernel(cfg, sub.task, exact, out);
    else if (name == "perc") run_perc(cfg, sub.task, gw_mode, fit_lo, fit_hi, out);
    else if (name == "saw") run_saw(cfg, sub.task, out);
    else if (name == "verify") code = run_verify(cfg, out);
    else {
      const PlotKind k = parse_plot_kind(kind);
      const std::string target = out.path(svg_name.empty() ? to_string(k) + ".svg" : svg_name);
      fs::create_directories(fs::path(target).parent_path());
      emit_plot(k, csv_in, target);
      out.track(target);
      std::cout << "wrote " << target << "\n";
    }
    return code;
  } catch (const std::exception& e) {
    out.rollback();
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
