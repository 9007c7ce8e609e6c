#include "girthlab/verify.hpp"

#include "girthlab/counter_rng.hpp"
#include "girthlab/percolation.hpp"
#include "girthlab/saw.hpp"
#include "girthlab/tree_oracle.hpp"
#include "girthlab/walk_kernels.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <stdexcept>

namespace girthlab {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Stage tags for derive_seed.
enum Stage : std::uint64_t { kPcStage = 1, kTriangleStage = 2, kRosenbluthStage = 3 };

// Exact kernels above this many ball vertices get slow; float mode takes over.
constexpr std::size_t kExactKernelLimit = 200'000;

std::vector<std::string> configured_specs(const RunConfig& cfg) {
  if (!cfg.specs.empty()) return cfg.specs;
  if (!cfg.spec.empty()) return {cfg.spec};
  return {};
}

double elapsed(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// Sphere sizes of the built ball against the syllable-count formula.
CertEntry sphere_entry(const Ball& ball) {
  const auto expected = sphere_sizes(ball.spec(), ball.radius());
  double mismatch = 0;
  for (int r = 0; r <= ball.radius(); ++r)
    mismatch += std::abs(static_cast<double>(ball.sphere_size(r)) - expected[r].convert_to<double>());
  return decided("sphere-sizes", "plumbing", mismatch, Relation::LessEqual, 0.0,
                 {{"radius", ball.radius()}, {"vertices", ball.size()}});
}

// max_n c_n / (d (d-1)^{n-1}).
CertEntry nbw_count_entry(const SawCensus& c) {
  double worst = 0;
  int worst_n = 0;
  for (int n = 1; n <= c.n_max; ++n) {
    const double r = to_double(Rational(c.counts[n], nonbacktracking_count(c.degree, n)));
    if (r > worst) worst = r, worst_n = n;
  }
  return decided("saw-nbw-bound", "plumbing", worst, Relation::LessEqual, 1.0,
                 {{"nmax", c.n_max}, {"worst_n", worst_n}});
}

// max over m + n <= n_max of c_{m+n} / (c_m c_n).
CertEntry submultiplicative_entry(const SawCensus& c) {
  double worst = 0;
  for (int m = 1; m <= c.n_max; ++m)
    for (int n = m; m + n <= c.n_max; ++n)
      worst = std::max(worst, to_double(Rational(c.counts[m + n], c.counts[m] * c.counts[n])));
  return decided("saw-submultiplicative", "connective-constant", worst, Relation::LessEqual, 1.0,
                 {{"nmax", c.n_max}});
}

// Sum over lengths of |sum_x c_n(x) - c_n|.
CertEntry endpoint_sum_entry(const SawCensus& c) {
  double mismatch = 0;
  for (int n = 0; n <= c.n_max; ++n) {
    BigInt total = 0;
    for (std::uint64_t v : c.endpoint[n]) total += v;
    const BigInt diff = total > c.counts[n] ? BigInt(total - c.counts[n]) : BigInt(c.counts[n] - total);
    mismatch += diff.convert_to<double>();
  }
  return decided("saw-endpoint-sum", "plumbing", mismatch, Relation::LessEqual, 0.0, {{"nmax", c.n_max}});
}

// Largest |mean weight - c_k| in standard errors over k = 1..n.
CertEntry rosenbluth_entry(const RosenbluthResult& r, const SawCensus& c) {
  double worst = 0;
  int worst_k = 0;
  for (int k = 1; k <= r.n; ++k) {
    const MeanEstimate& w = r.lengths[k].weight;
    const double diff = std::abs(w.mean - c.counts[k].convert_to<double>());
    const double z = w.se > 0 ? diff / w.se : (diff <= 1e-9 * w.mean ? 0.0 : std::numeric_limits<double>::infinity());
    if (z > worst) worst = z, worst_k = k;
  }
  CertEntry e = decided("rosenbluth-unbiased", "plumbing", worst, Relation::LessEqual, 3.0,
                        {{"n", r.n}, {"trials", r.trials}, {"worst_k", worst_k}});
  if (!std::isfinite(worst)) {
    e.status = Status::Fail;
    e.reason = "zero-variance weights differ from the census";
  }
  return e;
}

CertEntry diagram_condition_entry(const std::string& id, const std::string& anchor, const DiagramResult& r) {
  json params = {{"method", to_string(r.method)}, {"p_or_z", r.p},   {"truncation", r.truncation},
                 {"value", r.value},              {"se", r.se},      {"certified", r.certified}};
  params["tail_bound"] = r.tail_bound ? json(*r.tail_bound) : json(nullptr);
  if (!r.note.empty()) params["note"] = r.note;
  if (!r.rho_ub) return inconclusive(id, anchor, "rho_ub missing", params);
  return decided(id, anchor, r.tail_ratio, Relation::Less, 1.0, params);
}

struct GraphRun {
  GraphCertificate cert;
  json timing = json::object();
};

GraphRun certify_graph(const RunConfig& cfg, const std::string& text, std::size_t index) {
  const VerifyBudget& b = cfg.verify;
  const std::uint64_t seed = *cfg.seed;
  GraphRun out;
  GraphCertificate& gc = out.cert;
  auto& entries = gc.entries;
  auto stage = [&](const char* name, auto&& fn) {
    const auto t0 = Clock::now();
    fn();
    out.timing[name] = elapsed(t0);
  };

  const GroupSpec spec = parse_group_spec(text);
  const int d = spec.degree();
  gc.graph = spec.to_string();

  const auto [rho_ub, rho_prov] = certified_rho(spec, cfg.rho_ub_for(gc.graph));
  GirthReport g;
  std::optional<PcInterval> pc;
  std::optional<double> mu_ub;

  stage("girth", [&] {
    g = girth(spec, b.girth_rmax);
    entries.push_back(sphere_entry(build_ball(spec, b.girth_rmax)));
  });

  stage("kernels", [&] {
    std::shared_ptr<const Ball> ball;
    try {
      ball = make_ball(spec, b.kernel_radius);
    } catch (const BallTooLarge& e) {
      entries.push_back(inconclusive("nbw-srw-tail", "nbw-tail-bound", e.what()));
      entries.push_back(inconclusive("nbw-rho", "nbw-rho-bound", e.what()));
    }
    if (ball) {
      const int steps = std::min(b.kernel_steps, b.kernel_radius);
      const Arithmetic mode = ball->size() <= kExactKernelLimit ? Arithmetic::Exact : Arithmetic::Float;
      if (!rho_ub || *rho_ub >= 1) {
        const std::string why = rho_ub ? "rho_ub >= 1" : "rho_ub missing";
        entries.push_back(inconclusive("nbw-srw-tail", "nbw-tail-bound", why));
        entries.push_back(inconclusive("nbw-rho", "nbw-rho-bound", why));
      } else {
        entries.push_back(lemma_entry(check_lemma_nbw_tail(*ball, steps, *rho_ub, mode), "nbw-tail-bound"));
        entries.push_back(lemma_entry(check_lemma_nbw_rho(*ball, steps, *rho_ub, mode), "nbw-rho-bound"));
      }
    }
    // Off trees the return sequence needs a ball of half its length.
    const int rho_steps = spec.is_tree() ? b.rho_steps : std::min(b.rho_steps, 2 * b.kernel_radius);
    try {
      entries.push_back(check_rho_sequence(estimate_spectral_radius(spec, rho_steps, cfg.rho_ub_for(gc.graph))));
    } catch (const BallTooLarge& e) {
      entries.push_back(inconclusive("rho-sequence", "return-probability-bound", e.what()));
    }
  });

  stage("percolation", [&] {
    try {
      const Ball ball = build_ball(spec, b.perc_radius);
      PcOptions opt;
      opt.method = cfg.pc_method == "threshold" ? PcMethod::Threshold : PcMethod::InverseCrossing;
      opt.theta_star = cfg.theta_star;
      opt.grid_step = b.pc_grid_step;
      PercRun run{0, b.perc_trials, derive_seed(seed, index, kPcStage), cfg.workers};
      const PcEstimate est = estimate_pc(ball, run, opt);
      pc = PcInterval{est.lo, est.hi};
      gc.inputs["pc_warning"] = est.warning;
    } catch (const BallTooLarge& e) {
      gc.inputs["pc_warning"] = e.what();
    }
  });

  SawCensus census;
  MuBounds mu;
  stage("saw-census", [&] {
    census = enumerate_saw(make_ball(spec, b.saw_nmax), b.saw_nmax, cfg.workers);
    mu = connective_constant(census);
    mu_ub = mu.value();
  });

  entries.push_back(check_perccond(d, pc, rho_ub));
  entries.push_back(check_girth_threshold(rho_ub, cfg.bnp_C, g));
  entries.push_back(check_bnp_bound(d, g, rho_ub, cfg.bnp_C, pc));
  entries.push_back(check_mu_pc(mu_ub, pc));

  stage("triangle", [&] {
    if (!pc) {
      entries.push_back(inconclusive("triangle-finite", "triangle-condition", "p_c interval missing"));
      return;
    }
    if (spec.is_tree()) {
      const DiagramResult r = triangle_diagram_tree(d, pc->hi, b.tree_triangle_truncation, rho_ub);
      entries.push_back(diagram_condition_entry("triangle-finite", "triangle-condition", r));
      const double closed = gw::triangle_closed_form(d, pc->hi);
      if (r.tail_bound)
        entries.push_back(decided("triangle-tail-rigorous", "triangle-condition", closed, Relation::LessEqual,
                                  r.value + *r.tail_bound, {{"p", pc->hi}, {"truncated", r.value}}));
      else
        entries.push_back(inconclusive("triangle-tail-rigorous", "triangle-condition", "tail bound unavailable"));
    } else {
      const Ball ball = build_ball(spec, 2 * b.triangle_truncation);
      PercRun run{pc->hi, b.triangle_trials, derive_seed(seed, index, kTriangleStage), cfg.workers};
      const DiagramResult r = triangle_diagram_mc(ball, run, b.triangle_truncation, rho_ub);
      entries.push_back(diagram_condition_entry("triangle-finite", "triangle-condition", r));
      // Only the tree has a closed form to test the remainder against.
      entries.push_back(inconclusive("triangle-tail-rigorous", "triangle-condition", "no closed form off trees"));
    }
  });

  stage("saw-checks", [&] {
    entries.push_back(nbw_count_entry(census));
    entries.push_back(submultiplicative_entry(census));
    entries.push_back(endpoint_sum_entry(census));

    // The tree formula census reaches lengths where the bubble remainder is tiny.
    const SawCensus bubble_census = spec.is_tree() ? tree_saw_census(spec, b.tree_saw_nmax) : census;
    const double z = 1.0 / mu.value();
    const DiagramResult bubble = bubble_diagram(bubble_census, z, rho_ub);
    entries.push_back(diagram_condition_entry("bubble-finite", "bubble-condition", bubble));

    if (!rho_ub || *rho_ub >= 1) {
      const std::string why = rho_ub ? "rho_ub >= 1" : "rho_ub missing";
      for (const char* id : {"endpoint-decay-rate", "endpoint-decay-bound", "speed-mass-vanishes", "saw-speed"})
        entries.push_back(inconclusive(id, id[0] == 'e' ? "endpoint-decay" : "positive-speed", why));
    } else {
      const DecayCheck decay = endpoint_decay(census, mu.value(), *rho_ub, cfg.eps);
      entries.push_back(decided("endpoint-decay-rate", "endpoint-decay", decay.lambda, Relation::Less, 1.0,
                                {{"mu_hat", decay.mu_hat},
                                 {"epsilon", decay.epsilon},
                                 {"constant", decay.constant},
                                 {"fitted_rate", decay.fitted_rate}}));
      double worst = 0;
      int worst_n = 0;
      for (const DecayRow& row : decay.rows)
        if (row.sup / row.bound > worst) worst = row.sup / row.bound, worst_n = row.n;
      entries.push_back(decided("endpoint-decay-bound", "endpoint-decay", worst, Relation::LessEqual, 1.0,
                                {{"nmax", census.n_max}, {"worst_n", worst_n}}));

      const SpeedCurve speed = saw_speed_exact(census, decay, cfg.alpha);
      entries.push_back(decided("speed-mass-vanishes", "positive-speed", speed.alpha_ratio, Relation::Less, 1.0,
                                {{"alpha", speed.alpha}, {"lambda", decay.lambda}}));
      // E dist >= alpha n P(dist > alpha n) at the longest census length.
      const SpeedPoint& last = speed.points.back();
      entries.push_back(decided("saw-speed", "positive-speed", last.exact, Relation::GreaterEqual,
                                speed.alpha * (1 - last.mass_below),
                                {{"n", last.n}, {"alpha", speed.alpha}, {"nu_fit", speed.nu.value}}));
    }
  });

  stage("rosenbluth", [&] {
    PercRun run{0, b.rosenbluth_trials, derive_seed(seed, index, kRosenbluthStage), cfg.workers};
    try {
      entries.push_back(rosenbluth_entry(rosenbluth_sampler(*census.ball, census.n_max, run), census));
    } catch (const std::runtime_error& e) {
      entries.push_back(inconclusive("rosenbluth-unbiased", "plumbing", e.what()));
    }
  });

  json& in = gc.inputs;
  const json warning = in.contains("pc_warning") ? in["pc_warning"] : json("");
  in = json::object();
  in["spec"] = gc.graph;
  in["degree"] = d;
  in["girth"] = g.to_string();
  in["rho_ub"] = rho_ub ? json(*rho_ub) : json(nullptr);
  in["rho_provenance"] = to_string(rho_prov);
  in["rho_reading"] = "every inequality is monotone in rho, so a certified upper bound stands in for rho";
  if (pc) {
    in["pc_interval"] = {pc->lo, pc->hi};
    in["pc_method"] = cfg.pc_method;
    in["pc_radius"] = b.perc_radius;
  } else {
    in["pc_interval"] = nullptr;
  }
  in["pc_warning"] = warning;
  in["mu_ub"] = mu.best;
  in["mu_tree_exact"] = mu.tree_exact ? json(*mu.tree_exact) : json(nullptr);
  in["mu_nmax"] = census.n_max;
  in["C"] = cfg.bnp_C ? json(*cfg.bnp_C) : json(nullptr);
  in["seed"] = seed;
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::size_t graph_index, std::uint64_t stage) {
  return splitmix64(splitmix64(master) ^ splitmix64((static_cast<std::uint64_t>(graph_index) << 8) | stage));
}

Certificate run_certificate(const RunConfig& cfg) {
  cfg.validate();
  const auto specs = configured_specs(cfg);
  if (!specs.empty() && !cfg.seed) throw std::invalid_argument("verify needs a seed");

  const auto t0 = Clock::now();
  Certificate cert;
  json durations = json::object();
  for (std::size_t i = 0; i < specs.size(); ++i) {
    GraphRun run = certify_graph(cfg, specs[i], i);
    durations[run.cert.graph] = run.timing;
    cert.graphs.push_back(std::move(run.cert));
  }
  cert.meta["version"] = kVersion;
  cert.meta["timestamp"] = utc_timestamp();
  cert.meta["workers"] = cfg.workers;
  cert.meta["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
  cert.meta["durations_s"] = durations;
  cert.meta["total_s"] = elapsed(t0);
  return cert;
}

}  // namespace girthlab
