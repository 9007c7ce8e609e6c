#include "girthlab/verify.hpp"
#include "girthlab/walk_kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace girthlab;

namespace {

const CertEntry& entry(const GraphCertificate& g, const std::string& id) {
  for (const CertEntry& e : g.entries)
    if (e.id == id) return e;
  FAIL("missing entry " << id);
  return g.entries.front();
}

RunConfig small_config(std::vector<std::string> specs) {
  RunConfig cfg;
  cfg.specs = std::move(specs);
  cfg.seed = 20240601;
  cfg.workers = 4;
  cfg.bnp_C = 0.1;
  cfg.verify.triangle_trials = 500;
  cfg.verify.rosenbluth_trials = 2000;
  cfg.verify.rho_steps = 60;
  cfg.verify.kernel_radius = 6;
  cfg.verify.kernel_steps = 6;
  cfg.verify.saw_nmax = 8;
  return cfg;
}

}  // namespace

TEST_CASE("percolation condition on trees") {
  for (int d : {3, 4, 5}) {
    const double pc = 1.0 / (d - 1);
    const CertEntry e = check_perccond(d, PcInterval{pc, pc}, kesten_rho(d));
    CHECK(e.status == Status::Pass);
    CHECK(e.margin == doctest::Approx(1 - kesten_rho(d)));
    const CertEntry edge = check_perccond(d, PcInterval{pc, pc}, 1.0);
    CHECK(edge.status == Status::Fail);
    CHECK(edge.margin == doctest::Approx(0).epsilon(1e-15));
  }
  CHECK(check_perccond(4, std::nullopt, 0.9).status == Status::Inconclusive);
  CHECK(check_perccond(4, PcInterval{0.3, 0.4}, std::nullopt).status == Status::Inconclusive);
}

TEST_CASE("girth threshold and p_c bound") {
  CHECK(girth_threshold(0.5, 1) == doctest::Approx(std::log(5.0)));
  CHECK(girth_threshold(0.999, 1) > girth_threshold(0.99, 1));
  CHECK(girth_threshold(0.99, 1) > 100);
  CHECK(std::isinf(girth_threshold(1, 1)));

  for (int d : {3, 4, 7}) CHECK(bnp_bound(d, 5, 0.9, 0) == doctest::Approx(1.0 / (d - 1)));
  const GirthReport g5{true, 5};
  const CertEntry bnp = check_bnp_bound(4, g5, 0.8965, 0.1, PcInterval{0.33, 0.34});
  CHECK(bnp.lhs == 0.34);
  CHECK(bnp.rhs == doctest::Approx(bnp_bound(4, 5, 0.8965, 0.1)));
  CHECK(check_bnp_bound(4, g5, 0.8965, std::nullopt, PcInterval{0.33, 0.34}).status == Status::Inconclusive);

  const CertEntry thr = check_girth_threshold(0.5, 1.0, g5);
  CHECK(thr.status == Status::Pass);
  CHECK(check_girth_threshold(1.0, 1.0, g5).status == Status::Inconclusive);
}

TEST_CASE("mu p_c consistency") {
  const CertEntry e = check_mu_pc(3.0, PcInterval{0.33, 0.34});
  CHECK(e.status == Status::Pass);
  CHECK(e.lhs == doctest::Approx(1.02));
  CHECK(check_mu_pc(3.0, PcInterval{0.2, 0.3}).status == Status::Fail);
}

TEST_CASE("tree certificate passes throughout") {
  const Certificate cert = run_certificate(small_config({"Z*Z", "Z2*Z2*Z2"}));
  REQUIRE(cert.graphs.size() == 2);
  CHECK_FALSE(cert.any_failed());
  for (const GraphCertificate& g : cert.graphs) {
    CHECK(g.entries.size() == 19);
    for (const CertEntry& e : g.entries) {
      INFO(g.graph << " " << e.id << " " << e.reason);
      if (e.id == "triangle-tail-rigorous" || e.id == "rosenbluth-unbiased") continue;
      CHECK(e.status == Status::Pass);
    }
    CHECK(g.inputs["rho_provenance"] == "exact-formula");
  }
}

TEST_CASE("Z5*Z5 without a spectral bound") {
  RunConfig cfg = small_config({"Z5*Z5"});
  const Certificate cert = run_certificate(cfg);
  REQUIRE(cert.graphs.size() == 1);
  const GraphCertificate& g = cert.graphs[0];
  CHECK(g.entries.size() == 19);
  for (const char* id : {"perccond", "girth-threshold", "pc-upper-bound", "endpoint-decay-rate", "rho-sequence"})
    CHECK(entry(g, id).status == Status::Inconclusive);
  for (const char* id : {"sphere-sizes", "saw-nbw-bound", "saw-submultiplicative", "saw-endpoint-sum", "mu-pc"})
    CHECK(entry(g, id).status == Status::Pass);
  CHECK_FALSE(cert.any_failed());

  // a supplied bound turns the same entries into decisions
  cfg.rho_ub_by_spec["Z5*Z5"] = 0.8965;
  const Certificate with = run_certificate(cfg);
  CHECK(entry(with.graphs[0], "perccond").status == Status::Pass);
  CHECK(entry(with.graphs[0], "rho-sequence").status == Status::Pass);
}

TEST_CASE("empty and invalid configurations") {
  const Certificate empty = run_certificate(RunConfig{});
  CHECK(empty.graphs.empty());
  CHECK(empty.entry_count() == 0);
  const auto j = to_json(empty);
  CHECK(j["summary"]["entries"] == 0);
  CHECK(j.contains("meta"));

  RunConfig no_seed;
  no_seed.specs = {"Z*Z"};
  CHECK_THROWS_AS(run_certificate(no_seed), std::invalid_argument);
  RunConfig bad = small_config({"Q7"});
  CHECK_THROWS_AS(run_certificate(bad), std::invalid_argument);
}

TEST_CASE("certificate is deterministic across worker counts and recomputable") {
  RunConfig cfg = small_config({"Z*Z", "Z5*Z5"});
  cfg.rho_ub_by_spec["Z5*Z5"] = 0.8965;
  cfg.workers = 1;
  const Certificate a = run_certificate(cfg);
  cfg.workers = 7;
  const Certificate b = run_certificate(cfg);
  CHECK(to_json(a, false).dump() == to_json(b, false).dump());
  CHECK(to_json(a).contains("meta"));
  CHECK_FALSE(to_json(a, false).contains("meta"));

  std::set<std::string> ids;
  for (const GraphCertificate& g : a.graphs)
    for (const CertEntry& e : g.entries) {
      ids.insert(e.id);
      if (!e.evaluated) {
        CHECK(e.status == Status::Inconclusive);
        CHECK_FALSE(e.reason.empty());
        continue;
      }
      INFO(e.id);
      CHECK(e.status == (holds(e.lhs, e.relation, e.rhs) ? Status::Pass : Status::Fail));
      const double margin = e.relation == Relation::GreaterEqual ? e.lhs - e.rhs : e.rhs - e.lhs;
      CHECK(e.margin == doctest::Approx(margin));
    }
  CHECK(ids.size() == 19);
  CHECK(derive_seed(1, 0, 1) != derive_seed(1, 1, 1));
  CHECK(derive_seed(1, 0, 1) != derive_seed(1, 0, 2));
  CHECK(derive_seed(5, 2, 3) == derive_seed(5, 2, 3));
}
