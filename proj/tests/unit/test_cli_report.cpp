#include "girthlab/config.hpp"
#include "girthlab/plot.hpp"
#include "girthlab/report.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace girthlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "girthlab_test_cli_report";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config round trip") {
  RunConfig c;
  c.specs = {"Z*Z", "Z5*Z5"};
  c.seed = 42;
  c.workers = 3;
  c.bnp_C = 0.25;
  c.rho_ub = 0.9;
  c.rho_ub_by_spec["Z5*Z5"] = 0.8965;
  c.p_grid = {0.1, 0.2, 0.35};
  c.eps = 0.01;
  c.verify.perc_radius = 9;
  c.verify.perc_trials = 1234;
  c.verify.pc_grid_step = 0.005;
  CHECK(parse_config(serialize_config(c)) == c);
  CHECK(parse_config(serialize_config(RunConfig{})) == RunConfig{});
  CHECK(c.rho_ub_for("Z5*Z5") == 0.8965);
  CHECK(c.rho_ub_for("Z*Z") == 0.9);
}

TEST_CASE("config sections and overrides") {
  const std::string text =
      "# comment\n"
      "[run]\n"
      "spec = Z*Z\n"
      "seed = 7\n"
      "trials = 100\n"
      "[perc]\n"
      "trials = 500   # perc only\n"
      "[saw]\n"
      "nmax = 12\n";
  const RunConfig perc = parse_config(text, "perc");
  CHECK(perc.spec == "Z*Z");
  CHECK(perc.seed == 7u);
  CHECK(perc.trials == 500);
  CHECK(perc.n_max == 10);
  const RunConfig saw = parse_config(text, "saw");
  CHECK(saw.trials == 100);
  CHECK(saw.n_max == 12);

  RunConfig flag = perc;
  apply_config_key(flag, "trials", "9");  // a flag after the file wins
  CHECK(flag.trials == 9);

  RunConfig bad;
  CHECK_THROWS_AS(apply_config_key(bad, "no-such-key", "1"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_key(bad, "workers", "many"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[run]\nworkers = 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[run]\np-grid = 0.5,0.2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[run]\nrho-ub = 1.5\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("[run]\npc-method = guess\n"), std::invalid_argument);
}

TEST_CASE("grid parsing") {
  const auto g = parse_grid("0.1:0.3:0.1");
  REQUIRE(g.size() == 3);
  CHECK(g[0] == doctest::Approx(0.1));
  CHECK(g[2] == doctest::Approx(0.3));
  CHECK(parse_grid("0.25, 0.3,0.32") == std::vector<double>{0.25, 0.3, 0.32});
  CHECK_THROWS(parse_grid("0.1:0.3"));
  CHECK_THROWS(parse_grid("0.1:0.3:0"));
}

TEST_CASE("shipped configs parse") {
  for (const char* name : {"tree4.cfg", "z5z5.cfg"}) {
    const RunConfig c = load_config(std::string(GIRTHLAB_SOURCE_DIR) + "/configs/" + name, "verify");
    CHECK(c.seed);
    CHECK_FALSE(c.specs.empty());
  }
  CHECK(load_config(std::string(GIRTHLAB_SOURCE_DIR) + "/configs/z5z5.cfg").rho_ub_for("Z5*Z5") == 0.8965);
  CHECK_THROWS(load_config("/nonexistent/girthlab.cfg"));
}

TEST_CASE("CSV output is byte-identical for equal inputs") {
  const SawCensus a = tree_saw_census(parse_group_spec("Z*Z"), 30);
  const SawCensus b = tree_saw_census(parse_group_spec("Z*Z"), 30);
  CHECK(census_csv(a) == census_csv(b));
  const std::string csv = census_csv(a);
  CHECK(csv.rfind("n,c_n\n", 0) == 0);
  CHECK(csv.find("\n30,") != std::string::npos);

  const Ball ball = build_ball(parse_group_spec("Z*Z"), 6);
  const auto c1 = crossing_curve(ball, PercRun{0.35, 300, 9, 1}, {2, 4, 6});
  const auto c2 = crossing_curve(ball, PercRun{0.35, 300, 9, 5}, {2, 4, 6});
  CHECK(crossing_csv(c1, 9) == crossing_csv(c2, 9));
}

TEST_CASE("SVG rendering") {
  const ChiCurve curve = susceptibility_saw(tree_saw_census(parse_group_spec("Z*Z"), 400),
                                            {0.0, 0.1, 0.2, 0.3, 0.32}, 3);
  const std::string csv = chi_csv(curve);
  const CsvTable table = parse_csv(csv);
  CHECK(table.has_column("ratio_lo"));
  CHECK(table.rows.size() == 5);
  const std::string svg1 = render_plot(PlotKind::ChiRatio, table);
  const std::string svg2 = render_plot(PlotKind::ChiRatio, parse_csv(csv));
  CHECK(svg1 == svg2);
  CHECK(svg1.find("<svg") != std::string::npos);
  CHECK(svg1.find("</svg>") != std::string::npos);

  const fs::path in = scratch("chi.csv"), out = scratch("chi.svg");
  write_text(in.string(), csv);
  fs::remove(out);
  emit_plot(PlotKind::ChiRatio, in.string(), out.string());
  CHECK(slurp(out) == svg1);

  CHECK(parse_plot_kind("tail-loglog") == PlotKind::TailLogLog);
  CHECK(to_string(PlotKind::DecayRate) == "decay-rate");
  CHECK_THROWS_AS(parse_plot_kind("pie"), std::invalid_argument);
}

TEST_CASE("plot errors leave no output") {
  CHECK_THROWS_AS(parse_csv(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), std::invalid_argument);
  CHECK_THROWS_AS(render_plot(PlotKind::ChiRatio, parse_csv("x,y\n1,2\n")), std::invalid_argument);

  const fs::path empty = scratch("empty.csv"), out = scratch("empty.svg");
  write_text(empty.string(), "");
  fs::remove(out);
  CHECK_THROWS(emit_plot(PlotKind::TailLogLog, empty.string(), out.string()));
  CHECK_FALSE(fs::exists(out));
  CHECK_THROWS(emit_plot(PlotKind::TailLogLog, scratch("missing.csv").string(), out.string()));
  CHECK_FALSE(fs::exists(out));
}
