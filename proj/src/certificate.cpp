#include "girthlab/certificate.hpp"

#include <cmath>
#include <limits>

namespace girthlab {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Less: return "<";
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
  }
  return "?";
}

bool holds(double lhs, Relation r, double rhs) {
  switch (r) {
    case Relation::Less: return lhs < rhs;
    case Relation::LessEqual: return lhs <= rhs;
    case Relation::GreaterEqual: return lhs >= rhs;
  }
  return false;
}

CertEntry decided(std::string id, std::string anchor, double lhs, Relation r, double rhs,
                  nlohmann::ordered_json params) {
  CertEntry e;
  e.id = std::move(id);
  e.anchor = std::move(anchor);
  e.evaluated = true;
  e.relation = r;
  e.lhs = lhs;
  e.rhs = rhs;
  e.margin = r == Relation::GreaterEqual ? lhs - rhs : rhs - lhs;
  e.status = holds(lhs, r, rhs) ? Status::Pass : Status::Fail;
  e.params = std::move(params);
  if (!std::isfinite(e.margin)) {
    e.status = Status::Inconclusive;
    e.reason = "non-finite margin";
    e.evaluated = false;
  }
  return e;
}

CertEntry inconclusive(std::string id, std::string anchor, std::string reason, nlohmann::ordered_json params) {
  CertEntry e;
  e.id = std::move(id);
  e.anchor = std::move(anchor);
  e.status = Status::Inconclusive;
  e.reason = std::move(reason);
  e.params = std::move(params);
  return e;
}

CertEntry check_perccond(int degree, std::optional<PcInterval> pc, std::optional<double> rho_ub) {
  const std::string id = "perccond", anchor = "percolation-condition";
  if (!rho_ub) return inconclusive(id, anchor, "rho_ub missing");
  if (!pc) return inconclusive(id, anchor, "p_c interval missing");
  return decided(id, anchor, pc->hi * (degree - 1) * *rho_ub, Relation::Less, 1.0,
                 {{"degree", degree}, {"pc_hi", pc->hi}, {"rho_ub", *rho_ub}});
}

double girth_threshold(double rho_ub, double C) {
  if (rho_ub >= 1) return std::numeric_limits<double>::infinity();
  return C * std::log(1 + 1 / ((1 - rho_ub) * (1 - rho_ub))) / (1 / rho_ub - 1);
}

namespace {

// Smallest girth consistent with the report.
int girth_floor(const GirthReport& g) { return g.exact ? g.value : g.value + 1; }

}  // namespace

CertEntry check_girth_threshold(std::optional<double> rho_ub, std::optional<double> C, const GirthReport& girth) {
  const std::string id = "girth-threshold", anchor = "girth-threshold";
  if (!rho_ub) return inconclusive(id, anchor, "rho_ub missing");
  if (!C) return inconclusive(id, anchor, "constant C not supplied", {{"rho_ub", *rho_ub}});
  const double L = girth_threshold(*rho_ub, *C);
  return decided(id, anchor, L, Relation::LessEqual, girth_floor(girth),
                 {{"rho_ub", *rho_ub}, {"C", *C}, {"girth", girth.to_string()}});
}

double bnp_bound(int degree, int girth, double rho_ub, double C) {
  return 1.0 / (degree - 1) + C * std::log(1 + 1 / ((1 - rho_ub) * (1 - rho_ub))) / (degree * girth);
}

CertEntry check_bnp_bound(int degree, const GirthReport& girth, std::optional<double> rho_ub, std::optional<double> C,
                          std::optional<PcInterval> pc) {
  const std::string id = "pc-upper-bound", anchor = "pc-girth-bound";
  if (!rho_ub) return inconclusive(id, anchor, "rho_ub missing");
  if (!C) return inconclusive(id, anchor, "constant C not supplied");
  if (!pc) return inconclusive(id, anchor, "p_c interval missing");
  const int g = girth_floor(girth);
  return decided(id, anchor, pc->hi, Relation::LessEqual, bnp_bound(degree, g, *rho_ub, *C),
                 {{"degree", degree}, {"girth_used", g}, {"girth", girth.to_string()}, {"rho_ub", *rho_ub},
                  {"C", *C}, {"pc_lo", pc->lo}});
}

CertEntry check_mu_pc(std::optional<double> mu_ub, std::optional<PcInterval> pc) {
  const std::string id = "mu-pc", anchor = "mu-pc-at-least-one";
  if (!mu_ub) return inconclusive(id, anchor, "mu bound missing");
  if (!pc) return inconclusive(id, anchor, "p_c interval missing");
  CertEntry e = decided(id, anchor, *mu_ub * pc->hi, Relation::GreaterEqual, 1.0,
                        {{"mu_ub", *mu_ub}, {"pc_lo", pc->lo}, {"pc_hi", pc->hi}, {"product_lo", *mu_ub * pc->lo}});
  e.reason = "consistency check between an upper bound on mu and a p_c interval";
  return e;
}

CertEntry lemma_entry(const LemmaCheck& check, std::string anchor) {
  const std::string id = check.id + (check.arithmetic == Arithmetic::Exact ? "-exact" : "-float");
  if (check.checks == 0) return inconclusive(id, std::move(anchor), "no (x, n) pairs checked");
  const LemmaStep* worst = &check.steps.front();
  for (const LemmaStep& s : check.steps)
    if (s.margin < worst->margin) worst = &s;
  CertEntry e;
  e.id = id;
  e.anchor = std::move(anchor);
  e.evaluated = true;
  e.relation = Relation::LessEqual;
  e.lhs = worst->lhs;
  e.rhs = worst->rhs;
  e.margin = worst->margin;
  e.status = check.violations == 0 ? Status::Pass : Status::Fail;
  e.params = {{"rho_ub", check.rho_ub},
              {"steps", static_cast<int>(check.steps.size()) - 1},
              {"tail_horizon", check.tail_horizon},
              {"checks", check.checks},
              {"violations", check.violations},
              {"worst_n", worst->n}};
  return e;
}

CertEntry check_rho_sequence(const RhoEstimate& est) {
  const std::string id = "rho-sequence", anchor = "return-probability-bound";
  if (!est.upper_bound) return inconclusive(id, anchor, "rho_ub missing", {{"lower_bound", est.lower_bound}});
  return decided(id, anchor, est.lower_bound, Relation::LessEqual, *est.upper_bound,
                 {{"terms", est.sequence.size()}, {"provenance", to_string(est.provenance)}});
}

bool Certificate::any_failed() const {
  for (const auto& g : graphs)
    for (const auto& e : g.entries)
      if (e.status == Status::Fail) return true;
  return false;
}

std::size_t Certificate::entry_count() const {
  std::size_t n = 0;
  for (const auto& g : graphs) n += g.entries.size();
  return n;
}

nlohmann::ordered_json to_json(const CertEntry& e) {
  nlohmann::ordered_json j;
  j["id"] = e.id;
  j["anchor"] = e.anchor;
  if (!e.evaluated) {
    j["lhs"] = nullptr;
    j["relation"] = nullptr;
    j["rhs"] = nullptr;
    j["margin"] = nullptr;
  } else {
    j["lhs"] = e.lhs;
    j["relation"] = to_string(e.relation);
    j["rhs"] = e.rhs;
    j["margin"] = e.margin;
  }
  j["status"] = to_string(e.status);
  if (!e.reason.empty()) j["reason"] = e.reason;
  j["params"] = e.params;
  return j;
}

nlohmann::ordered_json to_json(const Certificate& c, bool include_meta) {
  nlohmann::ordered_json j;
  j["graphs"] = nlohmann::ordered_json::array();
  for (const auto& g : c.graphs) {
    nlohmann::ordered_json gj;
    gj["graph"] = g.graph;
    gj["inputs"] = g.inputs;
    gj["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : g.entries) gj["entries"].push_back(to_json(e));
    j["graphs"].push_back(gj);
  }
  std::size_t pass = 0, fail = 0, inc = 0;
  for (const auto& g : c.graphs)
    for (const auto& e : g.entries) (e.status == Status::Pass ? pass : e.status == Status::Fail ? fail : inc)++;
  j["summary"] = {{"entries", pass + fail + inc}, {"pass", pass}, {"fail", fail}, {"inconclusive", inc}};
  if (include_meta) j["meta"] = c.meta;
  return j;
}

}  // namespace girthlab
