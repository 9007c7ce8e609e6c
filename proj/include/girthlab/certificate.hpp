#pragma once

#include "girthlab/ball.hpp"
#include "girthlab/walk_kernels.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace girthlab {

enum class Status { Pass, Fail, Inconclusive };

std::string to_string(Status s);

/// `lhs relation rhs`; the status is recomputable from lhs and rhs alone.
enum class Relation { Less, LessEqual, GreaterEqual };

std::string to_string(Relation r);
bool holds(double lhs, Relation r, double rhs);

struct CertEntry {
  std::string id;
  std::string anchor;  // the inequality family this check belongs to, or "plumbing"
  bool evaluated = false;  // lhs/rhs/margin are meaningful
  Relation relation = Relation::LessEqual;
  double lhs = 0;
  double rhs = 0;
  double margin = 0;  // signed slack, >= 0 (> 0 for strict) exactly when the relation holds
  Status status = Status::Inconclusive;
  std::string reason;  // why an entry is inconclusive, or a short note
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
};

/// Builds a decided entry: margin and status from lhs, relation and rhs.
CertEntry decided(std::string id, std::string anchor, double lhs, Relation r, double rhs,
                  nlohmann::ordered_json params = nlohmann::ordered_json::object());
CertEntry inconclusive(std::string id, std::string anchor, std::string reason,
                       nlohmann::ordered_json params = nlohmann::ordered_json::object());

struct PcInterval {
  double lo = 0;
  double hi = 0;
};

// --- individual checks ------------------------------------------------------

/// upper(p_c) (d-1) rho_ub < 1.
CertEntry check_perccond(int degree, std::optional<PcInterval> pc, std::optional<double> rho_ub);

/// C log(1 + (1-rho)^-2) / (1/rho - 1).
double girth_threshold(double rho_ub, double C);

/// Compares the girth needed for the percolation condition with the girth certificate.
CertEntry check_girth_threshold(std::optional<double> rho_ub, std::optional<double> C, const GirthReport& girth);

/// 1/(d-1) + C log(1 + (1-rho)^-2) / (d g).
double bnp_bound(int degree, int girth, double rho_ub, double C);

/// upper(p_c) <= the p_c upper bound, using the girth lower bound when the girth is not exact.
CertEntry check_bnp_bound(int degree, const GirthReport& girth, std::optional<double> rho_ub, std::optional<double> C,
                          std::optional<PcInterval> pc);

/// mu_ub * upper(p_c) >= 1, with both interval ends recorded.
CertEntry check_mu_pc(std::optional<double> mu_ub, std::optional<PcInterval> pc);

CertEntry lemma_entry(const LemmaCheck& check, std::string anchor);

/// Max of the return sequence against rho_ub.
CertEntry check_rho_sequence(const RhoEstimate& estimate);

// --- certificate --------------------------------------------------------------

struct GraphCertificate {
  std::string graph;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  std::vector<CertEntry> entries;
};

struct Certificate {
  std::vector<GraphCertificate> graphs;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();

  bool any_failed() const;
  std::size_t entry_count() const;
};

nlohmann::ordered_json to_json(const CertEntry& e);
nlohmann::ordered_json to_json(const Certificate& c, bool include_meta = true);

}  // namespace girthlab
