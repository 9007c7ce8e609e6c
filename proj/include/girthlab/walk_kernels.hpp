#pragma once

#include "girthlab/ball.hpp"
#include "girthlab/big_int.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace girthlab {

enum class WalkKind { Simple, NonBacktracking };

std::string to_string(WalkKind kind);

/// n-step kernels p^n(0,x) (simple walk) or q^n(0,x) (non-backtracking walk)
/// from the ball's root.
///
/// With Scalar = double the entries are probabilities. With Scalar = BigInt
/// they are exact walk counts over the common denominator returned by
/// walk_denominator(), which is the exact-rational arithmetic mode.
///
/// Mass that reaches the ball boundary and steps outside is lost, so only
/// steps n <= valid_horizon = min(N, R) equal the kernel of the infinite
/// graph.
template <typename Scalar>
struct KernelTable {
  WalkKind kind = WalkKind::Simple;
  int horizon = 0;
  int valid_horizon = 0;
  int degree = 0;
  std::vector<std::vector<Scalar>> steps;  // steps[n] covers vertices [0, steps[n].size())

  Scalar at(int n, VertexId v) const { return v < steps[n].size() ? steps[n][v] : Scalar{0}; }
};

using FloatKernel = KernelTable<double>;
using ExactKernel = KernelTable<BigInt>;

/// d^n for the simple walk, d (d-1)^(n-1) for the non-backtracking walk.
BigInt walk_denominator(WalkKind kind, int degree, int n);

Rational exact_probability(const ExactKernel& table, int n, VertexId v);
inline double probability(const FloatKernel& table, int n, VertexId v) { return table.at(n, v); }
inline double probability(const ExactKernel& table, int n, VertexId v) {
  return to_double(exact_probability(table, n, v));
}

template <typename Scalar>
KernelTable<Scalar> srw_kernel(const Ball& ball, int steps);

/// First step uniform over the d arcs out of the root, then uniform over the
/// d-1 arcs that do not reverse the previous one. Requires degree >= 3.
template <typename Scalar>
KernelTable<Scalar> nbw_kernel(const Ball& ball, int steps);

/// |sum_x p^n(0,x) - 1| for a float table.
double mass_defect(const FloatKernel& table, int n);
/// True when the exact counts at step n sum to the denominator.
bool mass_conserved(const ExactKernel& table, int n);

// --- spectral radius ------------------------------------------------------

enum class RhoProvenance { ExactFormula, UserSupplied, Missing };

std::string to_string(RhoProvenance p);

/// Kesten's value 2 sqrt(d-1) / d for the d-regular tree.
double kesten_rho(int degree);

/// p^n(0,0) for n = 0..steps on the d-regular tree, via the birth-death chain
/// of the distance from the root.
std::vector<double> radial_return_probabilities(int degree, int steps);

struct RhoEstimate {
  std::vector<double> sequence;       // (p^{2n}(0,0))^{1/(2n)} for n = 1, 2, ...
  double lower_bound = 0;             // max of the sequence
  std::optional<double> upper_bound;  // certified rho_ub
  RhoProvenance provenance = RhoProvenance::Missing;

  /// An element above rho_ub refutes the supplied upper bound.
  bool contradicts_upper_bound() const;
};

/// Return-probability sequence up to `steps` (rounded down to even). Tree specs
/// use the radial chain and Kesten's formula; other specs use a ball of radius
/// steps/2 and the user value, if any.
RhoEstimate estimate_spectral_radius(const GroupSpec& spec, int steps, std::optional<double> user_rho_ub,
                                     BallOptions options = {});

/// rho_ub with provenance: Kesten for trees, otherwise the user value.
std::pair<std::optional<double>, RhoProvenance> certified_rho(const GroupSpec& spec,
                                                              std::optional<double> user_rho_ub);

// --- walk inequalities ----------------------------------------------------

enum class Arithmetic { Exact, Float };

struct LemmaStep {
  int n = 0;
  VertexId worst_vertex = 0;
  double lhs = 0;     // q^n(0,x) at the worst vertex
  double rhs = 0;
  double margin = 0;  // rhs - lhs, minimised over the test set
  std::uint64_t violations = 0;
};

struct LemmaCheck {
  std::string id;
  Arithmetic arithmetic = Arithmetic::Float;
  double rho_ub = 0;
  int tail_horizon = 0;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::vector<LemmaStep> steps;

  bool passed() const { return violations == 0 && checks > 0; }
  double worst_margin() const;
};

/// q^n(0,x) <= sum_{j=n}^{J} p^j(0,x) + rho^{J+1}/(1-rho) with J the simple
/// walk's validity horizon, for all n <= steps and x in `test_set` (every
/// ball vertex when empty).
template <typename Scalar>
LemmaCheck check_nbw_tail(const KernelTable<Scalar>& srw, const KernelTable<Scalar>& nbw, int steps,
                          double rho_ub, std::span<const VertexId> test_set = {});

/// q^n(0,x) <= rho^n / (1-rho) for all n <= steps and x in `test_set`.
template <typename Scalar>
LemmaCheck check_nbw_rho(const KernelTable<Scalar>& nbw, int steps, double rho_ub,
                         std::span<const VertexId> test_set = {});

/// Builds both kernels on `ball` in the requested arithmetic and runs the check.
LemmaCheck check_lemma_nbw_tail(const Ball& ball, int steps, double rho_ub, Arithmetic arithmetic);
LemmaCheck check_lemma_nbw_rho(const Ball& ball, int steps, double rho_ub, Arithmetic arithmetic);

}  // namespace girthlab
