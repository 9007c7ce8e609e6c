#pragma once

#include "girthlab/percolation.hpp"
#include "girthlab/saw.hpp"
#include "girthlab/walk_kernels.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace girthlab {

/// CSV text builders. Every number goes through format_number, exact counts
/// are decimal strings, so equal inputs give equal bytes.

/// p,R,estimate,ci_lo,ci_hi,T,seed
std::string crossing_csv(const std::vector<CrossingEstimate>& rows, std::uint64_t seed);

/// n,survival_fraction
std::string tail_csv(const TailCurve& curve);

/// <param>,value,se,tail_bound,chain_tail,certified,method,truncation
/// with <param> = p for the triangle and z for the bubble.
std::string diagram_csv(const std::vector<DiagramResult>& rows, const std::string& param = "p");

/// p,mean,se,censored,exact
std::string susceptibility_csv(const std::vector<SusceptibilityPoint>& rows);

/// distance,two_point,two_point_se,margin,margin_lo
std::string witness_csv(const WitnessResult& w);

/// n,c_n
std::string census_csv(const SawCensus& census);

/// n,vertex,count for every nonzero c_n(x), enumerated censuses only.
std::string endpoint_csv(const SawCensus& census);

/// z,value,tail,certified,ratio_lo,ratio_hi
std::string chi_csv(const ChiCurve& curve);

/// kind,n,vertex,probability for the steps up to the validity horizon.
std::string kernel_csv(const Ball& ball, const FloatKernel& table);
std::string kernel_csv(const Ball& ball, const ExactKernel& table);

/// n,exact,mass_below,mass_bound[,rosenbluth,rosenbluth_weight,rosenbluth_se]
std::string speed_csv(const SpeedCurve& curve, const RosenbluthResult* sampled = nullptr);

/// n,sup,bound,lambda_bound,within
std::string decay_csv(const DecayCheck& check);

/// n,sequence for the return-probability roots.
std::string rho_csv(const RhoEstimate& est);

/// Writes `text` to `path` via a temporary file renamed into place.
void write_text(const std::string& path, const std::string& text);

}  // namespace girthlab
