#pragma once

#include "girthlab/certificate.hpp"
#include "girthlab/config.hpp"

#include <cstdint>
#include <string>

namespace girthlab {

inline constexpr const char* kVersion = "0.1.0";

/// Independent seed for one stage of one graph.
std::uint64_t derive_seed(std::uint64_t master, std::size_t graph_index, std::uint64_t stage);

/// Certificate for every spec in cfg.specs (or cfg.spec). Each graph gets the
/// same entry list in the same order, so the entry count only depends on the
/// number of graphs; a check that cannot run becomes an inconclusive entry.
/// Throws std::invalid_argument when graphs are configured without a seed or
/// a spec does not parse.
Certificate run_certificate(const RunConfig& cfg);

}  // namespace girthlab
