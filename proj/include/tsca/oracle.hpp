#pragma once

#include <cstdint>
#include <vector>

#include "tsca/engine.hpp"
#include "tsca/grid.hpp"
#include "tsca/rng.hpp"
#include "tsca/rules.hpp"

namespace tsca::oracle {

// Reference step with the same contract as engine step(): direct 8-coordinate
// neighbor enumeration and straight-line rule application, rebuilt from the
// model definition rather than from the rules module, so the equivalence
// test has independent failure modes.
Grid naive_step(const Grid& grid, const RuleParams& params, const RngStream& rng,
                std::int64_t t);

// Exact per-cell probability that one G-step changes the cell (row-major):
// phi(x) for a 1-cell, psi(x) for a 0-cell, 0 beyond K.
std::vector<double> flip_probability_map(const Grid& grid, const RuleParams& params);

// Empirical per-cell flip frequency over `trials` independent engine G-steps
// from the same grid, trial t drawing from stream counter t. Validates the
// optimized engine against flip_probability_map.
std::vector<double> monte_carlo_flip_check(const Grid& grid, const RuleParams& params,
                                           std::int64_t trials, std::uint64_t seed);

}  // namespace tsca::oracle
