#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "tsca/grid.hpp"
#include "tsca/rng.hpp"
#include "tsca/rules.hpp"

namespace tsca {

enum class Rule : std::uint8_t { F = 0, G = 1 };

enum class Outcome { AllZero, AllOne, Timeout };

std::string to_string(Rule rule);
std::string to_string(Outcome outcome);

struct EngineConfig {
    std::int64_t max_steps = 50'000;
    bool record_density_trace = false;
    bool record_rule_trace = false;
    // Hashing every intermediate grid is too expensive for the large runs,
    // so the trajectory digest is opt-in.
    bool record_trajectory = false;
    std::optional<std::int64_t> snapshot_every;
    int threads = 1;

    bool operator==(const EngineConfig&) const = default;
};

struct RunResult {
    Outcome outcome = Outcome::Timeout;
    std::int64_t iterations = 0;
    Grid final_grid{3, 3};
    std::vector<double> density_trace;  // empty unless recorded; starts at t=0
    std::vector<Rule> rule_trace;       // empty unless recorded
    // Order-sensitive digest over (dims, initial cells, then per step:
    // step index, rule chosen, resulting cells). Present only when
    // record_trajectory was set.
    std::optional<std::uint64_t> trajectory_hash;
};

// One rule-selection coin per step: g with probability p, f otherwise.
Rule choose_rule(const RngStream& rng, std::int64_t step, double p);

// Synchronous whole-grid application of one rule: every next state is
// computed from the current grid only. On a G-step exactly one uniform is
// consumed per cell, keyed by (t, Role::Cell, row*width+col), whether or not
// the cell can flip — the stream layout never depends on grid content.
// Rows may be partitioned across `threads` workers; the result is
// bit-identical for any worker count.
Grid apply_rule(const Grid& grid, const RuleParams& params, Rule rule, const RngStream& rng,
                std::int64_t t, int threads = 1);

// apply_rule with the rule drawn by choose_rule(rng, t, params.p()).
Grid step(const Grid& grid, const RuleParams& params, const RngStream& rng, std::int64_t t,
          int threads = 1);

// Invoked with (steps_executed, grid) when snapshots are requested.
using SnapshotFn = std::function<void(std::int64_t, const Grid&)>;

// Evolve from `initial` until the grid is homogeneous or max_steps is hit.
// An already-homogeneous initial grid returns immediately with 0 iterations.
// Identical (initial, params, cfg, seed) always produce an identical result.
RunResult run(const Grid& initial, const RuleParams& params, const EngineConfig& cfg,
              std::uint64_t seed, const SnapshotFn& snapshot = {});

}  // namespace tsca
