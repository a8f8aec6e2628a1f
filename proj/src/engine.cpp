#include "tsca/engine.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <thread>
#include <utility>

namespace tsca {

std::string to_string(Rule rule) { return rule == Rule::F ? "F" : "G"; }

std::string to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::AllZero: return "all_zero";
        case Outcome::AllOne: return "all_one";
        case Outcome::Timeout: return "timeout";
    }
    return "timeout";
}

Rule choose_rule(const RngStream& rng, std::int64_t step, double p) {
    return rng.uniform(static_cast<std::uint64_t>(step), Role::RuleCoin, 0) < p ? Rule::G
                                                                                : Rule::F;
}

namespace {

// Both rules depend only on (own state, count of 1-neighbors), so each step
// reduces to two 2x9 lookup tables.
struct StepTables {
    std::array<std::array<std::uint8_t, 9>, 2> f_next{};
    std::array<std::array<double, 9>, 2> g_flip{};
};

StepTables make_tables(const RuleParams& params) {
    StepTables t;
    for (int n1 = 0; n1 <= 8; ++n1) {
        t.f_next[0][n1] = f_transition(0, n1, params.k(), params.mode());
        t.f_next[1][n1] = f_transition(1, 8 - n1, params.k(), params.mode());
        t.g_flip[0][n1] = n1 <= params.k() ? params.psi()(n1) : 0.0;
        t.g_flip[1][n1] = 8 - n1 <= params.k() ? params.phi()(8 - n1) : 0.0;
    }
    return t;
}

template <Rule R>
void sweep_rows(const Grid& src, std::uint8_t* dst, const StepTables& tables,
                const RngStream& rng, std::int64_t t, int row_begin, int row_end) {
    const int w = src.width();
    const int h = src.height();
    for (int i = row_begin; i < row_end; ++i) {
        const std::uint8_t* up = src.row(i == 0 ? h - 1 : i - 1);
        const std::uint8_t* mid = src.row(i);
        const std::uint8_t* dn = src.row(i == h - 1 ? 0 : i + 1);
        std::uint8_t* out = dst + static_cast<std::size_t>(i) * w;
        const auto cell = [&](int j, int jm, int jp) {
            const int n1 =
                up[jm] + up[j] + up[jp] + mid[jm] + mid[jp] + dn[jm] + dn[j] + dn[jp];
            const std::uint8_t s = mid[j];
            if constexpr (R == Rule::F) {
                out[j] = tables.f_next[s][n1];
            } else {
                const double u =
                    rng.uniform(static_cast<std::uint64_t>(t), Role::Cell,
                                static_cast<std::uint64_t>(i) * w + j);
                out[j] = u < tables.g_flip[s][n1] ? static_cast<std::uint8_t>(1 - s) : s;
            }
        };
        cell(0, w - 1, 1);
        for (int j = 1; j < w - 1; ++j) cell(j, j - 1, j + 1);
        cell(w - 1, w - 2, 0);
    }
}

void apply_rule_into(const Grid& src, std::uint8_t* dst, const RuleParams& params, Rule rule,
                     const RngStream& rng, std::int64_t t, int threads) {
    const StepTables tables = make_tables(params);
    const int h = src.height();
    const int workers = std::clamp(threads, 1, h);
    const auto band = [&](int b) {
        return std::pair<int, int>{static_cast<int>(std::int64_t(h) * b / workers),
                                   static_cast<int>(std::int64_t(h) * (b + 1) / workers)};
    };
    const auto sweep = [&](int begin, int end) {
        if (rule == Rule::F) {
            sweep_rows<Rule::F>(src, dst, tables, rng, t, begin, end);
        } else {
            sweep_rows<Rule::G>(src, dst, tables, rng, t, begin, end);
        }
    };
    if (workers == 1) {
        sweep(0, h);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int b = 1; b < workers; ++b) {
        const auto [begin, end] = band(b);
        pool.emplace_back(sweep, begin, end);
    }
    const auto [begin, end] = band(0);
    sweep(begin, end);
    for (auto& th : pool) th.join();
}

// FNV-1a, 64-bit.
class TrajectoryHasher {
public:
    void bytes(const std::uint8_t* data, std::size_t n) noexcept {
        for (std::size_t i = 0; i < n; ++i) {
            h_ ^= data[i];
            h_ *= 0x100000001B3ULL;
        }
    }
    void u8(std::uint8_t v) noexcept { bytes(&v, 1); }
    void u64(std::uint64_t v) noexcept {
        std::uint8_t b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(v >> (8 * i));
        bytes(b, 8);
    }
    std::uint64_t digest() const noexcept { return h_; }

private:
    std::uint64_t h_ = 0xCBF29CE484222325ULL;
};

Outcome outcome_of(CellState s) { return s == 0 ? Outcome::AllZero : Outcome::AllOne; }

}  // namespace

Grid apply_rule(const Grid& grid, const RuleParams& params, Rule rule, const RngStream& rng,
                std::int64_t t, int threads) {
    if (t < 0) throw std::invalid_argument("step index must be non-negative");
    Grid out(grid.width(), grid.height());
    apply_rule_into(grid, out.cells().data(), params, rule, rng, t, threads);
    return out;
}

Grid step(const Grid& grid, const RuleParams& params, const RngStream& rng, std::int64_t t,
          int threads) {
    return apply_rule(grid, params, choose_rule(rng, t, params.p()), rng, t, threads);
}

RunResult run(const Grid& initial, const RuleParams& params, const EngineConfig& cfg,
              std::uint64_t seed, const SnapshotFn& snapshot) {
    if (cfg.max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
    if (cfg.threads < 1) throw std::invalid_argument("threads must be at least 1");
    if (cfg.snapshot_every && *cfg.snapshot_every < 1) {
        throw std::invalid_argument("snapshot_every must be at least 1");
    }

    const RngStream rng(seed);
    const bool snapshotting = snapshot && cfg.snapshot_every.has_value();
    RunResult result;
    result.final_grid = initial;
    Grid next(initial.width(), initial.height());

    TrajectoryHasher hasher;
    if (cfg.record_trajectory) {
        hasher.u64(static_cast<std::uint64_t>(initial.width()));
        hasher.u64(static_cast<std::uint64_t>(initial.height()));
        hasher.bytes(initial.cells().data(), initial.cells().size());
    }
    if (cfg.record_density_trace) result.density_trace.push_back(initial.density());
    if (snapshotting) snapshot(0, result.final_grid);

    const auto finish = [&](Outcome outcome, std::int64_t iterations) {
        result.outcome = outcome;
        result.iterations = iterations;
        if (cfg.record_trajectory) result.trajectory_hash = hasher.digest();
        return result;
    };

    if (const auto h = initial.homogeneous_state()) {
        return finish(outcome_of(*h), 0);
    }

    Grid& cur = result.final_grid;
    for (std::int64_t t = 0; t < cfg.max_steps; ++t) {
        const Rule rule = choose_rule(rng, t, params.p());
        apply_rule_into(cur, next.cells().data(), params, rule, rng, t, cfg.threads);
        std::swap(cur, next);
        const std::int64_t steps_done = t + 1;

        if (cfg.record_density_trace) result.density_trace.push_back(cur.density());
        if (cfg.record_rule_trace) result.rule_trace.push_back(rule);
        if (cfg.record_trajectory) {
            hasher.u64(static_cast<std::uint64_t>(t));
            hasher.u8(static_cast<std::uint8_t>(rule));
            hasher.bytes(cur.cells().data(), cur.cells().size());
        }
        const bool snapshot_due = snapshotting && steps_done % *cfg.snapshot_every == 0;
        if (snapshot_due) snapshot(steps_done, cur);

        if (const auto h = cur.homogeneous_state()) {
            // The final grid is always captured when snapshotting.
            if (snapshotting && !snapshot_due) snapshot(steps_done, cur);
            return finish(outcome_of(*h), steps_done);
        }
    }
    if (snapshotting && cfg.max_steps % *cfg.snapshot_every != 0) {
        snapshot(cfg.max_steps, cur);
    }
    return finish(Outcome::Timeout, cfg.max_steps);
}

}  // namespace tsca
