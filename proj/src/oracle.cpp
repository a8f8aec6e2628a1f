#include "tsca/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace tsca::oracle {

namespace {

// Probability functions re-derived from their defining formulas; deliberately
// not routed through ProbabilityFunction's precomputed table.
double probability_value(const ProbabilityFunction& pf, int x) {
    const int k = pf.k();
    switch (pf.family()) {
        case ProbFamily::Zero:
            return 0.0;
        case ProbFamily::Logarithmic:
            if (x <= 1) return 0.0;
            return std::log(static_cast<double>(x)) / std::log(static_cast<double>(k));
        case ProbFamily::Exponential:
            if (x == 0) return 0.0;
            return std::exp(static_cast<double>(x - k));
        case ProbFamily::Linear:
            return k == 0 ? 0.0 : static_cast<double>(x) / static_cast<double>(k);
        case ProbFamily::Table:
            return pf(x);  // explicit tables have no formula to re-derive
    }
    return 0.0;
}

int opposite_count(const Grid& grid, int r, int c) {
    static constexpr int offsets[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                          {0, 1},   {1, -1}, {1, 0},  {1, 1}};
    const CellState center = grid.get(r, c);
    int x = 0;
    for (const auto& off : offsets) {
        if (grid.get(r + off[0], c + off[1]) != center) ++x;
    }
    return x;
}

double cell_flip_probability(const Grid& grid, const RuleParams& params, int r, int c) {
    const int x = opposite_count(grid, r, c);
    if (x > params.k()) return 0.0;
    return grid.get(r, c) == 1 ? probability_value(params.phi(), x)
                               : probability_value(params.psi(), x);
}

}  // namespace

Grid naive_step(const Grid& grid, const RuleParams& params, const RngStream& rng,
                std::int64_t t) {
    if (t < 0) throw std::invalid_argument("step index must be non-negative");
    const std::uint64_t step = static_cast<std::uint64_t>(t);
    const bool g_step = rng.uniform(step, Role::RuleCoin, 0) < params.p();

    Grid next(grid.width(), grid.height());
    for (int r = 0; r < grid.height(); ++r) {
        for (int c = 0; c < grid.width(); ++c) {
            const CellState s = grid.get(r, c);
            const int x = opposite_count(grid, r, c);
            CellState out = s;
            if (g_step) {
                const std::uint64_t index =
                    static_cast<std::uint64_t>(r) * grid.width() + static_cast<std::uint64_t>(c);
                const double u = rng.uniform(step, Role::Cell, index);
                if (x <= params.k()) {
                    const double prob = s == 1 ? probability_value(params.phi(), x)
                                               : probability_value(params.psi(), x);
                    if (u < prob) out = static_cast<CellState>(1 - s);
                }
            } else {
                if (s == 1) {
                    if (x > params.k()) out = 0;
                } else {
                    const int needed = 8 - params.k();
                    bool promote = false;
                    switch (params.mode()) {
                        case ThresholdMode::MoreThan: promote = x > needed; break;
                        case ThresholdMode::AtLeast: promote = x >= needed; break;
                        case ThresholdMode::Exact: promote = x == needed; break;
                    }
                    if (promote) out = 1;
                }
            }
            next.set(r, c, out);
        }
    }
    return next;
}

std::vector<double> flip_probability_map(const Grid& grid, const RuleParams& params) {
    std::vector<double> map(static_cast<std::size_t>(grid.size()));
    for (int r = 0; r < grid.height(); ++r) {
        for (int c = 0; c < grid.width(); ++c) {
            map[static_cast<std::size_t>(r) * grid.width() + c] =
                cell_flip_probability(grid, params, r, c);
        }
    }
    return map;
}

std::vector<double> monte_carlo_flip_check(const Grid& grid, const RuleParams& params,
                                           std::int64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
    const RuleParams forced_g(params.k(), params.phi(), params.psi(), 1.0, params.mode());
    const RngStream rng(seed);

    std::vector<std::int64_t> flips(static_cast<std::size_t>(grid.size()), 0);
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        const Grid next = step(grid, forced_g, rng, trial);
        const auto before = grid.cells();
        const auto after = next.cells();
        for (std::size_t i = 0; i < before.size(); ++i) {
            if (before[i] != after[i]) ++flips[i];
        }
    }
    std::vector<double> freq(flips.size());
    for (std::size_t i = 0; i < flips.size(); ++i) {
        freq[i] = static_cast<double>(flips[i]) / static_cast<double>(trials);
    }
    return freq;
}

}  // namespace tsca::oracle
