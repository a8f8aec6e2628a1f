#include "tsca/initcfg.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tsca/rng.hpp"

namespace tsca {

std::string to_string(BlockKind kind) { return kind == BlockKind::Run ? "run" : "square"; }

Grid random_density(int width, int height, double rho, std::uint64_t seed) {
    if (!(rho >= 0.0 && rho <= 1.0)) {
        throw std::invalid_argument("rho must lie in [0, 1]");
    }
    Grid grid(width, height);
    const std::int64_t n = grid.size();
    const std::int64_t ones = std::llround(rho * static_cast<double>(n));
    if (ones == 0) return grid;

    // Fisher-Yates over the cell indices with counter-based draws; the first
    // `ones` entries of the shuffle become the 1-cells. Exact count, and the
    // same (dims, seed) always gives the same permutation.
    const RngStream rng(seed);
    std::vector<std::uint32_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0u);
    for (std::int64_t i = n - 1; i > 0; --i) {
        const std::uint64_t j = RngStream::bounded(
            rng.bits(0, Role::Shuffle, static_cast<std::uint64_t>(i)),
            static_cast<std::uint64_t>(i) + 1);
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
    }
    auto cells = grid.cells();
    for (std::int64_t i = 0; i < ones; ++i) cells[order[static_cast<std::size_t>(i)]] = 1;
    return grid;
}

Grid block_minority(int width, int height, CellState minority_state, std::int64_t count,
                    const BlockShape& shape) {
    if (minority_state > 1) throw std::invalid_argument("minority state must be 0 or 1");
    Grid grid(width, height);
    const std::int64_t n = grid.size();
    if (count < 1 || count > n) {
        throw std::invalid_argument("block count must lie in [1, " + std::to_string(n) + "]");
    }

    const CellState background = minority_state == 0 ? 1 : 0;
    auto cells = grid.cells();
    std::fill(cells.begin(), cells.end(), background);

    const int anchor_row = wrap_index(shape.anchor_row, height);
    const int anchor_col = wrap_index(shape.anchor_col, width);
    if (shape.kind == BlockKind::Run) {
        // Consecutive cells in row-major order, wrapping through the end of
        // the buffer (periodic in both directions).
        const std::int64_t start = static_cast<std::int64_t>(anchor_row) * width + anchor_col;
        for (std::int64_t i = 0; i < count; ++i) {
            cells[static_cast<std::size_t>((start + i) % n)] = minority_state;
        }
    } else {
        const std::int64_t side = std::llround(std::sqrt(static_cast<double>(count)));
        if (side * side != count) {
            throw std::invalid_argument("square block needs a perfect-square count, got " +
                                        std::to_string(count));
        }
        if (side > std::min(width, height)) {
            throw std::invalid_argument("square block side " + std::to_string(side) +
                                        " exceeds grid dimension");
        }
        for (std::int64_t r = 0; r < side; ++r) {
            for (std::int64_t c = 0; c < side; ++c) {
                grid.set(anchor_row + static_cast<int>(r), anchor_col + static_cast<int>(c),
                         minority_state);
            }
        }
    }
    return grid;
}

}  // namespace tsca
