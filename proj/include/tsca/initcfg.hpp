#pragma once

#include <cstdint>
#include <string>

#include "tsca/grid.hpp"

namespace tsca {

enum class BlockKind { Run, Square };

std::string to_string(BlockKind kind);

// Placement of a minority block. `run` lays cells out consecutively in
// row-major order from the anchor; `square` places a compact sqrt(count) x
// sqrt(count) block with its top-left at the anchor. Both wrap through the
// periodic boundary.
struct BlockShape {
    BlockKind kind = BlockKind::Square;
    int anchor_row = 0;
    int anchor_col = 0;

    bool operator==(const BlockShape&) const = default;
};

// Random configuration with an exact ones count: exactly round(rho * N)
// cells are 1, chosen by a seeded uniform shuffle of the cell indices.
// The same (width, height, rho, seed) always yields the same grid.
Grid random_density(int width, int height, double rho, std::uint64_t seed);

// Background of the complement state with exactly `count` minority cells
// placed per `shape`. For square shapes `count` must be a perfect square
// with side at most min(width, height).
Grid block_minority(int width, int height, CellState minority_state, std::int64_t count,
                    const BlockShape& shape);

}  // namespace tsca
