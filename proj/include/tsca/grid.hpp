#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tsca {

// A cell holds 0 or 1.
using CellState = std::uint8_t;

// Non-negative modulus for any v, n > 0.
constexpr int wrap_index(int v, int n) noexcept {
    const int m = v % n;
    return m < 0 ? m + n : m;
}

// Binary lattice on a torus. Row-major storage, index = row * width + col.
// Width and height must both be at least 3: on a thinner grid the Moore
// neighborhood would reach the same physical cell twice through the wrap.
class Grid {
public:
    Grid(int width, int height);                                   // all cells 0
    Grid(int width, int height, std::vector<std::uint8_t> cells);  // values validated

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::int64_t size() const noexcept {
        return static_cast<std::int64_t>(width_) * height_;
    }

    // Wrapped access: row/col may be any integers.
    CellState get(int row, int col) const noexcept {
        return cells_[static_cast<std::size_t>(wrap_index(row, height_)) * width_ +
                      static_cast<std::size_t>(wrap_index(col, width_))];
    }
    void set(int row, int col, CellState value);  // wrapped; value must be 0 or 1

    std::span<const std::uint8_t> cells() const noexcept { return cells_; }
    std::span<std::uint8_t> cells() noexcept { return cells_; }
    const std::uint8_t* row(int r) const noexcept {
        return cells_.data() + static_cast<std::size_t>(r) * width_;
    }
    std::uint8_t* row(int r) noexcept {
        return cells_.data() + static_cast<std::size_t>(r) * width_;
    }

    // How many of the 8 Moore neighbors hold the opposite state ("support"
    // of a potential flip). row/col are wrapped.
    int opposite_neighbor_count(int row, int col) const noexcept;

    std::int64_t ones_count() const noexcept;

    // Fraction of cells in state 1.
    double density() const noexcept;

    // 0 or 1 when every cell agrees (the model's fixed points), else empty.
    std::optional<CellState> homogeneous_state() const noexcept;

    bool operator==(const Grid&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> cells_;
};

}  // namespace tsca
