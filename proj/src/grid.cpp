#include "tsca/grid.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace tsca {

namespace {

void check_dims(int width, int height) {
    if (width < 3 || height < 3) {
        throw std::invalid_argument("grid width and height must be at least 3, got " +
                                    std::to_string(width) + "x" + std::to_string(height));
    }
}

}  // namespace

Grid::Grid(int width, int height) : width_(width), height_(height) {
    check_dims(width, height);
    cells_.assign(static_cast<std::size_t>(width) * height, 0);
}

Grid::Grid(int width, int height, std::vector<std::uint8_t> cells)
    : width_(width), height_(height), cells_(std::move(cells)) {
    check_dims(width, height);
    if (cells_.size() != static_cast<std::size_t>(width) * height) {
        throw std::invalid_argument("cell buffer size " + std::to_string(cells_.size()) +
                                    " does not match " + std::to_string(width) + "x" +
                                    std::to_string(height));
    }
    for (const std::uint8_t c : cells_) {
        if (c > 1) throw std::invalid_argument("cell state must be 0 or 1");
    }
}

void Grid::set(int row, int col, CellState value) {
    if (value > 1) throw std::invalid_argument("cell state must be 0 or 1");
    cells_[static_cast<std::size_t>(wrap_index(row, height_)) * width_ +
           static_cast<std::size_t>(wrap_index(col, width_))] = value;
}

int Grid::opposite_neighbor_count(int row, int col) const noexcept {
    const int r = wrap_index(row, height_);
    const int c = wrap_index(col, width_);
    const int rm = r == 0 ? height_ - 1 : r - 1;
    const int rp = r == height_ - 1 ? 0 : r + 1;
    const int cm = c == 0 ? width_ - 1 : c - 1;
    const int cp = c == width_ - 1 ? 0 : c + 1;
    const std::uint8_t* up = this->row(rm);
    const std::uint8_t* mid = this->row(r);
    const std::uint8_t* dn = this->row(rp);
    const int ones =
        up[cm] + up[c] + up[cp] + mid[cm] + mid[cp] + dn[cm] + dn[c] + dn[cp];
    return mid[c] ? 8 - ones : ones;
}

std::int64_t Grid::ones_count() const noexcept {
    std::int64_t n = 0;
    for (const std::uint8_t c : cells_) n += c;
    return n;
}

double Grid::density() const noexcept {
    return static_cast<double>(ones_count()) / static_cast<double>(size());
}

std::optional<CellState> Grid::homogeneous_state() const noexcept {
    const std::uint8_t first = cells_.front();
    for (const std::uint8_t c : cells_) {
        if (c != first) return std::nullopt;
    }
    return first;
}

}  // namespace tsca
