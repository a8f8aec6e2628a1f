#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tsca/grid.hpp"

namespace tsca {

// Grid text / PGM parse failure. line is 1-based; column is 1-based or 0
// when the error is not tied to a column.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message);

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

// Grid text format: first line "<width> <height>", then height lines of
// width characters from {0,1}, each newline-terminated. Nothing else.
Grid parse_grid(std::string_view text);
std::string format_grid(const Grid& grid);

Grid load_grid(const std::filesystem::path& path);
void save_grid(const Grid& grid, const std::filesystem::path& path);

// Plain-text PGM (P2), one pixel per cell: state 0 -> 255, state 1 -> 0.
// Byte-exact: "P2\n<width> <height>\n255\n" then one line per row of
// space-separated values.
std::string format_pgm(const Grid& grid);
void write_pgm(const Grid& grid, const std::filesystem::path& path);

}  // namespace tsca
