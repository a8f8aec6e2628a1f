#include "tsca/grid_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace tsca {

namespace {

std::string location(int line, int column) {
    std::string s = "line " + std::to_string(line);
    if (column > 0) s += ", column " + std::to_string(column);
    return s;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::runtime_error("read failed for " + path.string());
    return std::move(buf).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

// Consumes one newline-terminated line starting at pos; errors if the text
// ends without a newline.
std::string_view take_line(std::string_view text, std::size_t& pos, int line_no) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
        if (pos >= text.size()) {
            throw ParseError(line_no, 0, "unexpected end of file");
        }
        throw ParseError(line_no, 0, "missing trailing newline");
    }
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    return line;
}

int parse_dim(std::string_view token, int line_no, const char* what) {
    int value = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
        throw ParseError(line_no, 0, std::string("malformed header: bad ") + what);
    }
    return value;
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(location(line, column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

Grid parse_grid(std::string_view text) {
    std::size_t pos = 0;
    const std::string_view header = take_line(text, pos, 1);
    const std::size_t space = header.find(' ');
    if (space == std::string_view::npos || header.find(' ', space + 1) != std::string_view::npos) {
        throw ParseError(1, 0, "malformed header: expected \"<width> <height>\"");
    }
    const int width = parse_dim(header.substr(0, space), 1, "width");
    const int height = parse_dim(header.substr(space + 1), 1, "height");
    if (width < 3 || height < 3) {
        throw ParseError(1, 0, "grid dimensions must be at least 3x3, got " +
                                   std::to_string(width) + "x" + std::to_string(height));
    }

    std::vector<std::uint8_t> cells;
    cells.reserve(static_cast<std::size_t>(width) * height);
    for (int r = 0; r < height; ++r) {
        const int line_no = r + 2;
        const std::string_view line = take_line(text, pos, line_no);
        if (line.size() != static_cast<std::size_t>(width)) {
            throw ParseError(line_no, 0,
                             "expected " + std::to_string(width) + " characters, found " +
                                 std::to_string(line.size()));
        }
        for (int c = 0; c < width; ++c) {
            const char ch = line[static_cast<std::size_t>(c)];
            if (ch != '0' && ch != '1') {
                throw ParseError(line_no, c + 1,
                                 std::string("invalid character '") + ch +
                                     "', expected 0 or 1");
            }
            cells.push_back(static_cast<std::uint8_t>(ch - '0'));
        }
    }
    if (pos != text.size()) {
        throw ParseError(height + 2, 0, "trailing content after grid rows");
    }
    return Grid(width, height, std::move(cells));
}

std::string format_grid(const Grid& grid) {
    std::string out = std::to_string(grid.width()) + ' ' + std::to_string(grid.height()) + '\n';
    out.reserve(out.size() + static_cast<std::size_t>(grid.size()) + grid.height());
    for (int r = 0; r < grid.height(); ++r) {
        const std::uint8_t* row = grid.row(r);
        for (int c = 0; c < grid.width(); ++c) out += static_cast<char>('0' + row[c]);
        out += '\n';
    }
    return out;
}

Grid load_grid(const std::filesystem::path& path) {
    return parse_grid(read_file(path));
}

void save_grid(const Grid& grid, const std::filesystem::path& path) {
    write_file(path, format_grid(grid));
}

std::string format_pgm(const Grid& grid) {
    std::string out =
        "P2\n" + std::to_string(grid.width()) + ' ' + std::to_string(grid.height()) + "\n255\n";
    for (int r = 0; r < grid.height(); ++r) {
        const std::uint8_t* row = grid.row(r);
        for (int c = 0; c < grid.width(); ++c) {
            if (c > 0) out += ' ';
            out += row[c] ? "0" : "255";
        }
        out += '\n';
    }
    return out;
}

void write_pgm(const Grid& grid, const std::filesystem::path& path) {
    write_file(path, format_pgm(grid));
}

}  // namespace tsca
