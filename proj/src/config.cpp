#include "tsca/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace tsca {

namespace {

const char* const kKnownKeys[] = {
    "width",       "height",     "K",           "p",         "phi",
    "psi",         "mode",       "rho",         "block_state", "block_count",
    "block_shape", "grid_file",  "seed",        "trials",    "max_steps",
    "snapshot_every", "out_csv", "out_dir",
};

bool known_key(const std::string& key) {
    return std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) != std::end(kKnownKeys);
}

std::string where(int line) {
    return line > 0 ? "line " + std::to_string(line) : std::string("command line");
}

[[noreturn]] void fail(const ConfigValue& value, const std::string& key,
                       const std::string& message) {
    throw ConfigError(value.line, key, key + ": " + message + " (" + where(value.line) + ")");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

template <typename T>
T parse_number(std::string_view text, const ConfigValue& value, const std::string& key) {
    const std::string_view token = trim(text);
    T parsed{};
    const auto res = std::from_chars(token.data(), token.data() + token.size(), parsed);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
        fail(value, key, "cannot parse '" + std::string(token) + "'");
    }
    return parsed;
}

// Typed, range-checked access over the raw map.
class Fields {
public:
    explicit Fields(const ConfigMap& map) : map_(map) {
        for (const auto& [key, value] : map) {
            if (!known_key(key)) {
                throw ConfigError(value.line, key,
                                  "unknown key '" + key + "' (" + where(value.line) + ")");
            }
        }
    }

    bool has(const std::string& key) const { return map_.count(key) != 0; }

    const ConfigValue& raw(const std::string& key) const { return map_.at(key); }

    void forbid(const std::string& key, const std::string& reason) const {
        if (has(key)) fail(map_.at(key), key, reason);
    }

    std::int64_t integer(const std::string& key, std::int64_t fallback, std::int64_t lo,
                         std::int64_t hi) const {
        if (!has(key)) return fallback;
        const ConfigValue& value = map_.at(key);
        const std::int64_t v = parse_number<std::int64_t>(value.text, value, key);
        if (v < lo || v > hi) {
            fail(value, key,
                 "value " + std::to_string(v) + " out of range [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
        }
        return v;
    }

    double real(const std::string& key, double fallback, double lo, double hi) const {
        if (!has(key)) return fallback;
        const ConfigValue& value = map_.at(key);
        const std::string token(trim(value.text));
        char* end = nullptr;
        const double v = std::strtod(token.c_str(), &end);
        if (end != token.c_str() + token.size() || token.empty() || !std::isfinite(v)) {
            fail(value, key, "cannot parse '" + token + "'");
        }
        if (v < lo || v > hi) {
            fail(value, key, "value " + token + " out of range [" + std::to_string(lo) + ", " +
                                 std::to_string(hi) + "]");
        }
        return v;
    }

    std::uint64_t uinteger(const std::string& key, std::uint64_t fallback) const {
        if (!has(key)) return fallback;
        const ConfigValue& value = map_.at(key);
        return parse_number<std::uint64_t>(value.text, value, key);
    }

    std::string text(const std::string& key) const { return std::string(trim(map_.at(key).text)); }

    ThresholdMode mode(ThresholdMode fallback) const {
        if (!has("mode")) return fallback;
        const ConfigValue& value = map_.at("mode");
        const std::string token(trim(value.text));
        if (token == "more_than") return ThresholdMode::MoreThan;
        if (token == "at_least") return ThresholdMode::AtLeast;
        if (token == "exact") return ThresholdMode::Exact;
        fail(value, "mode", "expected more_than, at_least or exact, got '" + token + "'");
    }

    ProbFunctionSpec pf(const std::string& key, const ProbFunctionSpec& fallback) const {
        if (!has(key)) return fallback;
        const ConfigValue& value = map_.at(key);
        try {
            return ProbFunctionSpec::parse(trim(value.text));
        } catch (const std::invalid_argument& e) {
            fail(value, key, e.what());
        }
    }

    std::vector<std::int64_t> integer_list(const std::string& key, std::int64_t fallback,
                                           std::int64_t lo, std::int64_t hi) const {
        if (!has(key)) return {fallback};
        const ConfigValue& value = map_.at(key);
        std::vector<std::int64_t> out;
        for (const std::string_view part : split(value.text, ',')) {
            const std::int64_t v = parse_number<std::int64_t>(part, value, key);
            if (v < lo || v > hi) {
                fail(value, key,
                     "value " + std::to_string(v) + " out of range [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
            }
            out.push_back(v);
        }
        return out;
    }

    std::vector<double> real_list(const std::string& key, double fallback, double lo,
                                  double hi) const {
        if (!has(key)) return {fallback};
        const ConfigValue& value = map_.at(key);
        std::vector<double> out;
        for (const std::string_view part : split(value.text, ',')) {
            const std::string token(trim(part));
            char* end = nullptr;
            const double v = std::strtod(token.c_str(), &end);
            if (end != token.c_str() + token.size() || token.empty() || !std::isfinite(v)) {
                fail(value, key, "cannot parse '" + token + "'");
            }
            if (v < lo || v > hi) {
                fail(value, key, "value " + token + " out of range [" + std::to_string(lo) +
                                     ", " + std::to_string(hi) + "]");
            }
            out.push_back(v);
        }
        return out;
    }

    void require_single(const std::string& key) const {
        if (!has(key)) return;
        const ConfigValue& value = map_.at(key);
        if (value.text.find(',') != std::string::npos) {
            fail(value, key, "list values are only allowed in sweep specs");
        }
    }

private:
    const ConfigMap& map_;
};

std::string shortest_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

InitialSpec read_initial(const Fields& f) {
    const bool has_file = f.has("grid_file");
    const bool has_block = f.has("block_count");
    const bool has_rho = f.has("rho");
    if (has_file + has_block + has_rho > 1) {
        const std::string key = has_file ? "grid_file" : "block_count";
        fail(f.raw(key), key, "grid_file, block_count and rho are mutually exclusive");
    }
    if (has_file) {
        f.forbid("width", "conflicts with grid_file (the file defines the dimensions)");
        f.forbid("height", "conflicts with grid_file (the file defines the dimensions)");
        f.forbid("block_state", "only meaningful with block_count");
        f.forbid("block_shape", "only meaningful with block_count");
        return FileInit{f.text("grid_file")};
    }
    if (has_block) {
        BlockInit block;
        block.count = f.integer("block_count", 1, 1, std::numeric_limits<std::int64_t>::max());
        block.minority_state =
            static_cast<CellState>(f.integer("block_state", 0, 0, 1));
        if (f.has("block_shape")) {
            const std::string token = f.text("block_shape");
            if (token == "run") {
                block.shape.kind = BlockKind::Run;
            } else if (token == "square") {
                block.shape.kind = BlockKind::Square;
            } else {
                fail(f.raw("block_shape"), "block_shape",
                     "expected run or square, got '" + token + "'");
            }
        }
        return block;
    }
    f.forbid("block_state", "only meaningful with block_count");
    f.forbid("block_shape", "only meaningful with block_count");
    return RandomInit{f.real("rho", 0.475, 0.0, 1.0)};
}

}  // namespace

ConfigError::ConfigError(int line, std::string key, const std::string& message)
    : std::runtime_error(message), line_(line), key_(std::move(key)) {}

ConfigMap parse_config_text(std::string_view text) {
    ConfigMap map;
    int line_no = 0;
    for (std::string_view raw_line : split(text, '\n')) {
        ++line_no;
        const std::size_t hash = raw_line.find('#');
        if (hash != std::string_view::npos) raw_line = raw_line.substr(0, hash);
        const std::string_view line = trim(raw_line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(line_no, "",
                              "expected 'key = value' (" + where(line_no) + ")");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty() || key.find(' ') != std::string::npos) {
            throw ConfigError(line_no, key, "malformed key (" + where(line_no) + ")");
        }
        if (value.empty()) {
            throw ConfigError(line_no, key,
                              key + ": missing value (" + where(line_no) + ")");
        }
        if (map.count(key)) {
            throw ConfigError(line_no, key,
                              "duplicate key '" + key + "' (" + where(line_no) +
                                  ", first set on line " + std::to_string(map[key].line) + ")");
        }
        map[key] = ConfigValue{value, line_no};
    }
    return map;
}

ConfigMap merge_config(ConfigMap base, const ConfigMap& overlay) {
    for (const auto& [key, value] : overlay) base[key] = value;
    return base;
}

ProbabilityFunction ProbFunctionSpec::bind(int k) const {
    switch (family) {
        case ProbFamily::Zero: return ProbabilityFunction::zero(k);
        case ProbFamily::Logarithmic: return ProbabilityFunction::logarithmic(k);
        case ProbFamily::Exponential: return ProbabilityFunction::exponential(k);
        case ProbFamily::Linear: return ProbabilityFunction::linear(k);
        case ProbFamily::Table: {
            if (table.size() != static_cast<std::size_t>(k) + 1) {
                throw std::invalid_argument("table has " + std::to_string(table.size()) +
                                            " entries but K=" + std::to_string(k) +
                                            " needs " + std::to_string(k + 1));
            }
            return ProbabilityFunction::table(table);
        }
    }
    return ProbabilityFunction::zero(k);
}

std::string ProbFunctionSpec::describe() const {
    switch (family) {
        case ProbFamily::Zero: return "zero";
        case ProbFamily::Logarithmic: return "log";
        case ProbFamily::Exponential: return "exp";
        case ProbFamily::Linear: return "linear";
        case ProbFamily::Table: {
            std::string out = "table:";
            for (std::size_t i = 0; i < table.size(); ++i) {
                if (i > 0) out += ',';
                out += shortest_double(table[i]);
            }
            return out;
        }
    }
    return "zero";
}

ProbFunctionSpec ProbFunctionSpec::parse(std::string_view text) {
    if (text == "log") return {ProbFamily::Logarithmic, {}};
    if (text == "exp") return {ProbFamily::Exponential, {}};
    if (text == "linear") return {ProbFamily::Linear, {}};
    if (text == "zero") return {ProbFamily::Zero, {}};
    if (text.starts_with("table:")) {
        std::vector<double> values;
        for (const std::string_view part : split(text.substr(6), ',')) {
            const std::string token(trim(part));
            char* end = nullptr;
            const double v = std::strtod(token.c_str(), &end);
            if (token.empty() || end != token.c_str() + token.size()) {
                throw std::invalid_argument("bad table entry '" + token + "'");
            }
            if (!(v >= 0.0 && v <= 1.0)) {
                throw std::invalid_argument("table entry " + token + " outside [0, 1]");
            }
            values.push_back(v);
        }
        if (values.empty() || values.size() > 9) {
            throw std::invalid_argument("table needs 1 to 9 entries");
        }
        return {ProbFamily::Table, std::move(values)};
    }
    throw std::invalid_argument("expected log, exp, linear, zero or table:v0,v1,..., got '" +
                                std::string(text) + "'");
}

RuleParams RunSpec::rule_params() const {
    return RuleParams(k, phi.bind(k), psi.bind(k), p, mode);
}

RunSpec validate_run(const ConfigMap& map) {
    const Fields f(map);
    f.forbid("trials", "only meaningful for sweep");
    for (const char* key : {"K", "rho"}) f.require_single(key);

    RunSpec spec;
    spec.width = static_cast<int>(f.integer("width", spec.width, 3, 1 << 20));
    spec.height = static_cast<int>(f.integer("height", spec.height, 3, 1 << 20));
    spec.k = static_cast<int>(f.integer("K", spec.k, 0, 8));
    spec.p = f.real("p", spec.p, 0.0, 1.0);
    spec.phi = f.pf("phi", spec.phi);
    spec.psi = f.pf("psi", spec.psi);
    spec.mode = f.mode(spec.mode);
    spec.initial = read_initial(f);
    spec.seed = f.uinteger("seed", spec.seed);
    spec.max_steps = f.integer("max_steps", spec.max_steps, 1,
                               std::numeric_limits<std::int64_t>::max());
    if (f.has("snapshot_every")) {
        spec.snapshot_every =
            f.integer("snapshot_every", 0, 1, std::numeric_limits<std::int64_t>::max());
    }
    if (f.has("out_csv")) spec.out_csv = f.text("out_csv");
    if (f.has("out_dir")) spec.out_dir = f.text("out_dir");

    // Bind now so table/K mismatches surface with the right key and line.
    const std::pair<const char*, const ProbFunctionSpec*> pfs[] = {{"phi", &spec.phi},
                                                                   {"psi", &spec.psi}};
    for (const auto& [key, pf] : pfs) {
        try {
            pf->bind(spec.k);
        } catch (const std::invalid_argument& e) {
            if (f.has(key)) fail(f.raw(key), key, e.what());
            throw ConfigError(0, key, std::string(key) + ": " + e.what());
        }
    }
    return spec;
}

SweepSpec validate_sweep(const ConfigMap& map) {
    const Fields f(map);
    for (const char* key : {"grid_file", "block_count", "block_state", "block_shape"}) {
        f.forbid(key, "sweep supports random initial configurations only");
    }
    f.forbid("snapshot_every", "only meaningful for run");
    f.forbid("out_dir", "only meaningful for run");

    SweepSpec spec;
    spec.width = static_cast<int>(f.integer("width", spec.width, 3, 1 << 20));
    spec.height = static_cast<int>(f.integer("height", spec.height, 3, 1 << 20));
    spec.k_values.clear();
    for (const std::int64_t k : f.integer_list("K", 4, 0, 8)) {
        spec.k_values.push_back(static_cast<int>(k));
    }
    spec.rho_values = f.real_list("rho", 0.475, 0.0, 1.0);
    spec.p = f.real("p", spec.p, 0.0, 1.0);
    spec.phi = f.pf("phi", spec.phi);
    spec.psi = f.pf("psi", spec.psi);
    spec.mode = f.mode(spec.mode);
    spec.trials = f.integer("trials", spec.trials, 1, 1'000'000'000);
    spec.seed_base = f.uinteger("seed", spec.seed_base);
    spec.max_steps = f.integer("max_steps", spec.max_steps, 1,
                               std::numeric_limits<std::int64_t>::max());
    if (!f.has("out_csv")) {
        throw ConfigError(0, "out_csv", "out_csv: required for sweep (output path)");
    }
    spec.out_csv = f.text("out_csv");

    const std::pair<const char*, const ProbFunctionSpec*> pfs[] = {{"phi", &spec.phi},
                                                                   {"psi", &spec.psi}};
    for (const auto& [key, pf] : pfs) {
        for (const int k : spec.k_values) {
            try {
                pf->bind(k);
            } catch (const std::invalid_argument& e) {
                if (f.has(key)) fail(f.raw(key), key, e.what());
                throw ConfigError(0, key, std::string(key) + ": " + e.what());
            }
        }
    }
    return spec;
}

namespace {

void append_kv(std::string& out, const std::string& key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
}

}  // namespace

std::string serialize(const RunSpec& spec) {
    std::string out;
    if (!std::holds_alternative<FileInit>(spec.initial)) {
        append_kv(out, "width", std::to_string(spec.width));
        append_kv(out, "height", std::to_string(spec.height));
    }
    append_kv(out, "K", std::to_string(spec.k));
    append_kv(out, "p", shortest_double(spec.p));
    append_kv(out, "phi", spec.phi.describe());
    append_kv(out, "psi", spec.psi.describe());
    append_kv(out, "mode", to_string(spec.mode));
    if (const auto* random = std::get_if<RandomInit>(&spec.initial)) {
        append_kv(out, "rho", shortest_double(random->rho));
    } else if (const auto* block = std::get_if<BlockInit>(&spec.initial)) {
        append_kv(out, "block_state", std::to_string(block->minority_state));
        append_kv(out, "block_count", std::to_string(block->count));
        append_kv(out, "block_shape", to_string(block->shape.kind));
    } else {
        append_kv(out, "grid_file", std::get<FileInit>(spec.initial).path);
    }
    append_kv(out, "seed", std::to_string(spec.seed));
    append_kv(out, "max_steps", std::to_string(spec.max_steps));
    if (spec.snapshot_every) append_kv(out, "snapshot_every", std::to_string(*spec.snapshot_every));
    if (spec.out_csv) append_kv(out, "out_csv", *spec.out_csv);
    if (spec.out_dir) append_kv(out, "out_dir", *spec.out_dir);
    return out;
}

std::string serialize(const SweepSpec& spec) {
    std::string out;
    append_kv(out, "width", std::to_string(spec.width));
    append_kv(out, "height", std::to_string(spec.height));
    std::string ks;
    for (std::size_t i = 0; i < spec.k_values.size(); ++i) {
        if (i > 0) ks += ',';
        ks += std::to_string(spec.k_values[i]);
    }
    append_kv(out, "K", ks);
    std::string rhos;
    for (std::size_t i = 0; i < spec.rho_values.size(); ++i) {
        if (i > 0) rhos += ',';
        rhos += shortest_double(spec.rho_values[i]);
    }
    append_kv(out, "rho", rhos);
    append_kv(out, "p", shortest_double(spec.p));
    append_kv(out, "phi", spec.phi.describe());
    append_kv(out, "psi", spec.psi.describe());
    append_kv(out, "mode", to_string(spec.mode));
    append_kv(out, "trials", std::to_string(spec.trials));
    append_kv(out, "seed", std::to_string(spec.seed_base));
    append_kv(out, "max_steps", std::to_string(spec.max_steps));
    append_kv(out, "out_csv", spec.out_csv);
    return out;
}

}  // namespace tsca
