#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tsca/experiments.hpp"
#include "tsca/rules.hpp"

namespace tsca {

// Configuration failure. line is 1-based for file entries, 0 for values
// supplied on the command line; key names the offending parameter (empty for
// purely syntactic errors).
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, std::string key, const std::string& message);

    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    int line_;
    std::string key_;
};

struct ConfigValue {
    std::string text;
    int line = 0;  // 0 = command line
};

using ConfigMap = std::map<std::string, ConfigValue>;

// Parses the flat "key = value" format ('#' starts a comment, blank lines
// ignored). Syntax and duplicate-key errors carry line numbers; keys are not
// interpreted here.
ConfigMap parse_config_text(std::string_view text);

// Overlay wins on key collision (command-line flags over file values).
ConfigMap merge_config(ConfigMap base, const ConfigMap& overlay);

// A probability function as written in config: family, plus explicit values
// for the table family. K is bound later (sweeps list several K).
struct ProbFunctionSpec {
    ProbFamily family = ProbFamily::Logarithmic;
    std::vector<double> table;

    ProbabilityFunction bind(int k) const;  // throws on table-length mismatch
    std::string describe() const;
    static ProbFunctionSpec parse(std::string_view text);  // throws std::invalid_argument

    bool operator==(const ProbFunctionSpec&) const = default;
};

// Validated single-run specification. Defaults are the paper's Section 3
// parameterization.
struct RunSpec {
    int width = 100;
    int height = 100;
    int k = 4;
    double p = 0.2;
    ProbFunctionSpec phi{ProbFamily::Logarithmic, {}};
    ProbFunctionSpec psi{ProbFamily::Exponential, {}};
    ThresholdMode mode = ThresholdMode::MoreThan;
    InitialSpec initial = RandomInit{0.475};
    std::uint64_t seed = 0;
    std::int64_t max_steps = 50'000;
    std::optional<std::int64_t> snapshot_every;
    std::optional<std::string> out_csv;
    std::optional<std::string> out_dir;

    RuleParams rule_params() const;

    bool operator==(const RunSpec&) const = default;
};

// Validated sweep specification: cross-product of K values x rho values,
// `trials` runs each, random initial configurations.
struct SweepSpec {
    int width = 100;
    int height = 100;
    std::vector<int> k_values = {4};
    std::vector<double> rho_values = {0.475};
    double p = 0.2;
    ProbFunctionSpec phi{ProbFamily::Logarithmic, {}};
    ProbFunctionSpec psi{ProbFamily::Exponential, {}};
    ThresholdMode mode = ThresholdMode::MoreThan;
    std::int64_t trials = 1;
    std::uint64_t seed_base = 0;
    std::int64_t max_steps = 50'000;
    std::string out_csv;

    bool operator==(const SweepSpec&) const = default;
};

RunSpec validate_run(const ConfigMap& map);
SweepSpec validate_sweep(const ConfigMap& map);

// Canonical config text; parsing it back yields an equal spec.
std::string serialize(const RunSpec& spec);
std::string serialize(const SweepSpec& spec);

}  // namespace tsca
