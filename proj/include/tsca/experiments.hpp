#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tsca/engine.hpp"
#include "tsca/grid.hpp"
#include "tsca/initcfg.hpp"
#include "tsca/rules.hpp"

namespace tsca {

struct RandomInit {
    double rho = 0.5;
    bool operator==(const RandomInit&) const = default;
};

struct BlockInit {
    CellState minority_state = 0;
    std::int64_t count = 1;
    BlockShape shape{};
    bool operator==(const BlockInit&) const = default;
};

struct FileInit {
    std::string path;
    bool operator==(const FileInit&) const = default;
};

using InitialSpec = std::variant<RandomInit, BlockInit, FileInit>;

struct ExperimentSpec {
    std::string name;
    int width = 100;
    int height = 100;
    RuleParams params;
    InitialSpec initial = RandomInit{};
    std::int64_t trials = 1;
    std::uint64_t seed_base = 1;
    EngineConfig engine{};
};

struct TrialRecord {
    std::uint64_t seed = 0;
    int k = 0;
    double rho_initial = 0.0;  // exact density of the generated initial grid
    double p = 0.0;
    std::string phi;  // descriptor, config syntax
    std::string psi;
    ThresholdMode mode = ThresholdMode::MoreThan;
    Outcome outcome = Outcome::Timeout;
    std::int64_t iterations = 0;

    bool operator==(const TrialRecord&) const = default;
};

// One record per trial; trial i is seeded with seed_base + i and is a pure
// function of (spec, i), so records are identical whether trials execute
// sequentially or across `workers` threads. Output order is by trial index.
// Generator/engine failures surface with the trial index attached.
std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec, int workers = 1);

struct Accuracy {
    double value = 1.0;
    bool vacuous = false;  // set when the record set was empty
};

// Fraction of records matching the classification rule: all_one exactly when
// rho_initial > rho_threshold. Records must not contain timeouts (filter and
// report those separately).
Accuracy classification_accuracy(std::span<const TrialRecord> records, double rho_threshold);

// The paper's parameterizations, ready to run or to override:
//   affinity_default     1000x1000, K=4, phi=log, psi=exp, p=0.2, random rho=0.475
//   self_healing         1000x1000, K=4, phi=log, psi=exp, p=0.2, random rho=0.632275
//   transformation       200x200,  K=3, phi=log, psi=exp, p=0.2, centered 50x50 block of 1s
//   density_linear       200x200,  K=4, phi=psi=linear, p=0.1, random rho=0.5, 100 trials
//   density_exponential  100x100,  K=4, phi=psi=exp,    p=0.1, random rho=0.5, 100 trials
ExperimentSpec preset(const std::string& name);

std::vector<std::string> preset_names();

// CSV schema: seed,K,rho_initial,p,phi,psi,mode,outcome,iterations.
// rho_initial with 6 decimals; byte-deterministic for identical inputs.
std::string format_csv(std::span<const TrialRecord> records);
void write_csv(std::span<const TrialRecord> records, const std::filesystem::path& path);

}  // namespace tsca
