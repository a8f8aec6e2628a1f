#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tsca/config.hpp"
#include "tsca/engine.hpp"
#include "tsca/experiments.hpp"
#include "tsca/grid_io.hpp"
#include "tsca/initcfg.hpp"

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

// Flags are a second config layer on top of the optional file: same keys,
// same validation, command-line wins.
struct Overrides {
    std::vector<std::pair<std::string, std::string>> entries;

    void attach(CLI::App* cmd) {
        static const std::pair<const char*, const char*> flags[] = {
            {"--width", "width"},
            {"--height", "height"},
            {"--K", "K"},
            {"--p", "p"},
            {"--phi", "phi"},
            {"--psi", "psi"},
            {"--mode", "mode"},
            {"--rho", "rho"},
            {"--block-state", "block_state"},
            {"--block-count", "block_count"},
            {"--block-shape", "block_shape"},
            {"--grid-file", "grid_file"},
            {"--seed", "seed"},
            {"--trials", "trials"},
            {"--max-steps", "max_steps"},
            {"--snapshot-every", "snapshot_every"},
            {"--out-csv", "out_csv"},
            {"--out-dir", "out_dir"},
        };
        for (const auto& [flag, key] : flags) {
            const std::string key_copy = key;
            cmd->add_option_function<std::string>(
                flag,
                [this, key_copy](const std::string& value) {
                    entries.emplace_back(key_copy, value);
                },
                "config key " + key_copy);
        }
    }

    tsca::ConfigMap as_map() const {
        tsca::ConfigMap map;
        for (const auto& [key, value] : entries) map[key] = {value, 0};
        return map;
    }
};

tsca::ConfigMap load_config(const std::optional<std::string>& path, const Overrides& overrides) {
    tsca::ConfigMap map;
    if (path) map = tsca::parse_config_text(read_file(*path));
    return tsca::merge_config(std::move(map), overrides.as_map());
}

tsca::Grid build_initial(const tsca::RunSpec& spec, std::uint64_t seed) {
    if (const auto* random = std::get_if<tsca::RandomInit>(&spec.initial)) {
        return tsca::random_density(spec.width, spec.height, random->rho, seed);
    }
    if (const auto* block = std::get_if<tsca::BlockInit>(&spec.initial)) {
        return tsca::block_minority(spec.width, spec.height, block->minority_state,
                                    block->count, block->shape);
    }
    return tsca::load_grid(std::get<tsca::FileInit>(spec.initial).path);
}

int cmd_run(const std::optional<std::string>& config_path, const Overrides& overrides,
            int threads) {
    const tsca::RunSpec spec = tsca::validate_run(load_config(config_path, overrides));
    const tsca::Grid initial = build_initial(spec, spec.seed);

    tsca::EngineConfig engine;
    engine.max_steps = spec.max_steps;
    engine.snapshot_every = spec.snapshot_every;
    engine.threads = threads;

    tsca::SnapshotFn snapshot;
    if (spec.snapshot_every) {
        if (!spec.out_dir) {
            throw tsca::ConfigError(0, "out_dir", "out_dir: required when snapshot_every is set");
        }
        const fs::path dir = *spec.out_dir;
        fs::create_directories(dir);
        snapshot = [dir](std::int64_t steps_done, const tsca::Grid& grid) {
            char name[32];
            std::snprintf(name, sizeof name, "step_%06lld.pgm",
                          static_cast<long long>(steps_done));
            tsca::write_pgm(grid, dir / name);
        };
    }

    const tsca::RunResult result =
        tsca::run(initial, spec.rule_params(), engine, spec.seed, snapshot);
    std::printf("%s %lld %.6f\n", tsca::to_string(result.outcome).c_str(),
                static_cast<long long>(result.iterations), result.final_grid.density());

    if (spec.out_csv) {
        tsca::TrialRecord record;
        record.seed = spec.seed;
        record.k = spec.k;
        record.rho_initial = initial.density();
        record.p = spec.p;
        record.phi = spec.phi.describe();
        record.psi = spec.psi.describe();
        record.mode = spec.mode;
        record.outcome = result.outcome;
        record.iterations = result.iterations;
        tsca::write_csv({&record, 1}, *spec.out_csv);
    }
    return result.outcome == tsca::Outcome::Timeout ? 2 : 0;
}

int cmd_sweep(const std::string& spec_path, const Overrides& overrides, int jobs) {
    const tsca::SweepSpec sweep =
        tsca::validate_sweep(load_config(std::optional{spec_path}, overrides));

    std::vector<tsca::TrialRecord> all;
    all.reserve(static_cast<std::size_t>(sweep.k_values.size()) * sweep.rho_values.size() *
                static_cast<std::size_t>(sweep.trials));
    for (const int k : sweep.k_values) {
        const tsca::RuleParams params(k, sweep.phi.bind(k), sweep.psi.bind(k), sweep.p,
                                      sweep.mode);
        for (const double rho : sweep.rho_values) {
            tsca::ExperimentSpec spec{"sweep",
                                      sweep.width,
                                      sweep.height,
                                      params,
                                      tsca::RandomInit{rho},
                                      sweep.trials,
                                      sweep.seed_base,
                                      {}};
            spec.engine.max_steps = sweep.max_steps;
            const auto records = tsca::run_experiment(spec, jobs);
            std::int64_t zeros = 0, ones = 0, timeouts = 0;
            for (const auto& r : records) {
                zeros += r.outcome == tsca::Outcome::AllZero;
                ones += r.outcome == tsca::Outcome::AllOne;
                timeouts += r.outcome == tsca::Outcome::Timeout;
            }
            std::fprintf(stderr,
                         "sweep: K=%d rho=%.6f trials=%lld all_zero=%lld all_one=%lld "
                         "timeout=%lld\n",
                         k, rho, static_cast<long long>(sweep.trials),
                         static_cast<long long>(zeros), static_cast<long long>(ones),
                         static_cast<long long>(timeouts));
            all.insert(all.end(), records.begin(), records.end());
        }
    }
    tsca::write_csv(all, sweep.out_csv);
    std::fprintf(stderr, "sweep: wrote %zu records to %s\n", all.size(),
                 sweep.out_csv.c_str());
    return 0;
}

int cmd_render(const std::string& grid_path, const std::string& out_path) {
    tsca::write_pgm(tsca::load_grid(grid_path), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporally stochastic cellular automaton simulator"};
    app.require_subcommand(1);

    std::optional<std::string> run_config;
    Overrides run_overrides;
    int run_threads = 1;
    CLI::App* run = app.add_subcommand(
        "run", "Run one simulation and print: outcome iterations final_density");
    run->add_option("config", run_config, "config file (key = value lines)")
        ->check(CLI::ExistingFile);
    run_overrides.attach(run);
    run->add_option("--threads", run_threads, "row-parallel workers (result is identical)")
        ->check(CLI::PositiveNumber);

    std::string sweep_spec;
    Overrides sweep_overrides;
    int sweep_jobs = 1;
    CLI::App* sweep =
        app.add_subcommand("sweep", "Run a K x rho cross-product of trials, write CSV");
    sweep->add_option("spec", sweep_spec, "sweep spec file")
        ->required()
        ->check(CLI::ExistingFile);
    sweep_overrides.attach(sweep);
    sweep->add_option("--jobs", sweep_jobs, "trials to run in parallel")
        ->check(CLI::PositiveNumber);

    std::string render_grid, render_out;
    CLI::App* render =
        app.add_subcommand("render", "Render a grid text file to a plain (P2) PGM image");
    render->add_option("grid", render_grid, "grid text file")
        ->required()
        ->check(CLI::ExistingFile);
    render->add_option("output", render_out, "output .pgm path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return cmd_run(run_config, run_overrides, run_threads);
        if (sweep->parsed()) return cmd_sweep(sweep_spec, sweep_overrides, sweep_jobs);
        if (render->parsed()) return cmd_render(render_grid, render_out);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
