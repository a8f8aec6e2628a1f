#include "tsca/experiments.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "tsca/grid_io.hpp"

namespace tsca {

namespace {

Grid make_initial(const ExperimentSpec& spec, std::uint64_t seed) {
    if (const auto* random = std::get_if<RandomInit>(&spec.initial)) {
        return random_density(spec.width, spec.height, random->rho, seed);
    }
    if (const auto* block = std::get_if<BlockInit>(&spec.initial)) {
        return block_minority(spec.width, spec.height, block->minority_state, block->count,
                              block->shape);
    }
    return load_grid(std::get<FileInit>(spec.initial).path);
}

TrialRecord run_trial(const ExperimentSpec& spec, std::int64_t index) {
    const std::uint64_t seed = spec.seed_base + static_cast<std::uint64_t>(index);
    const Grid initial = make_initial(spec, seed);
    const RunResult result = run(initial, spec.params, spec.engine, seed);
    TrialRecord record;
    record.seed = seed;
    record.k = spec.params.k();
    record.rho_initial = initial.density();
    record.p = spec.params.p();
    record.phi = spec.params.phi().describe();
    record.psi = spec.params.psi().describe();
    record.mode = spec.params.mode();
    record.outcome = result.outcome;
    record.iterations = result.iterations;
    return record;
}

std::string shortest_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

// RFC-style quoting, needed only for table descriptors (embedded commas).
std::string csv_field(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (const char ch : field) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

std::vector<TrialRecord> run_experiment(const ExperimentSpec& spec, int workers) {
    if (spec.trials < 1) throw std::invalid_argument("trials must be at least 1");
    if (workers < 1) throw std::invalid_argument("workers must be at least 1");

    std::vector<TrialRecord> records(static_cast<std::size_t>(spec.trials));
    std::vector<std::string> errors(static_cast<std::size_t>(spec.trials));

    const auto work = [&](std::int64_t index) {
        try {
            records[static_cast<std::size_t>(index)] = run_trial(spec, index);
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(index)] = e.what();
        }
    };

    const int pool_size = static_cast<int>(std::min<std::int64_t>(workers, spec.trials));
    if (pool_size == 1) {
        for (std::int64_t i = 0; i < spec.trials; ++i) work(i);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(pool_size));
        for (int w = 0; w < pool_size; ++w) {
            pool.emplace_back([&] {
                for (std::int64_t i = next.fetch_add(1); i < spec.trials;
                     i = next.fetch_add(1)) {
                    work(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    for (std::int64_t i = 0; i < spec.trials; ++i) {
        if (!errors[static_cast<std::size_t>(i)].empty()) {
            throw std::runtime_error("trial " + std::to_string(i) + ": " +
                                     errors[static_cast<std::size_t>(i)]);
        }
    }
    return records;
}

Accuracy classification_accuracy(std::span<const TrialRecord> records, double rho_threshold) {
    if (records.empty()) return {1.0, true};
    std::int64_t correct = 0;
    for (const TrialRecord& r : records) {
        if (r.outcome == Outcome::Timeout) {
            throw std::invalid_argument(
                "records must not contain timeouts; filter and report them separately");
        }
        const bool should_be_one = r.rho_initial > rho_threshold;
        if ((r.outcome == Outcome::AllOne) == should_be_one) ++correct;
    }
    return {static_cast<double>(correct) / static_cast<double>(records.size()), false};
}

ExperimentSpec preset(const std::string& name) {
    const auto log_exp = [](int k, double p) {
        return RuleParams(k, ProbabilityFunction::logarithmic(k),
                          ProbabilityFunction::exponential(k), p);
    };
    if (name == "affinity_default") {
        return {name, 1000, 1000, log_exp(4, 0.2), RandomInit{0.475}, 1, 1, {}};
    }
    if (name == "self_healing") {
        return {name, 1000, 1000, log_exp(4, 0.2), RandomInit{0.632275}, 1, 1, {}};
    }
    if (name == "transformation") {
        // A compact cluster of 1s divides and dissolves toward all-0 at K=3.
        return {name, 200, 200, log_exp(3, 0.2),
                BlockInit{1, 2500, {BlockKind::Square, 75, 75}}, 1, 1, {}};
    }
    if (name == "density_linear") {
        RuleParams params(4, ProbabilityFunction::linear(4), ProbabilityFunction::linear(4),
                          0.1);
        return {name, 200, 200, params, RandomInit{0.5}, 100, 1, {}};
    }
    if (name == "density_exponential") {
        RuleParams params(4, ProbabilityFunction::exponential(4),
                          ProbabilityFunction::exponential(4), 0.1);
        return {name, 100, 100, params, RandomInit{0.5}, 100, 1, {}};
    }
    throw std::invalid_argument("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"affinity_default", "self_healing", "transformation", "density_linear",
            "density_exponential"};
}

std::string format_csv(std::span<const TrialRecord> records) {
    std::string out = "seed,K,rho_initial,p,phi,psi,mode,outcome,iterations\n";
    for (const TrialRecord& r : records) {
        out += std::to_string(r.seed);
        out += ',';
        out += std::to_string(r.k);
        out += ',';
        out += fixed6(r.rho_initial);
        out += ',';
        out += shortest_double(r.p);
        out += ',';
        out += csv_field(r.phi);
        out += ',';
        out += csv_field(r.psi);
        out += ',';
        out += to_string(r.mode);
        out += ',';
        out += to_string(r.outcome);
        out += ',';
        out += std::to_string(r.iterations);
        out += '\n';
    }
    return out;
}

void write_csv(std::span<const TrialRecord> records, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    const std::string text = format_csv(records);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace tsca
