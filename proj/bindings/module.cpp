#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tsca/config.hpp"
#include "tsca/engine.hpp"
#include "tsca/experiments.hpp"
#include "tsca/grid_io.hpp"
#include "tsca/initcfg.hpp"
#include "tsca/oracle.hpp"
#include "tsca/rng.hpp"
#include "tsca/rules.hpp"

namespace py = pybind11;
using namespace tsca;

namespace {

Grid grid_from_numpy(const py::array_t<std::uint8_t>& array) {
    const auto buf = array.request();
    if (buf.ndim != 2) throw std::invalid_argument("expected a 2-D uint8 array");
    const int height = static_cast<int>(buf.shape[0]);
    const int width = static_cast<int>(buf.shape[1]);
    std::vector<std::uint8_t> cells(static_cast<std::size_t>(width) * height);
    const auto view = array.unchecked<2>();
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            cells[static_cast<std::size_t>(r) * width + c] = view(r, c);
        }
    }
    return Grid(width, height, std::move(cells));
}

py::array_t<std::uint8_t> grid_to_numpy(const Grid& grid) {
    py::array_t<std::uint8_t> out({grid.height(), grid.width()});
    auto view = out.mutable_unchecked<2>();
    for (int r = 0; r < grid.height(); ++r) {
        const std::uint8_t* row = grid.row(r);
        for (int c = 0; c < grid.width(); ++c) view(r, c) = row[c];
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Temporally stochastic 2-D cellular automaton: rules, engine, experiments";

    py::enum_<Role>(m, "Role")
        .value("RULE_COIN", Role::RuleCoin)
        .value("CELL", Role::Cell)
        .value("SHUFFLE", Role::Shuffle);

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def_property_readonly("seed", &RngStream::seed)
        .def("uniform", &RngStream::uniform, py::arg("step"), py::arg("role"), py::arg("index"))
        .def("bits", &RngStream::bits, py::arg("step"), py::arg("role"), py::arg("index"));

    py::class_<Grid>(m, "Grid")
        .def(py::init<int, int>(), py::arg("width"), py::arg("height"))
        .def(py::init<int, int, std::vector<std::uint8_t>>(), py::arg("width"),
             py::arg("height"), py::arg("cells"))
        .def_static("from_numpy", &grid_from_numpy, py::arg("array"))
        .def("to_numpy", &grid_to_numpy)
        .def_property_readonly("width", &Grid::width)
        .def_property_readonly("height", &Grid::height)
        .def_property_readonly("size", &Grid::size)
        .def("get", &Grid::get, py::arg("row"), py::arg("col"))
        .def("set", &Grid::set, py::arg("row"), py::arg("col"), py::arg("value"))
        .def("opposite_neighbor_count", &Grid::opposite_neighbor_count, py::arg("row"),
             py::arg("col"))
        .def("ones_count", &Grid::ones_count)
        .def("density", &Grid::density)
        .def("homogeneous_state", &Grid::homogeneous_state)
        .def(py::self == py::self)
        .def("__repr__", [](const Grid& g) {
            return "<Grid " + std::to_string(g.width()) + "x" + std::to_string(g.height()) +
                   " density=" + std::to_string(g.density()) + ">";
        });

    py::enum_<ProbFamily>(m, "ProbFamily")
        .value("ZERO", ProbFamily::Zero)
        .value("LOGARITHMIC", ProbFamily::Logarithmic)
        .value("EXPONENTIAL", ProbFamily::Exponential)
        .value("LINEAR", ProbFamily::Linear)
        .value("TABLE", ProbFamily::Table);

    py::class_<ProbabilityFunction>(m, "ProbabilityFunction")
        .def_static("zero", &ProbabilityFunction::zero, py::arg("k"))
        .def_static("logarithmic", &ProbabilityFunction::logarithmic, py::arg("k"))
        .def_static("exponential", &ProbabilityFunction::exponential, py::arg("k"))
        .def_static("linear", &ProbabilityFunction::linear, py::arg("k"))
        .def_static("table", &ProbabilityFunction::table, py::arg("values"))
        .def_property_readonly("family", &ProbabilityFunction::family)
        .def_property_readonly("k", &ProbabilityFunction::k)
        .def("__call__", &ProbabilityFunction::operator(), py::arg("x"))
        .def("describe", &ProbabilityFunction::describe)
        .def(py::self == py::self);

    py::enum_<ThresholdMode>(m, "ThresholdMode")
        .value("MORE_THAN", ThresholdMode::MoreThan)
        .value("AT_LEAST", ThresholdMode::AtLeast)
        .value("EXACT", ThresholdMode::Exact);

    py::class_<RuleParams>(m, "RuleParams")
        .def(py::init<int, ProbabilityFunction, ProbabilityFunction, double, ThresholdMode>(),
             py::arg("k"), py::arg("phi"), py::arg("psi"), py::arg("p"),
             py::arg("mode") = ThresholdMode::MoreThan)
        .def_property_readonly("k", &RuleParams::k)
        .def_property_readonly("phi", &RuleParams::phi)
        .def_property_readonly("psi", &RuleParams::psi)
        .def_property_readonly("p", &RuleParams::p)
        .def_property_readonly("mode", &RuleParams::mode);

    m.def("f_transition", &f_transition, py::arg("state"), py::arg("x_opposite"), py::arg("k"),
          py::arg("mode"));
    m.def("g_transition", &g_transition, py::arg("state"), py::arg("x_opposite"),
          py::arg("params"), py::arg("u"));

    py::enum_<Rule>(m, "Rule").value("F", Rule::F).value("G", Rule::G);

    py::enum_<Outcome>(m, "Outcome")
        .value("ALL_ZERO", Outcome::AllZero)
        .value("ALL_ONE", Outcome::AllOne)
        .value("TIMEOUT", Outcome::Timeout);

    py::class_<EngineConfig>(m, "EngineConfig")
        .def(py::init<>())
        .def_readwrite("max_steps", &EngineConfig::max_steps)
        .def_readwrite("record_density_trace", &EngineConfig::record_density_trace)
        .def_readwrite("record_rule_trace", &EngineConfig::record_rule_trace)
        .def_readwrite("record_trajectory", &EngineConfig::record_trajectory)
        .def_readwrite("snapshot_every", &EngineConfig::snapshot_every)
        .def_readwrite("threads", &EngineConfig::threads);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("outcome", &RunResult::outcome)
        .def_readonly("iterations", &RunResult::iterations)
        .def_readonly("final_grid", &RunResult::final_grid)
        .def_readonly("density_trace", &RunResult::density_trace)
        .def_readonly("rule_trace", &RunResult::rule_trace)
        .def_readonly("trajectory_hash", &RunResult::trajectory_hash);

    m.def("choose_rule", &choose_rule, py::arg("rng"), py::arg("step"), py::arg("p"));
    m.def("apply_rule", &apply_rule, py::arg("grid"), py::arg("params"), py::arg("rule"),
          py::arg("rng"), py::arg("t"), py::arg("threads") = 1);
    m.def("step", &step, py::arg("grid"), py::arg("params"), py::arg("rng"), py::arg("t"),
          py::arg("threads") = 1);
    m.def("run", &run, py::arg("initial"), py::arg("params"), py::arg("config"),
          py::arg("seed"), py::arg("snapshot") = SnapshotFn{},
          py::call_guard<py::gil_scoped_release>());

    py::enum_<BlockKind>(m, "BlockKind")
        .value("RUN", BlockKind::Run)
        .value("SQUARE", BlockKind::Square);

    py::class_<BlockShape>(m, "BlockShape")
        .def(py::init([](BlockKind kind, int anchor_row, int anchor_col) {
                 return BlockShape{kind, anchor_row, anchor_col};
             }),
             py::arg("kind") = BlockKind::Square, py::arg("anchor_row") = 0,
             py::arg("anchor_col") = 0)
        .def_readwrite("kind", &BlockShape::kind)
        .def_readwrite("anchor_row", &BlockShape::anchor_row)
        .def_readwrite("anchor_col", &BlockShape::anchor_col);

    m.def("random_density", &random_density, py::arg("width"), py::arg("height"),
          py::arg("rho"), py::arg("seed"));
    m.def("block_minority", &block_minority, py::arg("width"), py::arg("height"),
          py::arg("minority_state"), py::arg("count"), py::arg("shape") = BlockShape{});

    m.def("load_grid", &load_grid, py::arg("path"));
    m.def("save_grid", &save_grid, py::arg("grid"), py::arg("path"));
    m.def("parse_grid", &parse_grid, py::arg("text"));
    m.def("format_grid", &format_grid, py::arg("grid"));
    m.def("format_pgm", &format_pgm, py::arg("grid"));
    m.def("write_pgm", &write_pgm, py::arg("grid"), py::arg("path"));

    m.def("naive_step", &oracle::naive_step, py::arg("grid"), py::arg("params"),
          py::arg("rng"), py::arg("t"));
    m.def("flip_probability_map", &oracle::flip_probability_map, py::arg("grid"),
          py::arg("params"));
    m.def("monte_carlo_flip_check", &oracle::monte_carlo_flip_check, py::arg("grid"),
          py::arg("params"), py::arg("trials"), py::arg("seed"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<RandomInit>(m, "RandomInit")
        .def(py::init<double>(), py::arg("rho"))
        .def_readwrite("rho", &RandomInit::rho);
    py::class_<BlockInit>(m, "BlockInit")
        .def(py::init([](CellState minority_state, std::int64_t count, BlockShape shape) {
                 return BlockInit{minority_state, count, shape};
             }),
             py::arg("minority_state"), py::arg("count"), py::arg("shape") = BlockShape{})
        .def_readwrite("minority_state", &BlockInit::minority_state)
        .def_readwrite("count", &BlockInit::count)
        .def_readwrite("shape", &BlockInit::shape);
    py::class_<FileInit>(m, "FileInit")
        .def(py::init<std::string>(), py::arg("path"))
        .def_readwrite("path", &FileInit::path);

    py::class_<ExperimentSpec>(m, "ExperimentSpec")
        .def(py::init([](std::string name, int width, int height, RuleParams params,
                         InitialSpec initial, std::int64_t trials, std::uint64_t seed_base,
                         EngineConfig engine) {
                 return ExperimentSpec{std::move(name), width,  height,    std::move(params),
                                       std::move(initial), trials, seed_base, engine};
             }),
             py::arg("name"), py::arg("width"), py::arg("height"), py::arg("params"),
             py::arg("initial"), py::arg("trials") = 1, py::arg("seed_base") = 1,
             py::arg("engine") = EngineConfig{})
        .def_readwrite("name", &ExperimentSpec::name)
        .def_readwrite("width", &ExperimentSpec::width)
        .def_readwrite("height", &ExperimentSpec::height)
        .def_readwrite("params", &ExperimentSpec::params)
        .def_readwrite("initial", &ExperimentSpec::initial)
        .def_readwrite("trials", &ExperimentSpec::trials)
        .def_readwrite("seed_base", &ExperimentSpec::seed_base)
        .def_readwrite("engine", &ExperimentSpec::engine);

    py::class_<TrialRecord>(m, "TrialRecord")
        .def(py::init<>())
        .def_readwrite("seed", &TrialRecord::seed)
        .def_readwrite("k", &TrialRecord::k)
        .def_readwrite("rho_initial", &TrialRecord::rho_initial)
        .def_readwrite("p", &TrialRecord::p)
        .def_readwrite("phi", &TrialRecord::phi)
        .def_readwrite("psi", &TrialRecord::psi)
        .def_readwrite("mode", &TrialRecord::mode)
        .def_readwrite("outcome", &TrialRecord::outcome)
        .def_readwrite("iterations", &TrialRecord::iterations);

    py::class_<Accuracy>(m, "Accuracy")
        .def_readonly("value", &Accuracy::value)
        .def_readonly("vacuous", &Accuracy::vacuous);

    m.def(
        "run_experiment",
        [](const ExperimentSpec& spec, int workers) {
            py::gil_scoped_release release;
            return run_experiment(spec, workers);
        },
        py::arg("spec"), py::arg("workers") = 1);
    m.def(
        "classification_accuracy",
        [](const std::vector<TrialRecord>& records, double rho_threshold) {
            return classification_accuracy(records, rho_threshold);
        },
        py::arg("records"), py::arg("rho_threshold"));
    m.def("preset", &preset, py::arg("name"));
    m.def("preset_names", &preset_names);
    m.def(
        "format_csv",
        [](const std::vector<TrialRecord>& records) { return format_csv(records); },
        py::arg("records"));
    m.def(
        "write_csv",
        [](const std::vector<TrialRecord>& records, const std::filesystem::path& path) {
            write_csv(records, path);
        },
        py::arg("records"), py::arg("path"));
}
