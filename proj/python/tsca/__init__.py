"""Temporally stochastic 2-D cellular automaton: rules, engine, experiments."""

from tsca._core import (
    Accuracy,
    BlockInit,
    BlockKind,
    BlockShape,
    EngineConfig,
    ExperimentSpec,
    FileInit,
    Grid,
    Outcome,
    ProbFamily,
    ProbabilityFunction,
    RandomInit,
    Role,
    RngStream,
    Rule,
    RuleParams,
    RunResult,
    ThresholdMode,
    TrialRecord,
    apply_rule,
    block_minority,
    choose_rule,
    classification_accuracy,
    f_transition,
    flip_probability_map,
    format_csv,
    format_grid,
    format_pgm,
    g_transition,
    load_grid,
    monte_carlo_flip_check,
    naive_step,
    parse_grid,
    preset,
    preset_names,
    random_density,
    run,
    run_experiment,
    save_grid,
    step,
    write_csv,
    write_pgm,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
