#pragma once

#include <array>
#include <string>
#include <vector>

#include "tsca/grid.hpp"

namespace tsca {

enum class ProbFamily { Zero, Logarithmic, Exponential, Linear, Table };

// phi / psi: a flip probability for each support count x in {0..K}.
// Builtin families are evaluated once at construction (K is at most 8, so
// the whole domain fits in a small table).
//
//   zero         0 everywhere
//   logarithmic  0 for x <= 1, log_K(x) for 2 <= x <= K
//   exponential  0 at x = 0, e^(x-K) for 1 <= x <= K
//   linear       x / K
//   table        caller-supplied values, one per x
class ProbabilityFunction {
public:
    static ProbabilityFunction zero(int k);
    static ProbabilityFunction logarithmic(int k);
    static ProbabilityFunction exponential(int k);
    static ProbabilityFunction linear(int k);
    static ProbabilityFunction table(std::vector<double> values);  // k = size - 1

    ProbFamily family() const noexcept { return family_; }
    int k() const noexcept { return k_; }

    // Value at support x; x outside {0..K} is a caller error.
    double operator()(int x) const;

    // Config-syntax descriptor: log | exp | linear | zero | table:v0,v1,...
    std::string describe() const;

    bool operator==(const ProbabilityFunction&) const = default;

private:
    ProbabilityFunction(ProbFamily family, int k);

    ProbFamily family_;
    int k_;
    std::array<double, 9> values_{};
};

// Reading of f's 0 -> 1 support condition on the count of 1-neighbors:
//   MoreThan  x > 8-K   (strict, mirrors the 1 -> 0 branch; at K=4 this is
//                        the plain 9-cell majority rule and it is the only
//                        reading that reproduces the reference dynamics —
//                        all-0 affinity up to rho ~ 0.675 at K=4, symmetric
//                        density classification with phi = psi)
//   AtLeast   x >= 8-K
//   Exact     x == 8-K
enum class ThresholdMode { MoreThan, AtLeast, Exact };

std::string to_string(ThresholdMode mode);

// The model's four parameters plus the threshold interpretation.
class RuleParams {
public:
    RuleParams(int k, ProbabilityFunction phi, ProbabilityFunction psi, double p,
               ThresholdMode mode = ThresholdMode::MoreThan);

    int k() const noexcept { return k_; }
    const ProbabilityFunction& phi() const noexcept { return phi_; }
    const ProbabilityFunction& psi() const noexcept { return psi_; }
    double p() const noexcept { return p_; }
    ThresholdMode mode() const noexcept { return mode_; }

    bool operator==(const RuleParams&) const = default;

private:
    int k_;
    ProbabilityFunction phi_;
    ProbabilityFunction psi_;
    double p_;
    ThresholdMode mode_;
};

// Deterministic rule f. A 1-cell with more than K opposite neighbors flips
// to 0; a 0-cell flips to 1 with at least (or exactly, per mode) 8-K
// opposite neighbors. x_opposite must lie in [0, 8].
CellState f_transition(CellState state, int x_opposite, int k, ThresholdMode mode) noexcept;

// Stochastic rule g for one cell, with the uniform variate u supplied by the
// caller. Beyond K the probability functions are undefined and the cell is
// left unchanged. u < probability flips, so probability 0 never flips and
// probability 1 always does for u in [0, 1).
CellState g_transition(CellState state, int x_opposite, const RuleParams& params, double u);

}  // namespace tsca
