#include "tsca/rules.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace tsca {

namespace {

std::string shortest_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

ProbabilityFunction::ProbabilityFunction(ProbFamily family, int k) : family_(family), k_(k) {
    if (k < 0 || k > 8) {
        throw std::invalid_argument("K must lie in [0, 8], got " + std::to_string(k));
    }
    for (int x = 0; x <= k; ++x) {
        switch (family) {
            case ProbFamily::Zero:
                values_[x] = 0.0;
                break;
            case ProbFamily::Logarithmic:
                // 0 covers the whole domain when K <= 1.
                values_[x] = x <= 1 ? 0.0 : std::log(double(x)) / std::log(double(k));
                break;
            case ProbFamily::Exponential:
                values_[x] = x == 0 ? 0.0 : std::exp(double(x - k));
                break;
            case ProbFamily::Linear:
                values_[x] = k == 0 ? 0.0 : double(x) / double(k);
                break;
            case ProbFamily::Table:
                break;  // filled by table()
        }
    }
}

ProbabilityFunction ProbabilityFunction::zero(int k) {
    return ProbabilityFunction(ProbFamily::Zero, k);
}

ProbabilityFunction ProbabilityFunction::logarithmic(int k) {
    return ProbabilityFunction(ProbFamily::Logarithmic, k);
}

ProbabilityFunction ProbabilityFunction::exponential(int k) {
    return ProbabilityFunction(ProbFamily::Exponential, k);
}

ProbabilityFunction ProbabilityFunction::linear(int k) {
    return ProbabilityFunction(ProbFamily::Linear, k);
}

ProbabilityFunction ProbabilityFunction::table(std::vector<double> values) {
    if (values.empty() || values.size() > 9) {
        throw std::invalid_argument("table must hold K+1 entries with K in [0, 8], got " +
                                    std::to_string(values.size()) + " entries");
    }
    ProbabilityFunction pf(ProbFamily::Table, static_cast<int>(values.size()) - 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0 && values[i] <= 1.0)) {
            throw std::invalid_argument("table entry " + std::to_string(i) +
                                        " must lie in [0, 1]");
        }
        pf.values_[i] = values[i];
    }
    return pf;
}

double ProbabilityFunction::operator()(int x) const {
    if (x < 0 || x > k_) {
        throw std::out_of_range("support " + std::to_string(x) + " outside {0.." +
                                std::to_string(k_) + "}");
    }
    return values_[x];
}

std::string ProbabilityFunction::describe() const {
    switch (family_) {
        case ProbFamily::Zero: return "zero";
        case ProbFamily::Logarithmic: return "log";
        case ProbFamily::Exponential: return "exp";
        case ProbFamily::Linear: return "linear";
        case ProbFamily::Table: {
            std::string out = "table:";
            for (int x = 0; x <= k_; ++x) {
                if (x > 0) out += ',';
                out += shortest_double(values_[x]);
            }
            return out;
        }
    }
    return "zero";
}

std::string to_string(ThresholdMode mode) {
    switch (mode) {
        case ThresholdMode::MoreThan: return "more_than";
        case ThresholdMode::AtLeast: return "at_least";
        case ThresholdMode::Exact: return "exact";
    }
    return "more_than";
}

RuleParams::RuleParams(int k, ProbabilityFunction phi, ProbabilityFunction psi, double p,
                       ThresholdMode mode)
    : k_(k), phi_(std::move(phi)), psi_(std::move(psi)), p_(p), mode_(mode) {
    if (k < 0 || k > 8) {
        throw std::invalid_argument("K must lie in [0, 8], got " + std::to_string(k));
    }
    if (phi_.k() != k || psi_.k() != k) {
        throw std::invalid_argument("phi and psi must share the rule's K (K=" +
                                    std::to_string(k) + ", phi.K=" + std::to_string(phi_.k()) +
                                    ", psi.K=" + std::to_string(psi_.k()) + ")");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p must lie in [0, 1]");
    }
}

CellState f_transition(CellState state, int x_opposite, int k, ThresholdMode mode) noexcept {
    if (state == 1) {
        return x_opposite > k ? CellState{0} : CellState{1};
    }
    bool promote = false;
    switch (mode) {
        case ThresholdMode::MoreThan: promote = x_opposite > 8 - k; break;
        case ThresholdMode::AtLeast: promote = x_opposite >= 8 - k; break;
        case ThresholdMode::Exact: promote = x_opposite == 8 - k; break;
    }
    return promote ? CellState{1} : CellState{0};
}

CellState g_transition(CellState state, int x_opposite, const RuleParams& params, double u) {
    if (x_opposite > params.k()) return state;  // g is undefined beyond K
    if (state == 1) {
        return u < params.phi()(x_opposite) ? CellState{0} : CellState{1};
    }
    return u < params.psi()(x_opposite) ? CellState{1} : CellState{0};
}

}  // namespace tsca
