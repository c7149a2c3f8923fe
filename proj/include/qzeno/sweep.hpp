#pragma once

#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include "qzeno/zeno.hpp"

namespace qzeno {

enum class Objective { MaxNegativity, MaxNegativityTimesProbability };

const char* to_string(Objective o) noexcept;

std::vector<LevelPair> all_level_pairs();

// Brute-force search space. Every candidate threshold pair is used by both
// parties (symmetric protocol) at a fixed z rotation angle.
struct SweepSpec {
    double fidelity = 0.3;
    double alpha = 4.0;
    double theta = std::numbers::pi / 180.0;
    std::vector<LevelPair> pairs = all_level_pairs();
    int k_min = 1;
    int k_max = 300;
    std::vector<LevelPair> outcomes = all_level_pairs();
    Objective objective = Objective::MaxNegativity;

    void validate() const;  // ParameterError
};

struct SweepCell {
    LevelPair pair;
    int k = 0;
    LevelPair outcome;
    bool ok = false;  // false: dead branch (probability below 1e-12)
    double negativity = 0.0;
    double fidelity = 0.0;
    double probability = 0.0;  // survivals up to k times the outcome probability
};

struct SweepResult {
    std::vector<SweepCell> table;  // ordered by pair, then k, then outcome (spec order)
    std::size_t best_index = 0;
    ProtocolConfig best_config;

    const SweepCell& best() const { return table.at(best_index); }
};

// Objective values within this relative distance of the maximum count as tied.
inline constexpr double kTieTolerance = 1e-12;

// Ties resolve to the smaller k, then the lexicographically smaller
// (i, j, outcome). `threads` == 0 picks the hardware concurrency.
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 1);

double objective_value(const SweepCell& cell, Objective objective);

struct TrajectoryRow {
    int k;
    double negativity;
    double fidelity;
    double cumulative_probability;
};

// One row per k = 1..k_max for `cfg` (cfg.iterations is ignored).
std::vector<TrajectoryRow> trajectory_export(const ProtocolConfig& cfg, int k_max);
std::vector<TrajectoryRow> trajectory_rows(const RoundTrace& trace);

struct KBand {
    int first;
    int last;
    friend bool operator==(const KBand&, const KBand&) = default;
};

// Maximal runs of consecutive rows satisfying `pred`.
std::vector<KBand> find_bands(const std::vector<TrajectoryRow>& rows,
                              const std::function<bool(const TrajectoryRow&)>& pred);

}  // namespace qzeno
