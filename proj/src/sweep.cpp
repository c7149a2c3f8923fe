#include "qzeno/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <tuple>

#include <fmt/format.h>

#include "qzeno/measures.hpp"

namespace qzeno {

namespace {

void check_pairs(const std::vector<LevelPair>& pairs, const char* what) {
    if (pairs.empty()) throw ParameterError(fmt::format("sweep: no candidate {}", what));
    for (const LevelPair& p : pairs) {
        if (p.first < 0 || p.first > 2 || p.second < 0 || p.second > 2) {
            throw ParameterError(fmt::format("sweep: {} ({}, {}) out of range", what, p.first, p.second));
        }
    }
}

ProtocolConfig config_for(const SweepSpec& spec, LevelPair pair, int k, LevelPair outcome) {
    ProtocolConfig cfg;
    cfg.fidelity = spec.fidelity;
    cfg.alpha = spec.alpha;
    cfg.theta = spec.theta;
    cfg.alice = pair;
    cfg.bob = pair;
    cfg.iterations = k;
    cfg.outcome = outcome;
    return cfg;
}

// Fills the cells of one threshold pair: a single trajectory serves every k
// and outcome.
void evaluate_pair(const SweepSpec& spec, const DensityMatrix& joint, LevelPair pair,
                   std::span<SweepCell> cells) {
    const std::size_t n_out = spec.outcomes.size();
    for (int k = spec.k_min; k <= spec.k_max; ++k)
        for (std::size_t o = 0; o < n_out; ++o) {
            SweepCell& cell = cells[static_cast<std::size_t>(k - spec.k_min) * n_out + o];
            cell.pair = pair;
            cell.k = k;
            cell.outcome = spec.outcomes[o];
        }

    ZenoEvolution evolution(joint, config_for(spec, pair, spec.k_max, spec.outcomes.front()));
    for (int k = 1; k <= spec.k_max; ++k) {
        try {
            evolution.step();
        } catch (const DeadEndError&) {
            return;  // remaining cells stay !ok
        }
        if (k < spec.k_min) continue;
        for (std::size_t o = 0; o < n_out; ++o) {
            SweepCell& cell = cells[static_cast<std::size_t>(k - spec.k_min) * n_out + o];
            const double p = bound_pair_probability(evolution.state().matrix(), cell.outcome);
            if (!(p >= kDeadEndProbability)) continue;
            const BoundPairMeasurement m = measure_bound_pair(evolution.state(), cell.outcome);
            cell.ok = true;
            cell.negativity = negativity(m.free_state);
            cell.fidelity = fidelity_to_psi_plus(m.free_state);
            cell.probability = evolution.cumulative_survival() * m.probability;
        }
    }
}

auto tie_key(const SweepCell& c) {
    return std::make_tuple(c.k, c.pair.first, c.pair.second, c.outcome.first, c.outcome.second);
}

}  // namespace

const char* to_string(Objective o) noexcept {
    return o == Objective::MaxNegativity ? "max_negativity" : "max_negativity_times_probability";
}

std::vector<LevelPair> all_level_pairs() {
    std::vector<LevelPair> out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) out.push_back({a, b});
    return out;
}

void SweepSpec::validate() const {
    config_for(*this, {0, 0}, 1, {0, 0}).validate();
    check_pairs(pairs, "threshold pair");
    check_pairs(outcomes, "outcome");
    if (k_min < 1 || k_max < k_min) {
        throw ParameterError(fmt::format("sweep: invalid k range {}..{}", k_min, k_max));
    }
}

double objective_value(const SweepCell& cell, Objective objective) {
    if (!cell.ok) return -1.0;
    return objective == Objective::MaxNegativity ? cell.negativity : cell.negativity * cell.probability;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
    spec.validate();
    const DensityMatrix joint =
        DensityMatrix::trusted(tensor(sigma_free(spec.fidelity).matrix(), sigma_alpha(spec.alpha).matrix()));
    const std::size_t per_pair = static_cast<std::size_t>(spec.k_max - spec.k_min + 1) * spec.outcomes.size();

    SweepResult result;
    result.table.resize(per_pair * spec.pairs.size());

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(spec.pairs.size()));

    auto slice = [&](std::size_t p) { return std::span<SweepCell>(result.table).subspan(p * per_pair, per_pair); };
    if (threads <= 1) {
        for (std::size_t p = 0; p < spec.pairs.size(); ++p) evaluate_pair(spec, joint, spec.pairs[p], slice(p));
    } else {
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&, t] {
                try {
                    for (std::size_t p = t; p < spec.pairs.size(); p += threads)
                        evaluate_pair(spec, joint, spec.pairs[p], slice(p));
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& w : workers) w.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    double best_value = -1.0;
    for (const SweepCell& c : result.table) best_value = std::max(best_value, objective_value(c, spec.objective));
    if (best_value < 0.0) throw DeadEndError("sweep: every cell is a dead branch", 0.0);

    const double tol = kTieTolerance * std::max(1.0, std::abs(best_value));
    bool found = false;
    for (std::size_t i = 0; i < result.table.size(); ++i) {
        const SweepCell& c = result.table[i];
        if (objective_value(c, spec.objective) < best_value - tol) continue;
        if (!found || tie_key(c) < tie_key(result.table[result.best_index])) {
            result.best_index = i;
            found = true;
        }
    }
    const SweepCell& best = result.best();
    result.best_config = config_for(spec, best.pair, best.k, best.outcome);
    return result;
}

std::vector<TrajectoryRow> trajectory_rows(const RoundTrace& trace) {
    std::vector<TrajectoryRow> rows;
    rows.reserve(trace.negativities.size());
    for (std::size_t t = 0; t < trace.negativities.size(); ++t) {
        rows.push_back({static_cast<int>(t + 1), trace.negativities[t], trace.fidelities[t],
                        trace.cumulative_probabilities[t]});
    }
    return rows;
}

std::vector<TrajectoryRow> trajectory_export(const ProtocolConfig& cfg, int k_max) {
    ProtocolConfig run = cfg;
    run.iterations = k_max;
    return trajectory_rows(run_round(sigma_free(cfg.fidelity), run, {.keep_states = false}));
}

std::vector<KBand> find_bands(const std::vector<TrajectoryRow>& rows,
                              const std::function<bool(const TrajectoryRow&)>& pred) {
    std::vector<KBand> bands;
    for (const TrajectoryRow& row : rows) {
        if (!pred(row)) continue;
        if (!bands.empty() && bands.back().last + 1 == row.k) {
            bands.back().last = row.k;
        } else {
            bands.push_back({row.k, row.k});
        }
    }
    return bands;
}

}  // namespace qzeno
