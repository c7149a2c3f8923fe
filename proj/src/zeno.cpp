#include "qzeno/zeno.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "qzeno/measures.hpp"

namespace qzeno {

namespace {

constexpr std::array<std::size_t, 4> kRegisterDims{kQutrit, kQutrit, kQutrit, kQutrit};

void check_level(int level, const char* what) {
    if (level < 0 || level > 2) {
        throw ParameterError(fmt::format("{} must be 0, 1 or 2, got {}", what, level));
    }
}

void require_register(const DensityMatrix& rho, const char* op) {
    if (rho.dim() != kRegisterDim) {
        throw DimensionError(fmt::format("{}: expected an 81x81 four-qutrit state, got dim {}", op, rho.dim()));
    }
}

bool is_diagonal(const ComplexMatrix& m) {
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (i != j && m(i, j) != Complex{0.0, 0.0}) return false;
    return true;
}

// J1 = |first><first| (x) |second><second| on the given (free, bound) slots.
ComplexMatrix click_operator(LevelPair levels, Slot free_slot, Slot bound_slot) {
    const std::array<std::size_t, 2> slots{free_slot, bound_slot};
    return embed_on_subsystems(tensor(z_projector(levels.first), z_projector(levels.second)), slots,
                               kRegisterDims);
}

Projector outcome_projector(LevelPair outcome) {
    const std::array<std::size_t, 2> slots{AliceBound, BobBound};
    return Projector(embed_on_subsystems(tensor(z_projector(outcome.first), z_projector(outcome.second)),
                                         slots, kRegisterDims));
}

}  // namespace

void ProtocolConfig::validate() const {
    if (!(fidelity > 0.0 && fidelity < 1.0)) {
        throw ParameterError(fmt::format("F must lie in (0, 1), got {}", fidelity));
    }
    if (!(alpha >= 2.0 && alpha <= 5.0)) {
        throw ParameterError(fmt::format("alpha must lie in [2, 5], got {}", alpha));
    }
    if (!std::isfinite(theta)) throw ParameterError("theta must be finite");
    check_level(alice.first, "i_alice");
    check_level(alice.second, "j_alice");
    check_level(bob.first, "i_bob");
    check_level(bob.second, "j_bob");
    check_level(outcome.first, "outcome_a");
    check_level(outcome.second, "outcome_b");
    if (iterations < 1) throw ParameterError(fmt::format("k must be at least 1, got {}", iterations));
}

Projector::Projector(ComplexMatrix m) : m_(std::move(m)), diagonal_(is_diagonal(m_)) {
    if (!is_hermitian(m_, kTolerance)) throw NumericalError("projector is not Hermitian");
    if (max_abs_diff(m_ * m_, m_) > kTolerance) throw NumericalError("projector is not idempotent");
}

ComplexMatrix Projector::sandwich(const ComplexMatrix& rho) const {
    if (rho.dim() != m_.dim()) {
        throw DimensionError(fmt::format("projector dim {} vs state dim {}", m_.dim(), rho.dim()));
    }
    if (!diagonal_) return m_ * rho * m_;
    const std::size_t n = rho.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (m_(i, i) == Complex{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (m_(j, j) != Complex{0.0, 0.0}) out(i, j) = m_(i, i) * rho(i, j) * m_(j, j);
    }
    return out;
}

ComplexMatrix rotation_z(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return ComplexMatrix(kQutrit, {c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0});
}

ComplexMatrix global_rotation(double theta) {
    const ComplexMatrix r = rotation_z(theta);
    return tensor(tensor(r, r), tensor(r, r));
}

DensityMatrix apply_global_rotation(const DensityMatrix& rho, double theta) {
    require_register(rho, "apply_global_rotation");
    return DensityMatrix::trusted(conjugate_by(global_rotation(theta), rho.matrix()));
}

PartyProjectors party_projectors(const ProtocolConfig& cfg) {
    cfg.validate();
    ComplexMatrix alice = click_operator(cfg.alice, AliceFree, AliceBound);
    ComplexMatrix bob = click_operator(cfg.bob, BobFree, BobBound);
    const ComplexMatrix id = ComplexMatrix::identity(kRegisterDim);
    ComplexMatrix survival = (id - alice) * (id - bob);
    return {Projector(std::move(survival)), Projector(std::move(alice)), Projector(std::move(bob))};
}

ZenoEvolution::ZenoEvolution(const DensityMatrix& initial, const ProtocolConfig& cfg)
    : rotation_(global_rotation(cfg.theta)), survival_(party_projectors(cfg).survival), state_(initial) {
    require_register(initial, "ZenoEvolution");
}

double ZenoEvolution::step() {
    ComplexMatrix projected = survival_.sandwich(conjugate_by(rotation_, state_.matrix()));
    const double survival = projected.trace().real();
    if (!(survival >= kDeadEndProbability)) {
        throw DeadEndError(
            fmt::format("threshold measurement clicked with certainty at iteration {} (survival {})",
                        done_ + 1, survival),
            survival);
    }
    projected /= survival;
    state_ = DensityMatrix::trusted(std::move(projected));
    cumulative_ *= survival;
    ++done_;
    return survival;
}

StepResult zeno_step(const DensityMatrix& rho, const ProtocolConfig& cfg) {
    ZenoEvolution evolution(rho, cfg);
    const double survival = evolution.step();
    return {evolution.state(), survival};
}

double bound_pair_probability(const ComplexMatrix& rho, LevelPair outcome) {
    return outcome_projector(outcome).sandwich(rho).trace().real();
}

BoundPairMeasurement measure_bound_pair(const DensityMatrix& rho, LevelPair outcome) {
    require_register(rho, "measure_bound_pair");
    check_level(outcome.first, "outcome_a");
    check_level(outcome.second, "outcome_b");
    ComplexMatrix projected = outcome_projector(outcome).sandwich(rho.matrix());
    const double probability = projected.trace().real();
    if (!(probability >= kDeadEndProbability)) {
        throw DeadEndError(fmt::format("bound pair outcome ({}, {}) has probability {}", outcome.first,
                                       outcome.second, probability),
                           probability);
    }
    ComplexMatrix reduced = partial_trace_trailing(projected, kTwoQutrit);
    reduced /= probability;
    return {DensityMatrix(std::move(reduced)), probability};
}

RoundTrace run_round(const DensityMatrix& fe_in, const ProtocolConfig& cfg, RoundOptions opts) {
    cfg.validate();
    if (fe_in.dim() != kTwoQutrit) {
        throw DimensionError(fmt::format("run_round: free state must be 9x9, got dim {}", fe_in.dim()));
    }
    const auto joint = DensityMatrix::trusted(tensor(fe_in.matrix(), sigma_alpha(cfg.alpha).matrix()));
    ZenoEvolution evolution(joint, cfg);

    const auto k_max = static_cast<std::size_t>(cfg.iterations);
    std::vector<double> survivals, outcome_probs, negs, fids, cumulative;
    std::vector<DensityMatrix> states;
    survivals.reserve(k_max);
    outcome_probs.reserve(k_max);
    negs.reserve(k_max);
    fids.reserve(k_max);
    cumulative.reserve(k_max);
    if (opts.keep_states) states.reserve(k_max);

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t k = 1; k <= k_max; ++k) {
        survivals.push_back(evolution.step());
        if (opts.keep_states) states.push_back(evolution.state());

        const double p = bound_pair_probability(evolution.state().matrix(), cfg.outcome);
        outcome_probs.push_back(p);
        cumulative.push_back(evolution.cumulative_survival() * p);
        if (p >= kDeadEndProbability) {
            const BoundPairMeasurement m = measure_bound_pair(evolution.state(), cfg.outcome);
            negs.push_back(negativity(m.free_state));
            fids.push_back(fidelity_to_psi_plus(m.free_state));
        } else {
            negs.push_back(nan);
            fids.push_back(nan);
        }
    }

    BoundPairMeasurement final_measurement = measure_bound_pair(evolution.state(), cfg.outcome);
    const double success = evolution.cumulative_survival() * final_measurement.probability;
    return RoundTrace{cfg,
                      std::move(survivals),
                      std::move(states),
                      std::move(outcome_probs),
                      std::move(negs),
                      std::move(fids),
                      std::move(cumulative),
                      std::move(final_measurement.free_state),
                      final_measurement.probability,
                      success};
}

std::vector<RoundSummary> run_multi_round(std::span<const ProtocolConfig> rounds, double initial_fidelity) {
    if (rounds.empty()) throw ParameterError("run_multi_round: no rounds given");
    DensityMatrix current = sigma_free(initial_fidelity);
    double cumulative = 1.0;
    std::vector<RoundSummary> out;
    out.reserve(rounds.size());
    for (const ProtocolConfig& cfg : rounds) {
        RoundTrace trace = run_round(current, cfg, {.keep_states = false});
        cumulative *= trace.success_probability;
        current = trace.free_state_out;
        out.push_back({std::move(trace.free_state_out), trace.negativities.back(), trace.fidelities.back(),
                       trace.success_probability, cumulative});
    }
    return out;
}

}  // namespace qzeno
