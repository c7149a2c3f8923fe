#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qzeno/linalg.hpp"
#include "qzeno/states.hpp"

namespace qzeno {

// Global register ordering: the free pair first, then the bound pair.
enum Slot : std::size_t { AliceFree = 0, BobFree = 1, AliceBound = 2, BobBound = 3 };
inline constexpr std::size_t kRegisterDim = 81;
inline constexpr double kDeadEndProbability = 1e-12;

// Two qutrit levels: a threshold target (i on the free particle, j on the
// bound particle) or a final z outcome (a for Alice, b for Bob).
struct LevelPair {
    int first = 0;
    int second = 0;
    friend auto operator<=>(const LevelPair&, const LevelPair&) = default;
};

struct ProtocolConfig {
    double fidelity = 0.3;  // F of the initial free state
    double alpha = 4.0;
    double theta = std::numbers::pi / 180.0;
    LevelPair alice{0, 1};
    LevelPair bob{0, 1};
    int iterations = 262;
    LevelPair outcome{1, 1};

    // Throws ParameterError.
    void validate() const;
    friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

// Orthogonal projector (P^2 = P = P^dagger within 1e-12).
class Projector {
public:
    static constexpr double kTolerance = 1e-12;
    explicit Projector(ComplexMatrix m);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    // P rho P (no renormalisation). Diagonal projectors take a masked fast path.
    ComplexMatrix sandwich(const ComplexMatrix& rho) const;

private:
    ComplexMatrix m_;
    bool diagonal_ = false;
};

ComplexMatrix rotation_z(double theta);
ComplexMatrix global_rotation(double theta);  // R^{x4}
DensityMatrix apply_global_rotation(const DensityMatrix& rho, double theta);

struct PartyProjectors {
    Projector survival;     // (I - J1_alice)(I - J1_bob)
    Projector alice_click;  // J1 on (AliceFree, AliceBound)
    Projector bob_click;    // J1 on (BobFree, BobBound)
};

PartyProjectors party_projectors(const ProtocolConfig& cfg);

struct StepResult {
    DensityMatrix state;
    double survival;  // 1 - eps_k
};

// Rotate all four qutrits, then keep the no-click branch and renormalise.
// Throws DeadEndError if the survival probability is below 1e-12.
StepResult zeno_step(const DensityMatrix& rho, const ProtocolConfig& cfg);

struct BoundPairMeasurement {
    DensityMatrix free_state;  // 9x9, conditioned on the outcome
    double probability;
};

// Condition the bound pair on z outcome (a, b) and trace it out.
// Throws DeadEndError if the outcome probability is below 1e-12.
BoundPairMeasurement measure_bound_pair(const DensityMatrix& rho, LevelPair outcome);
// Outcome probability only; no dead-end check.
double bound_pair_probability(const ComplexMatrix& rho, LevelPair outcome);

// Rotate-measure loop with cached operators. Used by run_round and the sweep.
class ZenoEvolution {
public:
    ZenoEvolution(const DensityMatrix& initial, const ProtocolConfig& cfg);

    // Advances one iteration and returns its survival probability.
    double step();

    int iterations_done() const noexcept { return done_; }
    const DensityMatrix& state() const noexcept { return state_; }
    double cumulative_survival() const noexcept { return cumulative_; }

private:
    ComplexMatrix rotation_;
    Projector survival_;
    DensityMatrix state_;
    double cumulative_ = 1.0;
    int done_ = 0;
};

struct RoundOptions {
    bool keep_states = true;  // retain every post-projection 81x81 state
};

struct RoundTrace {
    ProtocolConfig config;
    // Index t holds the value after iteration k = t + 1.
    std::vector<double> survivals;
    std::vector<DensityMatrix> states;
    // Conditional free pair after iteration k under config.outcome. NaN
    // negativity/fidelity where the outcome probability is below 1e-12.
    std::vector<double> outcome_probabilities;
    std::vector<double> negativities;
    std::vector<double> fidelities;
    std::vector<double> cumulative_probabilities;

    DensityMatrix free_state_out;
    double outcome_probability = 0.0;
    double success_probability = 0.0;  // prod(survivals) * outcome_probability
};

RoundTrace run_round(const DensityMatrix& fe_in, const ProtocolConfig& cfg, RoundOptions opts = {});

struct RoundSummary {
    DensityMatrix state;
    double negativity;
    double fidelity;
    double round_probability;
    double cumulative_probability;
};

// Round r feeds its conditional free state into round r+1 with a fresh
// sigma_alpha(rounds[r].alpha). Starts from sigma_free(initial_fidelity).
std::vector<RoundSummary> run_multi_round(std::span<const ProtocolConfig> rounds, double initial_fidelity);

}  // namespace qzeno
