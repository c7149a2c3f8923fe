// Acceptance suite: one PASS/FAIL line per criterion, with detail lines for
// every individual check. Exits nonzero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracle.hpp"
#include "qzeno/io.hpp"
#include "qzeno/measures.hpp"
#include "qzeno/states.hpp"
#include "qzeno/sweep.hpp"
#include "qzeno/xor_baseline.hpp"
#include "qzeno/zeno.hpp"

using namespace qzeno;

namespace {

class Criterion {
public:
    Criterion(int number, std::string title) : number_(number), title_(std::move(title)) {}

    bool check(bool ok, const std::string& what) {
        fmt::print("    [{}] {}\n", ok ? " ok " : "FAIL", what);
        ok_ = ok_ && ok;
        return ok;
    }

    bool near(double got, double want, double tol, const std::string& what) {
        const double err = std::abs(got - want);
        return check(err <= tol, fmt::format("{}: got {:.10g}, want {:.10g}, |diff| {:.3g} (tol {:.1g})", what, got,
                                             want, err, tol));
    }

    void note(const std::string& what) { fmt::print("    note: {}\n", what); }

    bool finish() const {
        fmt::print("{} criterion {}: {}\n", ok_ ? "PASS" : "FAIL", number_, title_);
        std::fflush(stdout);
        return ok_;
    }

private:
    int number_;
    std::string title_;
    bool ok_ = true;
};

void header(int number) { fmt::print("--- criterion {}\n", number); }

ProtocolConfig reference_config(int k = 262) {
    ProtocolConfig cfg;
    cfg.iterations = k;
    return cfg;
}

struct PrintedState {
    std::string label;
    ComplexMatrix matrix;
};

// Entrywise comparison over the full 9x9 matrix; each nonzero printed entry
// gets its own line, zeros are summarised.
void compare_matrix(Criterion& c, const std::string& label, const ComplexMatrix& got, const ComplexMatrix& want,
                    double tol) {
    double worst_zero = 0.0;
    for (std::size_t r = 0; r < 9; ++r)
        for (std::size_t col = r; col < 9; ++col) {
            if (want(r, col) == Complex{0.0, 0.0}) {
                worst_zero = std::max(worst_zero, std::abs(got(r, col)));
                continue;
            }
            const double g = got(r, col).real(), w = want(r, col).real();
            if (!c.near(g, w, tol, fmt::format("{} ({},{})", label, r, col)) && g > w && g - w < 1e-5) {
                c.note(fmt::format("{:.10f} cut (not rounded) to five decimals gives {:.5f}", g, w));
            }
        }
    c.check(worst_zero <= tol, fmt::format("{} entries printed as zero: max |value| {:.3g}", label, worst_zero));
    c.check(max_abs_imag(got) <= tol, fmt::format("{} imaginary parts: max {:.3g}", label, max_abs_imag(got)));
}

bool criterion_1(const std::vector<RoundSummary>& chain) {
    header(1);
    Criterion c(1, "chained-round negativity and fidelity regression");
    const double tol = 5e-6;
    const DensityMatrix initial = sigma_free(0.3);
    c.near(negativity(initial), 0.110977, tol, "input negativity");
    c.near(fidelity_to_psi_plus(initial), 0.3, tol, "input fidelity");

    struct Row {
        int printed_round;
        std::size_t chain_round;
        double negativity;
        double fidelity;
    };
    // The printed table lists four rounds; its last two rows coincide with
    // rounds four and five of the chain, and the chain's third round
    // (N ~ 0.3504) is not tabulated.
    const Row rows[] = {
        {1, 1, 0.171195, 0.411667},
        {2, 2, 0.269747, 0.500432},
        {3, 4, 0.400867, 0.599635},
        {4, 5, 0.422634, 0.614989},
    };
    for (const Row& row : rows) {
        const RoundSummary& s = chain.at(row.chain_round - 1);
        c.near(s.negativity, row.negativity, tol,
               fmt::format("table row {} negativity (chain round {})", row.printed_round, row.chain_round));
        c.near(s.fidelity, row.fidelity, tol,
               fmt::format("table row {} fidelity (chain round {})", row.printed_round, row.chain_round));
    }
    c.note(fmt::format("untabulated chain round 3: negativity {:.6f} fidelity {:.6f}", chain[2].negativity,
                       chain[2].fidelity));
    c.note(fmt::format("one-to-one row/round reading would compare row 3 against N {:.6f}, off by {:.3g}",
                       chain[2].negativity, std::abs(chain[2].negativity - 0.400867)));
    return c.finish();
}

bool criterion_2(const std::vector<RoundSummary>& chain) {
    header(2);
    Criterion c(2, "final-state and one-iteration matrix regressions");
    const double tol = 5e-6;

    const PrintedState printed[] = {
        {"round 1", oracle::printed_free_state(0.29649, 0.38043, 0.00104, 0.32202, 0.30824)},
        {"round 2", oracle::printed_free_state(0.34417, 0.244553, 0.00242, 0.40884, 0.37414)},
        {"round 3 (chain round 4)", oracle::printed_free_state(0.37490, 0.08169, 0.01062, 0.53277, 0.44561)},
        {"round 4 (chain round 5)", oracle::printed_free_state(0.36606, 0.04417, 0.02078, 0.56897, 0.45496)},
    };
    const std::size_t chain_index[] = {0, 1, 3, 4};
    for (std::size_t n = 0; n < 4; ++n) {
        compare_matrix(c, printed[n].label, chain[chain_index[n]].state.matrix(), printed[n].matrix, tol);
    }

    const RoundTrace one = run_round(sigma_free(0.3), reference_config(1), {.keep_states = false});
    const ComplexMatrix printed_one = oracle::printed_free_state(0.230895, 0.538209, 0.047619, 0.230731, 0.230731);
    compare_matrix(c, "one iteration", one.free_state_out.matrix(), printed_one, tol);
    c.near(fidelity_to_psi_plus(one.free_state_out), 0.307696, tol, "one-iteration fidelity");
    c.note(fmt::format("printed one-iteration matrix has trace {:.6f}; computed (7,7) is {:.6f}",
                       printed_one.trace().real(), one.free_state_out(7, 7).real()));
    return c.finish();
}

bool criterion_3(const SweepResult& sweep, const std::vector<TrajectoryRow>& rows) {
    header(3);
    Criterion c(3, "sweep rediscovers the round-one protocol and its activation window");
    const SweepCell& best = sweep.best();
    c.check(best.pair == LevelPair{0, 1}, fmt::format("best (i,j) = ({},{})", best.pair.first, best.pair.second));
    c.check(best.outcome == LevelPair{1, 1},
            fmt::format("best outcome = ({},{})", best.outcome.first, best.outcome.second));
    c.check(best.k == 262, fmt::format("best k = {}", best.k));
    c.near(best.negativity, 0.171195, 5e-6, "best negativity");

    std::size_t ties = 0;
    for (const SweepCell& cell : sweep.table)
        if (cell.ok && best.negativity - cell.negativity <= kTieTolerance * best.negativity) ++ties;
    c.note(fmt::format("{} cells tie with the best within relative {:.0e}", ties, kTieTolerance));

    const double input = 0.110977;
    const auto windows = find_bands(rows, [&](const TrajectoryRow& r) { return r.negativity > input; });
    std::string listed;
    for (const KBand& w : windows) listed += fmt::format(" {}..{}", w.first, w.last);
    c.note(fmt::format("activation windows (N > {:.6f}):{}", input, listed));
    const bool one_window = windows.size() == 1;
    c.check(one_window, fmt::format("exactly one activation window ({} found)", windows.size()));
    if (one_window) {
        c.check(std::abs(windows[0].first - 242) <= 2, fmt::format("window start {} within 2 of 242", windows[0].first));
        c.check(std::abs(windows[0].last - 282) <= 2, fmt::format("window end {} within 2 of 282", windows[0].last));
    }
    return c.finish();
}

bool criterion_4(const RoundTrace& trace) {
    header(4);
    Criterion c(4, "survival and outcome probabilities");
    c.check(trace.survivals.front() > 0.78, fmt::format("first survival {:.6f} > 0.78", trace.survivals.front()));
    const auto rest = std::min_element(trace.survivals.begin() + 1, trace.survivals.end());
    c.check(*rest > 0.999, fmt::format("min survival over k >= 2 is {:.6f} (k = {}) > 0.999", *rest,
                                       1 + std::distance(trace.survivals.begin(), rest)));
    c.near(trace.outcome_probability, 0.04, 5e-3, "outcome (1,1) probability");
    c.note(fmt::format("success probability including survivals: {:.6f}", trace.success_probability));
    return c.finish();
}

bool criterion_5() {
    header(5);
    Criterion c(5, "XOR baseline");
    const auto t = xor_trajectory(0.3, 4.0, 2);
    c.check(fmt::format("{:.2f}", t[0].fidelity_next) == "0.46",
            fmt::format("round 1 fidelity {:.6f} rounds to 0.46", t[0].fidelity_next));
    c.check(fmt::format("{:.2f}", t[1].fidelity_next) == "0.63",
            fmt::format("round 2 fidelity {:.6f} rounds to 0.63", t[1].fidelity_next));
    for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const XorRoundResult r = xor_round(f, 3.0);
        c.near(r.fidelity_next, f, 1e-14, fmt::format("alpha = 3 fixed point at F = {}", f));
    }
    return c.finish();
}

bool criterion_6() {
    header(6);
    Criterion c(6, "state-family classification");
    for (int n = 0; n <= 4; ++n) {
        const double alpha = 2.0 + 0.5 * n;
        c.near(negativity(sigma_alpha(alpha)), 0.0, 1e-10, fmt::format("negativity of sigma_alpha({:.1f})", alpha));
    }
    for (int n = 41; n <= 50; ++n) {
        const double alpha = 0.1 * n;
        const double neg = negativity(sigma_alpha(alpha));
        c.check(neg > 0.0, fmt::format("negativity of sigma_alpha({:.1f}) = {:.3g} > 0", alpha, neg));
    }
    for (int n = 1; n <= 9; ++n) {
        const double f = 0.1 * n;
        c.near(fidelity_to_psi_plus(sigma_free(f)), f, 1e-12, fmt::format("fidelity of sigma_free({:.1f})", f));
    }
    return c.finish();
}

bool criterion_7() {
    header(7);
    Criterion c(7, "property suites");
    std::mt19937_64 rng(20240601);

    double worst_routes = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const DensityMatrix rho(oracle::random_density(9, rng, 1 + trial % 9));
        const NegativityReport r = negativity_report(rho);
        worst_routes = std::max(worst_routes, std::abs(r.eigen_sum - r.trace_norm));
    }
    c.check(worst_routes <= 1e-10,
            fmt::format("eigenvalue-sum vs trace-norm negativity, 100 random states: max |diff| {:.3g}", worst_routes));

    double worst_lu = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const DensityMatrix rho(oracle::random_density(9, rng, 2));
        const ComplexMatrix u = tensor(oracle::random_unitary(3, rng), oracle::random_unitary(3, rng));
        worst_lu = std::max(worst_lu,
                            std::abs(negativity(rho) - negativity(DensityMatrix::trusted(conjugate_by(u, rho.matrix())))));
    }
    c.check(worst_lu <= 1e-10, fmt::format("local-unitary invariance, 50 states: max |diff| {:.3g}", worst_lu));

    bool involution = true;
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexMatrix m = oracle::random_matrix(9, rng);
        const auto split = BipartiteSplit::two_qutrits();
        involution = involution && partial_transpose(partial_transpose(m, split), split) == m;
    }
    c.check(involution, "partial transpose applied twice is the identity (exact)");

    double worst_trace = 0.0;
    DensityMatrix joint = DensityMatrix::trusted(tensor(sigma_free(0.3).matrix(), sigma_alpha(4.0).matrix()));
    const ProtocolConfig cfg = reference_config();
    for (int k = 0; k < 50; ++k) {
        const StepResult s = zeno_step(joint, cfg);
        worst_trace = std::max(worst_trace, std::abs(s.state.matrix().trace() - Complex{1.0, 0.0}));
        joint = s.state;
    }
    c.check(worst_trace <= 1e-10, fmt::format("zeno_step trace preservation, 50 steps: max |tr - 1| {:.3g}", worst_trace));

    // Unnormalised track with the survival mask; its trace is the survival product.
    {
        const int k = 10;
        const auto keep = oracle::survival_mask(0, 1, 0, 1);
        const ComplexMatrix r = rotation_z(cfg.theta);
        const ComplexMatrix u = oracle::kron(oracle::kron(r, r), oracle::kron(r, r));
        ComplexMatrix raw = tensor(sigma_free(0.3).matrix(), sigma_alpha(4.0).matrix());
        for (int step = 0; step < k; ++step) {
            raw = oracle::naive_mul(oracle::naive_mul(u, raw), oracle::naive_adjoint(u));
            for (std::size_t i = 0; i < 81; ++i)
                for (std::size_t j = 0; j < 81; ++j)
                    if (!keep[i] || !keep[j]) raw(i, j) = 0.0;
        }
        ComplexMatrix block(9);
        for (std::size_t a = 0; a < 9; ++a)
            for (std::size_t b = 0; b < 9; ++b) block(a, b) = raw(9 * a + 4, 9 * b + 4);
        const RoundTrace trace = run_round(sigma_free(0.3), reference_config(k));
        const double p_raw = block.trace().real();
        const double state_err = max_abs_diff((1.0 / p_raw) * block, trace.free_state_out.matrix());
        c.near(trace.success_probability, p_raw, 1e-9, "probability chain vs unnormalised track, k = 10");
        c.check(state_err <= 1e-9, fmt::format("conditional state vs unnormalised track: max |diff| {:.3g}", state_err));
    }

    double worst_rebuild = 0.0;
    for (std::size_t n : {2u, 3u, 9u, 27u, 81u}) {
        const ComplexMatrix h = oracle::random_hermitian(n, rng);
        const HermitianEigen e = hermitian_eigen(h);
        ComplexMatrix lambda(n);
        for (std::size_t i = 0; i < n; ++i) lambda(i, i) = e.eigenvalues[i];
        const ComplexMatrix rebuilt =
            oracle::naive_mul(oracle::naive_mul(e.eigenvectors, lambda), oracle::naive_adjoint(e.eigenvectors));
        worst_rebuild = std::max(worst_rebuild, max_abs_diff(rebuilt, h));
    }
    c.check(worst_rebuild <= 1e-10,
            fmt::format("Jacobi reconstruction up to dim 81: max |V L V^dagger - H| {:.3g}", worst_rebuild));
    return c.finish();
}

bool criterion_8(const std::vector<TrajectoryRow>& rows) {
    header(8);
    Criterion c(8, "negativity vanishes in two k bands");
    const auto zero_bands = find_bands(rows, [](const TrajectoryRow& r) { return r.negativity < 1e-6; });
    std::string listed;
    for (const KBand& b : zero_bands) listed += fmt::format(" {}..{}", b.first, b.last);
    c.note(fmt::format("bands with N < 1e-6 over k = 1..300:{}", listed));

    auto hits = [&](int lo, int hi) {
        return std::any_of(rows.begin(), rows.end(),
                           [&](const TrajectoryRow& r) { return r.k >= lo && r.k <= hi && r.negativity < 1e-6; });
    };
    c.check(hits(80, 120), "N < 1e-6 for some k in 80..120");
    c.check(hits(180, 220), "N < 1e-6 for some k in 180..220");
    return c.finish();
}

bool criterion_9(const SweepSpec& spec, const SweepResult& serial) {
    header(9);
    Criterion c(9, "deterministic outputs");
    const ProtocolConfig cfg = reference_config();
    const RoundTrace a = run_round(sigma_free(0.3), cfg, {.keep_states = false});
    const RoundTrace b = run_round(sigma_free(0.3), cfg, {.keep_states = false});
    c.check(trajectory_csv(trajectory_rows(a)) == trajectory_csv(trajectory_rows(b)),
            "trajectory CSV identical across runs");
    c.check(format_matrix(a.free_state_out.matrix()) == format_matrix(b.free_state_out.matrix()),
            "final-state matrix text identical across runs");

    const std::string serial_csv = sweep_csv(serial);
    for (unsigned threads : {2u, 4u}) {
        const SweepResult parallel = run_sweep(spec, threads);
        c.check(sweep_csv(parallel) == serial_csv,
                fmt::format("sweep CSV identical for 1 and {} threads ({} bytes)", threads, serial_csv.size()));
        c.check(format_run_config({parallel.best_config, 1}) == format_run_config({serial.best_config, 1}),
                fmt::format("best configuration identical for 1 and {} threads", threads));
    }
    return c.finish();
}

}  // namespace

int main() {
    const std::vector<ProtocolConfig> rounds(5, reference_config());
    const auto chain = run_multi_round(rounds, 0.3);
    const RoundTrace trace = run_round(sigma_free(0.3), reference_config(300), {.keep_states = false});
    const std::vector<TrajectoryRow> rows = trajectory_rows(trace);
    const RoundTrace at_262 = run_round(sigma_free(0.3), reference_config(262), {.keep_states = false});
    const SweepSpec spec;
    const SweepResult sweep = run_sweep(spec, 1);

    const bool results[] = {
        criterion_1(chain),    criterion_2(chain), criterion_3(sweep, rows),
        criterion_4(at_262),   criterion_5(),      criterion_6(),
        criterion_7(),         criterion_8(rows),  criterion_9(spec, sweep),
    };
    int failed = 0;
    fmt::print("=== summary\n");
    for (std::size_t n = 0; n < std::size(results); ++n) {
        fmt::print("{} criterion {}\n", results[n] ? "PASS" : "FAIL", n + 1);
        if (!results[n]) ++failed;
    }
    fmt::print("{} of {} criteria passed\n", std::size(results) - failed, std::size(results));
    return failed == 0 ? 0 : 1;
}
