// qzeno: command-line front end for the Zeno activation simulator.
//
//   qzeno state sigma_alpha --alpha 4 --out-dir out/
//   qzeno run configs/published.cfg --out-dir out/
//   qzeno sweep configs/default.sweep --out-dir out/
//   qzeno baseline --F0 0.3 --alpha 4 --rounds 2 --out-dir out/

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qzeno/io.hpp"
#include "qzeno/measures.hpp"
#include "qzeno/states.hpp"
#include "qzeno/sweep.hpp"
#include "qzeno/xor_baseline.hpp"
#include "qzeno/zeno.hpp"

namespace fs = std::filesystem;
using namespace qzeno;

namespace {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kParseFailure = 2,
    kParameterFailure = 3,
    kDeadEnd = 4,
};

class OutputDir {
public:
    explicit OutputDir(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

    void write(const std::string& name, const std::string& content, std::string description) {
        std::ofstream out(dir_ / name, std::ios::binary);
        out << content;
        if (!out) throw std::runtime_error(fmt::format("cannot write {}", (dir_ / name).string()));
        manifest.outputs.push_back({name, std::move(description)});
    }

    void finish() {
        manifest.outputs.push_back({"manifest.json", "this manifest"});
        std::ofstream out(dir_ / "manifest.json", std::ios::binary);
        out << manifest.to_json().dump(2) << '\n';
        if (!out) throw std::runtime_error("cannot write manifest.json");
    }

    RunManifest manifest;

private:
    fs::path dir_;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(fmt::format("cannot read {}", path));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void cmd_state(const std::string& kind, double alpha, double fidelity, const std::string& out_dir) {
    DensityMatrix rho = [&] {
        if (kind == "sigma_alpha") return sigma_alpha(alpha);
        if (kind == "sigma_free") return sigma_free(fidelity);
        if (kind == "psi_plus") return density(psi_plus());
        if (kind == "sigma_plus") return sigma_plus();
        if (kind == "sigma_minus") return sigma_minus();
        throw ParseError(fmt::format("unknown state `{}`", kind));
    }();

    OutputDir out(out_dir);
    out.manifest.command = "state";
    out.manifest.parameters = {{"kind", kind}};
    if (kind == "sigma_alpha") out.manifest.parameters["alpha"] = alpha;
    if (kind == "sigma_free") out.manifest.parameters["F"] = fidelity;
    out.write(kind + ".mat", format_matrix(rho.matrix()), fmt::format("density matrix of {}", kind));
    out.finish();

    fmt::print("{}: negativity {} fidelity {} {}\n", kind, format_real(negativity(rho)),
               format_real(fidelity_to_psi_plus(rho)), to_string(classify_ppt(rho)));
}

void cmd_run(const std::string& config_path, int k_override, int rounds_override, const std::string& out_dir) {
    RunConfig cfg = parse_run_config(read_file(config_path));
    if (k_override > 0) cfg.protocol.iterations = k_override;
    if (rounds_override > 0) cfg.rounds = rounds_override;
    cfg.protocol.validate();

    OutputDir out(out_dir);
    out.manifest.command = "run";
    out.manifest.config_text = format_run_config(cfg);
    out.manifest.parameters = {{"rounds", cfg.rounds}, {"k", cfg.protocol.iterations}};

    const DensityMatrix initial = sigma_free(cfg.protocol.fidelity);
    if (cfg.rounds == 1) {
        const RoundTrace trace = run_round(initial, cfg.protocol, {.keep_states = false});
        out.write("trajectory.csv", trajectory_csv(trajectory_rows(trace)),
                  "negativity, fidelity and success probability of the conditional free pair per iteration count");
        out.write("final_state.mat", format_matrix(trace.free_state_out.matrix()),
                  "conditional free-pair state after the last iteration");
        out.finish();
        fmt::print("k={} negativity {} fidelity {} outcome probability {} success probability {}\n",
                   cfg.protocol.iterations, format_real(trace.negativities.back()),
                   format_real(trace.fidelities.back()), format_real(trace.outcome_probability),
                   format_real(trace.success_probability));
        return;
    }

    const std::vector<ProtocolConfig> rounds(static_cast<std::size_t>(cfg.rounds), cfg.protocol);
    const auto summaries = run_multi_round(rounds, cfg.protocol.fidelity);
    out.write("rounds.csv", rounds_csv(negativity(initial), fidelity_to_psi_plus(initial), summaries),
              "negativity, fidelity and probabilities after each round (row 0 is the input)");
    for (std::size_t r = 0; r < summaries.size(); ++r) {
        out.write(fmt::format("round_{}.mat", r + 1), format_matrix(summaries[r].state.matrix()),
                  fmt::format("free-pair state after round {}", r + 1));
    }
    out.finish();
    for (std::size_t r = 0; r < summaries.size(); ++r) {
        fmt::print("round {}: negativity {} fidelity {}\n", r + 1, format_real(summaries[r].negativity),
                   format_real(summaries[r].fidelity));
    }
}

void cmd_sweep(const std::string& spec_path, int threads_override, const std::string& out_dir) {
    SweepFile file = parse_sweep_spec(read_file(spec_path));
    if (threads_override >= 0) file.threads = static_cast<unsigned>(threads_override);

    const SweepResult result = run_sweep(file.spec, file.threads);

    OutputDir out(out_dir);
    out.manifest.command = "sweep";
    // Thread count never changes the outputs, so it stays out of the replay config.
    SweepFile canonical = file;
    canonical.threads = 1;
    out.manifest.config_text = format_sweep_spec(canonical);
    out.manifest.parameters = {{"cells", result.table.size()}};
    out.write("sweep.csv", sweep_csv(result), "every (i, j, k, outcome) cell of the sweep");
    out.write("best.cfg", format_run_config({result.best_config, 1}),
              fmt::format("best configuration under {}, replayable with `run`", to_string(file.spec.objective)));
    out.finish();

    const SweepCell& best = result.best();
    fmt::print("best: i={} j={} k={} outcome=({},{}) negativity {} fidelity {} probability {}\n", best.pair.first,
               best.pair.second, best.k, best.outcome.first, best.outcome.second, format_real(best.negativity),
               format_real(best.fidelity), format_real(best.probability));
}

void cmd_baseline(double f0, double alpha, int rounds, const std::string& out_dir) {
    const auto trajectory = xor_trajectory(f0, alpha, rounds);
    OutputDir out(out_dir);
    out.manifest.command = "baseline";
    out.manifest.parameters = {{"F0", f0}, {"alpha", alpha}, {"rounds", rounds}};
    out.write("baseline.csv", baseline_csv(f0, trajectory), "XOR recursion fidelity and probabilities per round");
    out.finish();
    for (std::size_t r = 0; r < trajectory.size(); ++r) {
        fmt::print("round {}: fidelity {} probability {}\n", r + 1, format_real(trajectory[r].fidelity_next),
                   format_real(trajectory[r].success_probability));
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bound-entanglement activation by local quantum Zeno dynamics on two qutrit pairs"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    std::string out_dir = ".";
    app.add_option("--out-dir", out_dir, "Directory for output files")->capture_default_str();

    auto* state = app.add_subcommand("state", "Write a named two-qutrit state");
    std::string kind;
    double alpha = 4.0;
    double fidelity = 0.3;
    state->add_option("kind", kind, "sigma_alpha | sigma_free | psi_plus | sigma_plus | sigma_minus")->required();
    state->add_option("--alpha", alpha, "alpha of sigma_alpha")->capture_default_str();
    state->add_option("--F", fidelity, "F of sigma_free")->capture_default_str();

    auto* run = app.add_subcommand("run", "Run the rotate-measure protocol from a config file");
    std::string config_path;
    int k_override = 0;
    int rounds_override = 0;
    run->add_option("config", config_path, "Config file")->required();
    run->add_option("--k", k_override, "Override the iteration count");
    run->add_option("--rounds", rounds_override, "Chain this many rounds with fresh bound pairs");

    auto* sweep = app.add_subcommand("sweep", "Brute-force the protocol parameters");
    std::string spec_path;
    int threads = -1;
    sweep->add_option("spec", spec_path, "Sweep spec file")->required();
    sweep->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

    auto* baseline = app.add_subcommand("baseline", "XOR activation recursion for comparison");
    double f0 = 0.3;
    double base_alpha = 4.0;
    int rounds = 2;
    baseline->add_option("--F0", f0, "Initial fidelity")->capture_default_str();
    baseline->add_option("--alpha", base_alpha, "alpha of the bound pairs")->capture_default_str();
    baseline->add_option("--rounds", rounds, "Number of rounds")->capture_default_str();

    // Global options may also follow the subcommand.
    for (auto* sub : {state, run, sweep, baseline}) {
        sub->add_option("--out-dir", out_dir, "Directory for output files");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParseFailure;
    }

    try {
        if (state->parsed()) cmd_state(kind, alpha, fidelity, out_dir);
        if (run->parsed()) cmd_run(config_path, k_override, rounds_override, out_dir);
        if (sweep->parsed()) cmd_sweep(spec_path, threads, out_dir);
        if (baseline->parsed()) cmd_baseline(f0, base_alpha, rounds, out_dir);
    } catch (const ParseError& e) {
        fmt::print(stderr, "parse error: {}\n", e.what());
        return kParseFailure;
    } catch (const ParameterError& e) {
        fmt::print(stderr, "parameter error: {}\n", e.what());
        return kParameterFailure;
    } catch (const DeadEndError& e) {
        fmt::print(stderr, "dead end: {}\n", e.what());
        return kDeadEnd;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return kFailure;
    }
    return kOk;
}
