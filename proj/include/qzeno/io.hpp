#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qzeno/linalg.hpp"
#include "qzeno/sweep.hpp"
#include "qzeno/xor_baseline.hpp"
#include "qzeno/zeno.hpp"

namespace qzeno {

inline constexpr std::string_view kToolName = "qzeno";
inline constexpr std::string_view kToolVersion = "1.0.0";

// Config files are `key = value` lines; `#` starts a comment.
// Keys: F alpha theta i_alice j_alice i_bob j_bob k outcome_a outcome_b rounds.
struct RunConfig {
    ProtocolConfig protocol;
    int rounds = 1;
};

// Throws ParseError on syntax errors or unknown keys, ParameterError on
// out-of-range values.
RunConfig parse_run_config(std::string_view text);
std::string format_run_config(const RunConfig& cfg);

// Sweep spec keys: F alpha theta pairs k_min k_max outcomes objective threads.
// `pairs` and `outcomes` are `all` or a comma list of `a:b`.
struct SweepFile {
    SweepSpec spec;
    unsigned threads = 1;
};

SweepFile parse_sweep_spec(std::string_view text);
std::string format_sweep_spec(const SweepFile& file);

// Accepts a decimal number or a multiple of pi such as `pi/180` or `2*pi/3`.
double parse_angle(std::string_view text);
double parse_real(std::string_view text);

// Shortest-ish text that round-trips at 12 significant digits.
std::string format_real(double x);

// One row per line, entries `re+imi` separated by spaces.
void write_matrix(std::ostream& out, const ComplexMatrix& m);
std::string format_matrix(const ComplexMatrix& m);
ComplexMatrix read_matrix(std::istream& in);
ComplexMatrix parse_matrix(std::string_view text);

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows);
std::string rounds_csv(double initial_negativity, double initial_fidelity,
                       const std::vector<RoundSummary>& rounds);
std::string sweep_csv(const SweepResult& result);
std::string baseline_csv(double initial_fidelity, const std::vector<XorRoundResult>& rounds);

struct ManifestEntry {
    std::string file;
    std::string description;
};

struct RunManifest {
    std::string command;
    std::string config_text;  // replayable input
    nlohmann::json parameters;
    std::vector<ManifestEntry> outputs;

    nlohmann::json to_json() const;
};

}  // namespace qzeno
