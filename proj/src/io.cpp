#include "qzeno/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace qzeno {

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

using KeyValues = std::map<std::string, std::string, std::less<>>;

KeyValues parse_key_values(std::string_view text, std::initializer_list<std::string_view> allowed) {
    KeyValues kv;
    int line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(fmt::format("line {}: expected `key = value`", line_no));
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty() || value.empty()) throw ParseError(fmt::format("line {}: empty key or value", line_no));
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ParseError(fmt::format("line {}: unknown key `{}`", line_no, key));
        }
        if (!kv.emplace(key, value).second) throw ParseError(fmt::format("line {}: duplicate key `{}`", line_no, key));
    }
    return kv;
}

int parse_int(std::string_view text) {
    text = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(fmt::format("`{}` is not an integer", text));
    }
    return value;
}

LevelPair parse_level_pair(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw ParseError(fmt::format("`{}` is not a level pair `a:b`", text));
    return {parse_int(parts[0]), parse_int(parts[1])};
}

std::vector<LevelPair> parse_level_pairs(std::string_view text) {
    if (trim(text) == "all") return all_level_pairs();
    std::vector<LevelPair> out;
    for (std::string_view item : split(text, ',')) out.push_back(parse_level_pair(item));
    return out;
}

std::string format_level_pairs(const std::vector<LevelPair>& pairs) {
    if (pairs == all_level_pairs()) return "all";
    std::string out;
    for (const LevelPair& p : pairs) {
        if (!out.empty()) out += ',';
        out += fmt::format("{}:{}", p.first, p.second);
    }
    return out;
}

template <typename T, typename Parse>
void assign_if(const KeyValues& kv, std::string_view key, T& target, Parse parse) {
    if (const auto it = kv.find(key); it != kv.end()) target = parse(it->second);
}

double clean_zero(double x) { return std::abs(x) < 5e-13 ? 0.0 : x; }

std::string exact_real(double x) { return fmt::format("{:.17g}", x); }

}  // namespace

double parse_real(std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(fmt::format("`{}` is not a number", text));
    }
    return value;
}

double parse_angle(std::string_view text) {
    text = trim(text);
    const auto pi_pos = text.find("pi");
    if (pi_pos == std::string_view::npos) return parse_real(text);

    double factor = 1.0;
    std::string_view head = trim(text.substr(0, pi_pos));
    if (!head.empty()) {
        if (head.back() != '*') throw ParseError(fmt::format("`{}` is not an angle", text));
        head.remove_suffix(1);
        factor = parse_real(head);
    }
    double divisor = 1.0;
    std::string_view tail = trim(text.substr(pi_pos + 2));
    if (!tail.empty()) {
        if (tail.front() != '/') throw ParseError(fmt::format("`{}` is not an angle", text));
        divisor = parse_real(tail.substr(1));
        if (divisor == 0.0) throw ParseError("angle divides by zero");
    }
    return factor * std::numbers::pi / divisor;
}

RunConfig parse_run_config(std::string_view text) {
    const KeyValues kv = parse_key_values(
        text, {"F", "alpha", "theta", "i_alice", "j_alice", "i_bob", "j_bob", "k", "outcome_a", "outcome_b", "rounds"});
    RunConfig cfg;
    ProtocolConfig& p = cfg.protocol;
    assign_if(kv, "F", p.fidelity, parse_real);
    assign_if(kv, "alpha", p.alpha, parse_real);
    assign_if(kv, "theta", p.theta, parse_angle);
    assign_if(kv, "i_alice", p.alice.first, parse_int);
    assign_if(kv, "j_alice", p.alice.second, parse_int);
    assign_if(kv, "i_bob", p.bob.first, parse_int);
    assign_if(kv, "j_bob", p.bob.second, parse_int);
    assign_if(kv, "k", p.iterations, parse_int);
    assign_if(kv, "outcome_a", p.outcome.first, parse_int);
    assign_if(kv, "outcome_b", p.outcome.second, parse_int);
    assign_if(kv, "rounds", cfg.rounds, parse_int);
    p.validate();
    if (cfg.rounds < 1) throw ParameterError(fmt::format("rounds must be at least 1, got {}", cfg.rounds));
    return cfg;
}

std::string format_run_config(const RunConfig& cfg) {
    const ProtocolConfig& p = cfg.protocol;
    return fmt::format(
        "F = {}\nalpha = {}\ntheta = {}\ni_alice = {}\nj_alice = {}\ni_bob = {}\nj_bob = {}\nk = {}\n"
        "outcome_a = {}\noutcome_b = {}\nrounds = {}\n",
        exact_real(p.fidelity), exact_real(p.alpha), exact_real(p.theta), p.alice.first, p.alice.second,
        p.bob.first, p.bob.second, p.iterations, p.outcome.first, p.outcome.second, cfg.rounds);
}

SweepFile parse_sweep_spec(std::string_view text) {
    const KeyValues kv = parse_key_values(
        text, {"F", "alpha", "theta", "pairs", "k_min", "k_max", "outcomes", "objective", "threads"});
    SweepFile file;
    SweepSpec& s = file.spec;
    assign_if(kv, "F", s.fidelity, parse_real);
    assign_if(kv, "alpha", s.alpha, parse_real);
    assign_if(kv, "theta", s.theta, parse_angle);
    assign_if(kv, "pairs", s.pairs, parse_level_pairs);
    assign_if(kv, "k_min", s.k_min, parse_int);
    assign_if(kv, "k_max", s.k_max, parse_int);
    assign_if(kv, "outcomes", s.outcomes, parse_level_pairs);
    if (const auto it = kv.find("objective"); it != kv.end()) {
        if (it->second == to_string(Objective::MaxNegativity)) {
            s.objective = Objective::MaxNegativity;
        } else if (it->second == to_string(Objective::MaxNegativityTimesProbability)) {
            s.objective = Objective::MaxNegativityTimesProbability;
        } else {
            throw ParseError(fmt::format("unknown objective `{}`", it->second));
        }
    }
    if (const auto it = kv.find("threads"); it != kv.end()) {
        const int t = parse_int(it->second);
        if (t < 0) throw ParameterError("threads must be non-negative");
        file.threads = static_cast<unsigned>(t);
    }
    s.validate();
    return file;
}

std::string format_sweep_spec(const SweepFile& file) {
    const SweepSpec& s = file.spec;
    return fmt::format("F = {}\nalpha = {}\ntheta = {}\npairs = {}\nk_min = {}\nk_max = {}\noutcomes = {}\n"
                       "objective = {}\nthreads = {}\n",
                       exact_real(s.fidelity), exact_real(s.alpha), exact_real(s.theta), format_level_pairs(s.pairs),
                       s.k_min, s.k_max, format_level_pairs(s.outcomes), to_string(s.objective), file.threads);
}

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    return fmt::format("{:.12g}", clean_zero(x));
}

void write_matrix(std::ostream& out, const ComplexMatrix& m) { out << format_matrix(m); }

std::string format_matrix(const ComplexMatrix& m) {
    std::string text;
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            if (c) text += ' ';
            text += fmt::format("{:.12f}{:+.12f}i", clean_zero(m(r, c).real()), clean_zero(m(r, c).imag()));
        }
        text += '\n';
    }
    return text;
}

ComplexMatrix parse_matrix(std::string_view text) {
    std::vector<Complex> entries;
    std::size_t rows = 0;
    std::size_t cols = 0;
    for (std::string_view line : split(text, '\n')) {
        if (line.empty()) continue;
        std::size_t row_entries = 0;
        std::istringstream tokens{std::string(line)};
        std::string token;
        while (tokens >> token) {
            if (token.size() < 2 || token.back() != 'i') throw ParseError(fmt::format("bad matrix entry `{}`", token));
            const std::string_view body(token.data(), token.size() - 1);
            // The imaginary part starts at the last sign not following an exponent marker.
            std::size_t split_at = std::string_view::npos;
            for (std::size_t i = body.size(); i-- > 1;) {
                if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                    split_at = i;
                    break;
                }
            }
            if (split_at == std::string_view::npos) throw ParseError(fmt::format("bad matrix entry `{}`", token));
            std::string_view im = body.substr(split_at);
            if (im.front() == '+') im.remove_prefix(1);
            entries.emplace_back(parse_real(body.substr(0, split_at)), parse_real(im));
            ++row_entries;
        }
        if (rows == 0) cols = row_entries;
        if (row_entries != cols) throw ParseError("matrix rows have different lengths");
        ++rows;
    }
    if (rows != cols) throw ParseError(fmt::format("matrix is {}x{}, expected square", rows, cols));
    return ComplexMatrix(rows, std::move(entries));
}

ComplexMatrix read_matrix(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_matrix(buffer.str());
}

std::string trajectory_csv(const std::vector<TrajectoryRow>& rows) {
    std::string out = "k,negativity,fidelity,cumulative_probability\n";
    for (const TrajectoryRow& r : rows) {
        out += fmt::format("{},{},{},{}\n", r.k, format_real(r.negativity), format_real(r.fidelity),
                           format_real(r.cumulative_probability));
    }
    return out;
}

std::string rounds_csv(double initial_negativity, double initial_fidelity,
                       const std::vector<RoundSummary>& rounds) {
    std::string out = "round,negativity,fidelity,round_probability,cumulative_probability\n";
    out += fmt::format("0,{},{},1,1\n", format_real(initial_negativity), format_real(initial_fidelity));
    for (std::size_t r = 0; r < rounds.size(); ++r) {
        const RoundSummary& s = rounds[r];
        out += fmt::format("{},{},{},{},{}\n", r + 1, format_real(s.negativity), format_real(s.fidelity),
                           format_real(s.round_probability), format_real(s.cumulative_probability));
    }
    return out;
}

std::string sweep_csv(const SweepResult& result) {
    std::string out = "i,j,k,outcome_a,outcome_b,status,negativity,fidelity,probability\n";
    for (const SweepCell& c : result.table) {
        if (c.ok) {
            out += fmt::format("{},{},{},{},{},ok,{},{},{}\n", c.pair.first, c.pair.second, c.k, c.outcome.first,
                               c.outcome.second, format_real(c.negativity), format_real(c.fidelity),
                               format_real(c.probability));
        } else {
            out += fmt::format("{},{},{},{},{},dead,nan,nan,0\n", c.pair.first, c.pair.second, c.k,
                               c.outcome.first, c.outcome.second);
        }
    }
    return out;
}

std::string baseline_csv(double initial_fidelity, const std::vector<XorRoundResult>& rounds) {
    std::string out = "round,fidelity,success_probability,cumulative_probability\n";
    out += fmt::format("0,{},1,1\n", format_real(initial_fidelity));
    for (std::size_t r = 0; r < rounds.size(); ++r) {
        out += fmt::format("{},{},{},{}\n", r + 1, format_real(rounds[r].fidelity_next),
                           format_real(rounds[r].success_probability), format_real(rounds[r].cumulative_probability));
    }
    return out;
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json outputs_json = nlohmann::json::array();
    for (const ManifestEntry& e : outputs) outputs_json.push_back({{"file", e.file}, {"description", e.description}});
    return {{"tool", std::string(kToolName)},
            {"version", std::string(kToolVersion)},
            {"command", command},
            {"config", config_text},
            {"parameters", parameters},
            {"outputs", outputs_json}};
}

}  // namespace qzeno
