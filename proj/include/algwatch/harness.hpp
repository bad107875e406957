#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "algwatch/hashing.hpp"
#include "algwatch/protocol.hpp"
#include "algwatch/theory.hpp"
#include "algwatch/watchdog.hpp"

namespace algwatch {

enum class EngineKind { Algebraic, Trellis };

struct SourceDistribution {
    enum class Kind { Uniform, Fixed };
    Kind kind = Kind::Uniform;
    Word x1 = 0;
    Word x2 = 0;

    friend bool operator==(const SourceDistribution&, const SourceDistribution&) = default;
};

/// One Monte Carlo experiment. JSON config files use these member names as keys.
struct SimConfig {
    unsigned n = 8;
    unsigned h = 3;
    unsigned d = kDefaultHashDegree;
    double p12 = 0.1;
    double p21 = 0.1;
    double p31 = 0.1;
    double p32 = 0.1;
    double epsilon = 0.01;
    AdversaryStrategy adversary = adversary::RandomNonzeroError{};
    EngineKind engine = EngineKind::Algebraic;
    double threshold = kDefaultThreshold;  // trellis engine only
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    SourceDistribution sources;
    bool allow_zero_coeffs = false;

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Throws ValidationError naming every offending field.
void validate(const SimConfig& cfg);

/// Radii the watchers use on each interference edge.
TheoryParams radii_for(const SimConfig& cfg);

/// A binomial proportion with its Wilson 95% score interval.
struct Proportion {
    std::uint64_t count = 0;
    std::uint64_t trials = 0;
    double estimate = 0.0;
    double lower = 0.0;
    double upper = 0.0;

    double half_width() const noexcept { return (upper - lower) / 2.0; }
    friend bool operator==(const Proportion&, const Proportion&) = default;
};

Proportion wilson_interval(std::uint64_t count, std::uint64_t trials);

/// Per-arm counts. passed_both + flagged_any == trials.
struct ArmTally {
    std::uint64_t trials = 0;
    std::uint64_t flagged_v1 = 0;
    std::uint64_t flagged_v2 = 0;
    std::uint64_t flagged_any = 0;
    std::uint64_t passed_both = 0;

    ArmTally& operator+=(const ArmTally& o) noexcept;
    friend bool operator==(const ArmTally&, const ArmTally&) = default;
};

struct SimReport {
    SimConfig config;
    TheoryParams radii;
    ArmTally honest;
    ArmTally malicious;  // all zero when the adversary is honest
    Proportion gamma;    // honest relay flagged by either watcher
    Proportion gamma_v1;
    Proportion gamma_v2;
    std::optional<Proportion> beta;  // corrupted relay passed by both watchers
    std::optional<Proportion> beta_v1;
    std::optional<Proportion> beta_v2;
    Prediction predicted;
    double predicted_beta_no_overhear = 0.0;
    std::string trial_log;  // path of the per-trial log, empty when none was written
    double wall_time_s = 0.0;

    friend bool operator==(const SimReport&, const SimReport&) = default;
};

struct RunOptions {
    /// 0 means WATCHDOG_THREADS if set, otherwise the hardware concurrency.
    unsigned threads = 0;
    /// When set, one CSV line per trial is written here.
    std::optional<std::filesystem::path> trial_log;
};

unsigned resolve_thread_count(unsigned requested);

/// Runs cfg.trials independent trials. Trial i draws from streams derived
/// from (cfg.seed, i) only, so the tallies do not depend on the worker count.
/// Honest and corrupted relays share each trial's sources and channel noise.
SimReport run_trials(const SimConfig& cfg, const RunOptions& opts = {});

/// Axes accepted by sweep() and apply_axis().
const std::vector<std::string>& sweep_axes();
/// Throws ValidationError for unknown axes or non-integral values on integer fields.
SimConfig apply_axis(SimConfig cfg, const std::string& axis, double value);
/// One report per value; the i-th run uses seed base.seed ^ i.
std::vector<SimReport> sweep(const SimConfig& base, const std::string& axis, std::span<const double> values,
                             const RunOptions& opts = {});

enum class ReportFormat { Json, Csv };

/// CSV column names, in order.
const std::vector<std::string>& csv_columns();

nlohmann::json to_json(const SimConfig& cfg);
/// Throws ValidationError on unknown keys or malformed values.
SimConfig config_from_json(const nlohmann::json& j);
SimConfig load_config(const std::filesystem::path& path);

nlohmann::json to_json(const SimReport& rep);
SimReport report_from_json(const nlohmann::json& j);

std::string render_report(std::span<const SimReport> reports, ReportFormat format);
/// Throws IoError when the file cannot be written.
void write_report(std::span<const SimReport> reports, const std::filesystem::path& path, ReportFormat format);
inline void write_report(const SimReport& rep, const std::filesystem::path& path, ReportFormat format) {
    write_report(std::span<const SimReport>(&rep, 1), path, format);
}

}  // namespace algwatch
