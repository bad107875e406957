#include "algwatch/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "algwatch/channel.hpp"
#include "algwatch/errors.hpp"

namespace algwatch {

using nlohmann::json;

namespace {

constexpr double kWilsonZ = 1.959963984540054;  // two-sided 95%
constexpr std::uint64_t kChunk = 512;

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string fmt12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct TrialOutcome {
    Word x1 = 0, x2 = 0, alpha1 = 0, alpha2 = 0, error = 0;
    bool honest_flag[2] = {false, false};
    bool malicious_flag[2] = {false, false};
};

Verdict run_engine(const SimConfig& cfg, const Observation& obs) {
    return cfg.engine == EngineKind::Algebraic ? algebraic_check(obs) : trellis_check(obs, cfg.threshold);
}

TrialOutcome run_one(const SimConfig& cfg, std::uint64_t trial) {
    const FieldSpec& f = canonical_spec(cfg.n);
    RandomSource scn_rng(cfg.seed, 2 * trial);
    RandomSource adv_rng(cfg.seed, 2 * trial + 1);

    HashFunction hash = sample_hash(scn_rng, cfg.d, f, cfg.h);
    Word x1 = 0, x2 = 0;
    if (cfg.sources.kind == SourceDistribution::Kind::Fixed) {
        x1 = cfg.sources.x1;
        x2 = cfg.sources.x2;
    } else {
        x1 = static_cast<Word>(scn_rng.below(f.order()));
        x2 = static_cast<Word>(scn_rng.below(f.order()));
    }
    const Word lowest_coeff = cfg.allow_zero_coeffs ? 0 : 1;
    const auto a1 = static_cast<Word>(scn_rng.between(lowest_coeff, f.mask()));
    const auto a2 = static_cast<Word>(scn_rng.between(lowest_coeff, f.mask()));

    InterferenceChannels ch{BinarySymmetricChannel(cfg.p12), BinarySymmetricChannel(cfg.p21),
                            BinarySymmetricChannel(cfg.p31), BinarySymmetricChannel(cfg.p32)};
    const Word n12 = ch.p12.sample_noise(cfg.n, scn_rng);
    const Word n21 = ch.p21.sample_noise(cfg.n, scn_rng);
    const Word n31 = ch.p31.sample_noise(cfg.n, scn_rng);
    const Word n32 = ch.p32.sample_noise(cfg.n, scn_rng);

    const Scenario scn = make_scenario(std::move(hash), FieldElement(f, x1), FieldElement(f, x2), FieldElement(f, a1),
                                       FieldElement(f, a2), ch, cfg.epsilon, cfg.allow_zero_coeffs);
    const std::array<Packet, 2> sources{source_packet(scn, 1), source_packet(scn, 2)};

    TrialOutcome out{x1, x2, a1, a2};
    auto check = [&](const Packet& relay, bool flags[2]) {
        flags[0] = run_engine(cfg, observe_with_noise(1, scn, sources, relay, n21, n31)).flagged();
        flags[1] = run_engine(cfg, observe_with_noise(2, scn, sources, relay, n12, n32)).flagged();
    };
    check(relay_packet_with_error(scn, 0), out.honest_flag);
    if (is_malicious(cfg.adversary)) {
        out.error = choose_error(scn, cfg.adversary, adv_rng);
        check(relay_packet_with_error(scn, out.error), out.malicious_flag);
    }
    return out;
}

void tally(ArmTally& arm, const bool flags[2]) {
    ++arm.trials;
    arm.flagged_v1 += flags[0];
    arm.flagged_v2 += flags[1];
    if (flags[0] || flags[1])
        ++arm.flagged_any;
    else
        ++arm.passed_both;
}

bool noiseless(const SimConfig& cfg) { return cfg.p12 == 0 && cfg.p21 == 0 && cfg.p31 == 0 && cfg.p32 == 0; }

std::string engine_name(EngineKind e) { return e == EngineKind::Algebraic ? "algebraic" : "trellis"; }

}  // namespace

ArmTally& ArmTally::operator+=(const ArmTally& o) noexcept {
    trials += o.trials;
    flagged_v1 += o.flagged_v1;
    flagged_v2 += o.flagged_v2;
    flagged_any += o.flagged_any;
    passed_both += o.passed_both;
    return *this;
}

void validate(const SimConfig& cfg) {
    std::vector<std::string> bad;
    std::string detail;
    const bool n_ok = cfg.n >= kMinFieldWidth && cfg.n <= kMaxFieldWidth;
    if (!n_ok) bad.push_back("n");
    if (cfg.h < 1 || cfg.h > cfg.n) bad.push_back("h");
    if (cfg.d > 64) bad.push_back("d");
    const std::pair<const char*, double> probs[] = {
        {"p12", cfg.p12}, {"p21", cfg.p21}, {"p31", cfg.p31}, {"p32", cfg.p32}};
    for (const auto& [name, p] : probs)
        if (!(p >= 0.0 && p <= 0.5)) bad.push_back(name);
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) bad.push_back("epsilon");
    if (!std::isfinite(cfg.threshold)) bad.push_back("threshold");
    if (cfg.trials < 1) bad.push_back("trials");
    if (n_ok) {
        try {
            validate_strategy(cfg.adversary, cfg.n);
        } catch (const Error& e) {
            bad.push_back("adversary");
            detail = e.what();
        }
        if (cfg.engine == EngineKind::Trellis && cfg.n > kMaxTrellisWidth) bad.push_back("engine");
        if (cfg.sources.kind == SourceDistribution::Kind::Fixed &&
            (cfg.sources.x1 >> cfg.n || cfg.sources.x2 >> cfg.n))
            bad.push_back("sources");
    }
    if (!bad.empty()) throw ValidationError(std::move(bad), detail);
}

TheoryParams radii_for(const SimConfig& cfg) {
    return {cfg.n,
            cfg.h,
            radius_for_epsilon(cfg.n, cfg.p12, cfg.epsilon).r,
            radius_for_epsilon(cfg.n, cfg.p21, cfg.epsilon).r,
            radius_for_epsilon(cfg.n, cfg.p31, cfg.epsilon).r,
            radius_for_epsilon(cfg.n, cfg.p32, cfg.epsilon).r};
}

Proportion wilson_interval(std::uint64_t count, std::uint64_t trials) {
    Proportion p{count, trials};
    if (trials == 0) return p;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(count) / n;
    const double z2 = kWilsonZ * kWilsonZ;
    const double denom = 1.0 + z2 / n;
    const double centre = (phat + z2 / (2.0 * n)) / denom;
    const double half = kWilsonZ * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    p.estimate = phat;
    p.lower = count == 0 ? 0.0 : std::max(0.0, centre - half);
    p.upper = count == trials ? 1.0 : std::min(1.0, centre + half);
    return p;
}

unsigned resolve_thread_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("WATCHDOG_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SimReport run_trials(const SimConfig& cfg, const RunOptions& opts) {
    validate(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const unsigned workers = static_cast<unsigned>(
        std::min<std::uint64_t>(resolve_thread_count(opts.threads), (cfg.trials + kChunk - 1) / kChunk));
    const bool keep_log = opts.trial_log.has_value();
    const bool check_noiseless =
        noiseless(cfg) && (cfg.engine == EngineKind::Algebraic || cfg.threshold <= 1.0);

    std::vector<TrialOutcome> log(keep_log ? cfg.trials : 0);
    std::vector<ArmTally> honest(workers), malicious(workers);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;

    auto work = [&](unsigned w) {
        try {
            for (;;) {
                const std::uint64_t begin = next.fetch_add(kChunk);
                if (begin >= cfg.trials) return;
                const std::uint64_t end = std::min(cfg.trials, begin + kChunk);
                for (std::uint64_t i = begin; i < end; ++i) {
                    const TrialOutcome out = run_one(cfg, i);
                    if (check_noiseless && (out.honest_flag[0] || out.honest_flag[1]))
                        throw std::logic_error("honest relay flagged over noiseless channels in trial " +
                                               std::to_string(i));
                    tally(honest[w], out.honest_flag);
                    if (is_malicious(cfg.adversary)) tally(malicious[w], out.malicious_flag);
                    if (keep_log) log[i] = out;
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next.store(cfg.trials);
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
        work(0);
    }
    if (failure) std::rethrow_exception(failure);

    SimReport rep;
    rep.config = cfg;
    rep.radii = radii_for(cfg);
    for (unsigned w = 0; w < workers; ++w) {
        rep.honest += honest[w];
        rep.malicious += malicious[w];
    }
    rep.gamma = wilson_interval(rep.honest.flagged_any, rep.honest.trials);
    rep.gamma_v1 = wilson_interval(rep.honest.flagged_v1, rep.honest.trials);
    rep.gamma_v2 = wilson_interval(rep.honest.flagged_v2, rep.honest.trials);
    if (is_malicious(cfg.adversary)) {
        const auto& m = rep.malicious;
        rep.beta = wilson_interval(m.passed_both, m.trials);
        rep.beta_v1 = wilson_interval(m.trials - m.flagged_v1, m.trials);
        rep.beta_v2 = wilson_interval(m.trials - m.flagged_v2, m.trials);
    }
    rep.predicted = predict(rep.radii, cfg.epsilon);
    rep.predicted_beta_no_overhear = predicted_beta_no_overhear(cfg.n, cfg.h, rep.radii.r31, rep.radii.r32);

    if (keep_log) {
        std::ofstream out(*opts.trial_log);
        if (!out) throw IoError("cannot write trial log " + opts.trial_log->string());
        out << "trial,x1,x2,alpha1,alpha2,error,honest_v1,honest_v2,malicious_v1,malicious_v2\n";
        for (std::uint64_t i = 0; i < cfg.trials; ++i) {
            const auto& o = log[i];
            out << i << ',' << o.x1 << ',' << o.x2 << ',' << o.alpha1 << ',' << o.alpha2 << ',' << o.error << ','
                << o.honest_flag[0] << ',' << o.honest_flag[1] << ',' << o.malicious_flag[0] << ','
                << o.malicious_flag[1] << '\n';
        }
        if (!out) throw IoError("failed writing trial log " + opts.trial_log->string());
        rep.trial_log = opts.trial_log->string();
    }
    rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

const std::vector<std::string>& sweep_axes() {
    static const std::vector<std::string> axes{"n",   "h",   "d",       "p12",       "p21",    "p31",
                                               "p32", "epsilon", "threshold", "trials"};
    return axes;
}

SimConfig apply_axis(SimConfig cfg, const std::string& axis, double value) {
    auto as_count = [&](auto& field) {
        if (!(value >= 0.0) || value != std::floor(value) || value > 1e15)
            throw ValidationError({axis}, "expected a non-negative integer, got " + fmt12(value));
        field = static_cast<std::remove_reference_t<decltype(field)>>(value);
    };
    if (axis == "n") as_count(cfg.n);
    else if (axis == "h") as_count(cfg.h);
    else if (axis == "d") as_count(cfg.d);
    else if (axis == "trials") as_count(cfg.trials);
    else if (axis == "p12") cfg.p12 = value;
    else if (axis == "p21") cfg.p21 = value;
    else if (axis == "p31") cfg.p31 = value;
    else if (axis == "p32") cfg.p32 = value;
    else if (axis == "epsilon") cfg.epsilon = value;
    else if (axis == "threshold") cfg.threshold = value;
    else throw ValidationError({axis}, "unknown sweep axis");
    return cfg;
}

std::vector<SimReport> sweep(const SimConfig& base, const std::string& axis, std::span<const double> values,
                             const RunOptions& opts) {
    const auto& axes = sweep_axes();
    if (std::find(axes.begin(), axes.end(), axis) == axes.end())
        throw ValidationError({axis}, "unknown sweep axis");
    std::vector<SimConfig> configs;
    for (std::size_t i = 0; i < values.size(); ++i) {
        SimConfig cfg = apply_axis(base, axis, values[i]);
        cfg.seed = base.seed ^ static_cast<std::uint64_t>(i);
        validate(cfg);
        configs.push_back(cfg);
    }
    std::vector<SimReport> out;
    out.reserve(configs.size());
    for (const auto& cfg : configs) {
        RunOptions run = opts;
        run.trial_log.reset();
        out.push_back(run_trials(cfg, run));
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

json strategy_to_json(const AdversaryStrategy& s) {
    json j{{"kind", strategy_name(s)}};
    if (const auto* f = std::get_if<adversary::FixedError>(&s)) j["error"] = f->error;
    if (const auto* w = std::get_if<adversary::WeightBoundedError>(&s)) j["max_weight"] = w->max_weight;
    return j;
}

AdversaryStrategy strategy_from_json(const json& j) {
    const std::string kind = j.is_string() ? j.get<std::string>() : j.at("kind").get<std::string>();
    if (kind == "honest") return adversary::Honest{};
    if (kind == "random_nonzero_error") return adversary::RandomNonzeroError{};
    if (kind == "exhaustive_best") return adversary::ExhaustiveBest{};
    if (kind == "fixed_error") return adversary::FixedError{j.at("error").get<Word>()};
    if (kind == "weight_bounded_error") return adversary::WeightBoundedError{j.at("max_weight").get<unsigned>()};
    throw std::invalid_argument("unknown adversary kind '" + kind + "'");
}

json sources_to_json(const SourceDistribution& s) {
    if (s.kind == SourceDistribution::Kind::Uniform) return {{"kind", "uniform"}};
    return {{"kind", "fixed"}, {"x1", s.x1}, {"x2", s.x2}};
}

SourceDistribution sources_from_json(const json& j) {
    const std::string kind = j.is_string() ? j.get<std::string>() : j.at("kind").get<std::string>();
    if (kind == "uniform") return {};
    if (kind == "fixed")
        return {SourceDistribution::Kind::Fixed, j.at("x1").get<Word>(), j.at("x2").get<Word>()};
    throw std::invalid_argument("unknown source distribution '" + kind + "'");
}

json proportion_to_json(const Proportion& p) {
    return {{"count", p.count},
            {"trials", p.trials},
            {"estimate", round12(p.estimate)},
            {"lower", round12(p.lower)},
            {"upper", round12(p.upper)},
            {"half_width", round12(p.half_width())}};
}

// The interval is recomputed from the counts; the serialized bounds are rounded.
Proportion proportion_from_json(const json& j) {
    return wilson_interval(j.at("count").get<std::uint64_t>(), j.at("trials").get<std::uint64_t>());
}

json optional_proportion(const std::optional<Proportion>& p) { return p ? proportion_to_json(*p) : json(nullptr); }

std::optional<Proportion> optional_proportion_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return proportion_from_json(j);
}

json arm_to_json(const ArmTally& a) {
    return {{"trials", a.trials},
            {"flagged_v1", a.flagged_v1},
            {"flagged_v2", a.flagged_v2},
            {"flagged_any", a.flagged_any},
            {"passed_both", a.passed_both}};
}

ArmTally arm_from_json(const json& j) {
    return {j.at("trials").get<std::uint64_t>(), j.at("flagged_v1").get<std::uint64_t>(),
            j.at("flagged_v2").get<std::uint64_t>(), j.at("flagged_any").get<std::uint64_t>(),
            j.at("passed_both").get<std::uint64_t>()};
}

}  // namespace

json to_json(const SimConfig& cfg) {
    return {{"n", cfg.n},
            {"h", cfg.h},
            {"d", cfg.d},
            {"p12", cfg.p12},
            {"p21", cfg.p21},
            {"p31", cfg.p31},
            {"p32", cfg.p32},
            {"epsilon", cfg.epsilon},
            {"adversary", strategy_to_json(cfg.adversary)},
            {"engine", engine_name(cfg.engine)},
            {"threshold", cfg.threshold},
            {"trials", cfg.trials},
            {"seed", cfg.seed},
            {"sources", sources_to_json(cfg.sources)},
            {"allow_zero_coeffs", cfg.allow_zero_coeffs}};
}

SimConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError({"<root>"}, "config must be a JSON object");
    SimConfig cfg;
    std::vector<std::string> bad;
    std::string detail;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "n") cfg.n = value.get<unsigned>();
            else if (key == "h") cfg.h = value.get<unsigned>();
            else if (key == "d") cfg.d = value.get<unsigned>();
            else if (key == "p12") cfg.p12 = value.get<double>();
            else if (key == "p21") cfg.p21 = value.get<double>();
            else if (key == "p31") cfg.p31 = value.get<double>();
            else if (key == "p32") cfg.p32 = value.get<double>();
            else if (key == "epsilon") cfg.epsilon = value.get<double>();
            else if (key == "adversary") cfg.adversary = strategy_from_json(value);
            else if (key == "engine") {
                const auto name = value.get<std::string>();
                if (name == "algebraic") cfg.engine = EngineKind::Algebraic;
                else if (name == "trellis") cfg.engine = EngineKind::Trellis;
                else throw std::invalid_argument("unknown engine '" + name + "'");
            }
            else if (key == "threshold") cfg.threshold = value.get<double>();
            else if (key == "trials") cfg.trials = value.get<std::uint64_t>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "sources") cfg.sources = sources_from_json(value);
            else if (key == "allow_zero_coeffs") cfg.allow_zero_coeffs = value.get<bool>();
            else throw std::invalid_argument("unknown key");
        } catch (const std::exception& e) {
            bad.push_back(key);
            if (detail.empty()) detail = key + ": " + e.what();
        }
    }
    if (!bad.empty()) throw ValidationError(std::move(bad), detail);
    return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError({"<root>"}, e.what());
    }
    return config_from_json(j);
}

json to_json(const SimReport& rep) {
    const auto& r = rep.radii;
    const auto& p = rep.predicted;
    return {{"format", "algwatch-report"},
            {"version", 1},
            {"config", to_json(rep.config)},
            {"radii", {{"r12", r.r12}, {"r21", r.r21}, {"r31", r.r31}, {"r32", r.r32}}},
            {"honest", arm_to_json(rep.honest)},
            {"malicious", arm_to_json(rep.malicious)},
            {"gamma", proportion_to_json(rep.gamma)},
            {"gamma_v1", proportion_to_json(rep.gamma_v1)},
            {"gamma_v2", proportion_to_json(rep.gamma_v2)},
            {"beta", optional_proportion(rep.beta)},
            {"beta_v1", optional_proportion(rep.beta_v1)},
            {"beta_v2", optional_proportion(rep.beta_v2)},
            {"predicted",
             {{"gamma_bound", round12(p.gamma_bound)},
              {"gamma_bound_per_watcher", round12(p.gamma_bound_per_watcher)},
              {"beta", round12(p.beta)},
              {"beta_v1", round12(p.beta_v1)},
              {"beta_v2", round12(p.beta_v2)},
              {"beta_no_overhear", round12(rep.predicted_beta_no_overhear)}}},
            {"variance_reduction", "common random numbers: honest and corrupted relays share sources and noise"},
            {"trial_log", rep.trial_log.empty() ? json(nullptr) : json(rep.trial_log)},
            {"wall_time_s", round12(rep.wall_time_s)}};
}

SimReport report_from_json(const json& j) {
    SimReport rep;
    rep.config = config_from_json(j.at("config"));
    const auto& r = j.at("radii");
    rep.radii = {rep.config.n, rep.config.h, r.at("r12").get<unsigned>(), r.at("r21").get<unsigned>(),
                 r.at("r31").get<unsigned>(), r.at("r32").get<unsigned>()};
    rep.honest = arm_from_json(j.at("honest"));
    rep.malicious = arm_from_json(j.at("malicious"));
    rep.gamma = proportion_from_json(j.at("gamma"));
    rep.gamma_v1 = proportion_from_json(j.at("gamma_v1"));
    rep.gamma_v2 = proportion_from_json(j.at("gamma_v2"));
    rep.beta = optional_proportion_from(j.at("beta"));
    rep.beta_v1 = optional_proportion_from(j.at("beta_v1"));
    rep.beta_v2 = optional_proportion_from(j.at("beta_v2"));
    const auto& p = j.at("predicted");
    rep.predicted = {p.at("gamma_bound").get<double>(), p.at("gamma_bound_per_watcher").get<double>(),
                     p.at("beta").get<double>(), p.at("beta_v1").get<double>(), p.at("beta_v2").get<double>()};
    rep.predicted_beta_no_overhear = p.at("beta_no_overhear").get<double>();
    if (!j.at("trial_log").is_null()) rep.trial_log = j.at("trial_log").get<std::string>();
    rep.wall_time_s = j.at("wall_time_s").get<double>();
    return rep;
}

// ---------------------------------------------------------------------------
// CSV

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols{
        "n",          "h",          "d",          "p12",         "p21",          "p31",
        "p32",        "epsilon",    "adversary",  "engine",      "threshold",    "trials",
        "seed",       "r12",        "r21",        "r31",         "r32",          "honest_flagged",
        "gamma",      "gamma_lower", "gamma_upper", "malicious_passed", "beta", "beta_lower",
        "beta_upper", "beta_v1",    "beta_v2",    "predicted_gamma_bound", "predicted_beta",
        "predicted_beta_v1", "predicted_beta_v2", "predicted_beta_no_overhear", "wall_time_s"};
    return cols;
}

namespace {

std::string csv_row(const SimReport& rep) {
    const auto& c = rep.config;
    const auto& r = rep.radii;
    auto opt = [](const std::optional<Proportion>& p, double Proportion::*field) {
        return p ? fmt12((*p).*field) : std::string();
    };
    std::ostringstream row;
    row << c.n << ',' << c.h << ',' << c.d << ',' << fmt12(c.p12) << ',' << fmt12(c.p21) << ',' << fmt12(c.p31)
        << ',' << fmt12(c.p32) << ',' << fmt12(c.epsilon) << ',' << strategy_name(c.adversary) << ','
        << engine_name(c.engine) << ',' << fmt12(c.threshold) << ',' << c.trials << ',' << c.seed << ',' << r.r12
        << ',' << r.r21 << ',' << r.r31 << ',' << r.r32 << ',' << rep.honest.flagged_any << ','
        << fmt12(rep.gamma.estimate) << ',' << fmt12(rep.gamma.lower) << ',' << fmt12(rep.gamma.upper) << ','
        << rep.malicious.passed_both << ',' << opt(rep.beta, &Proportion::estimate) << ','
        << opt(rep.beta, &Proportion::lower) << ',' << opt(rep.beta, &Proportion::upper) << ','
        << opt(rep.beta_v1, &Proportion::estimate) << ',' << opt(rep.beta_v2, &Proportion::estimate) << ','
        << fmt12(rep.predicted.gamma_bound) << ',' << fmt12(rep.predicted.beta) << ','
        << fmt12(rep.predicted.beta_v1) << ',' << fmt12(rep.predicted.beta_v2) << ','
        << fmt12(rep.predicted_beta_no_overhear) << ',' << fmt12(rep.wall_time_s);
    return row.str();
}

}  // namespace

std::string render_report(std::span<const SimReport> reports, ReportFormat format) {
    if (format == ReportFormat::Json) {
        json doc;
        if (reports.size() == 1) {
            doc = to_json(reports.front());
        } else {
            doc = {{"format", "algwatch-sweep"}, {"version", 1}, {"reports", json::array()}};
            for (const auto& r : reports) doc["reports"].push_back(to_json(r));
        }
        return doc.dump(2) + "\n";
    }
    std::string out;
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += '\n';
    for (const auto& r : reports) out += csv_row(r) + '\n';
    return out;
}

void write_report(std::span<const SimReport> reports, const std::filesystem::path& path, ReportFormat format) {
    const std::string text = render_report(reports, format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace algwatch
