// algwatch: closed-form predictions and Monte Carlo runs for the two-hop
// algebraic watchdog.
//
// Exit codes: 0 success, 1 selftest failure, 2 validation error, 3 I/O error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "algwatch/errors.hpp"
#include "algwatch/harness.hpp"
#include "algwatch/testing/oracles.hpp"
#include "algwatch/theory.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

algwatch::ReportFormat parse_format(const std::string& s) {
    return s == "csv" ? algwatch::ReportFormat::Csv : algwatch::ReportFormat::Json;
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size()) throw algwatch::ValidationError({"values"}, "not a number: '" + item + "'");
        out.push_back(v);
    }
    return out;
}

void emit(std::span<const algwatch::SimReport> reports, const std::string& out, const std::string& format) {
    if (out.empty() || out == "-")
        std::cout << algwatch::render_report(reports, parse_format(format));
    else
        algwatch::write_report(reports, out, parse_format(format));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Algebraic watchdog simulator for two-hop wireless network coding"};
    app.require_subcommand(1);

    // predict
    auto* predict = app.add_subcommand("predict", "Closed-form misdetection probabilities");
    algwatch::TheoryParams tp;
    bool no_overhear = false;
    predict->set_help_flag("--help", "Print this help message and exit");  // frees -h/--h for the hash width
    predict->add_option("--n", tp.n, "Field width in bits")->required();
    predict->add_option("--h", tp.h, "Hash width in bits")->required();
    predict->add_option("--r12", tp.r12, "Radius on the v1 -> v2 interference edge");
    predict->add_option("--r21", tp.r21, "Radius on the v2 -> v1 interference edge");
    predict->add_option("--r31", tp.r31, "Radius on the relay -> v1 edge")->required();
    predict->add_option("--r32", tp.r32, "Radius on the relay -> v2 edge")->required();
    predict->add_flag("--no-overhear", no_overhear, "Sources cannot overhear each other (r12 = r21 = n)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo experiment");
    std::string config_path, out_path, format = "json", trial_log;
    std::optional<std::uint64_t> seed, trials;
    unsigned threads = 0;
    simulate->add_option("--config", config_path, "JSON config file")->required();
    simulate->add_option("--seed", seed, "Override the config seed");
    simulate->add_option("--trials", trials, "Override the trial count");
    simulate->add_option("--out", out_path, "Report path (stdout when omitted)");
    simulate->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    simulate->add_option("--trial-log", trial_log, "Write one CSV line per trial to this path");
    simulate->add_option("--threads", threads, "Worker count (default: WATCHDOG_THREADS or all cores)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Run one experiment per value of a config field");
    std::string axis, values;
    sweep->add_option("--config", config_path, "JSON config file")->required();
    sweep->add_option("--axis", axis, "Config field to vary")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required();
    sweep->add_option("--out", out_path, "Report path (stdout when omitted)");
    sweep->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sweep->add_option("--threads", threads, "Worker count");

    auto* selftest = app.add_subcommand("selftest", "Field-axiom, oracle-equivalence and radius-oracle suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (predict->parsed()) {
            if (no_overhear) tp.r12 = tp.r21 = tp.n;
            algwatch::validate(tp);
            std::printf("n=%u h=%u r12=%u r21=%u r31=%u r32=%u\n", tp.n, tp.h, tp.r12, tp.r21, tp.r31, tp.r32);
            std::printf("misdetection_v1   %.12g\n", algwatch::misdetection_v1(tp));
            std::printf("misdetection_v2   %.12g\n", algwatch::misdetection_v2(tp));
            std::printf("predicted_beta    %.12g\n", algwatch::predicted_beta(tp));
            if (no_overhear)
                std::printf("beta_no_overhear  %.12g\n",
                            algwatch::predicted_beta_no_overhear(tp.n, tp.h, tp.r31, tp.r32));
            return 0;
        }
        if (simulate->parsed()) {
            algwatch::SimConfig cfg = algwatch::load_config(config_path);
            if (seed) cfg.seed = *seed;
            if (trials) cfg.trials = *trials;
            algwatch::RunOptions opts{threads, std::nullopt};
            if (!trial_log.empty()) opts.trial_log = trial_log;
            const auto rep = algwatch::run_trials(cfg, opts);
            emit(std::span(&rep, 1), out_path, format);
            return 0;
        }
        if (sweep->parsed()) {
            const algwatch::SimConfig cfg = algwatch::load_config(config_path);
            const auto vals = parse_values(values);
            const auto reps = algwatch::sweep(cfg, axis, vals, {threads, std::nullopt});
            emit(reps, out_path, format);
            return 0;
        }
        if (selftest->parsed()) {
            bool ok = true;
            for (const auto& s : algwatch::oracle::run_selftest()) {
                std::printf("%-20s %s (%llu checks)%s%s\n", s.name.c_str(), s.passed ? "PASS" : "FAIL",
                            static_cast<unsigned long long>(s.checks), s.passed ? "" : ": ",
                            s.first_failure.c_str());
                ok = ok && s.passed;
            }
            return ok ? 0 : 1;
        }
    } catch (const algwatch::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const algwatch::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
