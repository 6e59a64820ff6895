// Scenario runner CLI.
//
//   owncash --list
//   owncash --scenario double_spend --seed 7 [--report r.txt] [--trace t.txt]
//           [--policy retain_history=true ...]
//   owncash --all
//
// Exit codes: 0 all verdicts pass, 1 verdict failure, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "owncash/scenario.hpp"

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

owncash::PolicyOverrides parse_policies(const std::vector<std::string>& pairs) {
    owncash::PolicyOverrides overrides;
    for (const std::string& pair : pairs) {
        size_t eq = pair.find('=');
        if (eq == std::string::npos) {
            throw UsageError("--policy expects key=value, got \"" + pair + "\"");
        }
        std::string key = pair.substr(0, eq);
        std::string value = pair.substr(eq + 1);

        auto parse_bool = [&](const std::string& v) {
            if (v == "true" || v == "1") return true;
            if (v == "false" || v == "0") return false;
            throw UsageError("policy " + key + " expects true/false");
        };

        if (key == "require_acceptance_signature") {
            overrides.require_acceptance_signature = parse_bool(value);
        } else if (key == "retain_history") {
            overrides.retain_history = parse_bool(value);
        } else if (key == "quorum_threshold") {
            try {
                overrides.quorum_threshold = std::stoull(value);
            } catch (const std::exception&) {
                throw UsageError("policy quorum_threshold expects an integer");
            }
        } else {
            throw UsageError("unknown policy key \"" + key + "\"");
        }
    }
    return overrides;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << content;
}

int run_single(const std::string& name, uint64_t seed,
               const owncash::PolicyOverrides& overrides,
               const std::string& report_path, const std::string& trace_path) {
    owncash::ScenarioReport report = owncash::run_scenario(name, seed, overrides);
    if (!trace_path.empty()) {
        write_file(trace_path, report.trace_text);
        report.trace_path = trace_path;
    }
    std::string text = report.to_text();
    if (!report_path.empty()) {
        write_file(report_path, text);
    }
    std::cout << text;
    return report.all_passed() ? 0 : 1;
}

int run_all(const owncash::PolicyOverrides& overrides) {
    const std::vector<std::string> names = owncash::scenario_names();
    constexpr uint64_t kSeedLo = 1, kSeedHi = 10;

    struct Outcome {
        bool pass = false;
        size_t failed_checks = 0;
    };
    std::vector<Outcome> outcomes(names.size() * (kSeedHi - kSeedLo + 1));

    const int64_t total = static_cast<int64_t>(outcomes.size());
    // Scenario runs share nothing; order of execution does not matter,
    // output order is fixed below.
#pragma omp parallel for schedule(dynamic)
    for (int64_t i = 0; i < total; ++i) {
        const std::string& name = names[i / (kSeedHi - kSeedLo + 1)];
        uint64_t seed = kSeedLo + (i % (kSeedHi - kSeedLo + 1));
        owncash::ScenarioReport report = owncash::run_scenario(name, seed, overrides);
        Outcome& o = outcomes[i];
        o.pass = report.all_passed();
        for (const owncash::Verdict& v : report.verdicts) {
            if (!v.pass) ++o.failed_checks;
        }
    }

    bool all_pass = true;
    for (size_t i = 0; i < outcomes.size(); ++i) {
        const std::string& name = names[i / (kSeedHi - kSeedLo + 1)];
        uint64_t seed = kSeedLo + (i % (kSeedHi - kSeedLo + 1));
        const Outcome& o = outcomes[i];
        all_pass = all_pass && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << name << " seed=" << seed;
        if (!o.pass) {
            std::cout << " failed_checks=" << o.failed_checks;
        }
        std::cout << '\n';
    }
    std::cout << (all_pass ? "ALL PASS" : "FAILURES PRESENT") << '\n';
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ownership-transfer e-cash scenario runner"};

    std::string scenario;
    uint64_t seed = 1;
    bool list = false;
    bool all = false;
    std::string report_path;
    std::string trace_path;
    std::vector<std::string> policies;

    app.add_option("--scenario", scenario, "scenario name (see --list)");
    app.add_option("--seed", seed, "simulation seed")->default_val(1);
    app.add_flag("--list", list, "list registered scenarios");
    app.add_flag("--all", all, "run every scenario for seeds 1..10");
    app.add_option("--report", report_path, "write the report to this file");
    app.add_option("--trace", trace_path, "write the event trace to this file");
    app.add_option("--policy", policies, "policy override key=value (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << app.help() << '\n';
        return 2;
    }

    try {
        if (list) {
            for (const std::string& name : owncash::scenario_names()) {
                std::cout << name << '\n';
            }
            return 0;
        }
        owncash::PolicyOverrides overrides = parse_policies(policies);
        if (all) {
            if (!report_path.empty() || !trace_path.empty()) {
                throw UsageError("--report/--trace apply to single-scenario runs");
            }
            return run_all(overrides);
        }
        if (scenario.empty()) {
            throw UsageError("one of --list, --scenario or --all is required");
        }
        return run_single(scenario, seed, overrides, report_path, trace_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n' << app.help() << '\n';
        return 2;
    } catch (const owncash::UnknownScenario& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
