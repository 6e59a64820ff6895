#pragma once

// Named end-to-end scenarios, each driving a seeded simulation and judging
// the outcome with named checks. Reports and traces are deterministic
// functions of (scenario, seed, overrides).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "owncash/crypto.hpp"
#include "owncash/sim.hpp"

namespace owncash {

struct Verdict {
    std::string check;
    bool pass = false;
    std::string detail;
};

// Knobs exposed to the CLI; everything else about a scenario is fixed code.
struct PolicyOverrides {
    std::optional<bool> require_acceptance_signature;
    std::optional<bool> retain_history;
    std::optional<uint64_t> quorum_threshold;
};

struct ScenarioReport {
    std::string scenario_name;
    uint64_t seed = 0;
    std::vector<Verdict> verdicts;
    std::map<NodeId, std::map<uint64_t, crypto::PublicKey>> final_owners;
    std::vector<std::pair<NodeId, std::string>> node_exports;
    std::string trace_text;
    std::string trace_path;  // filled by the CLI when a trace file is written

    bool all_passed() const;

    // One "PASS|FAIL <check> <detail>" line per verdict, then an OWNERS
    // block with each node's db export.
    std::string to_text() const;
};

struct UnknownScenario : std::runtime_error {
    explicit UnknownScenario(const std::string& name)
        : std::runtime_error("unknown scenario \"" + name + "\"") {}
};

std::vector<std::string> scenario_names();

ScenarioReport run_scenario(const std::string& name, uint64_t seed,
                            const PolicyOverrides& overrides = {});

}  // namespace owncash
