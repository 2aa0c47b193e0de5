#pragma once

#include "eds/pfaffian.hpp"

#include <memory>
#include <string>
#include <vector>

namespace eds {

struct EmbeddedScenario {
    const char* id;
    const char* text;
    const char* sha256;   // pinned at build time
};
const std::vector<EmbeddedScenario>& embedded_scenarios();
const EmbeddedScenario* find_scenario(const std::string& id);
std::string sha256_hex(const std::string& data);
std::string golden_data_hash();   // hash over all pinned hashes

struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// coframe, structure rules and published dA rules built from scenario JSON
struct ScenarioModel {
    std::string id;
    Registry reg;
    Space sp{reg};
    std::vector<int> basis, connection;
    std::vector<Form> structure;                  // d of each basis form
    std::map<int, std::set<int>> d2_mod;          // basis position -> killed generators
    std::vector<Var> primaries;
    std::map<Var, Form> published;                // dA as printed
    std::vector<Var> free, targets;
};
std::unique_ptr<ScenarioModel> build_scenario(const std::string& json_text);

// d(d w^k) reduced by the scenario's d2_mod, with the given scalar rules in force
std::vector<Form> d2_residuals(ScenarioModel& m, const std::map<Var, Form>& rules);

struct FieldCheck {
    std::string field, expected, actual;
    bool ok = false;
};

struct ScenarioResult {
    std::string id, sha256, pinned;
    bool hash_ok = false;
    std::vector<std::string> d2_published;        // residuals with the published dA, "0" when identically zero
    std::size_t raw = 0, distinct = 0, scalar_distinct = 0, solved = 0, free_count = 0;
    std::vector<std::string> relations;           // "A6_2 = ..."
    std::vector<std::string> obstructions;
    int tableau_dim_before = 0;
    CartanReport report;
    bool derivatives_match = false;
    std::vector<std::string> derivative_mismatches;
    std::vector<std::vector<std::string>> tableau;   // after relations, printed entries
    std::vector<FieldCheck> checks;
    bool ok() const;
};

ScenarioResult verify_scenario(const std::string& json_text, const std::string& pinned_sha256, std::uint64_t seed);

}
