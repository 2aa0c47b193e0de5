#pragma once

#include "eds/pfaffian.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace eds {

struct ReductionStep {
    std::string assumption;
    std::string residual;   // printed form or expression computed at this step
    std::string relation;   // what was read off, empty if nothing
    std::string citation;
};

struct TableEntry {
    std::string name, expected, computed, residual, residual_mod;   // residual_mod: after the side relations
    bool ok = false;
};

struct CertificateCheck {
    std::vector<std::pair<std::string, std::string>> combo;   // coefficient, equation
    std::string value;
    bool valid = false;   // sum of coefficient * equation expands to value, value nonzero and free of unknowns
};

struct ReductionTranscript {
    std::string target;
    std::vector<ReductionStep> steps;
    std::vector<std::string> relations;
    std::vector<std::string> obstructions;
    std::vector<CertificateCheck> certificates;
    std::vector<TableEntry> table;
    std::map<std::string, long> counts;
    std::vector<std::string> contradictions;
    std::string outcome;   // relations, inconsistent, contradiction
    bool ok = false;
};

struct ReductionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ReductionTranscript replay_section3(std::uint64_t seed);
ReductionTranscript replay_appendix_A(int sign);
ReductionTranscript replay_appendix_B();

// every certificate of cs checked against its equations
std::vector<CertificateCheck> check_certificates(const Registry& reg, const ConstraintSystem& cs);

}
