#pragma once

#include "eds/scenario.hpp"

namespace eds {

struct MinorCheck {
    std::string name;   // e.g. M23_04
    Expr computed, expected, residual;
    bool ok = false;
};

// C[s][i] = coefficient of w^i in dA_s, s = 1.. as published
using CoeffMatrix = std::map<int, std::vector<Expr>>;
CoeffMatrix coefficient_matrix(ScenarioModel& m);
Expr minor(const CoeffMatrix& C, int s1, int s2, int i1, int i2);

// the two displayed factorizations for the Case III e-structure
std::vector<MinorCheck> caseIII_minors(ScenarioModel& m, const CoeffMatrix& C);

}
