#pragma once

#include "eds/form.hpp"
#include "eds/linsolve.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace eds {

struct ConstraintSystem {
    std::vector<Var> unknowns;
    std::size_t raw = 0;             // nonzero coefficient equations
    std::size_t distinct = 0;        // identical duplicates removed, unknown-bearing only
    std::size_t scalar_distinct = 0; // scalar-multiple duplicates removed, unknown-bearing only
    std::vector<Expr> equations;
    std::vector<Expr> torsion;       // unknown-free coefficients, distinct
    std::map<Var, Expr> solved;
    std::vector<Var> free;
    std::vector<Certificate> certificates;
    bool consistent = true;
    std::size_t rank = 0;
};

// sorted by name
std::vector<Var> symbols_of(const Registry& reg, const std::vector<Form>& forms);
// derivatives p_j of every primary along the basis
std::vector<Var> derivative_unknowns(Space& sp, const std::vector<Var>& primaries);
ConstraintSystem solve_linear_constraints(const std::vector<Form>& residuals, const std::vector<Var>& unknowns,
                                          const std::set<Var>& prefer_free = {});

struct Tableau {
    int a = 0, s = 0, n = 0;
    std::vector<std::vector<std::vector<Expr>>> A;   // [alpha][sigma][j]
    std::vector<std::map<std::pair<int, int>, Expr>> C;   // [alpha][(j,k)], j<k
    std::vector<std::string> thetas, pis;
    bool zero() const;
};

struct DecompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// theta_p = dp - sum D[p][j] w^j over the basis, pi columns: frees then extra 1-form generators
Tableau extract_tableau(Space& sp, const std::vector<Var>& primaries, const std::map<Var, std::vector<Expr>>& derivs,
                        const std::vector<Var>& frees, const std::vector<int>& extra_columns = {});

struct Absorption {
    bool absorbable = true;
    std::vector<Expr> obstructions;
    std::vector<Certificate> certificates;
    bool torsion_zeroed = false;   // checked after applying a particular solution
};
Absorption absorb_torsion(const Tableau& t);

struct Relations {
    std::map<Var, Expr> solved;     // target -> value
    std::vector<Expr> unresolved;   // obstructions free of the targets
};
Relations relations_from(const std::vector<Expr>& obstructions, const std::vector<Var>& targets);

struct GenericRankError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CartanReport {
    std::vector<int> characters;
    int tableau_dim = 0;
    int prolongation_dim = 0;
    bool involutive = false;
    bool absorbed = false;
    std::vector<std::string> required_relations;
    std::uint64_t seed = 0;
    int samples = 0;
    std::vector<std::string> side_conditions;
    std::vector<Expr> obstructions;
};

struct RankSample {
    int tableau_dim;
    std::vector<int> characters;
    int prolongation_dim;
    bool operator==(const RankSample&) const = default;
};

// one generic evaluation; throws DenominatorZero if the point is bad
RankSample sample_ranks(const Tableau& t, const std::map<Var, mpq_class>& point, const QMatrix& covectors);
// absorption plus generic ranks; involutive needs both absorbable torsion and equality in Cartan's test
CartanReport cartan_test(const Tableau& t, const Registry& reg, std::uint64_t seed, int samples = 3);

}
