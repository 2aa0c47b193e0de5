#pragma once

#include "eds/expr.hpp"

#include <map>
#include <set>
#include <vector>

namespace eds {

// 0 = value, with value = sum combo[i] * (equation i)
struct Certificate {
    std::map<int, Expr> combo;
    Expr value;
};

// incremental Gauss-Jordan elimination over the rational function field,
// tracking how each row was combined from the input equations
class Eliminator {
public:
    enum class Status { pivot, dependent, inconsistent };

    explicit Eliminator(std::vector<Var> unknowns, std::set<Var> prefer_free = {});

    Status add(const Expr& eq);
    int equations() const { return count_; }
    std::size_t rank() const { return rows_.size(); }
    bool consistent() const { return certs_.empty(); }
    const std::vector<Certificate>& certificates() const { return certs_; }
    const std::vector<Var>& unknowns() const { return unknowns_; }

    std::vector<Var> pivots() const;
    std::vector<Var> free_unknowns() const;
    // pivot unknown -> expression in free unknowns and parameters
    std::map<Var, Expr> solution() const;
    Expr reduce(const Expr& e) const;

private:
    struct Row {
        Var pivot = 0;
        std::map<Var, Expr> c;
        Expr rest;
        std::map<int, Expr> combo;
    };
    std::vector<Var> unknowns_;
    std::set<Var> uset_, prefer_;
    std::map<Var, int> col_;
    std::vector<Row> rows_;
    std::map<Var, std::size_t> by_pivot_;
    std::vector<Certificate> certs_;
    int count_ = 0;

    static void axpy(Row& r, const Expr& f, const Row& p);
    Var choose(const Row& r) const;
};

using QMatrix = std::vector<std::vector<mpq_class>>;
std::size_t rank(QMatrix m);

}
