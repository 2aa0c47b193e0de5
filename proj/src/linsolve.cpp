#include "eds/linsolve.hpp"

#include <tuple>

namespace eds {

Eliminator::Eliminator(std::vector<Var> unknowns, std::set<Var> prefer_free)
    : unknowns_(std::move(unknowns)), prefer_(std::move(prefer_free))
{
    for (std::size_t i = 0; i < unknowns_.size(); ++i) {
        uset_.insert(unknowns_[i]);
        col_[unknowns_[i]] = static_cast<int>(i);
    }
}

void Eliminator::axpy(Row& r, const Expr& f, const Row& p)
{
    for (auto& [v, c] : p.c) {
        auto it = r.c.find(v);
        if (it == r.c.end()) {
            r.c.emplace(v, -(f * c));
            continue;
        }
        it->second -= f * c;
        if (it->second.zero()) r.c.erase(it);
    }
    r.rest -= f * p.rest;
    for (auto& [i, c] : p.combo) {
        auto it = r.combo.find(i);
        if (it == r.combo.end()) {
            r.combo.emplace(i, -(f * c));
            continue;
        }
        it->second -= f * c;
        if (it->second.zero()) r.combo.erase(it);
    }
}

static std::size_t weight(const Expr& e) { return e.num().terms().size() + e.den().terms().size(); }

Var Eliminator::choose(const Row& r) const
{
    Var best = 0;
    std::tuple<int, int, std::size_t, int> key{};
    bool have = false;
    for (auto& [v, c] : r.c) {
        std::tuple<int, int, std::size_t, int> k{prefer_.count(v) ? 1 : 0, c.is_const() ? 0 : 1, weight(c), col_.at(v)};
        if (!have || k < key) best = v, key = k, have = true;
    }
    return best;
}

Eliminator::Status Eliminator::add(const Expr& eq)
{
    Affine a = affine_split(eq, uset_);
    Row r;
    r.c = std::move(a.coeffs);
    r.rest = a.rest;
    r.combo[count_++] = Expr(1);
    for (auto it = r.c.begin(); it != r.c.end();) {
        if (it->second.zero()) it = r.c.erase(it);
        else ++it;
    }
    for (;;) {
        bool changed = false;
        for (auto& [v, c] : r.c) {
            auto p = by_pivot_.find(v);
            if (p == by_pivot_.end()) continue;
            Expr f = c;
            axpy(r, f, rows_[p->second]);
            changed = true;
            break;
        }
        if (!changed) break;
    }
    if (r.c.empty()) {
        if (r.rest.zero()) return Status::dependent;
        certs_.push_back({r.combo, r.rest});
        return Status::inconsistent;
    }
    r.pivot = choose(r);
    Expr inv = r.c.at(r.pivot).inv();
    for (auto& [v, c] : r.c) c *= inv;
    r.rest *= inv;
    for (auto& [i, c] : r.combo) c *= inv;
    for (auto& row : rows_) {
        auto it = row.c.find(r.pivot);
        if (it == row.c.end()) continue;
        Expr f = it->second;
        axpy(row, f, r);
    }
    by_pivot_[r.pivot] = rows_.size();
    rows_.push_back(std::move(r));
    return Status::pivot;
}

std::vector<Var> Eliminator::pivots() const
{
    std::vector<Var> out;
    for (auto v : unknowns_)
        if (by_pivot_.count(v)) out.push_back(v);
    return out;
}

std::vector<Var> Eliminator::free_unknowns() const
{
    std::vector<Var> out;
    for (auto v : unknowns_)
        if (!by_pivot_.count(v)) out.push_back(v);
    return out;
}

std::map<Var, Expr> Eliminator::solution() const
{
    std::map<Var, Expr> s;
    for (auto& r : rows_) {
        Expr e = -r.rest;
        for (auto& [v, c] : r.c)
            if (v != r.pivot) e -= c * Expr::var(v);
        s[r.pivot] = e;
    }
    return s;
}

Expr Eliminator::reduce(const Expr& e) const { return e.subs(solution()); }

std::size_t rank(QMatrix m)
{
    std::size_t r = 0;
    if (m.empty()) return 0;
    std::size_t cols = m[0].size();
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            mpq_class f = m[i][c] / m[r][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
        }
        ++r;
    }
    return r;
}

}
