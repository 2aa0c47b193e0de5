#include "eds/pfaffian.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>

namespace eds {

std::vector<Var> symbols_of(const Registry& reg, const std::vector<Form>& forms)
{
    std::set<Var> s;
    for (auto& f : forms)
        for (auto& [k, c] : f.terms())
            for (Var v : c.vars()) s.insert(v);
    std::vector<Var> out(s.begin(), s.end());
    std::sort(out.begin(), out.end(), [&](Var a, Var b) { return reg.name(a) < reg.name(b); });
    return out;
}

std::vector<Var> derivative_unknowns(Space& sp, const std::vector<Var>& primaries)
{
    std::vector<Var> out;
    for (Var p : primaries)
        for (int g : sp.basis()) out.push_back(sp.reg.derived(p, {sp.frame.gen(g).dir}));
    return out;
}

ConstraintSystem solve_linear_constraints(const std::vector<Form>& residuals, const std::vector<Var>& unknowns,
                                          const std::set<Var>& prefer_free)
{
    ConstraintSystem cs;
    cs.unknowns = unknowns;
    std::set<Var> uset(unknowns.begin(), unknowns.end());
    std::unordered_set<Expr, ExprHash> seen, seen_scalar, seen_torsion;
    Eliminator el(unknowns, prefer_free);
    for (auto& r : residuals)
        for (auto& [k, c] : r.terms()) {
            ++cs.raw;
            if (!c.has_any(uset)) {
                if (seen_torsion.insert(c).second) cs.torsion.push_back(c);
                continue;
            }
            if (seen_scalar.insert(c.normalized()).second) ++cs.scalar_distinct;
            if (!seen.insert(c).second) continue;
            cs.equations.push_back(c);
            el.add(c);
        }
    cs.distinct = cs.equations.size();
    cs.rank = el.rank();
    cs.solved = el.solution();
    cs.free = el.free_unknowns();
    cs.certificates = el.certificates();
    cs.consistent = el.consistent();
    return cs;
}

bool Tableau::zero() const
{
    for (auto& a : A)
        for (auto& row : a)
            for (auto& e : row)
                if (!e.zero()) return false;
    for (auto& c : C)
        if (!c.empty()) return false;
    return true;
}

Tableau extract_tableau(Space& sp, const std::vector<Var>& primaries, const std::map<Var, std::vector<Expr>>& derivs,
                        const std::vector<Var>& frees, const std::vector<int>& extra_columns)
{
    const auto& basis = sp.basis();
    Tableau t;
    t.a = static_cast<int>(primaries.size());
    t.n = static_cast<int>(basis.size());
    std::map<int, int> bpos, cpos;
    for (int j = 0; j < t.n; ++j) bpos[basis[static_cast<std::size_t>(j)]] = j;

    std::vector<int> cols;
    for (Var f : frees) {
        std::string name = "pi(" + sp.reg.name(f) + ")";
        auto g = sp.frame.index(name);
        cols.push_back(g ? *g : sp.add_gen(name));
        t.pis.push_back(name);
    }
    for (int g : extra_columns) {
        cols.push_back(g);
        t.pis.push_back(sp.frame.gen(g).name);
    }
    t.s = static_cast<int>(cols.size());
    for (int c = 0; c < t.s; ++c) cpos[cols[static_cast<std::size_t>(c)]] = c;

    for (Var p : primaries) {
        Form dp(&sp.frame, 1);
        const auto& D = derivs.at(p);
        for (int j = 0; j < t.n; ++j) dp.add_term(Key{static_cast<std::uint16_t>(basis[static_cast<std::size_t>(j)])}, D[static_cast<std::size_t>(j)]);
        sp.override_d(p, dp);
    }
    for (std::size_t i = 0; i < frees.size(); ++i) sp.override_d(frees[i], sp.g(cols[i]));

    try {
        for (Var p : primaries) {
            t.thetas.push_back(sp.reg.name(p));
            std::vector<std::vector<Expr>> A(static_cast<std::size_t>(t.s), std::vector<Expr>(static_cast<std::size_t>(t.n)));
            std::map<std::pair<int, int>, Expr> C;
            Form th(&sp.frame, 1);
            const auto& D = derivs.at(p);
            for (int j = 0; j < t.n; ++j) th.add_term(Key{static_cast<std::uint16_t>(basis[static_cast<std::size_t>(j)])}, -D[static_cast<std::size_t>(j)]);
            Form dth = sp.d(th);
            for (auto& [k, v] : dth.terms()) {
                auto b0 = bpos.find(k[0]), b1 = bpos.find(k[1]);
                auto c0 = cpos.find(k[0]), c1 = cpos.find(k[1]);
                if (b0 != bpos.end() && b1 != bpos.end()) {
                    int j = b0->second, l = b1->second;
                    if (j < l) C[{j, l}] += v;
                    else C[{l, j}] -= v;
                } else if (b0 != bpos.end() && c1 != cpos.end()) {
                    A[static_cast<std::size_t>(c1->second)][static_cast<std::size_t>(b0->second)] -= v;
                } else if (c0 != cpos.end() && b1 != bpos.end()) {
                    A[static_cast<std::size_t>(c0->second)][static_cast<std::size_t>(b1->second)] += v;
                } else {
                    throw DecompositionError("d(theta) of " + sp.reg.name(p) + " has a term on " + sp.key_str(k));
                }
            }
            for (auto it = C.begin(); it != C.end();) {
                if (it->second.zero()) it = C.erase(it);
                else ++it;
            }
            t.A.push_back(std::move(A));
            t.C.push_back(std::move(C));
        }
    } catch (...) {
        for (Var p : primaries) sp.clear_override(p);
        for (Var f : frees) sp.clear_override(f);
        throw;
    }
    for (Var p : primaries) sp.clear_override(p);
    for (Var f : frees) sp.clear_override(f);
    return t;
}

namespace {

// scratch symbols outside any registry
constexpr Var scratch_base = 0x40000000u;

std::vector<Expr> absorption_equations(const Tableau& t, std::vector<Var>& unknowns)
{
    auto P = [&](int c, int j) { return scratch_base + static_cast<Var>(c * t.n + j); };
    for (int c = 0; c < t.s; ++c)
        for (int j = 0; j < t.n; ++j) unknowns.push_back(P(c, j));
    std::vector<Expr> eqs;
    for (int al = 0; al < t.a; ++al)
        for (int j = 0; j < t.n; ++j)
            for (int k = j + 1; k < t.n; ++k) {
                auto it = t.C[static_cast<std::size_t>(al)].find({j, k});
                Expr e = it == t.C[static_cast<std::size_t>(al)].end() ? Expr() : it->second;
                for (int c = 0; c < t.s; ++c) {
                    const auto& row = t.A[static_cast<std::size_t>(al)][static_cast<std::size_t>(c)];
                    const Expr& ak = row[static_cast<std::size_t>(k)];
                    const Expr& aj = row[static_cast<std::size_t>(j)];
                    if (!ak.zero()) e += ak * Expr::var(P(c, j));
                    if (!aj.zero()) e -= aj * Expr::var(P(c, k));
                }
                eqs.push_back(e);
            }
    return eqs;
}

}

Absorption absorb_torsion(const Tableau& t)
{
    Absorption out;
    std::vector<Var> unknowns;
    std::vector<Expr> eqs = absorption_equations(t, unknowns);
    Eliminator el(unknowns);
    for (auto& e : eqs) el.add(e);
    out.absorbable = el.consistent();
    out.certificates = el.certificates();
    for (auto& c : out.certificates) out.obstructions.push_back(c.value);
    if (out.absorbable) {
        std::map<Var, Expr> zero;
        for (Var v : el.free_unknowns()) zero[v] = Expr();
        std::map<Var, Expr> sol = zero;
        for (auto& [v, e] : el.solution()) sol[v] = e.subs(zero);
        out.torsion_zeroed = true;
        for (auto& e : eqs)
            if (!e.subs(sol).zero()) out.torsion_zeroed = false;
    }
    return out;
}

Relations relations_from(const std::vector<Expr>& obstructions, const std::vector<Var>& targets)
{
    Eliminator el(targets);
    for (auto& o : obstructions) el.add(o);
    Relations r;
    r.solved = el.solution();
    for (auto& c : el.certificates()) r.unresolved.push_back(c.value);
    return r;
}

RankSample sample_ranks(const Tableau& t, const std::map<Var, mpq_class>& point, const QMatrix& v)
{
    auto value = [&](Var x) {
        auto it = point.find(x);
        if (it == point.end()) throw std::invalid_argument("no value for symbol in generic point");
        return it->second;
    };
    std::size_t a = static_cast<std::size_t>(t.a), s = static_cast<std::size_t>(t.s), n = static_cast<std::size_t>(t.n);
    std::vector<QMatrix> E(a, QMatrix(s, std::vector<mpq_class>(n)));
    for (std::size_t al = 0; al < a; ++al)
        for (std::size_t c = 0; c < s; ++c)
            for (std::size_t j = 0; j < n; ++j) {
                const Expr& e = t.A[al][c][j];
                if (!e.zero()) E[al][c][j] = e.eval(value);
            }
    RankSample r;
    QMatrix m;
    for (std::size_t al = 0; al < a; ++al)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<mpq_class> row(s);
            for (std::size_t c = 0; c < s; ++c) row[c] = E[al][c][j];
            m.push_back(std::move(row));
        }
    r.tableau_dim = static_cast<int>(rank(m));

    int prev = 0;
    m.clear();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t al = 0; al < a; ++al) {
            std::vector<mpq_class> row(s);
            for (std::size_t c = 0; c < s; ++c)
                for (std::size_t j = 0; j < n; ++j) row[c] += E[al][c][j] * v[k][j];
            m.push_back(std::move(row));
        }
        int rk = static_cast<int>(rank(m));
        r.characters.push_back(rk - prev);
        prev = rk;
    }

    m.clear();
    for (std::size_t al = 0; al < a; ++al)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                std::vector<mpq_class> row(s * n);
                for (std::size_t c = 0; c < s; ++c) {
                    row[c * n + k] += E[al][c][j];
                    row[c * n + j] -= E[al][c][k];
                }
                m.push_back(std::move(row));
            }
    int rk = static_cast<int>(rank(m));
    r.prolongation_dim = t.s * t.n - rk - t.n * (t.s - r.tableau_dim);
    return r;
}

CartanReport cartan_test(const Tableau& t, const Registry& reg, std::uint64_t seed, int samples)
{
    CartanReport rep;
    rep.seed = seed;
    Absorption ab = absorb_torsion(t);
    rep.absorbed = ab.absorbable;
    rep.obstructions = ab.obstructions;
    for (auto& o : ab.obstructions) rep.required_relations.push_back(reg.str(o));
    if (ab.absorbable && !ab.torsion_zeroed) throw std::logic_error("absorption solution does not zero the torsion");

    std::set<Var> vars;
    for (auto& a : t.A)
        for (auto& row : a)
            for (auto& e : row)
                for (Var v : e.vars()) vars.insert(v);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
    std::vector<RankSample> got;
    int retries = 0;
    while (static_cast<int>(got.size()) < samples) {
        std::map<Var, mpq_class> pt;
        for (Var v : vars) {
            mpq_class q(num(rng), den(rng));
            q.canonicalize();
            pt[v] = q;
        }
        QMatrix cov(static_cast<std::size_t>(t.n), std::vector<mpq_class>(static_cast<std::size_t>(t.n)));
        for (auto& row : cov)
            for (auto& x : row) x = num(rng);
        try {
            got.push_back(sample_ranks(t, pt, cov));
        } catch (const DenominatorZero&) {
            if (++retries > 20) throw GenericRankError("generic point budget exhausted: denominators vanish");
        }
    }
    for (auto& g : got)
        if (!(g == got[0])) throw GenericRankError("generic ranks disagree between samples");
    rep.samples = samples;
    rep.tableau_dim = got[0].tableau_dim;
    rep.characters = got[0].characters;
    rep.prolongation_dim = got[0].prolongation_dim;

    int sum = 0, bound = 0;
    for (std::size_t i = 0; i < rep.characters.size(); ++i) {
        if (i && rep.characters[i] > rep.characters[i - 1]) throw std::logic_error("characters not monotone");
        sum += rep.characters[i];
        bound += static_cast<int>(i + 1) * rep.characters[i];
    }
    if (sum != rep.tableau_dim) throw std::logic_error("characters do not sum to the tableau dimension");
    if (rep.prolongation_dim > bound) throw std::logic_error("Cartan bound violated");
    rep.involutive = rep.absorbed && rep.prolongation_dim == bound;
    rep.side_conditions = reg.side_conditions;
    return rep;
}

}
