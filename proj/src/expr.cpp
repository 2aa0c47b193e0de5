#include "eds/expr.hpp"

#include <algorithm>

namespace eds {

Expr Expr::raw(Poly n, Poly d)
{
    Expr e;
    e.num_ = std::move(n);
    e.den_ = std::move(d);
    return e;
}

Expr::Expr(const Poly& n, const Poly& d)
{
    if (d.zero()) throw std::domain_error("division by zero");
    if (n.zero()) {
        num_ = Poly();
        den_ = Poly(1);
        return;
    }
    if (d.is_const()) {
        num_ = n.scaled(1 / d.const_value());
        den_ = Poly(1);
        return;
    }
    Poly g = gcd(n, d);
    Poly a = n, b = d;
    if (!g.is_const()) {
        if (!n.divexact(g, a) || !d.divexact(g, b)) throw std::logic_error("gcd does not divide");
    }
    mpq_class lc = b.lc();
    num_ = a.scaled(1 / lc);
    den_ = b.scaled(1 / lc);
}

Expr Expr::operator-() const { return raw(-num_, den_); }

Expr Expr::operator+(const Expr& o) const
{
    if (zero()) return o;
    if (o.zero()) return *this;
    if (den_ == o.den_) {
        if (den_.is_const()) return raw(num_ + o.num_, den_);
        return Expr(num_ + o.num_, den_);
    }
    if (den_.is_const()) return raw(num_ * o.den_ + o.num_, o.den_);
    if (o.den_.is_const()) return raw(num_ + o.num_ * den_, den_);
    Poly g = gcd(den_, o.den_);
    if (g.is_const()) return Expr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    Poly b1, d1;
    den_.divexact(g, b1);
    o.den_.divexact(g, d1);
    Poly n = num_ * d1 + o.num_ * b1;
    if (n.zero()) return Expr();
    Poly g2 = gcd(n, g);
    Poly den = b1 * d1 * g;
    if (!g2.is_const()) {
        Poly q;
        n.divexact(g2, q);
        n = q;
        den.divexact(g2, q);
        den = q;
    }
    mpq_class lc = den.lc();
    return raw(n.scaled(1 / lc), den.scaled(1 / lc));
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator*(const Expr& o) const
{
    if (zero() || o.zero()) return Expr();
    if (den_.is_const() && o.den_.is_const()) return raw(num_ * o.num_, Poly(1));
    Poly a = num_, b = den_, c = o.num_, d = o.den_;
    Poly g1 = gcd(a, d), g2 = gcd(c, b), q;
    if (!g1.is_const()) {
        a.divexact(g1, q), a = q;
        d.divexact(g1, q), d = q;
    }
    if (!g2.is_const()) {
        c.divexact(g2, q), c = q;
        b.divexact(g2, q), b = q;
    }
    Poly n = a * c, den = b * d;
    mpq_class lc = den.lc();
    if (lc != 1) {
        n = n.scaled(1 / lc);
        den = den.scaled(1 / lc);
    }
    return raw(n, den);
}

Expr Expr::inv() const
{
    if (zero()) throw std::domain_error("division by zero");
    mpq_class lc = num_.lc();
    return raw(den_.scaled(1 / lc), num_.scaled(1 / lc));
}

Expr Expr::operator/(const Expr& o) const { return *this * o.inv(); }

Expr Expr::pow(long k) const
{
    if (k < 0) return inv().pow(-k);
    return raw(num_.pow(static_cast<unsigned>(k)), den_.pow(static_cast<unsigned>(k)));
}

std::vector<Var> Expr::vars() const
{
    auto a = num_.vars(), b = den_.vars();
    std::vector<Var> r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool Expr::has_any(const std::set<Var>& vs) const
{
    for (Var v : vars())
        if (vs.count(v)) return true;
    return false;
}

Expr Expr::partial(Var v) const
{
    if (!has_var(v)) return Expr();
    if (!den_.has_var(v)) return Expr(num_.diff(v), den_);
    return Expr(num_.diff(v) * den_ - num_ * den_.diff(v), den_ * den_);
}

namespace {

Expr subs_poly(const Poly& p, const std::map<Var, Expr>& s, std::map<std::pair<Var, unsigned>, Expr>& powc)
{
    bool polyonly = true;
    for (auto& [v, e] : s)
        if (!e.is_poly()) polyonly = false;
    auto power = [&](Var v, unsigned e) -> const Expr& {
        auto key = std::make_pair(v, e);
        auto it = powc.find(key);
        if (it != powc.end()) return it->second;
        return powc.emplace(key, s.at(v).pow(e)).first->second;
    };
    if (polyonly) {
        Poly r;
        for (auto& t : p.terms()) {
            Mono keep;
            Poly f(1);
            for (auto& [v, e] : t.m.entries()) {
                if (s.count(v)) f *= power(v, e).num();
                else keep = keep * Mono::var(v, e);
            }
            r += f.times(keep).scaled(t.c);
        }
        return Expr(r);
    }
    Expr r;
    for (auto& t : p.terms()) {
        Mono keep;
        Expr f(t.c);
        for (auto& [v, e] : t.m.entries()) {
            if (s.count(v)) f *= power(v, e);
            else keep = keep * Mono::var(v, e);
        }
        r += f * Expr(Poly::monomial(keep, 1));
    }
    return r;
}

}

Expr Expr::subs(const std::map<Var, Expr>& s) const
{
    bool touched = false;
    for (Var v : vars())
        if (s.count(v)) touched = true;
    if (!touched) return *this;
    std::map<std::pair<Var, unsigned>, Expr> powc;
    Expr n = subs_poly(num_, s, powc);
    if (den_.is_const()) return n;
    return n / subs_poly(den_, s, powc);
}

mpq_class Expr::eval(const std::function<mpq_class(Var)>& value) const
{
    mpq_class d = den_.eval(value);
    if (sgn(d) == 0) throw DenominatorZero();
    return num_.eval(value) / d;
}

Expr Expr::normalized() const
{
    if (zero()) return *this;
    return raw(num_.scaled(1 / num_.lc()), den_);
}


Affine affine_split(const Expr& e, const std::set<Var>& unknowns)
{
    for (Var v : e.den().vars())
        if (unknowns.count(v)) throw NonlinearError("unknown in denominator");
    std::map<Var, std::vector<Term>> lin;
    std::vector<Term> rest;
    for (auto& t : e.num().terms()) {
        Var hit = 0;
        int deg = 0;
        for (auto& [v, x] : t.m.entries())
            if (unknowns.count(v)) {
                deg += static_cast<int>(x);
                hit = v;
            }
        if (deg == 0) rest.push_back(t);
        else if (deg == 1) lin[hit].push_back({t.m / Mono::var(hit), t.c});
        else throw NonlinearError("coefficient is not affine in the unknowns");
    }
    auto mk = [](std::vector<Term>& ts) {
        Poly p;
        for (auto& t : ts) p += Poly::monomial(t.m, t.c);
        return p;
    };
    Affine a;
    for (auto& [v, ts] : lin) a.coeffs[v] = Expr(mk(ts), e.den());
    a.rest = Expr(mk(rest), e.den());
    return a;
}

// ---------------------------------------------------------------------------

Var Registry::add(Symbol s)
{
    if (by_name_.count(s.name)) throw std::invalid_argument("symbol already registered: " + s.name);
    Var v = static_cast<Var>(syms_.size());
    by_name_[s.name] = v;
    syms_.push_back(std::move(s));
    return v;
}

Var Registry::coordinate(const std::string& name)
{
    if (auto v = find(name); v && syms_[*v].kind == Kind::coordinate) return *v;
    return add({name, Kind::coordinate, {}, 0, {}, {}});
}

Var Registry::function(const std::string& name, const std::vector<Var>& args)
{
    if (auto v = find(name); v && syms_[*v].kind == Kind::function) return *v;
    return add({name, Kind::function, args, 0, {}, {}});
}

Var Registry::parameter(const std::string& name)
{
    if (auto v = find(name); v && syms_[*v].kind == Kind::parameter) return *v;
    return add({name, Kind::parameter, {}, 0, {}, {}});
}

std::optional<Var> Registry::find(const std::string& name) const
{
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

Var Registry::derived(Var base, std::vector<std::string> index)
{
    if (syms_.at(base).kind == Kind::derived) {
        auto& b = syms_[base];
        index.insert(index.end(), b.index.begin(), b.index.end());
        base = b.base;
    }
    std::sort(index.begin(), index.end());
    auto key = std::make_pair(base, index);
    if (auto it = derived_.find(key); it != derived_.end()) return it->second;
    std::string name = syms_[base].name + "_";
    for (auto& d : index) name += d;
    Var v = add({name, Kind::derived, {}, base, index, {}});
    derived_[key] = v;
    return v;
}

Expr Registry::derived_expr(Var base, std::vector<std::string> index)
{
    if (syms_.at(base).kind == Kind::derived) {
        auto& b = syms_[base];
        index.insert(index.end(), b.index.begin(), b.index.end());
        base = b.base;
    }
    std::sort(index.begin(), index.end());
    for (auto& r : rules_) {
        if (r.base != base) continue;
        if (!std::includes(index.begin(), index.end(), r.index.begin(), r.index.end())) continue;
        std::vector<std::string> rest;
        std::set_difference(index.begin(), index.end(), r.index.begin(), r.index.end(), std::back_inserter(rest));
        Expr e = r.rhs;
        for (auto& d : rest) e = derive(e, d);
        return e;
    }
    return Expr::var(derived(base, index));
}

Expr Registry::exp(const Expr& arg)
{
    if (arg.zero()) return Expr(1);
    // arg = g * a0 with a0 primitive over Z and positive leading coefficient
    mpz_class num = 0, den = 1;
    for (auto& t : arg.num().terms()) {
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.c.get_num_mpz_t());
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.get_den_mpz_t());
    }
    mpq_class g(num, den);
    g.canonicalize();
    if (arg.num().lc() < 0) g = -g;
    Expr a0 = arg / Expr(g);
    std::string key = str(a0);
    auto& bases = exps_[key];
    for (auto& [n, v] : bases) {
        mpq_class k = g * n;
        if (k.get_den() == 1 && k.get_num().fits_slong_p()) return Expr::var(v).pow(k.get_num().get_si());
    }
    mpz_class n = g.get_den();
    Expr unit = a0 / Expr(mpq_class(n));
    Symbol s{"exp(" + str(unit) + ")", Kind::exponential, {}, 0, {}, unit};
    Var v = add(std::move(s));
    bases.emplace_back(n, v);
    mpq_class k = g * n;
    if (!k.get_num().fits_slong_p()) throw std::overflow_error("exp multiple out of range");
    return Expr::var(v).pow(k.get_num().get_si());
}

Expr Registry::derive_symbol(Var v, const std::string& dir)
{
    const Symbol s = syms_.at(v);
    auto depends = [&](const Symbol& f) {
        if (f.args.empty()) return true;
        for (Var a : f.args)
            if (syms_[a].name == dir) return true;
        return false;
    };
    switch (s.kind) {
    case Kind::coordinate:
        return Expr(s.name == dir ? 1 : 0);
    case Kind::parameter:
        return Expr();
    case Kind::function:
        if (!depends(s)) return Expr();
        return derived_expr(v, {dir});
    case Kind::derived:
        if (!depends(Symbol(syms_[s.base]))) return Expr();
        return derived_expr(v, {dir});
    case Kind::exponential: {
        Expr a = *s.arg;
        return Expr::var(v) * derive(a, dir);
    }
    }
    return Expr();
}

Expr Registry::derive(const Expr& e, const std::string& dir)
{
    Expr r;
    for (Var v : e.vars()) {
        Expr dv = derive_symbol(v, dir);
        if (dv.zero()) continue;
        r += e.partial(v) * dv;
    }
    return r;
}

void Registry::bases_of(const Expr& e, std::set<Var>& out) const
{
    for (Var v : e.vars()) {
        const Symbol& s = syms_[v];
        if (s.kind == Kind::derived) out.insert(s.base);
        else out.insert(v);
        if (s.kind == Kind::exponential) bases_of(*s.arg, out);
    }
}

void Registry::add_rule(const std::string& lhs, const Expr& rhs)
{
    auto pos = lhs.rfind('_');
    if (pos == std::string::npos || pos == 0) throw std::invalid_argument("rule lhs must be a derived symbol: " + lhs);
    Var base = lookup(lhs.substr(0, pos));
    std::vector<std::string> idx = split_index(lhs.substr(pos + 1));
    if (syms_[base].kind == Kind::derived) {
        idx.insert(idx.end(), syms_[base].index.begin(), syms_[base].index.end());
        base = syms_[base].base;
    }
    std::sort(idx.begin(), idx.end());
    for (auto& [key, v] : derived_)
        if (key.first == base && std::includes(key.second.begin(), key.second.end(), idx.begin(), idx.end()))
            throw std::invalid_argument("rule registered after " + syms_[v].name + " was created");
    std::vector<Rule> next = rules_;
    next.push_back({base, idx, rhs});
    std::map<Var, std::set<Var>> g;
    for (auto& r : next) bases_of(r.rhs, g[r.base]);
    std::map<Var, int> state;
    std::function<bool(Var)> cyclic = [&](Var v) {
        int& st = state[v];
        if (st == 1) return true;
        if (st == 2) return false;
        st = 1;
        if (auto it = g.find(v); it != g.end())
            for (Var w : it->second)
                if (cyclic(w)) return true;
        state[v] = 2;
        return false;
    };
    for (auto& [v, _] : g)
        if (cyclic(v)) throw std::invalid_argument("rewrite rule " + lhs + " makes the rule set cyclic");
    rules_ = std::move(next);
}

std::vector<std::string> Registry::split_index(const std::string& s) const
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t best = 0;
        for (auto& d : dirs_)
            if (d.size() > best && s.compare(i, d.size(), d) == 0) best = d.size();
        if (!best) best = 1;
        out.push_back(s.substr(i, best));
        i += best;
    }
    return out;
}

Var Registry::lookup(const std::string& name)
{
    if (auto v = find(name)) return *v;
    auto pos = name.rfind('_');
    if (pos != std::string::npos && pos > 0 && pos + 1 < name.size()) {
        Var base = lookup(name.substr(0, pos));
        return derived(base, split_index(name.substr(pos + 1)));
    }
    if (!auto_register) throw std::invalid_argument("unknown symbol: " + name);
    return function(name);
}

Expr Registry::lookup_expr(const std::string& name)
{
    if (auto v = find(name)) return Expr::var(*v);
    auto pos = name.rfind('_');
    if (pos != std::string::npos && pos > 0 && pos + 1 < name.size()) {
        Var base = lookup(name.substr(0, pos));
        return derived_expr(base, split_index(name.substr(pos + 1)));
    }
    return Expr::var(lookup(name));
}

namespace {

struct ScalarSem {
    using V = Expr;
    Registry& reg;
    V number(const mpq_class& q) { return Expr(q); }
    V ident(const std::string& id) { return reg.lookup_expr(id); }
    V call(const std::string& fn, V a)
    {
        if (fn != "exp") throw std::invalid_argument("unknown function " + fn);
        return reg.exp(a);
    }
    V add(V a, V b) { return a + b; }
    V sub(V a, V b) { return a - b; }
    V mul(V a, V b) { return a * b; }
    V div(V a, V b)
    {
        if (b.zero()) throw std::invalid_argument("division by zero");
        return a / b;
    }
    V neg(V a) { return -a; }
    V power(V a, long k)
    {
        if (k < 0 && a.zero()) throw std::invalid_argument("division by zero");
        return a.pow(k);
    }
    V wedge(V, V) { throw std::invalid_argument("'^' needs an integer exponent"); }
};

}

Expr Registry::parse(const std::string& text)
{
    ScalarSem s{*this};
    return detail::Grammar<ScalarSem>(s, text).parse();
}

std::string Registry::str(const Poly& p) const
{
    return p.str([this](Var v) { return syms_.at(v).name; });
}

std::string Registry::str(const Expr& e) const
{
    if (e.is_poly()) return str(e.num());
    return "(" + str(e.num()) + ")/(" + str(e.den()) + ")";
}

}
