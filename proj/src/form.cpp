#include "eds/form.hpp"

#include <algorithm>
#include <sstream>

namespace eds {

int Coframe::add(const std::string& name, int degree, const std::string& dir)
{
    if (by_name_.count(name)) throw std::invalid_argument("generator already declared: " + name);
    if (degree != 1 && degree != 2) throw std::invalid_argument("generator degree must be 1 or 2");
    gens_.push_back({name, degree, dir});
    by_name_[name] = size() - 1;
    return size() - 1;
}

int Coframe::ensure(const std::string& name, int degree, const std::string& dir)
{
    if (auto i = index(name)) return *i;
    return add(name, degree, dir);
}

std::optional<int> Coframe::index(const std::string& name) const
{
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

int Coframe::at(const std::string& name) const
{
    auto i = index(name);
    if (!i) throw std::invalid_argument("unknown generator: " + name);
    return *i;
}

int merge_keys(const Coframe& cf, const Key& a, const Key& b, Key& out)
{
    out.clear();
    out.reserve(a.size() + b.size());
    int sign = 1;
    std::size_t i = 0, j = 0;
    // a and b are sorted; count odd inversions while merging
    int odd_left_a = 0;
    for (auto g : a)
        if (cf.gen(g).degree % 2) ++odd_left_a;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j])) {
            if (cf.gen(a[i]).degree % 2) --odd_left_a;
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j] < a[i]) {
            if ((cf.gen(b[j]).degree % 2) && (odd_left_a % 2)) sign = -sign;
            out.push_back(b[j++]);
        } else {
            if (cf.gen(a[i]).degree % 2) return 0;
            out.push_back(a[i++]);
        }
    }
    return sign;
}

Form Form::scalar(const Coframe* cf, const Expr& c)
{
    Form f(cf, 0);
    if (!c.zero()) f.t_[Key{}] = c;
    return f;
}

Form Form::gen(const Coframe* cf, int i)
{
    Form f(cf, cf->gen(i).degree);
    f.t_[Key{static_cast<std::uint16_t>(i)}] = Expr(1);
    return f;
}

Expr Form::coeff(const Key& k) const
{
    auto it = t_.find(k);
    return it == t_.end() ? Expr() : it->second;
}

Expr Form::scalar_value() const
{
    if (deg_ != 0) throw std::invalid_argument("form is not a scalar");
    return coeff(Key{});
}

void Form::add_term(const Key& k, const Expr& c)
{
    if (c.zero()) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
        t_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.zero()) t_.erase(it);
}

static void check_same(const Form& a, const Form& b)
{
    if (a.coframe() && b.coframe() && a.coframe() != b.coframe()) throw std::invalid_argument("forms over different coframes");
}

Form Form::operator+(const Form& o) const
{
    check_same(*this, o);
    if (o.zero()) return *this;
    if (zero()) return o;
    if (deg_ != o.deg_) throw std::invalid_argument("adding forms of different degree");
    Form r = *this;
    for (auto& [k, c] : o.t_) r.add_term(k, c);
    return r;
}

Form Form::operator-() const
{
    Form r = *this;
    for (auto& [k, c] : r.t_) c = -c;
    return r;
}

Form Form::operator-(const Form& o) const { return *this + (-o); }

Form Form::scaled(const Expr& c) const
{
    Form r(cf_, deg_);
    if (c.zero()) return r;
    for (auto& [k, v] : t_) r.add_term(k, v * c);
    return r;
}

Form Form::subs(const std::map<Var, Expr>& s) const
{
    Form r(cf_, deg_);
    for (auto& [k, v] : t_) r.add_term(k, v.subs(s));
    return r;
}

Form wedge(const Form& a, const Form& b)
{
    check_same(a, b);
    const Coframe* cf = a.coframe() ? a.coframe() : b.coframe();
    Form r(cf, a.degree() + b.degree());
    Key k;
    for (auto& [ka, ca] : a.terms())
        for (auto& [kb, cb] : b.terms()) {
            int s = merge_keys(*cf, ka, kb, k);
            if (!s) continue;
            r.add_term(k, s > 0 ? ca * cb : -(ca * cb));
        }
    return r;
}

Form operator*(const Expr& c, const Form& f) { return f.scaled(c); }

Form reduce_mod(const Form& a, const std::set<int>& killed)
{
    Form r(a.coframe(), a.degree());
    for (auto& [k, c] : a.terms()) {
        bool hit = false;
        for (auto g : k)
            if (killed.count(g)) hit = true;
        if (!hit) r.add_term(k, c);
    }
    return r;
}

Form substitute(const Form& a, const std::map<int, Form>& repl)
{
    Form r(a.coframe(), a.degree());
    for (auto& [k, c] : a.terms()) {
        Form t = Form::scalar(a.coframe(), c);
        for (auto g : k) {
            auto it = repl.find(g);
            t = wedge(t, it == repl.end() ? Form::gen(a.coframe(), g) : it->second);
        }
        r += t;
    }
    return r;
}

// ---------------------------------------------------------------------------

int Space::add_gen(const std::string& name, int degree, const std::string& dir)
{
    int i = frame.add(name, degree, dir);
    rules_.resize(static_cast<std::size_t>(frame.size()));
    return i;
}

int Space::coord(const std::string& name)
{
    reg.coordinate(name);
    int i = add_gen("d" + name, 1, name);
    set_closed(i);
    basis_.push_back(i);
    dsym_cache_.clear();
    return i;
}

Space::Rule& Space::rule(int g)
{
    if (g < 0 || g >= frame.size()) throw std::out_of_range("generator index");
    rules_.resize(static_cast<std::size_t>(frame.size()));
    return rules_[static_cast<std::size_t>(g)];
}

void Space::set_d(int g, const Form& dg)
{
    if (dg.degree() != frame.gen(g).degree + 1 && !dg.zero()) throw std::invalid_argument("d(" + frame.gen(g).name + ") has wrong degree");
    Rule& r = rule(g);
    r.kind = R::form;
    r.f = dg;
}

void Space::set_closed(int g) { rule(g).kind = R::closed; }

void Space::set_unknown(int g)
{
    if (frame.gen(g).degree != 1) throw std::invalid_argument("unknown marker needs a 1-form");
    std::string n = "d(" + frame.gen(g).name + ")";
    int dg = frame.ensure(n, 2);
    rules_.resize(static_cast<std::size_t>(frame.size()));
    Rule& r = rule(g);
    r.kind = R::unknown;
    r.delta = dg;
}

bool Space::has_rule(int g) const
{
    return g < static_cast<int>(rules_.size()) && rules_[static_cast<std::size_t>(g)].kind != R::none;
}

int Space::delta(int g) const
{
    if (g >= static_cast<int>(rules_.size())) return -1;
    return rules_[static_cast<std::size_t>(g)].delta;
}

void Space::override_d(Var v, const Form& dv)
{
    if (dv.degree() != 1 && !dv.zero()) throw std::invalid_argument("d of a scalar must be a 1-form");
    overrides_[v] = dv;
    dsym_cache_.clear();
}

void Space::clear_override(Var v)
{
    overrides_.erase(v);
    dsym_cache_.clear();
}

Form Space::dsym(Var v)
{
    if (auto it = overrides_.find(v); it != overrides_.end()) return it->second;
    if (auto it = dsym_cache_.find(v); it != dsym_cache_.end()) return it->second;
    Form r(&frame, 1);
    Symbol s = reg.sym(v);
    if (s.kind == Kind::exponential) {
        r = d(*s.arg).scaled(Expr::var(v));
    } else if (s.kind != Kind::parameter) {
        for (int g : basis_) {
            const std::string dir = frame.gen(g).dir;
            if (dir.empty()) continue;
            Expr c = reg.derive_symbol(v, dir);
            if (!c.zero()) r.add_term(Key{static_cast<std::uint16_t>(g)}, c);
        }
    }
    dsym_cache_[v] = r;
    return r;
}

Form Space::d(const Expr& u)
{
    Form r(&frame, 1);
    for (Var v : u.vars()) {
        Form dv = dsym(v);
        if (dv.zero()) continue;
        r += dv.scaled(u.partial(v));
    }
    return r;
}

Form Space::dgen(int g)
{
    Rule& r = rule(g);
    switch (r.kind) {
    case R::form:
        return r.f;
    case R::closed:
        return Form(&frame, frame.gen(g).degree + 1);
    case R::unknown:
        return Form::gen(&frame, r.delta);
    case R::none:
        break;
    }
    throw std::invalid_argument("no structure rule for generator " + frame.gen(g).name);
}

Form Space::d(const Form& a)
{
    Form r(&frame, a.degree() + 1);
    for (auto& [k, c] : a.terms()) {
        Form kf(&frame, a.degree());
        kf.add_term(k, Expr(1));
        r += wedge(d(c), kf);
        int before = 0;
        for (std::size_t p = 0; p < k.size(); ++p) {
            Form dg = dgen(k[p]);
            if (!dg.zero()) {
                Form left = Form::scalar(&frame, (before % 2) ? -c : c);
                for (std::size_t q = 0; q < p; ++q) left = wedge(left, Form::gen(&frame, k[q]));
                Form t = wedge(left, dg);
                for (std::size_t q = p + 1; q < k.size(); ++q) t = wedge(t, Form::gen(&frame, k[q]));
                r += t;
            }
            before += frame.gen(k[p]).degree;
        }
    }
    return r;
}

namespace {

struct FormSem {
    using V = Form;
    Space& sp;
    V number(const mpq_class& q) { return sp.scalar(Expr(q)); }
    V ident(const std::string& id)
    {
        if (auto i = sp.frame.index(id)) return sp.g(*i);
        return sp.scalar(sp.reg.lookup_expr(id));
    }
    V call(const std::string& fn, V a)
    {
        if (fn == "d") return sp.d(a);
        if (fn == "exp" && a.degree() == 0) return sp.scalar(sp.reg.exp(a.scalar_value()));
        throw std::invalid_argument("unknown function " + fn);
    }
    V add(V a, V b) { return a + b; }
    V sub(V a, V b) { return a - b; }
    V mul(V a, V b) { return wedge(a, b); }
    V div(V a, V b)
    {
        if (b.degree() != 0 || b.zero()) throw std::invalid_argument("can only divide by a nonzero scalar");
        return a.scaled(b.scalar_value().inv());
    }
    V neg(V a) { return -a; }
    V power(V a, long k)
    {
        if (a.degree() == 0) {
            Expr s = a.scalar_value();
            if (k < 0 && s.zero()) throw std::invalid_argument("division by zero");
            return sp.scalar(s.pow(k));
        }
        if (k == 1) return a;
        throw std::invalid_argument("power of a form");
    }
    V wedge(V a, V b) { return eds::wedge(a, b); }
};

bool needs_parens(const std::string& s)
{
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (depth == 0 && (c == '+' || (c == '-' && i > 0)) ) return true;
        else if (depth == 0 && c == '/') return true;
    }
    return false;
}

}

Form Space::parse(const std::string& text)
{
    FormSem s{*this};
    Form f = detail::Grammar<FormSem>(s, text).parse();
    return f;
}

std::string Space::key_str(const Key& k) const
{
    std::string s;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) s += "^";
        s += frame.gen(k[i]).name;
    }
    return s;
}

std::string Space::str(const Form& f) const
{
    if (f.zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : f.terms()) {
        std::string cs = reg.str(c);
        bool neg = false;
        if (!needs_parens(cs) && cs[0] == '-') {
            neg = true;
            cs = cs.substr(1);
        }
        if (first) os << (neg ? "-" : "");
        else os << (neg ? " - " : " + ");
        first = false;
        if (k.empty()) {
            os << (needs_parens(cs) ? "(" + cs + ")" : cs);
            continue;
        }
        if (cs != "1") os << (needs_parens(cs) ? "(" + cs + ")" : cs) << "*";
        os << key_str(k);
    }
    return os.str();
}

}
