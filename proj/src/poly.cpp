#include "eds/poly.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace eds {

Mono Mono::var(Var v, std::uint32_t e)
{
    Mono m;
    if (e) {
        m.e_.push_back({v, e});
        m.deg_ = e;
    }
    return m;
}

std::uint32_t Mono::degree(Var v) const
{
    for (auto& [x, e] : e_)
        if (x == v) return e;
    return 0;
}

Mono Mono::operator*(const Mono& o) const
{
    Mono r;
    r.e_.reserve(e_.size() + o.e_.size());
    auto i = e_.begin(), j = o.e_.begin();
    while (i != e_.end() && j != o.e_.end()) {
        if (i->first < j->first) r.e_.push_back(*i++);
        else if (j->first < i->first) r.e_.push_back(*j++);
        else {
            r.e_.push_back({i->first, i->second + j->second});
            ++i, ++j;
        }
    }
    r.e_.insert(r.e_.end(), i, e_.end());
    r.e_.insert(r.e_.end(), j, o.e_.end());
    r.deg_ = deg_ + o.deg_;
    return r;
}

bool Mono::divides(const Mono& o) const
{
    if (deg_ > o.deg_) return false;
    auto j = o.e_.begin();
    for (auto& [v, e] : e_) {
        while (j != o.e_.end() && j->first < v) ++j;
        if (j == o.e_.end() || j->first != v || j->second < e) return false;
    }
    return true;
}

Mono Mono::operator/(const Mono& o) const
{
    Mono r;
    auto j = o.e_.begin();
    for (auto& [v, e] : e_) {
        while (j != o.e_.end() && j->first < v) ++j;
        std::uint32_t s = (j != o.e_.end() && j->first == v) ? j->second : 0;
        if (e > s) r.e_.push_back({v, e - s});
    }
    r.deg_ = deg_ - o.deg_;
    return r;
}

Mono Mono::without(Var v) const
{
    Mono r;
    for (auto& p : e_)
        if (p.first != v) {
            r.e_.push_back(p);
            r.deg_ += p.second;
        }
    return r;
}

Mono Mono::gcd(const Mono& a, const Mono& b)
{
    Mono r;
    auto j = b.e_.begin();
    for (auto& [v, e] : a.e_) {
        while (j != b.e_.end() && j->first < v) ++j;
        if (j != b.e_.end() && j->first == v) {
            auto m = std::min(e, j->second);
            r.e_.push_back({v, m});
            r.deg_ += m;
        }
    }
    return r;
}

std::size_t Mono::hash() const
{
    std::size_t h = 1469598103934665603ull;
    for (auto& [v, e] : e_) {
        h = (h ^ v) * 1099511628211ull;
        h = (h ^ e) * 1099511628211ull;
    }
    return h;
}

int compare(const Mono& a, const Mono& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    auto& x = a.entries();
    auto& y = b.entries();
    std::size_t i = 0;
    for (; i < x.size() && i < y.size(); ++i) {
        if (x[i].first != y[i].first) return x[i].first < y[i].first ? 1 : -1;
        if (x[i].second != y[i].second) return x[i].second < y[i].second ? -1 : 1;
    }
    if (i < x.size()) return 1;
    if (i < y.size()) return -1;
    return 0;
}

// ---------------------------------------------------------------------------

Poly::Poly(long c)
{
    if (c) t_.push_back({Mono(), mpq_class(c)});
}

Poly::Poly(const mpq_class& c)
{
    if (sgn(c)) t_.push_back({Mono(), c});
}

Poly Poly::var(Var v)
{
    Poly p;
    p.t_.push_back({Mono::var(v), mpq_class(1)});
    return p;
}

Poly Poly::monomial(const Mono& m, const mpq_class& c)
{
    Poly p;
    if (sgn(c)) p.t_.push_back({m, c});
    return p;
}

mpq_class Poly::const_value() const
{
    if (t_.empty()) return 0;
    if (!is_const()) throw std::logic_error("polynomial is not constant");
    return t_[0].c;
}

Poly Poly::from_unsorted(std::vector<Term> ts)
{
    std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return compare(a.m, b.m) > 0; });
    Poly p;
    p.t_.reserve(ts.size());
    for (auto& t : ts) {
        if (!p.t_.empty() && p.t_.back().m == t.m) {
            p.t_.back().c += t.c;
            if (sgn(p.t_.back().c) == 0) p.t_.pop_back();
        } else if (sgn(t.c)) {
            p.t_.push_back(std::move(t));
        }
    }
    return p;
}

Poly Poly::operator-() const
{
    Poly p = *this;
    for (auto& t : p.t_) t.c = -t.c;
    return p;
}

Poly Poly::operator+(const Poly& o) const
{
    if (o.t_.empty()) return *this;
    if (t_.empty()) return o;
    Poly r;
    r.t_.reserve(t_.size() + o.t_.size());
    auto i = t_.begin(), j = o.t_.begin();
    while (i != t_.end() && j != o.t_.end()) {
        int c = compare(i->m, j->m);
        if (c > 0) r.t_.push_back(*i++);
        else if (c < 0) r.t_.push_back(*j++);
        else {
            mpq_class s = i->c + j->c;
            if (sgn(s)) r.t_.push_back({i->m, s});
            ++i, ++j;
        }
    }
    r.t_.insert(r.t_.end(), i, t_.end());
    r.t_.insert(r.t_.end(), j, o.t_.end());
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const
{
    if (t_.empty() || o.t_.empty()) return Poly();
    if (o.t_.size() == 1) return times(o.t_[0].m).scaled(o.t_[0].c);
    if (t_.size() == 1) return o.times(t_[0].m).scaled(t_[0].c);
    std::vector<Term> ts;
    ts.reserve(t_.size() * o.t_.size());
    for (auto& a : t_)
        for (auto& b : o.t_) ts.push_back({a.m * b.m, a.c * b.c});
    return from_unsorted(std::move(ts));
}

Poly Poly::scaled(const mpq_class& c) const
{
    if (sgn(c) == 0) return Poly();
    Poly p = *this;
    for (auto& t : p.t_) t.c *= c;
    return p;
}

Poly Poly::times(const Mono& m) const
{
    Poly p = *this;
    if (m.is_one()) return p;
    for (auto& t : p.t_) t.m = t.m * m;   // order preserved by multiplication
    return p;
}

Poly Poly::pow(unsigned k) const
{
    Poly r(1), b = *this;
    while (k) {
        if (k & 1) r *= b;
        k >>= 1;
        if (k) b *= b;
    }
    return r;
}

std::vector<Var> Poly::vars() const
{
    std::vector<Var> vs;
    for (auto& t : t_)
        for (auto& [v, e] : t.m.entries()) vs.push_back(v);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

bool Poly::has_var(Var v) const
{
    for (auto& t : t_)
        if (t.m.degree(v)) return true;
    return false;
}

std::uint32_t Poly::degree(Var v) const
{
    std::uint32_t d = 0;
    for (auto& t : t_) d = std::max(d, t.m.degree(v));
    return d;
}

std::uint32_t Poly::total_degree() const { return t_.empty() ? 0 : t_[0].m.degree(); }

Mono Poly::min_mono() const
{
    if (t_.empty()) return Mono();
    Mono g = t_[0].m;
    for (std::size_t i = 1; i < t_.size() && !g.is_one(); ++i) g = Mono::gcd(g, t_[i].m);
    return g;
}

Poly Poly::div_mono(const Mono& m) const
{
    if (m.is_one()) return *this;
    Poly p = *this;
    for (auto& t : p.t_) t.m = t.m / m;
    return p;
}

Poly Poly::diff(Var v) const
{
    std::vector<Term> ts;
    for (auto& t : t_) {
        auto e = t.m.degree(v);
        if (!e) continue;
        Mono m = t.m / Mono::var(v);
        ts.push_back({m, t.c * e});
    }
    return from_unsorted(std::move(ts));
}

mpq_class Poly::eval(const std::function<mpq_class(Var)>& value) const
{
    std::map<Var, mpq_class> cache;
    mpq_class s = 0;
    for (auto& t : t_) {
        mpq_class p = t.c;
        for (auto& [v, e] : t.m.entries()) {
            auto it = cache.find(v);
            if (it == cache.end()) it = cache.emplace(v, value(v)).first;
            mpz_class num, den;
            mpq_class b;
            mpz_pow_ui(num.get_mpz_t(), it->second.get_num_mpz_t(), e);
            mpz_pow_ui(den.get_mpz_t(), it->second.get_den_mpz_t(), e);
            b = mpq_class(num, den);
            b.canonicalize();
            p *= b;
        }
        s += p;
    }
    return s;
}

std::vector<Poly> Poly::coeffs_in(Var v) const
{
    std::vector<std::vector<Term>> buckets(degree(v) + 1);
    for (auto& t : t_) {
        auto e = t.m.degree(v);
        buckets[e].push_back({t.m.without(v), t.c});
    }
    std::vector<Poly> cs;
    cs.reserve(buckets.size());
    for (auto& b : buckets) cs.push_back(from_unsorted(std::move(b)));
    return cs;
}

Poly Poly::from_coeffs(Var v, const std::vector<Poly>& cs)
{
    std::vector<Term> ts;
    for (std::size_t e = 0; e < cs.size(); ++e)
        for (auto& t : cs[e].t_) ts.push_back({t.m * Mono::var(v, e), t.c});
    return from_unsorted(std::move(ts));
}

bool Poly::divexact(const Poly& d, Poly& q) const
{
    if (d.zero()) throw std::domain_error("division by zero polynomial");
    if (d.size() == 1) {
        const auto& [m, c] = d.t_[0];
        Poly r;
        r.t_.reserve(t_.size());
        for (auto& t : t_) {
            if (!m.divides(t.m)) return false;
            r.t_.push_back({t.m / m, t.c / c});
        }
        q = std::move(r);
        return true;
    }
    Poly r = *this;
    std::vector<Term> qs;
    const Term& dl = d.t_[0];
    while (!r.zero()) {
        const Term& rl = r.t_[0];
        if (!dl.m.divides(rl.m)) return false;
        Term t{rl.m / dl.m, rl.c / dl.c};
        r = r - d.times(t.m).scaled(t.c);
        qs.push_back(std::move(t));
    }
    q = from_unsorted(std::move(qs));
    return true;
}

Poly Poly::monic() const
{
    if (t_.empty()) return *this;
    mpq_class c = t_[0].c;
    if (c == 1) return *this;
    return scaled(1 / c);
}

bool Poly::operator==(const Poly& o) const
{
    if (t_.size() != o.t_.size()) return false;
    for (std::size_t i = 0; i < t_.size(); ++i)
        if (t_[i].c != o.t_[i].c || t_[i].m != o.t_[i].m) return false;
    return true;
}

std::size_t Poly::hash() const
{
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto& t : t_) {
        h = (h ^ t.m.hash()) * 1099511628211ull;
        h = (h ^ std::hash<std::string>{}(t.c.get_str())) * 1099511628211ull;
    }
    return h;
}

std::string Poly::str(const std::function<std::string(Var)>& name) const
{
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : t_) {
        mpq_class c = t.c;
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        c = abs(c);
        bool lead = true;
        if (t.m.is_one() || c != 1) {
            os << c.get_str();
            lead = false;
        }
        for (auto& [v, e] : t.m.entries()) {
            if (!lead) os << "*";
            lead = false;
            os << name(v);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// gcd

namespace {

using UPoly = std::vector<Poly>;   // dense in the main variable, coefficients in the rest

void trim(UPoly& a)
{
    while (!a.empty() && a.back().zero()) a.pop_back();
}

Poly content(const UPoly& a)
{
    Poly g;
    for (auto& c : a) {
        if (c.zero()) continue;
        g = gcd(g, c);
        if (g.is_const()) return Poly(1);
    }
    return g;
}

UPoly divide_all(const UPoly& a, const Poly& c)
{
    if (c.is_const()) {
        UPoly r = a;
        mpq_class k = 1 / c.const_value();
        for (auto& x : r) x = x.scaled(k);
        return r;
    }
    UPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!a[i].divexact(c, r[i])) throw std::logic_error("content division failed");
    return r;
}

// clear denominators and the integer content
UPoly primitive_q(UPoly a)
{
    mpz_class num = 0, den = 1;
    for (auto& c : a)
        for (auto& t : c.terms()) {
            mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.c.get_num_mpz_t());
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.get_den_mpz_t());
        }
    if (num == 0) return a;
    mpq_class k(den, num);
    k.canonicalize();
    if (k != 1)
        for (auto& c : a) c = c.scaled(k);
    return a;
}

// sparse pseudo-remainder of a by b (deg a >= deg b)
UPoly prem(UPoly a, const UPoly& b)
{
    const std::size_t n = b.size() - 1;
    const Poly& lb = b.back();
    trim(a);
    while (!a.empty() && a.size() - 1 >= n) {
        std::size_t k = a.size() - 1 - n;
        Poly la = a.back();
        for (auto& c : a) c = c * lb;
        for (std::size_t i = 0; i <= n; ++i) a[i + k] -= la * b[i];
        trim(a);
    }
    return a;
}

Poly gcd_nomono(const Poly& a, const Poly& b);

Poly content_in(const Poly& p, Var v)
{
    auto cs = p.coeffs_in(v);
    return content(cs);
}

// deg_x gcd(a,b) is at most the degree of the gcd of a specialization
// of the other variables that keeps both leading coefficients nonzero
std::optional<std::uint32_t> degree_bound(const Poly& a, const Poly& b, Var x)
{
    UPoly ca = a.coeffs_in(x), cb = b.coeffs_in(x);
    for (unsigned trial = 0; trial < 6; ++trial) {
        auto value = [&](Var v) { return mpq_class(static_cast<long>((v * 2654435761u + trial * 7919u) % 29) - 14); };
        if (ca.back().eval(value) == 0 || cb.back().eval(value) == 0) continue;
        auto special = [&](const UPoly& c) {
            std::vector<Poly> r;
            for (auto& k : c) r.emplace_back(k.eval(value));
            return Poly::from_coeffs(x, r);
        };
        return gcd(special(ca), special(cb)).degree(x);
    }
    return std::nullopt;
}

Poly gcd_nomono(const Poly& a, const Poly& b)
{
    if (a.is_const() || b.is_const()) return Poly(1);
    auto va = a.vars(), vb = b.vars();
    for (Var v : va)
        if (!std::binary_search(vb.begin(), vb.end(), v)) return gcd(content_in(a, v), b);
    for (Var v : vb)
        if (!std::binary_search(va.begin(), va.end(), v)) return gcd(a, content_in(b, v));
    {
        Poly q;
        if (a.size() >= b.size() && a.divexact(b, q)) return b.monic();
        if (b.size() >= a.size() && b.divexact(a, q)) return a.monic();
    }
    if (va.size() > 1) {
        bool coprime = true;
        for (Var v : va) {
            auto d = degree_bound(a, b, v);
            if (!d || *d > 0) {
                coprime = false;
                break;
            }
        }
        if (coprime) return Poly(1);
    }
    Var x = va.front();
    UPoly ua = a.coeffs_in(x), ub = b.coeffs_in(x);
    Poly ca = content(ua), cb = content(ub);
    Poly c = gcd(ca, cb);
    ua = primitive_q(divide_all(ua, ca));
    ub = primitive_q(divide_all(ub, cb));
    if (ua.size() < ub.size()) std::swap(ua, ub);
    UPoly g;
    for (;;) {
        UPoly r = prem(ua, ub);
        if (r.empty()) {
            g = ub;
            break;
        }
        if (r.size() == 1) {
            g = {Poly(1)};
            break;
        }
        r = primitive_q(divide_all(r, content(r)));
        ua = std::move(ub);
        ub = std::move(r);
    }
    g = divide_all(g, content(g));
    return (c * Poly::from_coeffs(x, g)).monic();
}

}

Poly gcd(const Poly& a, const Poly& b)
{
    if (a.zero()) return b.monic();
    if (b.zero()) return a.monic();
    if (a.is_const() || b.is_const()) return Poly(1);
    Mono ma = a.min_mono(), mb = b.min_mono();
    Mono mg = Mono::gcd(ma, mb);
    Poly a1 = a.div_mono(ma), b1 = b.div_mono(mb);
    Poly g;
    if (a1.is_const() || b1.is_const()) g = Poly(1);
    else g = gcd_nomono(a1, b1);
    return g.times(mg).monic();
}

}
