#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace eds {

using Var = std::uint32_t;

// sparse monomial, entries sorted by variable id, exponents > 0
class Mono {
public:
    using Entry = std::pair<Var, std::uint32_t>;

    Mono() = default;
    static Mono var(Var v, std::uint32_t e = 1);

    const std::vector<Entry>& entries() const { return e_; }
    std::uint32_t degree() const { return deg_; }
    std::uint32_t degree(Var v) const;
    bool is_one() const { return e_.empty(); }

    Mono operator*(const Mono& o) const;
    bool divides(const Mono& o) const;          // this | o
    Mono operator/(const Mono& o) const;        // requires o | this
    Mono without(Var v) const;
    static Mono gcd(const Mono& a, const Mono& b);

    bool operator==(const Mono& o) const { return e_ == o.e_; }
    bool operator!=(const Mono& o) const { return e_ != o.e_; }
    std::size_t hash() const;

private:
    std::vector<Entry> e_;
    std::uint32_t deg_ = 0;
};

// graded lex, lower variable id ranks higher
int compare(const Mono& a, const Mono& b);

struct Term {
    Mono m;
    mpq_class c;
};

class Poly {
public:
    Poly() = default;
    Poly(long c);
    Poly(const mpq_class& c);
    static Poly var(Var v);
    static Poly monomial(const Mono& m, const mpq_class& c);

    bool zero() const { return t_.empty(); }
    bool is_const() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
    mpq_class const_value() const;
    bool is_monomial() const { return t_.size() == 1; }
    std::size_t size() const { return t_.size(); }
    const std::vector<Term>& terms() const { return t_; }
    const Term& lt() const { return t_.front(); }
    const mpq_class& lc() const { return t_.front().c; }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const mpq_class& c) const;
    Poly times(const Mono& m) const;
    Poly pow(unsigned k) const;

    std::vector<Var> vars() const;
    bool has_var(Var v) const;
    std::uint32_t degree(Var v) const;
    std::uint32_t total_degree() const;
    Mono min_mono() const;
    Poly div_mono(const Mono& m) const;

    Poly diff(Var v) const;
    mpq_class eval(const std::function<mpq_class(Var)>& value) const;

    // coefficients of v^0, v^1, ...
    std::vector<Poly> coeffs_in(Var v) const;
    static Poly from_coeffs(Var v, const std::vector<Poly>& cs);

    // exact division; false if d does not divide
    bool divexact(const Poly& d, Poly& q) const;
    Poly monic() const;

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }
    std::size_t hash() const;

    std::string str(const std::function<std::string(Var)>& name) const;

private:
    std::vector<Term> t_;   // descending order, no zero coefficients
    static Poly from_unsorted(std::vector<Term> ts);
    friend Poly gcd(const Poly&, const Poly&);
};

// monic gcd over Q; gcd(0,0) = 0
Poly gcd(const Poly& a, const Poly& b);

}
