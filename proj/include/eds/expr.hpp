#pragma once

#include "eds/poly.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace eds {

struct DenominatorZero : std::domain_error {
    DenominatorZero() : std::domain_error("denominator vanishes at point") {}
};

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t p)
        : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

// num/den with gcd 1 and monic denominator
class Expr {
public:
    Expr() = default;
    Expr(long c) : num_(c), den_(1) {}
    Expr(const mpq_class& c) : num_(c), den_(1) {}
    Expr(const Poly& p) : num_(p), den_(1) {}
    Expr(const Poly& n, const Poly& d);
    static Expr var(Var v) { return Expr(Poly::var(v)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool zero() const { return num_.zero(); }
    bool is_const() const { return num_.is_const() && den_.is_const(); }
    mpq_class const_value() const { return num_.const_value(); }
    bool is_poly() const { return den_.is_const(); }

    Expr operator-() const;
    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator*(const Expr& o) const;
    Expr operator/(const Expr& o) const;
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }
    Expr& operator/=(const Expr& o) { return *this = *this / o; }
    Expr pow(long k) const;
    Expr inv() const;

    std::vector<Var> vars() const;
    bool has_var(Var v) const { return num_.has_var(v) || den_.has_var(v); }
    bool has_any(const std::set<Var>& vs) const;
    Expr partial(Var v) const;
    Expr subs(const std::map<Var, Expr>& s) const;
    mpq_class eval(const std::function<mpq_class(Var)>& value) const;

    // e / (leading coefficient of numerator); identifies scalar multiples
    Expr normalized() const;

    bool operator==(const Expr& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Expr& o) const { return !(*this == o); }
    std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

private:
    Poly num_, den_ = Poly(1);
    static Expr raw(Poly n, Poly d);
};

struct ExprHash {
    std::size_t operator()(const Expr& e) const { return e.hash(); }
};

// e = sum coeffs[u] * u + rest, with coeffs and rest free of the unknowns
struct Affine {
    std::map<Var, Expr> coeffs;
    Expr rest;
};
struct NonlinearError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
Affine affine_split(const Expr& e, const std::set<Var>& unknowns);

enum class Kind { coordinate, function, derived, parameter, exponential };

struct Symbol {
    std::string name;
    Kind kind;
    std::vector<Var> args;                // function: coordinate dependencies (empty = all)
    Var base = 0;                         // derived
    std::vector<std::string> index;       // derived, sorted
    std::optional<Expr> arg;              // exponential
};

class Registry {
public:
    Registry() = default;
    Registry(const Registry&) = delete;
    Registry& operator=(const Registry&) = delete;

    Var coordinate(const std::string& name);
    Var function(const std::string& name, const std::vector<Var>& args = {});
    Var parameter(const std::string& name);
    Var derived(Var base, std::vector<std::string> index);
    // d/d(dir) of a symbol, with rules applied
    Expr derived_expr(Var base, std::vector<std::string> index);
    Expr exp(const Expr& arg);

    std::optional<Var> find(const std::string& name) const;
    const Symbol& sym(Var v) const { return syms_.at(v); }
    const std::string& name(Var v) const { return syms_.at(v).name; }
    std::size_t size() const { return syms_.size(); }

    void set_directions(std::vector<std::string> dirs) { dirs_ = std::move(dirs); }
    const std::vector<std::string>& directions() const { return dirs_; }
    Expr derive(const Expr& e, const std::string& dir);
    Expr derive_symbol(Var v, const std::string& dir);

    // lhs must name a derived symbol (e.g. Phi_xy); rejected if it closes a cycle
    void add_rule(const std::string& lhs, const Expr& rhs);
    std::size_t rule_count() const { return rules_.size(); }

    bool auto_register = true;
    std::vector<std::string> side_conditions;

    Expr parse(const std::string& text);
    std::string str(const Expr& e) const;
    std::string str(const Poly& p) const;
    Var lookup(const std::string& name);   // resolves f_xy, auto-registers when allowed
    Expr lookup_expr(const std::string& name);

private:
    std::vector<Symbol> syms_;
    std::unordered_map<std::string, Var> by_name_;
    std::map<std::pair<Var, std::vector<std::string>>, Var> derived_;
    std::map<std::string, std::vector<std::pair<mpz_class, Var>>> exps_;   // primitive argument -> (n, exp(arg/n))
    std::vector<std::string> dirs_;
    struct Rule {
        Var base;
        std::vector<std::string> index;
        Expr rhs;
    };
    std::vector<Rule> rules_;
    std::map<Var, Expr> rule_cache_;

    Var add(Symbol s);
    std::vector<std::string> split_index(const std::string& s) const;
    void bases_of(const Expr& e, std::set<Var>& out) const;
};

// recursive-descent grammar shared by scalar and form parsing
// S provides: using V; V number(const mpq_class&); V ident(const std::string&);
// V call(const std::string&, V); V add(V,V); V sub(V,V); V mul(V,V); V div(V,V);
// V neg(V); V power(V, long); V wedge(V,V)
namespace detail {

template <class S>
class Grammar {
public:
    using V = typename S::V;
    Grammar(S& s, const std::string& text) : s_(s), t_(text) {}

    V parse()
    {
        V v = expr();
        skip();
        if (i_ != t_.size()) fail("unexpected '" + std::string(1, t_[i_]) + "'");
        return v;
    }

private:
    S& s_;
    const std::string& t_;
    std::size_t i_ = 0;

    [[noreturn]] void fail(const std::string& m) { throw ParseError(m, i_); }
    void skip()
    {
        while (i_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[i_]))) ++i_;
    }
    bool eat(char c)
    {
        skip();
        if (i_ < t_.size() && t_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }

    V expr()
    {
        V v = term();
        for (;;) {
            if (eat('+')) v = s_.add(v, term());
            else if (eat('-')) v = s_.sub(v, term());
            else return v;
        }
    }
    V term()
    {
        V v = factor();
        for (;;) {
            if (eat('*')) v = s_.mul(v, factor());
            else if (eat('/')) v = s_.div(v, factor());
            else return v;
        }
    }
    V factor()
    {
        if (eat('-')) return s_.neg(factor());
        if (eat('+')) return factor();
        return power();
    }
    V power()
    {
        V v = atom();
        while (eat('^')) {
            skip();
            std::size_t j = i_;
            bool minus = false;
            if (j < t_.size() && t_[j] == '-') minus = true, ++j;
            if (j < t_.size() && std::isdigit(static_cast<unsigned char>(t_[j]))) {
                std::size_t k = j;
                while (k < t_.size() && std::isdigit(static_cast<unsigned char>(t_[k]))) ++k;
                long e = std::stol(t_.substr(j, k - j));
                i_ = k;
                v = s_.power(v, minus ? -e : e);
            } else {
                v = s_.wedge(v, atom());
            }
        }
        return v;
    }
    V atom()
    {
        skip();
        if (i_ >= t_.size()) fail("unexpected end of input");
        char c = t_[i_];
        if (c == '(') {
            ++i_;
            V v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t k = i_;
            while (k < t_.size() && std::isdigit(static_cast<unsigned char>(t_[k]))) ++k;
            mpq_class q(t_.substr(i_, k - i_));
            i_ = k;
            return s_.number(q);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = i_, k = i_;
            while (k < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[k])) || t_[k] == '_')) ++k;
            std::string id = t_.substr(i_, k - i_);
            i_ = k;
            skip();
            if (i_ < t_.size() && t_[i_] == '(') {
                ++i_;
                V arg = expr();
                if (!eat(')')) fail("expected ')'");
                try {
                    return s_.call(id, arg);
                } catch (const ParseError&) {
                    throw;
                } catch (const std::exception& e) {
                    throw ParseError(e.what(), start);
                }
            }
            try {
                return s_.ident(id);
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception& e) {
                throw ParseError(e.what(), start);
            }
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

}

}
