#pragma once

#include "eds/expr.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace eds {

struct Generator {
    std::string name;
    int degree = 1;
    std::string dir;   // derivation direction label, empty if none
};

class Coframe {
public:
    int add(const std::string& name, int degree = 1, const std::string& dir = "");
    int ensure(const std::string& name, int degree = 1, const std::string& dir = "");
    std::optional<int> index(const std::string& name) const;
    int at(const std::string& name) const;
    const Generator& gen(int i) const { return gens_.at(static_cast<std::size_t>(i)); }
    int size() const { return static_cast<int>(gens_.size()); }

private:
    std::vector<Generator> gens_;
    std::map<std::string, int> by_name_;
};

using Key = std::vector<std::uint16_t>;

class Form {
public:
    Form() = default;
    Form(const Coframe* cf, int degree) : cf_(cf), deg_(degree) {}
    static Form scalar(const Coframe* cf, const Expr& c);
    static Form gen(const Coframe* cf, int i);

    const Coframe* coframe() const { return cf_; }
    int degree() const { return deg_; }
    bool zero() const { return t_.empty(); }
    const std::map<Key, Expr>& terms() const { return t_; }
    Expr coeff(const Key& k) const;
    Expr scalar_value() const;   // degree 0 only

    void add_term(const Key& k, const Expr& c);
    Form operator+(const Form& o) const;
    Form operator-(const Form& o) const;
    Form operator-() const;
    Form& operator+=(const Form& o) { return *this = *this + o; }
    Form& operator-=(const Form& o) { return *this = *this - o; }
    Form scaled(const Expr& c) const;
    Form subs(const std::map<Var, Expr>& s) const;
    bool operator==(const Form& o) const { return deg_ == o.deg_ && t_ == o.t_; }

private:
    const Coframe* cf_ = nullptr;
    int deg_ = 0;
    std::map<Key, Expr> t_;
};

Form wedge(const Form& a, const Form& b);
Form operator*(const Expr& c, const Form& f);
Form reduce_mod(const Form& a, const std::set<int>& killed);
// replace generators by forms of the same degree
Form substitute(const Form& a, const std::map<int, Form>& repl);
// +1/-1 and merged key, or 0 if the product vanishes
int merge_keys(const Coframe& cf, const Key& a, const Key& b, Key& out);

// coframe plus structure rules: d of each generator and of each scalar symbol
class Space {
public:
    explicit Space(Registry& reg) : reg(reg) {}
    Space(const Space&) = delete;
    Space& operator=(const Space&) = delete;

    Registry& reg;
    Coframe frame;

    int add_gen(const std::string& name, int degree = 1, const std::string& dir = "");
    int coord(const std::string& name);   // coordinate x with generator dx
    void set_basis(std::vector<int> gens) { basis_ = std::move(gens); dsym_cache_.clear(); }
    const std::vector<int>& basis() const { return basis_; }

    void set_d(int g, const Form& dg);
    void set_closed(int g);
    void set_unknown(int g);   // d(g) becomes a fresh even generator D(name)
    bool has_rule(int g) const;
    int delta(int g) const;    // the generator D(name), -1 if none
    void override_d(Var v, const Form& dv);
    void clear_override(Var v);

    Form g(const std::string& name) const { return Form::gen(&frame, frame.at(name)); }
    Form g(int i) const { return Form::gen(&frame, i); }
    Form scalar(const Expr& e) const { return Form::scalar(&frame, e); }

    Form d(const Expr& u);
    Form d(const Form& a);
    Form dgen(int g);
    Form dsym(Var v);

    Form parse(const std::string& text);
    std::string str(const Form& f) const;
    std::string key_str(const Key& k) const;

private:
    enum class R { none, form, closed, unknown };
    struct Rule {
        R kind = R::none;
        Form f;
        int delta = -1;
    };
    std::vector<Rule> rules_;
    std::vector<int> basis_;
    std::map<Var, Form> overrides_;
    std::map<Var, Form> dsym_cache_;
    Rule& rule(int g);
};

}
