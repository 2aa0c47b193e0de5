#pragma once

#include "eds/form.hpp"

#include <array>
#include <string>

namespace eds {

struct ClassicalMA {
    Expr A, B, C, D, E;
};

// coordinates x, y, z, p, q registered in that order
struct ContactSpace {
    Registry reg;
    Space sp{reg};
    ContactSpace();
    ClassicalMA parse(const std::string& A, const std::string& B, const std::string& C, const std::string& D,
                      const std::string& E);
};

struct ContactSystem {
    Form theta, dtheta, psi;
};
ContactSystem build_contact_system(Space& sp, const ClassicalMA& eq);

enum class MAKind { hyperbolic, elliptic, parabolic, degenerate, variable };
std::string to_string(MAKind k);

struct MATypeResult {
    MAKind kind = MAKind::degenerate;
    Expr discriminant;
    Expr a, b, c;   // (mu dtheta + Psi)^2 = (a mu^2 + b mu + c) dx^dy^dp^dq mod theta
};
MATypeResult classify_type(Space& sp, const Form& psi, const Form& theta, const Form& dtheta);

using Mat2 = std::array<std::array<Expr, 2>, 2>;
Mat2 mat(const Expr& a, const Expr& b, const Expr& c, const Expr& d);
Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 scaled(const Mat2& x, const Expr& s);
Expr det(const Mat2& x);
Mat2 inverse(const Mat2& x);
Mat2 identity2();
bool is_zero(const Mat2& x);

struct S1S2 {
    Mat2 S1, S2;
    bool operator==(const S1S2& o) const { return S1 == o.S1 && S2 == o.S2; }
};

struct GroupElement {
    Expr a = Expr(1);
    Mat2 A = identity2(), B = identity2();
    int j = 0;   // number of J applications after the h part, mod 2
};

struct GroupError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

S1S2 apply_J(const S1S2& s);
S1S2 act(const GroupElement& g, const S1S2& s);
// h-only elements: act(compose(g2, g1), s) = act(g2, act(g1, s))
GroupElement compose(const GroupElement& g2, const GroupElement& g1);

enum class Orbit { zero, rank1, rank2_pos, rank2_neg };
std::string to_string(Orbit o);

struct Normalization {
    GroupElement g;
    S1S2 normal;
    Orbit orbit = Orbit::zero;
};
// S2 entries must be rational constants
Normalization normalize_S2(const S1S2& s);

enum class QCase { I, II, III };
std::string to_string(QCase c);
QCase classify_Q(const mpq_class& q1, const mpq_class& q2);
std::pair<mpq_class, mpq_class> rotate_Q(const std::pair<mpq_class, mpq_class>& q);   // (Q1,Q2) -> (Q2,-Q1)

}
