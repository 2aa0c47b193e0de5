#include "eds/monge_ampere.hpp"

#include <algorithm>

namespace eds {

ContactSpace::ContactSpace()
{
    for (const char* c : {"x", "y", "z", "p", "q"}) sp.coord(c);
    reg.set_directions({"x", "y", "z", "p", "q"});
}

ClassicalMA ContactSpace::parse(const std::string& A, const std::string& B, const std::string& C, const std::string& D,
                                const std::string& E)
{
    return {reg.parse(A), reg.parse(B), reg.parse(C), reg.parse(D), reg.parse(E)};
}

ContactSystem build_contact_system(Space& sp, const ClassicalMA& eq)
{
    ContactSystem c;
    auto p = sp.reg.lookup_expr("p"), q = sp.reg.lookup_expr("q");
    Form dx = sp.g("dx"), dy = sp.g("dy"), dz = sp.g("dz"), dp = sp.g("dp"), dq = sp.g("dq");
    c.theta = dz - p * dx - q * dy;
    c.dtheta = sp.d(c.theta);
    c.psi = eq.A * wedge(dp, dq) + eq.B * wedge(dp, dy) + eq.C * (wedge(dq, dy) - wedge(dp, dx)) - eq.D * wedge(dq, dx) +
            eq.E * wedge(dx, dy);
    return c;
}

std::string to_string(MAKind k)
{
    switch (k) {
    case MAKind::hyperbolic: return "hyperbolic";
    case MAKind::elliptic: return "elliptic";
    case MAKind::parabolic: return "parabolic";
    case MAKind::degenerate: return "degenerate";
    case MAKind::variable: return "variable";
    }
    return "?";
}

MATypeResult classify_type(Space& sp, const Form& psi, const Form& theta, const Form& dtheta)
{
    int dz = sp.frame.at("dz");
    // theta = dz - p dx - q dy, so mod theta dz -> p dx + q dy
    Form repl = sp.g("dz") - theta;
    std::map<int, Form> sub{{dz, repl}};
    Form P = substitute(psi, sub), T = substitute(dtheta, sub);
    Key vol;
    for (const char* g : {"dx", "dy", "dp", "dq"}) vol.push_back(static_cast<std::uint16_t>(sp.frame.at(g)));
    std::sort(vol.begin(), vol.end());

    MATypeResult r;
    r.a = wedge(T, T).coeff(vol);
    r.b = wedge(T, P).coeff(vol) * Expr(2);
    r.c = wedge(P, P).coeff(vol);

    bool degenerate = P.zero();
    if (!degenerate && !T.zero()) {
        const auto& [k0, c0] = *T.terms().begin();
        Expr k = P.coeff(k0) / c0;
        degenerate = (P - T.scaled(k)).zero();
    }
    if (r.a.zero()) throw std::invalid_argument("d(theta) is degenerate mod theta");
    r.discriminant = (r.b * r.b - Expr(4) * r.a * r.c) / (Expr(4) * r.a * r.a);
    if (degenerate) {
        r.kind = MAKind::degenerate;
    } else if (!r.discriminant.is_const()) {
        r.kind = MAKind::variable;
    } else {
        int s = sgn(r.discriminant.const_value());
        r.kind = s > 0 ? MAKind::hyperbolic : s < 0 ? MAKind::elliptic : MAKind::parabolic;
    }
    return r;
}

Mat2 mat(const Expr& a, const Expr& b, const Expr& c, const Expr& d) { return Mat2{{{a, b}, {c, d}}}; }

Mat2 operator*(const Mat2& x, const Mat2& y)
{
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) r[i][k] = x[i][0] * y[0][k] + x[i][1] * y[1][k];
    return r;
}

Mat2 scaled(const Mat2& x, const Expr& s)
{
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) r[i][k] = x[i][k] * s;
    return r;
}

Expr det(const Mat2& x) { return x[0][0] * x[1][1] - x[0][1] * x[1][0]; }

Mat2 inverse(const Mat2& x)
{
    Expr d = det(x);
    if (d.zero()) throw GroupError("matrix is not invertible");
    Expr s = d.inv();
    return mat(x[1][1] * s, -x[0][1] * s, -x[1][0] * s, x[0][0] * s);
}

Mat2 identity2() { return mat(1, 0, 0, 1); }

bool is_zero(const Mat2& x) { return x[0][0].zero() && x[0][1].zero() && x[1][0].zero() && x[1][1].zero(); }

S1S2 apply_J(const S1S2& s)
{
    S1S2 r;
    r.S1 = mat(-s.S1[1][1], s.S1[0][1], s.S1[1][0], -s.S1[0][0]);
    r.S2 = mat(s.S2[1][1], -s.S2[0][1], -s.S2[1][0], s.S2[0][0]);
    return r;
}

S1S2 act(const GroupElement& g, const S1S2& s)
{
    if (g.a.zero()) throw GroupError("a must be nonzero");
    if (det(g.A) != g.a || det(g.B) != g.a) throw GroupError("det(A) and det(B) must both equal a");
    Mat2 Ai = inverse(g.A);
    S1S2 r{scaled(Ai * s.S1 * g.B, g.a), scaled(Ai * s.S2 * g.B, g.a)};
    for (int i = 0; i < (g.j % 2 + 2) % 2; ++i) r = apply_J(r);
    return r;
}

GroupElement compose(const GroupElement& g2, const GroupElement& g1)
{
    if (g1.j % 2 || g2.j % 2) throw GroupError("compose is defined for h elements only");
    GroupElement g;
    g.a = g1.a * g2.a;
    g.A = g1.A * g2.A;
    g.B = g1.B * g2.B;
    return g;
}

std::string to_string(Orbit o)
{
    switch (o) {
    case Orbit::zero: return "zero";
    case Orbit::rank1: return "rank1";
    case Orbit::rank2_pos: return "rank2_pos";
    case Orbit::rank2_neg: return "rank2_neg";
    }
    return "?";
}

namespace {

mpq_class rat(const Expr& e)
{
    if (!e.is_const()) throw GroupError("S2 entries must be rational constants");
    return e.const_value();
}

bool rational_sqrt(const mpq_class& x, mpq_class& out)
{
    if (x < 0) return false;
    mpz_class n = x.get_num(), d = x.get_den(), rn, rd;
    rn = sqrt(n);
    rd = sqrt(d);
    if (rn * rn != n || rd * rd != d) return false;
    out = mpq_class(rn, rd);
    out.canonicalize();
    return true;
}

}

Normalization normalize_S2(const S1S2& s)
{
    Normalization n;
    mpq_class S[2][2];
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) S[i][k] = rat(s.S2[i][k]);
    mpq_class d = S[0][0] * S[1][1] - S[0][1] * S[1][0];
    if (d != 0) {
        n.orbit = d > 0 ? Orbit::rank2_pos : Orbit::rank2_neg;
        Mat2 T = d > 0 ? identity2() : mat(0, 1, 1, 0);
        mpq_class a;
        if (!rational_sqrt(1 / abs(d), a))
            throw GroupError("normalizing S2 needs a = 1/sqrt|det S2|, which is irrational for det S2 = " + d.get_str());
        Expr ae(a);
        n.g.a = ae;
        n.g.A = mat(1, 0, 0, ae);
        n.g.B = scaled(inverse(s.S2) * n.g.A * T, ae.inv());
    } else {
        int ri = -1, ci = -1;
        for (int i = 0; i < 2 && ri < 0; ++i)
            for (int k = 0; k < 2; ++k)
                if (S[i][k] != 0) {
                    ri = i, ci = k;
                    break;
                }
        if (ri < 0) {
            n.orbit = Orbit::zero;
            n.normal = s;
            return n;
        }
        n.orbit = Orbit::rank1;
        mpq_class u[2] = {S[0][ci], S[1][ci]};
        mpq_class v[2] = {S[ri][0] / S[ri][ci], S[ri][1] / S[ri][ci]};
        mpq_class w[2], r[2];
        if (u[0] != 0) w[0] = 0, w[1] = -1 / u[0];
        else w[0] = 1 / u[1], w[1] = 0;
        if (v[0] != 0) r[0] = 0, r[1] = 1 / v[0];
        else r[0] = -1 / v[1], r[1] = 0;
        n.g.A = mat(Expr(w[0]), Expr(u[0]), Expr(w[1]), Expr(u[1]));
        n.g.B = inverse(mat(Expr(v[0]), Expr(v[1]), Expr(r[0]), Expr(r[1])));
    }
    n.normal = act(n.g, s);
    Mat2 want = n.orbit == Orbit::rank1 ? mat(0, 0, 1, 0) : n.orbit == Orbit::rank2_pos ? identity2() : mat(0, 1, 1, 0);
    if (n.normal.S2 != want) throw std::logic_error("normalization failed on re-application");
    return n;
}

std::string to_string(QCase c)
{
    switch (c) {
    case QCase::I: return "I";
    case QCase::II: return "II";
    case QCase::III: return "III";
    }
    return "?";
}

QCase classify_Q(const mpq_class& q1, const mpq_class& q2)
{
    if (q1 == 0 && q2 == 0) return QCase::I;
    if (q1 == 0 || q2 == 0) return QCase::II;
    return QCase::III;
}

std::pair<mpq_class, mpq_class> rotate_Q(const std::pair<mpq_class, mpq_class>& q) { return {q.second, -q.first}; }

}
