#include "eds/case1.hpp"

#include <sstream>

namespace eds {

namespace {

Expr parse_concrete(Registry& reg, const std::string& text, const char* what)
{
    reg.auto_register = false;
    try {
        Expr e = reg.parse(text);
        reg.auto_register = true;
        return e;
    } catch (const std::exception& ex) {
        reg.auto_register = true;
        throw CaseIError(std::string("bad ") + what + ": " + ex.what());
    }
}

// terms of r containing g, divided out; the rest is dropped
Form divide_lenient(const Form& r, int g, bool& exact)
{
    exact = true;
    Form eta(r.coframe(), r.degree() - 1);
    for (const auto& [k, c] : r.terms()) {
        auto it = std::find(k.begin(), k.end(), static_cast<std::uint16_t>(g));
        if (it == k.end()) {
            exact = false;
            continue;
        }
        Key rest(k.begin(), it);
        rest.insert(rest.end(), it + 1, k.end());
        long pos = it - k.begin();
        eta.add_term(rest, pos % 2 ? -c : c);
    }
    return eta;
}

}

std::unique_ptr<CaseIModel> case1_model(const std::optional<std::string>& f, const std::optional<std::string>& phi)
{
    auto m = std::make_unique<CaseIModel>();
    Registry& reg = m->reg;
    for (const char* c : {"x", "y", "kappa", "p", "q"}) m->sp.coord(c);
    reg.set_directions({"x", "y", "kappa", "p", "q"});
    Var x = *reg.find("x"), y = *reg.find("y");

    m->symbolic_f = !f;
    m->symbolic_phi = !phi;
    m->f = f ? parse_concrete(reg, *f, "f") : Expr::var(reg.function("f", {x, y}));
    for (Var v : m->f.vars()) {
        const auto& s = reg.sym(v);
        if (s.kind == Kind::coordinate && s.name != "x" && s.name != "y")
            throw CaseIError("f must depend on x, y only");
    }
    m->E = reg.exp(m->f);
    Expr e2f = reg.exp(m->f * Expr(2));
    if (phi) {
        m->Phi = parse_concrete(reg, *phi, "Phi");
        for (Var v : m->Phi.vars())
            if (reg.sym(v).kind == Kind::coordinate && reg.sym(v).name != "x" && reg.sym(v).name != "y")
                throw CaseIError("Phi must depend on x, y only");
        Expr res = reg.derive(reg.derive(m->Phi, "x"), "y") - e2f;
        if (!res.zero()) throw CaseIError("Phi_xy - exp(2f) = " + reg.str(res) + " is not zero");
    } else {
        m->Phi = Expr::var(reg.function("Phi", {x, y}));
        reg.add_rule("Phi_xy", e2f);
    }
    m->fx = reg.derive(m->f, "x");
    m->fy = reg.derive(m->f, "y");
    m->fxy = reg.derive(m->fx, "y");
    m->Px = reg.derive(m->Phi, "x");
    m->Py = reg.derive(m->Phi, "y");
    return m;
}

Form divide_out(const Form& r, int g)
{
    bool exact = true;
    Form eta = divide_lenient(r, g, exact);
    if (!exact) throw std::invalid_argument("form is not divisible by the generator");
    return eta;
}

bool CaseICoframe::ok() const
{
    for (const auto& r : residuals)
        if (!r.residual.zero()) return false;
    return true;
}

Expr invariant_A(CaseIModel& m) { return Expr(-2) * m.fxy * m.E.pow(-2); }

CaseICoframe case1_coframe(CaseIModel& m)
{
    Space& sp = m.sp;
    Registry& reg = m.reg;
    Expr kappa = reg.lookup_expr("kappa"), p = reg.lookup_expr("p"), q = reg.lookup_expr("q");
    Form dx = sp.g("dx"), dy = sp.g("dy"), dp = sp.g("dp"), dq = sp.g("dq");
    const Expr half(mpq_class(1, 2));
    Expr E = m.E, E2 = E * E;

    Expr Bk = half * ((m.Py + m.fy) * p - (m.Px - m.fx) * q);
    Expr alpha = kappa + Bk, beta = -kappa + Bk;
    Expr Z = kappa - half * (m.Py + m.fy) * p - half * (m.Px - m.fx) * q;
    Expr P = E2 * p + (m.Px + m.fx) * Z;
    Expr Q = E2 * q - (m.Py - m.fy) * Z;

    CaseICoframe c;
    c.omega.resize(5);
    c.omega[1] = E * dx;
    c.omega[3] = E * dy;
    c.omega[2] = alpha * dy + dp;
    c.omega[4] = beta * dx + dq;
    c.omega[0] = E.inv() * (sp.d(Z) - P * dx - Q * dy);
    c.phi0 = (-m.Px) * dx + m.Py * dy;
    c.phi1 = m.fx * dx - m.fy * dy;
    const auto& w = c.omega;

    bool exact = true;
    Form R2 = sp.d(w[2]) + wedge(c.phi0 - c.phi1, w[2]) - wedge(w[0], w[3]);
    c.phi3 = E.inv() * divide_lenient(R2, sp.frame.at("dx"), exact);
    Form R4 = sp.d(w[4]) + wedge(c.phi0 + c.phi1, w[4]) + wedge(w[0], w[1]);
    c.phi7 = E.inv() * divide_lenient(R4, sp.frame.at("dy"), exact);
    c.A = invariant_A(m);

    Form w13 = wedge(w[1], w[3]);
    c.residuals = {
        {"dw0", sp.d(w[0]) + wedge(c.phi0, w[0]) - wedge(w[1], w[2]) - wedge(w[3], w[4])},
        {"dw1", sp.d(w[1]) + wedge(c.phi1, w[1])},
        {"dw2", sp.d(w[2]) + wedge(c.phi3, w[1]) + wedge(c.phi0 - c.phi1, w[2]) - wedge(w[0], w[3])},
        {"dw3", sp.d(w[3]) - wedge(c.phi1, w[3])},
        {"dw4", sp.d(w[4]) + wedge(c.phi7, w[3]) + wedge(c.phi0 + c.phi1, w[4]) + wedge(w[0], w[1])},
        {"dphi0", sp.d(c.phi0) - Expr(2) * w13},
        {"dphi1", sp.d(c.phi1) - c.A * w13},
    };
    return c;
}

std::string format_pde(const Registry& reg, const Expr& a, const Expr& b, const Expr& c)
{
    std::ostringstream os;
    os << "z_xy";
    auto term = [&](const Expr& k, const char* z) {
        if (k.zero()) return;
        bool neg = k.num().lc() < 0;
        Expr m = neg ? -k : k;
        os << (neg ? " - " : " + ");
        if (m == Expr(1)) {
        } else if (m.is_poly() && m.num().is_monomial()) {
            os << reg.str(m) << ' ';
        } else {
            os << '(' << reg.str(m) << ") ";
        }
        os << z;
    };
    term(a, "z_x");
    term(b, "z_y");
    term(c, "z");
    os << " = 0";
    return os.str();
}

CaseIPDE case1_pde(CaseIModel& m)
{
    CaseIPDE r;
    r.a = m.Py - m.fy;
    r.b = -(m.Px + m.fx);
    r.c = -((m.Px + m.fx) * (m.Py - m.fy) + m.fxy);
    r.text = format_pde(m.reg, r.a, r.b, r.c);

    // e^f w1^w2 against dx^(dP + (aP + bQ + cZ) dy), with dkappa eliminated through w0 = 0
    Space& sp = m.sp;
    Registry& reg = m.reg;
    CaseICoframe c = case1_coframe(m);
    Expr kappa = reg.lookup_expr("kappa"), p = reg.lookup_expr("p"), q = reg.lookup_expr("q");
    const Expr half(mpq_class(1, 2));
    Expr E2 = m.E * m.E;
    Expr Z = kappa - half * (m.Py + m.fy) * p - half * (m.Px - m.fx) * q;
    Expr P = E2 * p + (m.Px + m.fx) * Z;
    Expr Q = E2 * q - (m.Py - m.fy) * Z;
    Form dx = sp.g("dx"), dy = sp.g("dy");
    Form lhs = m.E * wedge(c.omega[1], c.omega[2]);
    Form rhs = wedge(dx, sp.d(P) + (r.a * P + r.b * Q + r.c * Z) * dy);
    int dk = sp.frame.at("dkappa");
    std::map<int, Form> sub{{dk, sp.g(dk) - m.E * c.omega[0]}};
    r.check = substitute(lhs - rhs, sub);
    return r;
}

std::string to_string(Cohomogeneity::Level l)
{
    switch (l) {
    case Cohomogeneity::zero: return "0";
    case Cohomogeneity::one: return "1";
    case Cohomogeneity::at_least_two: return ">=2";
    case Cohomogeneity::indeterminate: return "indeterminate";
    }
    return "?";
}

Cohomogeneity case1_cohomogeneity(CaseIModel& m)
{
    Cohomogeneity r;
    Registry& reg = m.reg;
    Expr A = invariant_A(m);
    Expr Ax = reg.derive(A, "x"), Ay = reg.derive(A, "y");
    r.witnesses = {{"A", A}, {"A_x", Ax}, {"A_y", Ay}};
    if (m.symbolic_f) return r;
    if (Ax.zero() && Ay.zero()) {
        r.level = Cohomogeneity::zero;
        return r;
    }
    if (Ax.zero() || Ay.zero()) {
        r.level = Cohomogeneity::at_least_two;
        return r;
    }
    Expr emf2 = m.E.pow(-2);
    auto jac = [&](const Expr& g) { return reg.derive(g, "x") * Ay - reg.derive(g, "y") * Ax; };
    Expr j1 = jac(emf2 * Ax * Ay);
    Expr j2 = jac(emf2 * reg.derive(Ax, "y"));
    r.witnesses.push_back({"J1", j1});
    r.witnesses.push_back({"J2", j2});
    r.level = j1.zero() && j2.zero() ? Cohomogeneity::one : Cohomogeneity::at_least_two;
    return r;
}

}
