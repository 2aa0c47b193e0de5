#include "eds/minors.hpp"

namespace eds {

CoeffMatrix coefficient_matrix(ScenarioModel& m)
{
    CoeffMatrix C;
    for (const auto& [v, f] : m.published) {
        const std::string& n = m.reg.name(v);
        if (n.size() < 2 || n[0] != 'A') continue;
        int s = std::stoi(n.substr(1));
        auto& row = C[s];
        for (int g : m.basis) row.push_back(f.coeff(Key{static_cast<std::uint16_t>(g)}));
    }
    return C;
}

Expr minor(const CoeffMatrix& C, int s1, int s2, int i1, int i2)
{
    const auto& a = C.at(s1);
    const auto& b = C.at(s2);
    return a.at(i1) * b.at(i2) - a.at(i2) * b.at(i1);
}

std::vector<MinorCheck> caseIII_minors(ScenarioModel& m, const CoeffMatrix& C)
{
    Expr A2 = m.reg.lookup_expr("A2"), A4 = m.reg.lookup_expr("A4");
    Expr k = Expr(4) * A2 * A4 + Expr(1);
    std::vector<MinorCheck> out;
    auto add = [&](std::string name, Expr computed, Expr expected) {
        MinorCheck c{std::move(name), computed, expected, computed - expected, false};
        c.ok = c.residual.zero();
        out.push_back(std::move(c));
    };
    add("M23_04", minor(C, 2, 3, 0, 4), (Expr(2) * A2).inv() * k * (Expr(2) * A2 * A2 - A4));
    add("M14_02", minor(C, 1, 4, 0, 2), -(Expr(2) * A4).inv() * k * (Expr(2) * A4 * A4 + A2));
    return out;
}

}
