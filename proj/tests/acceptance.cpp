#include "eds/report.hpp"
#include "support.hpp"

#include <functional>
#include <iostream>
#include <sstream>

using namespace eds;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream note;
    void expect(bool c, const std::string& what)
    {
        if (!c) {
            pass = false;
            note << " [" << what << "]";
        }
    }
};

const std::uint64_t seed = 20240611;

ScenarioResult scenario(const std::string& id)
{
    auto s = find_scenario(id);
    return verify_scenario(s->text, s->sha256, seed);
}

bool has_prefix(const std::vector<std::string>& v, const std::string& p)
{
    for (auto& s : v)
        if (s.rfind(p, 0) == 0) return true;
    return false;
}

int weighted(const std::vector<int>& s)
{
    int b = 0;
    for (std::size_t i = 0; i < s.size(); ++i) b += static_cast<int>(i + 1) * s[i];
    return b;
}

void c1(Outcome& o)
{
    auto r = scenario("case3");
    o.expect(r.distinct == 33, "33 equations");
    o.expect(r.solved == 25, "25 solved");
    o.expect(r.relations.size() == 2 && has_prefix(r.relations, "A6_2 = ") && has_prefix(r.relations, "A8_4 = "),
             "relations A6_2, A8_4");
    o.expect(r.report.characters == std::vector<int>{9, 7, 2, 0, 0}, "characters");
    o.expect(r.report.prolongation_dim == 29, "prolongation 29");
    o.expect(r.report.involutive, "involutive");
    o.expect(r.ok(), "all scenario checks");
}

void c2(Outcome& o)
{
    auto r = scenario("case2a");
    o.expect(r.report.characters == std::vector<int>{6, 4, 1, 0, 0}, "characters");
    o.expect(r.relations.size() == 1 && has_prefix(r.relations, "A3_2 = "), "single obstruction");
    o.expect(r.tableau_dim_before == 12 && r.report.tableau_dim == 11, "tableau 12 -> 11");
    o.expect(r.ok(), "all scenario checks");
}

void c3(Outcome& o)
{
    for (const char* id : {"case2b_pos", "case2b_neg"}) {
        auto r = scenario(id);
        std::string tag = id;
        o.expect(r.report.characters == std::vector<int>{2, 1, 0, 0, 0}, tag + " characters");
        o.expect(r.report.absorbed, tag + " absorbable");
        bool pattern = false;
        for (auto& c : r.checks)
            if (c.field == "tableau") pattern = c.ok;
        o.expect(pattern, tag + " tableau pattern");
        o.expect(r.ok(), tag + " all checks");
    }
}

void c4(Outcome& o)
{
    auto t = replay_section3(seed);
    o.expect(t.counts["distinct"] == 41, "41 equations");
    o.expect(t.counts["solved"] == 39, "39 solved");
    o.expect(t.counts["free"] == 76, "76 free");
    o.expect(t.obstructions == std::vector<std::string>{"P20", "P50", "P60"}, "obstructions");
    o.expect(t.ok, "transcript ok");
}

void c5(Outcome& o)
{
    auto p = replay_appendix_A(1), n = replay_appendix_A(-1);
    o.expect(p.ok && n.ok, "transcripts ok");
    o.expect(!p.certificates.empty() && p.certificates[0].valid, "positive certificate");
    o.expect(!n.certificates.empty() && n.certificates[0].valid, "negative certificate");
    o.expect(p.relations == std::vector<std::string>{"P54 = -P04", "P61 = -P02", "P72 = -P01", "P74 = P03"},
             "positive relations");
    o.expect(n.relations == std::vector<std::string>{"P54 = 0", "P71 = 0", "P62 = -2*P01", "P74 = 2*P03"},
             "negative relations");
}

void c6(Outcome& o)
{
    auto t = replay_appendix_B();
    o.expect(t.counts["distinct"] == 34 && t.counts["solved"] == 27, "34 equations, 27 solved");
    int good = 0;
    for (auto& e : t.table) good += e.ok;
    o.expect(t.table.size() == 9 && good == 9, "nine values");
    o.expect(t.contradictions.size() == 2, "both contradictions");
    o.expect(t.ok, "transcript ok");
}

void c7(Outcome& o)
{
    auto m = case1_model("0", "x*y");
    o.expect(case1_coframe(*m).ok(), "round trip");
    auto s = case1_model(std::nullopt, std::nullopt);
    o.expect(case1_coframe(*s).ok(), "symbolic round trip");
    o.expect(case1_pde(*m).text == "z_xy + x z_x - y z_y - x*y z = 0", "PDE string");
}

void c8(Outcome& o)
{
    auto m = build_scenario(find_scenario("case3")->text);
    auto C = coefficient_matrix(*m);
    for (auto& c : caseIII_minors(*m, C)) o.expect(c.ok, c.name);
    auto level = [](const char* f) {
        auto k = case1_model(std::string(f), std::nullopt);
        return case1_cohomogeneity(*k).level;
    };
    o.expect(level("0") == Cohomogeneity::zero, "f=0");
    o.expect(level("x*y") == Cohomogeneity::one, "f=xy");
    o.expect(level("x^2") == Cohomogeneity::zero, "f=x^2");
}

void c9(Outcome& o)
{
    ContactSpace cs;
    auto kind = [&](const ClassicalMA& e) {
        auto c = build_contact_system(cs.sp, e);
        return classify_type(cs.sp, c.psi, c.theta, c.dtheta);
    };
    auto w = kind(cs.parse("0", "0", "1/2", "0", "0"));
    o.expect(w.kind == MAKind::hyperbolic && w.discriminant == Expr(mpq_class(1, 4)), "wave");
    auto l = kind(cs.parse("0", "1", "0", "1", "0"));
    o.expect(l.kind == MAKind::elliptic && l.discriminant == Expr(-1), "Laplace");
    auto p = kind(cs.parse("0", "1", "0", "0", "0"));
    o.expect(p.kind == MAKind::parabolic && p.discriminant.zero(), "z_xx");
    std::mt19937_64 rng(seed);
    int n = 0;
    while (n < 20) {
        ClassicalMA e;
        for (Expr* x : {&e.A, &e.B, &e.C, &e.D, &e.E}) *x = Expr(testing::small_rational(rng, -2, 2));
        auto c = build_contact_system(cs.sp, e);
        if (c.psi.zero()) continue;
        ++n;
        auto base = classify_type(cs.sp, c.psi, c.theta, c.dtheta);
        Expr k(testing::nonzero_rational(rng));
        o.expect(classify_type(cs.sp, c.psi + k * c.dtheta, c.theta, c.dtheta).kind == base.kind, "shift invariance");
        o.expect(classify_type(cs.sp, k * c.psi, c.theta, c.dtheta).kind == base.kind, "scale invariance");
    }
}

void c10(Outcome& o)
{
    Registry reg;
    Space sp(reg);
    std::vector<int> gens;
    std::vector<Expr> vars;
    for (const char* c : {"x", "y", "z", "p", "q"}) {
        gens.push_back(sp.coord(c));
        vars.push_back(reg.lookup_expr(c));
    }
    reg.set_directions({"x", "y", "z", "p", "q"});
    std::mt19937_64 rng(seed);
    int bad_d2 = 0, bad_leibniz = 0, bad_anti = 0;
    for (int i = 0; i < 50; ++i) {
        int p = i % 3, q = (i / 3) % 3;
        Form a = testing::random_form(rng, sp, gens, p, vars), b = testing::random_form(rng, sp, gens, q, vars);
        if (!sp.d(sp.d(a)).zero()) ++bad_d2;
        if (sp.d(wedge(a, b)) != wedge(sp.d(a), b) + Expr(p % 2 ? -1 : 1) * wedge(a, sp.d(b))) ++bad_leibniz;
        if (wedge(a, b) != Expr((p * q) % 2 ? -1 : 1) * wedge(b, a)) ++bad_anti;
    }
    o.expect(!bad_d2, "d^2 = 0");
    o.expect(!bad_leibniz, "Leibniz");
    o.expect(!bad_anti, "anticommutativity");

    for (auto& s : embedded_scenarios()) {
        auto r = verify_scenario(s.text, s.sha256, seed), r2 = verify_scenario(s.text, s.sha256, seed + 1);
        o.expect(r.report.prolongation_dim <= weighted(r.report.characters), std::string("Cartan bound ") + s.id);
        o.expect(to_json(r).dump() == to_json(verify_scenario(s.text, s.sha256, seed)).dump(),
                 std::string("determinism ") + s.id);
        o.expect(r.report.characters == r2.report.characters, std::string("seed independence ") + s.id);
    }

    int bad_law = 0;
    auto rnd = [&] {
        for (;;) {
            Mat2 m = mat(Expr(testing::small_rational(rng)), Expr(testing::small_rational(rng)),
                         Expr(testing::small_rational(rng)), Expr(testing::small_rational(rng)));
            if (!det(m).zero()) return m;
        }
    };
    auto h = [&] {
        GroupElement g;
        g.A = rnd();
        g.a = det(g.A);
        Mat2 b = rnd();
        g.B = b * mat(g.a / det(b), 0, 0, 1);
        return g;
    };
    for (int i = 0; i < 20; ++i) {
        auto g1 = h(), g2 = h();
        S1S2 s{rnd(), rnd()};
        if (act(g2, act(g1, s)) != act(compose(g2, g1), s)) ++bad_law;
        std::pair<mpq_class, mpq_class> q{testing::small_rational(rng), testing::small_rational(rng)}, r = q;
        for (int k = 0; k < 4; ++k) r = rotate_Q(r);
        if (r != q) ++bad_law;
    }
    o.expect(!bad_law, "group law and rotation order");
}

}

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"case III involutive e-structure", c1},
        {"case IIa single obstruction", c2},
        {"case IIb tableau for both signs", c3},
        {"vanishing of the S1 block", c4},
        {"det S2 = 0 in both branches", c5},
        {"rank-one S2 contradictions", c6},
        {"case I coframe and PDE", c7},
        {"minors and cohomogeneity", c8},
        {"type classification", c9},
        {"property suites", c10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.note << " [exception: " << e.what() << "]";
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << o.note.str() << "\n";
    }
    return failed ? 1 : 0;
}
