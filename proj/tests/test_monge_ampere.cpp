#include "eds/monge_ampere.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace eds;

namespace {

MATypeResult classify(ContactSpace& cs, const ClassicalMA& eq)
{
    auto c = build_contact_system(cs.sp, eq);
    return classify_type(cs.sp, c.psi, c.theta, c.dtheta);
}

Mat2 random_mat(std::mt19937_64& rng)
{
    for (;;) {
        Mat2 m = mat(Expr(testing::small_rational(rng)), Expr(testing::small_rational(rng)),
                     Expr(testing::small_rational(rng)), Expr(testing::small_rational(rng)));
        if (!det(m).zero()) return m;
    }
}

// det A = det B = a
GroupElement random_h(std::mt19937_64& rng)
{
    GroupElement g;
    g.A = random_mat(rng);
    g.a = det(g.A);
    Mat2 b = random_mat(rng);
    g.B = b * mat(g.a / det(b), 0, 0, 1);
    return g;
}

S1S2 random_pair(std::mt19937_64& rng) { return {random_mat(rng), random_mat(rng)}; }

}

TEST_SUITE("monge-ampere")
{
    TEST_CASE("contact system")
    {
        ContactSpace cs;
        auto c = build_contact_system(cs.sp, cs.parse("0", "0", "1/2", "0", "0"));
        CHECK(c.theta == cs.sp.parse("dz - p*dx - q*dy"));
        CHECK(c.dtheta == cs.sp.parse("dx^dp + dy^dq"));
        CHECK(c.psi == cs.sp.parse("1/2*dq^dy - 1/2*dp^dx"));
        CHECK(build_contact_system(cs.sp, cs.parse("1", "0", "0", "0", "0")).psi == cs.sp.parse("dp^dq"));
        CHECK(build_contact_system(cs.sp, cs.parse("0", "0", "0", "0", "1")).psi == cs.sp.parse("dx^dy"));
    }

    TEST_CASE("type examples")
    {
        ContactSpace cs;
        auto wave = classify(cs, cs.parse("0", "0", "1/2", "0", "0"));
        CHECK(wave.kind == MAKind::hyperbolic);
        CHECK(wave.discriminant == Expr(mpq_class(1, 4)));
        auto lap = classify(cs, cs.parse("0", "1", "0", "1", "0"));
        CHECK(lap.kind == MAKind::elliptic);
        CHECK(lap.discriminant == Expr(-1));
        auto par = classify(cs, cs.parse("0", "1", "0", "0", "0"));
        CHECK(par.kind == MAKind::parabolic);
        CHECK(par.discriminant.zero());
        auto var = classify(cs, cs.parse("0", "x", "0", "1", "0"));
        CHECK(var.kind == MAKind::variable);
        CHECK(to_string(wave.kind) == "hyperbolic");
    }

    TEST_CASE("discriminant against the coefficient formula")
    {
        ContactSpace cs;
        std::vector<Expr> xs;
        for (const char* n : {"x", "y", "z", "p", "q"}) xs.push_back(cs.reg.lookup_expr(n));
        std::mt19937_64 rng(43);
        for (int i = 0; i < 20; ++i) {
            ClassicalMA eq{testing::random_poly(rng, xs, 2, 1), testing::random_poly(rng, xs, 2, 1),
                           testing::random_poly(rng, xs, 2, 1), testing::random_poly(rng, xs, 2, 1),
                           testing::random_poly(rng, xs, 2, 1)};
            auto r = classify(cs, eq);
            CHECK(r.discriminant == eq.C * eq.C - eq.B * eq.D + eq.A * eq.E);
        }
    }

    TEST_CASE("type is invariant under root shift and scaling")
    {
        ContactSpace cs;
        std::mt19937_64 rng(47);
        for (int i = 0; i < 20; ++i) {
            ClassicalMA eq;
            for (Expr* e : {&eq.A, &eq.B, &eq.C, &eq.D, &eq.E}) *e = Expr(testing::small_rational(rng, -2, 2));
            auto c = build_contact_system(cs.sp, eq);
            if (c.psi.zero()) continue;
            auto base = classify_type(cs.sp, c.psi, c.theta, c.dtheta);
            Expr k(testing::nonzero_rational(rng));
            auto shifted = classify_type(cs.sp, c.psi + k * c.dtheta, c.theta, c.dtheta);
            auto scaled = classify_type(cs.sp, k * c.psi, c.theta, c.dtheta);
            CHECK(shifted.kind == base.kind);
            CHECK(scaled.kind == base.kind);
            CHECK(shifted.discriminant == base.discriminant);
            CHECK(scaled.discriminant == k * k * base.discriminant);
        }
        auto c = build_contact_system(cs.sp, cs.parse("0", "0", "0", "0", "0"));
        CHECK(classify_type(cs.sp, c.dtheta, c.theta, c.dtheta).kind == MAKind::degenerate);
    }

    TEST_CASE("group action examples")
    {
        S1S2 s{mat(1, 2, 3, 4), mat(0, 0, 1, 0)};
        CHECK(act(GroupElement{}, s) == s);
        CHECK(apply_J(s).S1 == mat(-4, 2, 3, -1));
        GroupElement h;
        h.A = mat(2, 0, 0, mpq_class(1, 2));
        h.B = mat(mpq_class(1, 2), 0, 0, 2);
        // by hand: diag(1/2,2) E21 diag(1/2,2) = E21
        CHECK(act(h, s).S2 == mat(0, 0, 1, 0));
        GroupElement bad;
        bad.a = 2;
        CHECK_THROWS_AS(act(bad, s), GroupError);
    }

    TEST_CASE("group law")
    {
        std::mt19937_64 rng(53);
        for (int i = 0; i < 20; ++i) {
            auto g1 = random_h(rng), g2 = random_h(rng);
            auto s = random_pair(rng);
            CHECK(act(g2, act(g1, s)) == act(compose(g2, g1), s));
            // det S transforms by a^2
            auto t = act(g1, s);
            CHECK(det(t.S2) == g1.a * g1.a * det(s.S2));
            auto gj = g1;
            gj.j = 1;
            CHECK(det(act(gj, s).S2) == det(t.S2));
            CHECK(apply_J(apply_J(s)) == s);
        }
        GroupElement j;
        j.j = 1;
        CHECK_THROWS_AS(compose(j, GroupElement{}), GroupError);
    }

    TEST_CASE("Q rotation has order four")
    {
        std::mt19937_64 rng(59);
        for (int i = 0; i < 20; ++i) {
            std::pair<mpq_class, mpq_class> q{testing::small_rational(rng), testing::small_rational(rng)};
            auto r = q;
            for (int k = 0; k < 4; ++k) {
                r = rotate_Q(r);
                CHECK(classify_Q(r.first, r.second) == classify_Q(q.first, q.second));
            }
            CHECK(r == q);
        }
        CHECK(classify_Q(0, 0) == QCase::I);
        CHECK(classify_Q(5, 0) == QCase::II);
        CHECK(classify_Q(0, 5) == QCase::II);
        CHECK(classify_Q(1, 1) == QCase::III);
    }

    TEST_CASE("normalize S2")
    {
        auto n = normalize_S2({mat(0, 0, 0, 0), mat(0, 1, 0, 0)});
        CHECK(n.orbit == Orbit::rank1);
        CHECK(n.normal.S2 == mat(0, 0, 1, 0));
        CHECK(act(n.g, {mat(0, 0, 0, 0), mat(0, 1, 0, 0)}).S2 == mat(0, 0, 1, 0));

        auto id = normalize_S2({mat(0, 0, 0, 0), identity2()});
        CHECK(id.orbit == Orbit::rank2_pos);
        CHECK(id.normal.S2 == identity2());
        CHECK(normalize_S2({mat(0, 0, 0, 0), mat(0, 0, 0, 0)}).orbit == Orbit::zero);
        CHECK(normalize_S2({mat(0, 0, 0, 0), mat(0, 4, 1, 0)}).orbit == Orbit::rank2_neg);
        CHECK_THROWS_AS(normalize_S2({mat(0, 0, 0, 0), mat(2, 0, 0, 1)}), GroupError);

        // normal forms are fixed by the identity
        for (auto m : {mat(0, 0, 1, 0), identity2(), mat(0, 1, 1, 0)}) {
            auto k = normalize_S2({mat(1, 2, 3, 4), m});
            CHECK(k.g.a == Expr(1));
            CHECK(k.g.A == identity2());
            CHECK(k.g.B == identity2());
        }

        std::mt19937_64 rng(61);
        int hits = 0;
        for (int i = 0; i < 40; ++i) {
            auto s = random_pair(rng);
            if (i % 2) s.S2 = mat(s.S2[0][0], s.S2[0][1], s.S2[0][0] * 3, s.S2[0][1] * 3);
            try {
                auto k = normalize_S2(s);
                CHECK(act(k.g, s).S2 == k.normal.S2);
                ++hits;
            } catch (const GroupError&) {
                // |det S2| not a rational square
            }
        }
        CHECK(hits >= 20);
    }
}
