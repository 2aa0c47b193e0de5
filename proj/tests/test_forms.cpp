#include "eds/case1.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace eds;

namespace {

struct Coords {
    Registry reg;
    Space sp{reg};
    std::vector<int> gens;
    std::vector<Expr> vars;
    Coords()
    {
        for (const char* c : {"x", "y", "z", "p", "q"}) {
            gens.push_back(sp.coord(c));
            vars.push_back(reg.lookup_expr(c));
        }
        reg.set_directions({"x", "y", "z", "p", "q"});
    }
};

}

TEST_SUITE("exterior")
{
    TEST_CASE("wedge")
    {
        Coords c;
        Form dx = c.sp.g("dx"), dy = c.sp.g("dy"), dp = c.sp.g("dp"), dq = c.sp.g("dq");
        CHECK(wedge(dx, dx).zero());
        CHECK((wedge(dx, dy) + wedge(dy, dx)).zero());
        Form w = wedge(dx, dp) + wedge(dy, dq);
        // by hand: the two cross terms dx^dp^dy^dq and dy^dq^dx^dp are equal
        Form want = Expr(2) * wedge(wedge(wedge(dx, dp), dy), dq);
        CHECK(wedge(w, w) == want);
        Key k{static_cast<std::uint16_t>(c.sp.frame.at("dx")), static_cast<std::uint16_t>(c.sp.frame.at("dy")),
              static_cast<std::uint16_t>(c.sp.frame.at("dp")), static_cast<std::uint16_t>(c.sp.frame.at("dq"))};
        CHECK(wedge(w, w).coeff(k) == Expr(-2));
    }

    TEST_CASE("exterior derivative")
    {
        Coords c;
        Form theta = c.sp.parse("dz - p*dx - q*dy");
        CHECK(c.sp.d(theta) == c.sp.parse("dx^dp + dy^dq"));
        Registry reg;
        Space sp(reg);
        int w0 = sp.add_gen("w0");
        sp.set_closed(w0);
        CHECK(sp.d(Expr(3) * sp.g(w0)).zero());
        CHECK(c.sp.d(c.sp.parse("x^2*dy")) == c.sp.parse("2*x*dx^dy"));
    }

    TEST_CASE("unknown derivatives stay symbolic")
    {
        Registry reg;
        Space sp(reg);
        int w = sp.add_gen("w"), ph = sp.add_gen("phi");
        sp.set_basis({w});
        reg.set_directions({"w"});
        sp.set_unknown(ph);
        sp.set_d(w, -wedge(sp.g(ph), sp.g(w)));
        Form dd = sp.d(sp.d(sp.g(w)));
        CHECK(dd.degree() == 3);
        CHECK(reduce_mod(dd, {w}).zero());
        CHECK(sp.delta(ph) >= 0);
    }

    TEST_CASE("reduce_mod")
    {
        Coords c;
        Form a = c.sp.parse("dx^dy + dp^dq");
        std::set<int> k{c.sp.frame.at("dp")};
        CHECK(reduce_mod(a, k) == c.sp.parse("dx^dy"));
        CHECK(reduce_mod(a, {}) == a);
        CHECK(reduce_mod(reduce_mod(a, k), k) == reduce_mod(a, k));
    }

    TEST_CASE("divide_out")
    {
        Coords c;
        int dx = c.sp.frame.at("dx");
        Form r = c.sp.parse("y*dx^dp - x*dq^dx");
        Form eta = divide_out(r, dx);
        CHECK(wedge(c.sp.g(dx), eta) == r);
        CHECK_THROWS(divide_out(c.sp.parse("dy^dp"), dx));
    }

    TEST_CASE("d^2 = 0 on random forms")
    {
        Coords c;
        std::mt19937_64 rng(23);
        for (int i = 0; i < 50; ++i) {
            Form a = testing::random_form(rng, c.sp, c.gens, i % 3, c.vars);
            CHECK(c.sp.d(c.sp.d(a)).zero());
        }
    }

    TEST_CASE("graded Leibniz on random pairs")
    {
        Coords c;
        std::mt19937_64 rng(29);
        for (int i = 0; i < 50; ++i) {
            int p = i % 3, q = (i / 3) % 3;
            Form a = testing::random_form(rng, c.sp, c.gens, p, c.vars);
            Form b = testing::random_form(rng, c.sp, c.gens, q, c.vars);
            Form lhs = c.sp.d(wedge(a, b));
            Form rhs = wedge(c.sp.d(a), b) + Expr(p % 2 ? -1 : 1) * wedge(a, c.sp.d(b));
            CHECK(lhs == rhs);
        }
    }

    TEST_CASE("graded anticommutativity on random pairs")
    {
        Coords c;
        std::mt19937_64 rng(31);
        for (int i = 0; i < 50; ++i) {
            int p = 1 + i % 2, q = 1 + (i / 2) % 2;
            Form a = testing::random_form(rng, c.sp, c.gens, p, c.vars);
            Form b = testing::random_form(rng, c.sp, c.gens, q, c.vars);
            CHECK(wedge(a, b) == Expr((p * q) % 2 ? -1 : 1) * wedge(b, a));
        }
    }

    TEST_CASE("reduce_mod commutes with wedge")
    {
        Coords c;
        std::mt19937_64 rng(37);
        for (int i = 0; i < 20; ++i) {
            Form a = testing::random_form(rng, c.sp, c.gens, 1, c.vars);
            Form b = testing::random_form(rng, c.sp, c.gens, 2, c.vars);
            std::set<int> K{c.gens[static_cast<std::size_t>(i % 5)], c.gens[static_cast<std::size_t>((i + 2) % 5)]};
            CHECK(reduce_mod(wedge(a, b), K) == reduce_mod(wedge(reduce_mod(a, K), reduce_mod(b, K)), K));
        }
    }

    TEST_CASE("coefficient round trip")
    {
        Coords c;
        std::mt19937_64 rng(41);
        for (int i = 0; i < 20; ++i) {
            Form a = testing::random_form(rng, c.sp, c.gens, 2, c.vars);
            Form b(&c.sp.frame, 2);
            for (auto& [k, v] : a.terms()) {
                Form m = c.sp.scalar(a.coeff(k));
                for (auto g : k) m = wedge(m, c.sp.g(g));
                b += m;
            }
            CHECK(a == b);
        }
    }

    TEST_CASE("form parsing and printing")
    {
        Coords c;
        Form a = c.sp.parse("x^2*dx^dy - y/(x+1)*dz^dq");
        CHECK(c.sp.parse(c.sp.str(a)) == a);
        CHECK_THROWS(c.sp.parse("dx + dx^dy"));
    }
}
