#include "eds/pfaffian.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace eds;

namespace {

Tableau blank(int a, int s, int n)
{
    Tableau t;
    t.a = a;
    t.s = s;
    t.n = n;
    t.A.assign(static_cast<std::size_t>(a),
               std::vector<std::vector<Expr>>(static_cast<std::size_t>(s), std::vector<Expr>(static_cast<std::size_t>(n))));
    t.C.resize(static_cast<std::size_t>(a));
    return t;
}

int bound(const CartanReport& r)
{
    int b = 0;
    for (std::size_t i = 0; i < r.characters.size(); ++i) b += static_cast<int>(i + 1) * r.characters[i];
    return b;
}

}

TEST_SUITE("pfaffian")
{
    TEST_CASE("eliminator solves and certifies")
    {
        Registry reg;
        Var u = reg.parameter("u"), v = reg.parameter("v"), w = reg.parameter("w");
        Expr U = Expr::var(u), V = Expr::var(v), W = Expr::var(w);
        Eliminator el({u, v, w});
        CHECK(el.add(U + V - 1) == Eliminator::Status::pivot);
        CHECK(el.add(U - V - 3) == Eliminator::Status::pivot);
        CHECK(el.add(Expr(2) * U - 4) == Eliminator::Status::dependent);
        CHECK(el.rank() == 2);
        auto sol = el.solution();
        CHECK(sol.at(u) == Expr(2));
        CHECK(sol.at(v) == Expr(-1));
        CHECK(el.free_unknowns() == std::vector<Var>{w});
        CHECK(el.consistent());

        std::vector<Expr> eqs{U + V - 1, U + V - 5, W};
        Eliminator bad({u, v, w});
        for (auto& e : eqs) bad.add(e);
        REQUIRE_FALSE(bad.consistent());
        for (auto& c : bad.certificates()) {
            Expr sum;
            for (auto& [i, k] : c.combo) sum += k * eqs[static_cast<std::size_t>(i)];
            CHECK(sum == c.value);
            CHECK(sum.is_const());
            CHECK_FALSE(sum.zero());
        }
    }

    TEST_CASE("rational rank")
    {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 20; ++i) {
            // a 4x2 times 2x4 product has rank at most 2
            QMatrix a(4, std::vector<mpq_class>(2)), b(2, std::vector<mpq_class>(4)), m(4, std::vector<mpq_class>(4));
            for (auto& r : a)
                for (auto& x : r) x = testing::small_rational(rng);
            for (auto& r : b)
                for (auto& x : r) x = testing::small_rational(rng);
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    for (int k = 0; k < 2; ++k) m[r][c] += a[r][k] * b[k][c];
            CHECK(rank(m) <= 2);
            mpq_class d = a[0][0] * a[1][1] - a[0][1] * a[1][0], e = b[0][0] * b[1][1] - b[0][1] * b[1][0];
            if (d != 0 && e != 0) CHECK(rank(m) == 2);
        }
        CHECK(rank(QMatrix{}) == 0);
        CHECK(rank(QMatrix{{0, 0}, {0, 0}}) == 0);
        CHECK(rank(QMatrix{{1, 2}, {2, 4}}) == 1);
    }

    TEST_CASE("single column tableau is involutive")
    {
        Registry reg;
        Tableau t = blank(1, 1, 2);
        t.A[0][0][0] = 1;
        auto r = cartan_test(t, reg, 1);
        CHECK(r.characters == std::vector<int>{1, 0});
        CHECK(r.tableau_dim == 1);
        CHECK(r.prolongation_dim == 1);
        CHECK(r.absorbed);
        CHECK(r.involutive);
    }

    TEST_CASE("swapped tableau fails Cartan's test")
    {
        Registry reg;
        Tableau t = blank(2, 1, 2);
        t.A[0][0][0] = 1;
        t.A[1][0][1] = 1;
        auto r = cartan_test(t, reg, 1);
        CHECK(r.characters == std::vector<int>{1, 0});
        CHECK(r.prolongation_dim == 0);
        CHECK(r.prolongation_dim < bound(r));
        CHECK_FALSE(r.involutive);
    }

    TEST_CASE("torsion against a zero tableau")
    {
        Registry reg;
        Tableau t = blank(1, 1, 2);
        t.C[0][{0, 1}] = 1;
        CHECK_FALSE(t.zero());
        auto ab = absorb_torsion(t);
        CHECK_FALSE(ab.absorbable);
        REQUIRE(ab.obstructions.size() == 1);
        CHECK(ab.obstructions[0].is_const());
        auto r = cartan_test(t, reg, 1);
        CHECK(r.tableau_dim == 0);
        CHECK_FALSE(r.absorbed);
        CHECK_FALSE(r.involutive);
        CHECK(r.required_relations.size() == 1);
    }

    TEST_CASE("absorbable torsion")
    {
        Registry reg;
        Var x = reg.coordinate("x");
        Tableau t = blank(1, 1, 2);
        t.A[0][0][0] = Expr::var(x);
        t.C[0][{0, 1}] = Expr::var(x) * Expr::var(x) + 1;
        auto ab = absorb_torsion(t);
        CHECK(ab.absorbable);
        CHECK(ab.torsion_zeroed);
        auto r = cartan_test(t, reg, 3);
        CHECK(r.involutive);
    }

    TEST_CASE("partial obstruction becomes a relation")
    {
        Registry reg;
        Var a = reg.parameter("a"), b = reg.parameter("b");
        Tableau t = blank(2, 1, 2);
        t.A[0][0][0] = 1;
        t.A[1][0][0] = 1;
        t.C[0][{0, 1}] = Expr::var(a);
        t.C[1][{0, 1}] = Expr::var(b);
        auto ab = absorb_torsion(t);
        REQUIRE(ab.obstructions.size() == 1);
        auto rel = relations_from(ab.obstructions, {a});
        CHECK(rel.solved.at(a) == Expr::var(b));
        CHECK(rel.unresolved.empty());
    }

    TEST_CASE("ranks are independent of the seed")
    {
        Registry reg;
        std::vector<Expr> xs;
        for (const char* n : {"x", "y", "z"}) xs.push_back(Expr::var(reg.coordinate(n)));
        std::mt19937_64 rng(11);
        for (int i = 0; i < 20; ++i) {
            Tableau t = blank(2, 3, 3);
            for (auto& al : t.A)
                for (auto& row : al)
                    for (auto& e : row)
                        if (rng() % 2) e = testing::random_poly(rng, xs, 2, 1);
            auto r1 = cartan_test(t, reg, 1), r2 = cartan_test(t, reg, 987654321, 5);
            CHECK(r1.characters == r2.characters);
            CHECK(r1.tableau_dim == r2.tableau_dim);
            CHECK(r1.prolongation_dim == r2.prolongation_dim);
            CHECK(r1.prolongation_dim <= bound(r1));
            int sum = 0;
            for (int c : r1.characters) sum += c;
            CHECK(sum == r1.tableau_dim);
        }
    }
}
