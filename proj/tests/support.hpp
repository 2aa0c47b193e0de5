#pragma once

#include "eds/form.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing {

inline mpq_class small_rational(std::mt19937_64& rng, int lo = -5, int hi = 5)
{
    std::uniform_int_distribution<int> n(lo, hi), d(1, 4);
    mpq_class q(n(rng), d(rng));
    q.canonicalize();
    return q;
}

inline mpq_class nonzero_rational(std::mt19937_64& rng)
{
    mpq_class q;
    do q = small_rational(rng);
    while (q == 0);
    return q;
}

// random polynomial in the given variables, total degree <= deg
inline eds::Expr random_poly(std::mt19937_64& rng, const std::vector<eds::Expr>& vars, int terms = 3, int deg = 2)
{
    std::uniform_int_distribution<int> pick(0, static_cast<int>(vars.size()) - 1), dd(0, deg);
    eds::Expr e;
    for (int t = 0; t < terms; ++t) {
        eds::Expr m(small_rational(rng));
        int k = dd(rng);
        for (int i = 0; i < k; ++i) m *= vars[static_cast<std::size_t>(pick(rng))];
        e += m;
    }
    return e;
}

// random form of degree k over generators gens
inline eds::Form random_form(std::mt19937_64& rng, const eds::Space& sp, const std::vector<int>& gens, int k,
                             const std::vector<eds::Expr>& vars, int terms = 3)
{
    eds::Form f(&sp.frame, k);
    if (k == 0) return sp.scalar(random_poly(rng, vars));
    std::uniform_int_distribution<int> pick(0, static_cast<int>(gens.size()) - 1);
    for (int t = 0; t < terms; ++t) {
        eds::Form m = sp.scalar(random_poly(rng, vars, 2, 2));
        for (int i = 0; i < k; ++i) m = eds::wedge(m, sp.g(gens[static_cast<std::size_t>(pick(rng))]));
        f += m;
    }
    return f;
}

}
