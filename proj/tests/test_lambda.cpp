#include <doctest.h>
#include "extwb/lambda.h"
#include <functional>
#include <random>

using namespace extwb;

TEST_CASE("straightening identities") {
    LambdaAlg& L = lambda();
    CHECK(chain_str(L.rewrite({1, 7, 31})) == "l21 l11 l7 + l13 l11 l15");
    CHECK(chain_str(L.rewrite({7, 21})) == "l13 l15 + l11 l17");
    CHECK(L.rewrite({0, 5, 3}).empty());
    CHECK(L.rewrite({2, 5, 3}).empty());
    CHECK(chain_str(L.rewrite({0, 15, 15, 15})) == "l14 l13 l11 l7");
    CHECK(chain_str(L.rewrite({0, 7, 7})) == "l6 l5 l3");

    /* both association orders agree */
    Chain left = L.mul(L.rewrite({1, 7}), L.rewrite({31}));
    Chain right = L.mul(L.rewrite({1}), L.rewrite({7, 31}));
    CHECK(left == right);
    CHECK(left == L.rewrite({1, 7, 31}));
}

TEST_CASE("differential identities") {
    LambdaAlg& L = lambda();
    CHECK(chain_str(L.d(make_mono({2}))) == "l1 l0");
    CHECK(chain_str(L.d(make_mono({5}))) == "l3 l1");
    CHECK(chain_str(L.d(make_mono({6}))) == "l5 l0 + l3 l2");
    CHECK(chain_str(L.d(make_mono({13, 19, 15}))) ==
          "l13 l15 l11 l7 + l11 l17 l11 l7 + l7 l13 l11 l15");

    /* cycles */
    CHECK(L.d(L.rewrite({1, 7, 31})).empty());
    CHECK(L.d(make_mono({14, 13, 11, 7})).empty());
    CHECK(L.d(make_mono({2, 4, 7, 11, 15, 15})).empty());
    CHECK(L.d(make_mono({6, 5, 3})).empty());
}

TEST_CASE("d squared vanishes") {
    LambdaAlg& L = lambda();
    for (int s = 1; s <= 3; ++s)
        for (int t = s; t <= 24; ++t)
            for (const LMono& m : LambdaAlg::basis(s, t))
                CHECK(L.d(L.d(m)).empty());
}

TEST_CASE("leibniz rule") {
    LambdaAlg& L = lambda();
    std::mt19937 rng(5);
    std::vector<LMono> pool;
    for (int s = 1; s <= 3; ++s)
        for (int t = s; t <= 15; ++t)
            for (const LMono& m : LambdaAlg::basis(s, t))
                pool.push_back(m);
    for (int trial = 0; trial < 80; ++trial) {
        Chain a{pool[rng() % pool.size()]};
        Chain b{pool[rng() % pool.size()]};
        Chain lhs = L.d(L.mul(a, b));
        Chain rhs = L.mul(L.d(a), b);
        chain_xor_into(rhs, L.mul(a, L.d(b)));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("basis enumeration") {
    CHECK(LambdaAlg::basis(1, 8).size() == 1);
    CHECK(LambdaAlg::basis(0, 0).size() == 1);
    CHECK(LambdaAlg::basis(3, 42).size() == 313);

    /* descending order, all admissible */
    auto b = LambdaAlg::basis(4, 20);
    for (const LMono& m : b)
        CHECK(m.admissible());
    for (size_t k = 0; k + 1 < b.size(); ++k)
        CHECK(b[k + 1] < b[k]);

    /* leading-window restriction */
    auto win = LambdaAlg::basis(4, 20, 5);
    for (const LMono& m : win)
        CHECK(m.i[0] <= 5);

    /* count by brute recursion independent of the enumerator */
    std::function<long long(int, int, int)> go = [&go](int s, int rem, int cap) -> long long {
        if (s == 0)
            return rem == 0 ? 1 : 0;
        long long acc = 0;
        for (int x = 0; x <= std::min(cap, rem); ++x)
            acc += go(s - 1, rem - x, 2 * x);
        return acc;
    };
    auto count = [&go](int s, int t) { return go(s, t - s, t - s); };
    for (int s = 1; s <= 4; ++s)
        for (int t = s; t <= 18; ++t)
            CHECK((long long)LambdaAlg::basis(s, t).size() == count(s, t));
}

TEST_CASE("chain parse and print round trip") {
    LambdaAlg& L = lambda();
    Chain c = L.rewrite({1, 7, 31});
    CHECK(parse_chain(chain_str(c)) == c);
    CHECK(parse_chain("0").empty());
    CHECK(chain_str({}) == "0");
}

TEST_CASE("module complexes over the bundled spectra") {
    LambdaAlg& L = lambda();
    const Spectrum& x22 = spectrum_library().at("X22");
    const Spectrum& w = spectrum_library().at("W");

    ModChain x = parse_mod_chain("e22*l1 l7 l31 + e14*l13 l19 l15");
    /* straightening e22's coefficient */
    ModChain xs;
    mod_xor_into(xs, {{22, L.rewrite({1, 7, 31})}});
    mod_xor_into(xs, {{14, make_mono({13, 19, 15})}});
    CHECK(mod_chain_str(x) == mod_chain_str(xs));

    CHECK(module_diff(x22, x).empty());
    ModChain dw = module_diff(w, x);
    CHECK(mod_chain_str(dw) == "e15*l14 l13 l11 l7");

    /* d^2 = 0 on a module sweep */
    const Spectrum& y = spectrum_library().at("Y");
    for (int s = 1; s <= 3; ++s)
        for (int t = s; t <= 20; ++t) {
            ModuleCtx ctx = ModuleCtx::make(y, s, t);
            for (u32 idx = 0; idx < ctx.dim; ++idx) {
                auto [cell, m] = ctx.element(idx);
                ModChain d1 = module_diff(y, cell, {m});
                CHECK(module_diff(y, d1).empty());
            }
        }
}

TEST_CASE("module basis indexing round trip") {
    const Spectrum& w = spectrum_library().at("W");
    ModuleCtx ctx = ModuleCtx::make(w, 3, 24);
    REQUIRE(ctx.dim > 0);
    for (u32 idx = 0; idx < ctx.dim; ++idx) {
        auto [cell, m] = ctx.element(idx);
        CHECK(ctx.index_of(cell, m) == idx);
    }
    /* vec <-> chain round trip */
    SpVec v{0, ctx.dim / 2, ctx.dim - 1};
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    CHECK(mod_chain_to_vec(ctx, vec_to_mod_chain(ctx, v)) == v);
}
