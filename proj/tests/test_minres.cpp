#include <doctest.h>
#include <extwb/lambda.h>
#include <extwb/minres.h>

using namespace extwb;

namespace {

std::shared_ptr<SteenrodAlg> shared_alg(int tmax) {
    static std::shared_ptr<SteenrodAlg> alg;
    if (!alg || alg->tmax() < tmax)
        alg = std::make_shared<SteenrodAlg>(std::max(tmax, 40));
    return alg;
}

/* cohomology dimension of the lambda-algebra complex of a spectrum */
size_t lam_coh_dim(const Spectrum& sp, int s, int t) {
    auto rank = [&](int s2) -> size_t {
        if (s2 < 0)
            return 0;
        ModuleCtx src = ModuleCtx::make(sp, s2, t);
        ModuleCtx dst = ModuleCtx::make(sp, s2 + 1, t);
        SparseEch E;
        for (u32 i = 0; i < src.dim; ++i) {
            auto [c, m] = src.element(i);
            E.add(mod_chain_to_vec(dst, module_diff(sp, c, {m})));
        }
        return E.rank();
    };
    return ModuleCtx::make(sp, s, t).dim - rank(s) - rank(s - 1);
}

ResClass gen_class(const MinRes& R, int s, int t, size_t which = 0) {
    ResClass c;
    c.s = s;
    c.t = t;
    c.coef = BitVec(R.gens_at(s, t).size());
    c.coef.set(which);
    return c;
}

}  // namespace

TEST_CASE("sphere resolution matches the classical Ext chart through stem 15") {
    // dimensions of Ext^{s, stem+s}(S0), stems 0..15
    static const int chart[8][16] = {
        {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
        {1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1},
        {1, 0, 1, 1, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1, 1},
        {1, 0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1, 1},
        {1, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 1},
        {1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 2},
        {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1},
        {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1},
    };
    MinRes R(build_sphere(0), shared_alg(22));
    R.extend(7, 22);
    for (int s = 0; s <= 7; ++s)
        for (int stem = 0; stem <= 15; ++stem)
            CHECK((long long)R.ext_dim(s, stem + s) == chart[s][stem]);
}

TEST_CASE("resolution differentials square to zero and are minimal") {
    MinRes R(build_sphere(0), shared_alg(20));
    R.extend(6, 20);
    for (int s = 1; s <= 6; ++s)
        for (u32 k = 0; k < R.gen_count(s); ++k) {
            for (const auto& [k2, m] : R.diff(s, k))
                CHECK(m.len > 0);
            int t = R.gen_degree(s, k);
            if (s == 1)
                CHECK(R.eps_coords(t, R.diff(1, k)).none());
            else
                CHECK(R.diff_coords(s - 1, t, R.diff(s, k), R.slice(s - 2, t)).none());
        }
}

TEST_CASE("two-cell and projective-space resolutions agree with the lambda complex") {
    auto ceta = resolve_spectrum("Ceta");
    auto p15 = build_stunted(1, 5);
    for (const auto& sp : {ceta, p15}) {
        MinRes R(sp, shared_alg(16));
        R.extend(6, 16);
        for (int s = 0; s <= 6; ++s)
            for (int t = s; t <= 16; ++t)
                CHECK(R.ext_dim(s, t) == lam_coh_dim(sp, s, t));
    }
}

TEST_CASE("incremental extension matches a fresh computation") {
    MinRes a(build_sphere(0), shared_alg(18));
    a.extend(3, 10);
    a.extend(6, 18);
    MinRes b(build_sphere(0), shared_alg(18));
    b.extend(6, 18);
    for (int s = 0; s <= 6; ++s) {
        REQUIRE(a.gen_count(s) == b.gen_count(s));
        for (u32 k = 0; k < a.gen_count(s); ++k) {
            CHECK(a.gen_degree(s, k) == b.gen_degree(s, k));
            CHECK(a.diff(s, k) == b.diff(s, k));
        }
    }
}

TEST_CASE("serialized resolutions restore to the same data") {
    MinRes a(resolve_spectrum("Ceta"), shared_alg(14));
    a.extend(4, 14);
    MinRes b(resolve_spectrum("Ceta"), shared_alg(14));
    b.restore(a.serialize());
    CHECK(b.smax() == 4);
    CHECK(b.tmax() == 14);
    for (int s = 0; s <= 4; ++s) {
        REQUIRE(a.gen_count(s) == b.gen_count(s));
        for (u32 k = 0; k < a.gen_count(s); ++k)
            CHECK(a.diff(s, k) == b.diff(s, k));
    }
    MinRes c(build_sphere(0), shared_alg(14));
    CHECK_THROWS_AS(c.restore(a.serialize()), Error);
}

TEST_CASE("chain-map lifts compute composition products on the sphere") {
    auto alg = shared_alg(28);
    MinRes S(build_sphere(0), alg);
    S.extend(7, 28);

    auto h = [&](int i) { return gen_class(S, 1, 1 << i); };

    // h0 h3 and h1 h3 are nonzero, h2 h3 and h0 h1 vanish
    ResLift l3(S, S, h(3), 2, 28);
    CHECK_FALSE(l3.product(h(0)).zero());
    CHECK_FALSE(l3.product(h(1)).zero());
    CHECK(l3.product(h(2)).zero());
    ResLift l1(S, S, h(1), 2, 20);
    CHECK(l1.product(h(0)).zero());
    CHECK(l1.product(h(2)).zero());
    CHECK_FALSE(l1.product(h(1)).zero());

    // h0^2 h2 = h1^3 != 0
    ResLift l2(S, S, h(2), 3, 20);
    ResClass h0h2 = l2.product(h(0));
    ResLift l02(S, S, h0h2, 2, 20);
    ResClass lhs = l02.product(h(0));
    ResClass h1h1 = l1.product(h(1));
    ResLift l11(S, S, h1h1, 2, 20);
    ResClass rhs = l11.product(h(1));
    CHECK_FALSE(lhs.zero());
    CHECK(lhs.coef == rhs.coef);

    // the h0 tower in stem 0 and products with d0 in stem 14
    ResClass p = h(0);
    for (int k = 1; k <= 4; ++k) {
        ResLift lk(S, S, p, 1, 10);
        p = lk.product(h(0));
        CHECK_FALSE(p.zero());
    }
    ResClass d0 = gen_class(S, 4, 18);
    ResLift ld(S, S, d0, 1, 22);
    CHECK_FALSE(ld.product(h(0)).zero());  // h0 d0
    CHECK_FALSE(ld.product(h(1)).zero());  // h1 d0
}

TEST_CASE("induced maps of module maps act on Ext") {
    auto alg = shared_alg(16);
    auto ses = cofiber_ses(resolve_spectrum("Ceta"), {0});
    MinRes B(ses.total, alg), A(ses.sub, alg), Q(ses.quot, alg);
    B.extend(4, 12);
    A.extend(4, 12);
    Q.extend(4, 12);

    // bottom-cell inclusion S0 -> Ceta: H*(Ceta) ->> H*(S0)
    ResMap bot(B, A, {{0, 0}}, 4, 12);
    // unit survives: Ext^{0,0}(S0) -> Ext^{0,0}(Ceta) is iso
    auto m00 = bot.ext_matrix(0, 0);
    REQUIRE(m00.size() == 1);
    CHECK(m00[0].get(0));
    // h0 on the bottom cell survives, h1 dies
    auto m11 = bot.ext_matrix(1, 1);
    REQUIRE(m11.size() == 1);
    CHECK(m11[0].get(0));
    REQUIRE(B.ext_dim(1, 2) == 0);  // so h1 maps to zero

    // top-cell projection Ceta -> S2: H*(S2) -> H*(Ceta) sends x2 to x2
    ResMap top(Q, B, {{2, 2}}, 4, 12);
    // the degree-2 lift of the identity: Ext^{1,3}(Ceta) -> Ext^{1,3}(S2) = h0[2]
    auto t13 = top.ext_matrix(1, 3);
    REQUIRE(t13.size() == 1);
    REQUIRE(B.ext_dim(1, 3) == 1);
    CHECK(t13[0].get(0));

    // a cell map violating the action is rejected
    CHECK_THROWS_AS(ResMap(B, Q, {{0, 2}}, 2, 8), Error);
}

TEST_CASE("the horseshoe twist computes composition with eta") {
    auto alg = shared_alg(16);
    auto ses = cofiber_ses(resolve_spectrum("Ceta"), {0});
    MinRes A(ses.sub, alg), Q(ses.quot, alg);
    A.extend(5, 14);
    Q.extend(5, 14);
    ResSES les(ses.total, A, Q, 5, 14);

    // delta: Ext^{s,t}(S2) -> Ext^{s+1,t}(S0) is composition with eta
    auto iota = les.delta_matrix(0, 2);  // unit of S2 -> h1
    REQUIRE(iota.size() == 1);
    CHECK(iota[0].get(0));
    auto dh1 = les.delta_matrix(1, 4);  // h1[2] -> h1^2 != 0
    REQUIRE(dh1.size() == 1);
    CHECK(dh1[0].get(0));
    auto dh0 = les.delta_matrix(1, 3);  // h0[2] -> h0 h1 = 0
    REQUIRE(dh0.size() == 1);
    CHECK(dh0[0].count() == 0);
    auto dh2 = les.delta_matrix(1, 6);  // h2[2] -> h1 h2 = 0
    REQUIRE(dh2.size() == 1);
    CHECK(dh2[0].count() == 0);
    // against nonzero targets: h0 h3 [2] -> h0 h1 h3 = 0 even though c0 lives there
    auto dh03 = les.delta_matrix(2, 11);
    REQUIRE(dh03.size() == 1);
    REQUIRE(A.ext_dim(3, 11) == 1);
    CHECK(dh03[0].count() == 0);
    // c0[2] -> h1 c0 != 0
    auto dc0 = les.delta_matrix(3, 13);
    REQUIRE(dc0.size() == 1);
    CHECK(dc0[0].get(0));
}
