#include <doctest.h>
#include "extwb/steenrod.h"
#include <random>

using namespace extwb;

TEST_CASE("binomials mod 2") {
    CHECK(binom_mod2(0, 0));
    CHECK(binom_mod2(5, 2) == false);
    CHECK(binom_mod2(15, 7));
    CHECK(!binom_mod2(3, 5));
    CHECK(!binom_mod2(-1, 0));

    /* Vandermonde convolution */
    for (long a = 0; a <= 40; ++a)
        for (long b = 0; b <= 24; ++b)
            for (long k = 0; k <= 64; ++k) {
                bool lhs = binom_mod2(a + b, k);
                bool rhs = false;
                for (long j = 0; j <= k; ++j)
                    rhs ^= binom_mod2(a, j) && binom_mod2(b, k - j);
                CHECK(lhs == rhs);
            }
}

TEST_CASE("projective dual action") {
    CHECK(projective_sq_dual(22, 1) == 21);
    CHECK(projective_sq_dual(22, 3) == 19);
    CHECK(projective_sq_dual(22, 7) == 15);
    CHECK(projective_sq_dual(21, 2) == 19);
    CHECK(projective_sq_dual(19, 4) == 15);
    CHECK(projective_sq_dual(21, 6) == 15);
    CHECK(projective_sq_dual(22, 2) == -1);
    CHECK(projective_sq_dual(15, 1) == -1);
}

TEST_CASE("james numbers") {
    CHECK(james_phi(3) == 4);
    CHECK(james_phi(7) == 8);
    CHECK(james_phi(8) == 8);
    CHECK(james_psi(1) == 0);
    CHECK(james_phi(4) == 4);
}

TEST_CASE("admissible basis dims match milnor count") {
    SteenrodAlg A(40);
    /* milnor basis of degree d: multisets of parts 2^i - 1 */
    std::vector<long long> count(41, 0);
    count[0] = 1;
    for (int part : {1, 3, 7, 15, 31})
        for (int d = part; d <= 40; ++d)
            count[d] += count[d - part];
    for (int d = 0; d <= 40; ++d)
        CHECK((long long)A.dim(d) == count[d]);
}

TEST_CASE("adem relations") {
    SteenrodAlg A(48);
    auto sq = [](std::initializer_list<int> es) {
        SqMono m;
        for (int e : es)
            m.e[m.len++] = u8(e);
        return m;
    };
    CHECK(A.mul(sq({1}), sq({1})).empty());
    CHECK(A.mul(sq({1}), sq({2})) == std::vector<SqMono>{sq({3})});
    CHECK(A.mul(sq({2}), sq({2})) == std::vector<SqMono>{sq({3, 1})});
    /* Sq^3 Sq^2 = 0 */
    CHECK(A.mul(sq({3}), sq({2})).empty());

    /* products land in the admissible basis */
    for (const SqMono& m : A.mul(sq({7}), sq({7, 3, 1})))
        CHECK_NOTHROW(A.index(m));

    /* associativity on random triples */
    std::mt19937 rng(3);
    std::vector<SqMono> pool;
    for (int d = 1; d <= 12; ++d)
        for (const SqMono& m : A.basis(d))
            pool.push_back(m);
    auto mulc = [&A](const std::vector<SqMono>& xs, const SqMono& y) {
        std::vector<SqMono> out;
        for (const SqMono& x : xs)
            for (const SqMono& r : A.mul(x, y)) {
                auto p = std::lower_bound(out.begin(), out.end(), r);
                if (p != out.end() && *p == r)
                    out.erase(p);
                else
                    out.insert(p, r);
            }
        return out;
    };
    for (int trial = 0; trial < 60; ++trial) {
        const SqMono& a = pool[rng() % pool.size()];
        const SqMono& b = pool[rng() % pool.size()];
        const SqMono& c = pool[rng() % pool.size()];
        auto ab_c = mulc(A.mul(a, b), c);
        std::vector<SqMono> a_bc;
        for (const SqMono& r : A.mul(b, c)) {
            for (const SqMono& x : A.mul(a, r)) {
                auto p = std::lower_bound(a_bc.begin(), a_bc.end(), x);
                if (p != a_bc.end() && *p == x)
                    a_bc.erase(p);
                else
                    a_bc.insert(p, x);
            }
        }
        CHECK(ab_c == a_bc);
    }
}
