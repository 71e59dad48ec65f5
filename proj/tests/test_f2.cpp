#include <doctest.h>
#include "extwb/f2.h"
#include <random>

using namespace extwb;

namespace {

std::vector<BitVec> random_rows(std::mt19937& rng, size_t n, size_t cols, double density) {
    std::bernoulli_distribution bit(density);
    std::vector<BitVec> rows;
    for (size_t r = 0; r < n; ++r) {
        BitVec v(cols);
        for (size_t c = 0; c < cols; ++c)
            if (bit(rng))
                v.set(c);
        rows.push_back(v);
    }
    return rows;
}

SpVec to_sparse(const BitVec& v) {
    return v.ones();
}

}  // namespace

TEST_CASE("bitvec basics") {
    BitVec v(130);
    v.set(0);
    v.set(64);
    v.set(129);
    CHECK(v.count() == 3);
    CHECK(v.lowest() == 0);
    v.flip(0);
    CHECK(v.lowest() == 64);
    CHECK(v.ones() == std::vector<u32>{64, 129});
    BitVec w(130);
    w.set(64);
    v ^= w;
    CHECK(v.ones() == std::vector<u32>{129});
}

TEST_CASE("dense echelon, kernel, solve") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        size_t n = 12, cols = 18;
        auto rows = random_rows(rng, n, cols, 0.3);
        EchelonF2 e = echelonize(rows, cols, true);

        /* pivots strictly increasing, rows reduced */
        for (size_t i = 0; i + 1 < e.pivots.size(); ++i)
            CHECK(e.pivots[i] < e.pivots[i + 1]);
        for (size_t i = 0; i < e.rows.size(); ++i)
            for (size_t j = 0; j < e.rows.size(); ++j)
                if (i != j)
                    CHECK(!e.rows[j].get(e.pivots[i]));

        /* transform reproduces each echelon row */
        for (size_t i = 0; i < e.rows.size(); ++i) {
            BitVec acc(cols);
            for (u32 k : e.trans[i].ones())
                acc ^= rows[k];
            CHECK(acc == e.rows[i]);
        }

        /* kernel vectors annihilate, count matches rank-nullity */
        auto ker = kernel_basis(rows, cols);
        CHECK(ker.size() == n - e.rank());
        for (const BitVec& c : ker) {
            BitVec acc(cols);
            for (u32 k : c.ones())
                acc ^= rows[k];
            CHECK(acc.none());
        }

        /* solve a known combination */
        BitVec target(cols);
        std::bernoulli_distribution pick(0.5);
        for (size_t r = 0; r < n; ++r)
            if (pick(rng))
                target ^= rows[r];
        auto combo = e.solve(target);
        REQUIRE(combo.has_value());
        BitVec acc(cols);
        for (u32 k : combo->ones())
            acc ^= rows[k];
        CHECK(acc == target);
    }
}

TEST_CASE("sparse echelon agrees with dense") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        size_t n = 20, cols = 32;
        auto rows = random_rows(rng, n, cols, 0.2);
        EchelonF2 e = echelonize(rows, cols);

        SparseEch se(true);
        for (const auto& r : rows)
            se.add(to_sparse(r));
        CHECK(se.rank() == e.rank());

        /* membership agreement on random combos and random vectors */
        for (int q = 0; q < 10; ++q) {
            auto probe = random_rows(rng, 1, cols, 0.25)[0];
            CHECK(se.contains(to_sparse(probe)) == e.contains(probe));

            auto sol = se.solve(to_sparse(probe));
            if (sol) {
                SpVec acc;
                for (u32 k : *sol)
                    sp_xor_into(acc, to_sparse(rows[k]));
                CHECK(acc == to_sparse(probe));
            }
        }

        /* reduced vectors carry no pivot coordinate */
        auto probe = random_rows(rng, 1, cols, 0.4)[0];
        SpVec red = se.reduce(to_sparse(probe));
        for (u32 c : red)
            CHECK(!se.is_pivot(c));
        /* reduction is stable */
        CHECK(se.reduce(red) == red);
    }
}

TEST_CASE("sparse echelon entry cap") {
    SparseEch se(false, 4);
    se.add({0, 5, 9});
    CHECK_THROWS_AS(se.add({1, 6}), ResourceCap);
}
