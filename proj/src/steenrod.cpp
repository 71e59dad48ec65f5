#include "extwb/steenrod.h"
#include <algorithm>

namespace extwb {

SteenrodAlg::SteenrodAlg(int tmax) : tmax_(tmax), basis_(tmax + 1) {
    basis_[0].push_back(SqMono{});  // unit
    /* enumerate admissibles per degree: tail lead e2 <= e1/2 */
    for (int d = 1; d <= tmax_; ++d) {
        std::vector<SqMono>& out = basis_[d];
        /* pick lead e1, then any admissible tail of degree d-e1 with lead <= e1/2 */
        for (int e1 = d; e1 >= 1; --e1) {
            if (d == e1) {
                SqMono m;
                m.len = 1;
                m.e[0] = u8(e1);
                out.push_back(m);
                continue;
            }
            for (const SqMono& tail : basis_[d - e1]) {
                if (tail.len == 0 || 2 * tail.e[0] > e1)
                    continue;
                SqMono m;
                m.len = u8(tail.len + 1);
                m.e[0] = u8(e1);
                for (int k = 0; k < tail.len; ++k)
                    m.e[k + 1] = tail.e[k];
                out.push_back(m);
            }
        }
        std::sort(out.begin(), out.end());
    }
    for (int d = 0; d <= tmax_; ++d)
        for (u32 i = 0; i < basis_[d].size(); ++i)
            index_.emplace(basis_[d][i].key(), i);
}

const std::vector<SqMono>& SteenrodAlg::smul(int a, const SqMono& m) {
    u64 key = (u64(a) << 52) | m.key();
    auto it = smul_memo_.find(key);
    if (it != smul_memo_.end())
        return it->second;

    std::vector<SqMono> acc;
    auto flip = [&acc](const SqMono& x) {
        auto p = std::lower_bound(acc.begin(), acc.end(), x);
        if (p != acc.end() && *p == x)
            acc.erase(p);
        else
            acc.insert(p, x);
    };

    if (a == 0) {
        acc.push_back(m);
    } else if (m.len == 0) {
        SqMono x;
        x.len = 1;
        x.e[0] = u8(a);
        acc.push_back(x);
    } else if (a >= 2 * m.e[0]) {
        SqMono x;
        x.len = u8(m.len + 1);
        x.e[0] = u8(a);
        for (int k = 0; k < m.len; ++k)
            x.e[k + 1] = m.e[k];
        acc.push_back(x);
    } else {
        /* Adem: Sq^a Sq^b = sum_c C(b-c-1, a-2c) Sq^{a+b-c} Sq^c, a < 2b */
        int b = m.e[0];
        SqMono tail;
        tail.len = u8(m.len - 1);
        for (int k = 1; k < m.len; ++k)
            tail.e[k - 1] = m.e[k];
        for (int c = 0; 2 * c <= a; ++c) {
            if (!binom_mod2(b - c - 1, a - 2 * c))
                continue;
            if (c == 0) {
                for (const SqMono& r : smul(a + b, tail))
                    flip(r);
            } else {
                for (const SqMono& mid : smul(c, tail))
                    for (const SqMono& r : smul(a + b - c, mid))
                        flip(r);
            }
        }
    }
    return smul_memo_.emplace(key, std::move(acc)).first->second;
}

std::vector<SqMono> SteenrodAlg::mul(const SqMono& a, const SqMono& b) {
    std::vector<SqMono> acc{b};
    for (int k = a.len; k-- > 0;) {
        std::vector<SqMono> next;
        for (const SqMono& m : acc)
            for (const SqMono& r : smul(a.e[k], m)) {
                auto p = std::lower_bound(next.begin(), next.end(), r);
                if (p != next.end() && *p == r)
                    next.erase(p);
                else
                    next.insert(p, r);
            }
        acc.swap(next);
    }
    return acc;
}

}  // namespace extwb
