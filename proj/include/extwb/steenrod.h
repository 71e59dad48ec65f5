#pragma once
#include "util.h"
#include <unordered_map>
#include <vector>

namespace extwb {

/* C(a,b) mod 2 via Lucas; zero outside 0 <= b <= a */
inline bool binom_mod2(long long a, long long b) {
    if (b < 0 || b > a)
        return false;
    return (a & b) == b;
}

/* homology-side dual action on projective-space cells:
 * Sq^i sends the n-cell to the (n-i)-cell iff C(n-i,i) is odd; -1 if absent */
inline int projective_sq_dual(int n, int i) {
    if (i < 1 || i > n - 1)
        return -1;
    return binom_mod2(n - i, i) ? n - i : -1;
}

/* periodicity exponent for stunted projective spaces */
inline int james_psi(int k) {
    static const int corr[8] = {-1, 0, 0, 1, 0, 1, 0, 0};
    return k / 2 + corr[((k % 8) + 8) % 8];
}
inline long long james_phi(int k) {
    return 1LL << james_psi(k);
}

/* admissible monomial Sq^{e1}...Sq^{en}, e_j >= 2 e_{j+1}, e_n >= 1 */
struct SqMono {
    u8 len = 0;
    u8 e[8] = {};

    int degree() const {
        int d = 0;
        for (int k = 0; k < len; ++k)
            d += e[k];
        return d;
    }
    bool operator==(const SqMono& o) const {
        if (len != o.len)
            return false;
        for (int k = 0; k < len; ++k)
            if (e[k] != o.e[k])
                return false;
        return true;
    }
    /* graded-lex: longer-first within a degree doesn't occur; compare exponents */
    bool operator<(const SqMono& o) const {
        int n = len < o.len ? len : o.len;
        for (int k = 0; k < n; ++k)
            if (e[k] != o.e[k])
                return e[k] < o.e[k];
        return len < o.len;
    }
    u64 key() const {
        u64 k = 0;
        for (int i = 0; i < len; ++i)
            k = (k << 7) | e[i];
        return (k << 3) | len;
    }
};

/* mod-2 Steenrod algebra on the admissible basis, products by Adem straightening */
class SteenrodAlg {
public:
    explicit SteenrodAlg(int tmax);

    int tmax() const { return tmax_; }
    const std::vector<SqMono>& basis(int d) const { return basis_.at(d); }
    size_t dim(int d) const { return d <= tmax_ ? basis_[d].size() : 0; }
    /* position of m within basis(m.degree()) */
    u32 index(const SqMono& m) const { return index_.at(m.key()); }

    /* Sq^a * m as a sorted admissible chain */
    const std::vector<SqMono>& smul(int a, const SqMono& m);
    /* full product of two admissibles */
    std::vector<SqMono> mul(const SqMono& a, const SqMono& b);

private:
    int tmax_;
    std::vector<std::vector<SqMono>> basis_;   // by degree
    std::unordered_map<u64, u32> index_;
    std::unordered_map<u64, std::vector<SqMono>> smul_memo_;
};

}  // namespace extwb
