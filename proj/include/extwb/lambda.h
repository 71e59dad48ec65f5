#pragma once
#include "f2.h"
#include "spectrum.h"
#include <atomic>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace extwb {

/* admissible monomial la_{i1}...la_{is}, 2 i_k >= i_{k+1}; bidegree (s, s + sum i_k) */
struct LMono {
    u8 len = 0;
    u8 i[15] = {};

    int s() const { return len; }
    int t() const {
        int t = len;
        for (int k = 0; k < len; ++k)
            t += i[k];
        return t;
    }
    bool admissible() const {
        for (int k = 0; k + 1 < len; ++k)
            if (2 * i[k] < i[k + 1])
                return false;
        return true;
    }
    LMono tail() const {
        LMono m;
        m.len = u8(len - 1);
        for (int k = 1; k < len; ++k)
            m.i[k - 1] = i[k];
        return m;
    }
    LMono prepend(int a) const {
        if (len >= 15)
            throw Error("lambda word too long");
        LMono m;
        m.len = u8(len + 1);
        m.i[0] = u8(a);
        for (int k = 0; k < len; ++k)
            m.i[k + 1] = i[k];
        return m;
    }
    bool operator==(const LMono& o) const {
        if (len != o.len)
            return false;
        for (int k = 0; k < len; ++k)
            if (i[k] != o.i[k])
                return false;
        return true;
    }
    /* monomial order: larger index at the first difference wins */
    bool operator<(const LMono& o) const {
        int n = len < o.len ? len : o.len;
        for (int k = 0; k < n; ++k)
            if (i[k] != o.i[k])
                return i[k] < o.i[k];
        return len < o.len;
    }
};

struct LMonoHash {
    size_t operator()(const LMono& m) const {
        u64 h = 1469598103934665603ull;
        for (int k = 0; k < m.len; ++k) {
            h ^= m.i[k];
            h *= 1099511628211ull;
        }
        return size_t(h ^ m.len);
    }
};

/* chain = xor-set of admissible monomials, kept sorted ascending; leading = back() */
using Chain = std::vector<LMono>;

void chain_xor_into(Chain& a, const Chain& b);
Chain make_mono(std::initializer_list<int> idx);
std::string chain_str(const Chain& c);
Chain parse_chain(const std::string& s);

/* mod-2 lambda algebra: admissible straightening, differential, bases.
 * Rewrite results are memoized behind a shared lock; inserts are idempotent. */
class LambdaAlg {
public:
    /* la_i la_j with 2i < j rewrites through these pairs */
    static std::vector<std::pair<u8, u8>> pair_rewrite(int i, int j);
    /* d(la_n) as a list of (n-j, j-1) pairs */
    static std::vector<std::pair<u8, u8>> d_gen(int n);

    /* la_i * m straightened to admissibles */
    const Chain& lmul(int i, const LMono& m);
    /* straighten an arbitrary word */
    Chain rewrite(const std::vector<int>& word);
    Chain mul(const Chain& a, const Chain& b);

    Chain d(const LMono& m);
    Chain d(const Chain& c);

    /* admissible basis of bidegree (s,t), listed in descending monomial order;
     * first_max >= 0 restricts to the span with leading index <= first_max */
    static std::vector<LMono> basis(int s, int t, int first_max = -1);

    /* drop the rewrite cache if it has grown past `cap` entries; must not be
     * called while a rewrite is in flight (sweep drivers call it between rows).
     * While any pin is held the trim is deferred: rewrite results are handed
     * out by reference, so concurrent sweeps pin the cache for their span. */
    void maybe_trim(size_t cap = 3'000'000);
    void clear_caches();
    size_t cache_size() const { return lmul_memo_.size(); }
    void pin() { ++pins_; }
    void unpin() { --pins_; }

private:
    std::shared_mutex mu_;
    std::atomic<int> pins_ = 0;
    std::unordered_map<LMono, Chain, LMonoHash> lmul_memo_;
};

/* process-wide instance (rewrite cache shared across the engine) */
LambdaAlg& lambda();

/* bigraded piece of H(X) (x) Lambda with basis indexed cells-descending,
 * then monomials descending; wraps differentials as sparse rows */
struct ModuleCtx {
    const Spectrum* spec = nullptr;
    int s = 0, t = 0;
    std::vector<int> cells;                 // descending
    std::vector<std::vector<LMono>> bases;  // per cell, descending
    std::vector<u32> offset;                // per cell
    u32 dim = 0;

    static ModuleCtx make(const Spectrum& spec, int s, int t);
    u32 index_of(int cell, const LMono& m) const;
    std::pair<int, LMono> element(u32 idx) const;
};

/* chain in a module complex: (cell, sphere chain) components, cells descending */
using ModChain = std::vector<std::pair<int, Chain>>;

void mod_xor_into(ModChain& a, const ModChain& b);
std::string mod_chain_str(const ModChain& c);
ModChain parse_mod_chain(const std::string& s);

/* d(e_n (x) m) = sum_i e_{n-i} (x) la_{i-1} m + e_n (x) d m */
ModChain module_diff(const Spectrum& spec, int cell, const Chain& c);
ModChain module_diff(const Spectrum& spec, const ModChain& ch);

SpVec mod_chain_to_vec(const ModuleCtx& ctx, const ModChain& ch);
ModChain vec_to_mod_chain(const ModuleCtx& ctx, const SpVec& v);

}  // namespace extwb
