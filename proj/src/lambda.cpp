#include "extwb/lambda.h"
#include <algorithm>
#include <mutex>
#include <sstream>

namespace extwb {

void chain_xor_into(Chain& a, const Chain& b) {
    Chain out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++i;
            ++j;
        } else if (a[i] < b[j])
            out.push_back(a[i++]);
        else
            out.push_back(b[j++]);
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    a.swap(out);
}

Chain make_mono(std::initializer_list<int> idx) {
    LMono m;
    for (int x : idx)
        m.i[m.len++] = u8(x);
    if (!m.admissible())
        throw Error("make_mono: inadmissible word " + chain_str({m}));
    return {m};
}

std::vector<std::pair<u8, u8>> LambdaAlg::pair_rewrite(int i, int j) {
    /* la_i la_j, 2i < j: write j = 2i+1+n, then
     * la_i la_j = sum_k C(n-1-k, k) la_{i+n-k} la_{2i+1+k} */
    int n = j - 2 * i - 1;
    std::vector<std::pair<u8, u8>> out;
    for (int k = 0; 2 * k <= n - 1; ++k)
        if (binom_mod2(n - 1 - k, k))
            out.push_back({u8(i + n - k), u8(2 * i + 1 + k)});
    return out;
}

std::vector<std::pair<u8, u8>> LambdaAlg::d_gen(int n) {
    /* d(la_n) = sum_{j>=1} C(n-j, j) la_{n-j} la_{j-1} */
    std::vector<std::pair<u8, u8>> out;
    for (int j = 1; 2 * j <= n; ++j)
        if (binom_mod2(n - j, j))
            out.push_back({u8(n - j), u8(j - 1)});
    return out;
}

const Chain& LambdaAlg::lmul(int i, const LMono& m) {
    LMono key = m.prepend(i);
    {
        std::shared_lock lk(mu_);
        auto it = lmul_memo_.find(key);
        if (it != lmul_memo_.end())
            return it->second;
    }
    Chain acc;
    if (m.len == 0 || 2 * i >= m.i[0]) {
        acc.push_back(key);
    } else {
        for (auto [a, b] : pair_rewrite(i, m.i[0])) {
            const Chain& mid = lmul(b, m.tail());
            for (const LMono& mm : mid)
                chain_xor_into(acc, lmul(a, mm));
        }
    }
    std::unique_lock lk(mu_);
    return lmul_memo_.emplace(key, std::move(acc)).first->second;
}

Chain LambdaAlg::rewrite(const std::vector<int>& word) {
    Chain acc{LMono{}};
    for (size_t k = word.size(); k-- > 0;) {
        Chain next;
        for (const LMono& m : acc)
            chain_xor_into(next, lmul(word[k], m));
        acc = std::move(next);
    }
    return acc;
}

Chain LambdaAlg::mul(const Chain& a, const Chain& b) {
    Chain out;
    for (const LMono& am : a)
        for (const LMono& bm : b) {
            Chain acc{bm};
            for (int k = am.len; k-- > 0;) {
                Chain next;
                for (const LMono& m : acc)
                    chain_xor_into(next, lmul(am.i[k], m));
                acc = std::move(next);
            }
            chain_xor_into(out, acc);
        }
    return out;
}

Chain LambdaAlg::d(const LMono& m) {
    Chain out;
    for (int k = 0; k < m.len; ++k) {
        LMono suf;
        suf.len = u8(m.len - k - 1);
        for (int q = k + 1; q < m.len; ++q)
            suf.i[q - k - 1] = m.i[q];
        for (auto [a, b] : d_gen(m.i[k])) {
            Chain acc;
            for (const LMono& mm : lmul(b, suf))
                chain_xor_into(acc, lmul(a, mm));
            /* fold the prefix back on */
            for (int q = k; q-- > 0;) {
                Chain next;
                for (const LMono& mm : acc)
                    chain_xor_into(next, lmul(m.i[q], mm));
                acc = std::move(next);
            }
            chain_xor_into(out, acc);
        }
    }
    return out;
}

Chain LambdaAlg::d(const Chain& c) {
    Chain out;
    for (const LMono& m : c)
        chain_xor_into(out, d(m));
    return out;
}

namespace {

void enum_rec(int s, int rem, int fmax, LMono& cur, std::vector<LMono>& out) {
    if (s == 0) {
        if (rem == 0)
            out.push_back(cur);
        return;
    }
    for (int x = std::min(fmax, rem); x >= 0; --x) {
        /* tail of s-1 letters capped by doubling can absorb at most x(2^s - 2) */
        long long maxtail = (s > 1) ? (long long)x * ((1LL << s) - 2) : 0;
        if (rem - x > maxtail)
            continue;
        cur.i[cur.len++] = u8(x);
        enum_rec(s - 1, rem - x, 2 * x, cur, out);
        --cur.len;
    }
}

}  // namespace

std::vector<LMono> LambdaAlg::basis(int s, int t, int first_max) {
    std::vector<LMono> out;
    if (s < 0 || t < s)
        return out;
    if (s == 0) {
        if (t == 0)
            out.push_back(LMono{});
        return out;
    }
    int rem = t - s;
    LMono cur;
    int fmax = first_max < 0 ? rem : std::min(first_max, rem);
    enum_rec(s, rem, fmax, cur, out);
    return out;
}

void LambdaAlg::maybe_trim(size_t cap) {
    if (pins_.load(std::memory_order_relaxed) > 0)
        return;
    std::unique_lock lk(mu_);
    if (lmul_memo_.size() > cap)
        lmul_memo_.clear();
}

void LambdaAlg::clear_caches() {
    std::unique_lock lk(mu_);
    lmul_memo_.clear();
}

LambdaAlg& lambda() {
    static LambdaAlg alg;
    return alg;
}

std::string chain_str(const Chain& c) {
    if (c.empty())
        return "0";
    std::string out;
    for (size_t k = c.size(); k-- > 0;) {
        const LMono& m = c[k];
        if (!out.empty())
            out += " + ";
        if (m.len == 0) {
            out += "1";
            continue;
        }
        for (int q = 0; q < m.len; ++q) {
            if (q)
                out += ' ';
            out += 'l';
            out += std::to_string(int(m.i[q]));
        }
    }
    return out;
}

namespace {

/* a term is a word in the generators; straightened on parse */
Chain parse_word(const std::string& term) {
    std::vector<int> word;
    std::istringstream is(term);
    std::string tok;
    while (is >> tok) {
        if (tok == "1")
            continue;
        if (tok[0] != 'l')
            throw Error("bad lambda term: " + tok);
        word.push_back(std::stoi(tok.substr(1)));
    }
    return lambda().rewrite(word);
}

std::vector<std::string> split_terms(const std::string& s) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find(" + ", pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 3;
    }
    return out;
}

}  // namespace

Chain parse_chain(const std::string& s) {
    Chain c;
    if (s == "0" || s.empty())
        return c;
    for (const std::string& term : split_terms(s))
        chain_xor_into(c, parse_word(term));
    return c;
}

ModuleCtx ModuleCtx::make(const Spectrum& spec, int s, int t) {
    ModuleCtx ctx;
    ctx.spec = &spec;
    ctx.s = s;
    ctx.t = t;
    for (auto it = spec.cells().rbegin(); it != spec.cells().rend(); ++it) {
        int n = *it;
        if (t - n < s)
            continue;
        std::vector<LMono> b = LambdaAlg::basis(s, t - n);
        if (b.empty())
            continue;
        ctx.cells.push_back(n);
        ctx.offset.push_back(ctx.dim);
        ctx.dim += u32(b.size());
        ctx.bases.push_back(std::move(b));
    }
    return ctx;
}

u32 ModuleCtx::index_of(int cell, const LMono& m) const {
    for (size_t c = 0; c < cells.size(); ++c) {
        if (cells[c] != cell)
            continue;
        const auto& b = bases[c];
        /* descending order: compare with greater-than */
        auto it = std::lower_bound(b.begin(), b.end(), m,
                                   [](const LMono& x, const LMono& y) { return y < x; });
        if (it == b.end() || !(*it == m))
            throw Error("module basis lookup failed at cell " + std::to_string(cell));
        return offset[c] + u32(it - b.begin());
    }
    throw Error("module basis lookup: no cell " + std::to_string(cell) + " at this bidegree");
}

std::pair<int, LMono> ModuleCtx::element(u32 idx) const {
    for (size_t c = 0; c < cells.size(); ++c)
        if (idx < offset[c] + bases[c].size())
            return {cells[c], bases[c][idx - offset[c]]};
    throw Error("module basis index out of range");
}

void mod_xor_into(ModChain& a, const ModChain& b) {
    for (const auto& [cell, ch] : b) {
        bool found = false;
        for (auto& [ca, cha] : a)
            if (ca == cell) {
                chain_xor_into(cha, ch);
                found = true;
                break;
            }
        if (!found)
            a.push_back({cell, ch});
    }
    std::sort(a.begin(), a.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });
    a.erase(std::remove_if(a.begin(), a.end(), [](const auto& p) { return p.second.empty(); }),
            a.end());
}

ModChain module_diff(const Spectrum& spec, int cell, const Chain& c) {
    ModChain out;
    LambdaAlg& L = lambda();
    for (const SqEntry& e : spec.action()) {
        if (e.from != cell)
            continue;
        Chain part;
        for (const LMono& m : c)
            chain_xor_into(part, L.lmul(e.i - 1, m));
        if (!part.empty())
            mod_xor_into(out, {{e.to, part}});
    }
    Chain internal = L.d(c);
    if (!internal.empty())
        mod_xor_into(out, {{cell, internal}});
    return out;
}

ModChain module_diff(const Spectrum& spec, const ModChain& ch) {
    ModChain out;
    for (const auto& [cell, c] : ch)
        mod_xor_into(out, module_diff(spec, cell, c));
    return out;
}

SpVec mod_chain_to_vec(const ModuleCtx& ctx, const ModChain& ch) {
    SpVec v;
    for (const auto& [cell, c] : ch)
        for (const LMono& m : c)
            v.push_back(ctx.index_of(cell, m));
    std::sort(v.begin(), v.end());
    return v;
}

ModChain vec_to_mod_chain(const ModuleCtx& ctx, const SpVec& v) {
    ModChain out;
    for (u32 idx : v) {
        auto [cell, m] = ctx.element(idx);
        mod_xor_into(out, {{cell, Chain{m}}});
    }
    return out;
}

std::string mod_chain_str(const ModChain& c) {
    if (c.empty())
        return "0";
    std::string out;
    for (const auto& [cell, ch] : c) {
        for (size_t k = ch.size(); k-- > 0;) {
            if (!out.empty())
                out += " + ";
            out += 'e';
            out += std::to_string(cell);
            out += '*';
            std::string ms = chain_str({ch[k]});
            out += ms;
        }
    }
    return out;
}

ModChain parse_mod_chain(const std::string& s) {
    ModChain out;
    if (s == "0" || s.empty())
        return out;
    for (const std::string& term : split_terms(s)) {
        auto star = term.find('*');
        if (star == std::string::npos || term[0] != 'e')
            throw Error("bad module term: " + term);
        int cell = std::stoi(term.substr(1, star - 1));
        Chain c = parse_word(term.substr(star + 1));
        if (!c.empty())
            mod_xor_into(out, {{cell, c}});
    }
    return out;
}

}  // namespace extwb
