#include <extwb/cache.h>
#include <extwb/ext.h>
#include <algorithm>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace extwb {

namespace {

std::mutex g_count_mu;
std::unordered_map<u64, long long> g_count_memo;

/* admissible words i_1..i_s with sum = rem, i_1 <= fmax, 2 i_k >= i_{k+1} */
long long count_adm(int s, int rem, int fmax) {
    if (s == 0)
        return rem == 0 ? 1 : 0;
    if (rem < 0)
        return 0;
    if (fmax > rem)
        fmax = rem;
    if (fmax < 0)
        return 0;
    u64 key = (u64(s) << 40) | (u64(rem) << 20) | u64(fmax);
    {
        std::lock_guard lk(g_count_mu);
        auto it = g_count_memo.find(key);
        if (it != g_count_memo.end())
            return it->second;
    }
    long long n = 0;
    for (int i = 0; i <= fmax; ++i)
        n += count_adm(s - 1, rem - i, 2 * i);
    std::lock_guard lk(g_count_mu);
    g_count_memo.emplace(key, n);
    return n;
}

/* position of m in the descending basis(s, t, first_max) without materializing it */
u32 adm_rank(int s, int t, int first_max, const LMono& m) {
    int rem = t - s;
    int fmax = first_max < 0 ? rem : std::min(first_max, rem);
    long long r = 0;
    for (int k = 0; k < m.len; ++k) {
        int cap = std::min(fmax, rem);
        for (int i = m.i[k] + 1; i <= cap; ++i)
            r += count_adm(s - k - 1, rem - i, 2 * i);
        rem -= m.i[k];
        fmax = 2 * m.i[k];
    }
    return u32(r);
}

SpVec sphere_vec(int s, int t, const Chain& c) {
    SpVec v;
    v.reserve(c.size());
    for (const LMono& m : c)
        v.push_back(adm_rank(s, t, -1, m));
    std::sort(v.begin(), v.end());
    return v;
}

bool is_sphere(const Spectrum& sp) {
    return sp.cells().size() == 1 && sp.cells()[0] == 0;
}

std::string elem_str(const Spectrum& sp, const std::pair<int, LMono>& e) {
    std::string ms = chain_str(Chain{e.second});
    if (is_sphere(sp))
        return ms;
    return "e" + std::to_string(e.first) + "*" + ms;
}

std::string hex_hash(const Spectrum& sp) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)sp.hash());
    return buf;
}

std::string res_key(const Spectrum& sp) {
    return "res-" + hex_hash(sp) + "-v" + std::to_string(kEngineVersion) + ".txt";
}

std::string ext_key(const Spectrum& sp, int s) {
    return "ext-" + hex_hash(sp) + "-s" + std::to_string(s) + "-v" +
           std::to_string(kEngineVersion) + ".txt";
}

bool sp_has(const SpVec& v, u32 x) {
    return std::binary_search(v.begin(), v.end(), x);
}

/* maintain a reduced row list (pairwise fully reduced, sorted by pivot) */
void rref_insert(std::vector<SpVec>& rows, SpVec v) {
    for (const SpVec& r : rows)
        if (!v.empty() && sp_has(v, r.front()))
            sp_xor_into(v, r);
    if (v.empty())
        return;
    for (SpVec& r : rows)
        if (sp_has(r, v.front()))
            sp_xor_into(r, v);
    auto pos = std::lower_bound(rows.begin(), rows.end(), v,
                                [](const SpVec& a, const SpVec& b) { return a.front() < b.front(); });
    rows.insert(pos, std::move(v));
}

void cap_throw(size_t dim, const ExtOptions& opt, const char* what) {
    throw ResourceCap(std::string(what) + ": lambda slice of dimension " + std::to_string(dim) +
                      " exceeds cap " + std::to_string(opt.lambda_cap));
}

/* full gate: both the cycle echelon (dim(s,t) rows) and the boundary echelon
 * (dim(s-1,t) rows) must fit */
void check_caps(const Spectrum& sp, int s, int t, const ExtOptions& opt, const char* what) {
    size_t big = module_dim(sp, s, t);
    if (s > 0)
        big = std::max(big, module_dim(sp, s - 1, t));
    if (big > opt.lambda_cap)
        cap_throw(big, opt, what);
}

/* row-side gate for reductions and solves: only dim(s-1,t) rows are
 * echelonized there, the (s,t) side costs linear memory */
void check_row_cap(const Spectrum& sp, int s, int t, const ExtOptions& opt, const char* what) {
    if (s <= 0)
        return;
    size_t rows = module_dim(sp, s - 1, t);
    if (rows > opt.lambda_cap)
        cap_throw(rows, opt, what);
}

/* chain-level Ext at one bidegree: boundary echelon, cycle kernel, reduced basis */
ExtGroup lambda_bidegree(const Spectrum& sp, int s, int t, const ExtOptions& opt,
                         CurtisEntry* ce) {
    ExtGroup g;
    g.s = s;
    g.t = t;
    g.backend = "lambda";
    if (ce) {
        ce->s = s;
        ce->t = t;
    }
    ModuleCtx me = ModuleCtx::make(sp, s, t);
    if (me.dim == 0)
        return g;

    SparseEch bnd(false, opt.entry_cap);
    if (s > 0) {
        ModuleCtx dn = ModuleCtx::make(sp, s - 1, t);
        for (u32 i = 0; i < dn.dim; ++i) {
            auto [c, m] = dn.element(i);
            long long p = bnd.add(mod_chain_to_vec(me, module_diff(sp, c, Chain{m})));
            if (p >= 0 && ce)
                ce->tags.push_back({me.element(u32(p)), dn.element(i)});
            if ((i & 0xfff) == 0xfff)
                lambda().maybe_trim();
        }
    }

    ModuleCtx up = ModuleCtx::make(sp, s + 1, t);
    SparseEch cyc(true, opt.entry_cap);
    std::vector<SpVec> hrows;
    for (u32 i = 0; i < me.dim; ++i) {
        auto [c, m] = me.element(i);
        if (cyc.add(mod_chain_to_vec(up, module_diff(sp, c, Chain{m}))) < 0) {
            SpVec red = bnd.reduce(cyc.last_kernel());
            if (!red.empty())
                rref_insert(hrows, std::move(red));
        }
        if ((i & 0xfff) == 0xfff)
            lambda().maybe_trim();
    }

    for (const SpVec& v : hrows)
        g.classes.push_back(ExtClass{s, t, vec_to_mod_chain(me, v), ""});
    if (ce)
        ce->gens = g.classes;
    return g;
}

/* per-(spectrum, s) cache file: "extfile <hash> <s> <ver>" then blocks
 * "t <t> <n>" followed by n representative lines */
using ExtFileData = std::map<int, std::vector<std::string>>;

bool parse_ext_file(const std::string& text, const Spectrum& sp, int s, ExtFileData& out) {
    std::istringstream is(text);
    std::string tag, hash;
    int fs, ver;
    if (!(is >> tag >> hash >> fs >> ver) || tag != "extfile" || hash != hex_hash(sp) ||
        fs != s || ver != kEngineVersion)
        return false;
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        std::istringstream hl(line);
        int t, n;
        if (!(hl >> tag >> t >> n) || tag != "t")
            return false;
        std::vector<std::string> reps;
        for (int k = 0; k < n; ++k) {
            if (!std::getline(is, line))
                return false;
            reps.push_back(line);
        }
        out[t] = std::move(reps);
    }
    return true;
}

std::string render_ext_file(const Spectrum& sp, int s, const ExtFileData& data) {
    std::ostringstream os;
    os << "extfile " << hex_hash(sp) << ' ' << s << ' ' << kEngineVersion << '\n';
    for (const auto& [t, reps] : data) {
        os << "t " << t << ' ' << reps.size() << '\n';
        for (const std::string& r : reps)
            os << r << '\n';
    }
    return os.str();
}

Chain nullhomotopy(const Chain& z, const ExtOptions& opt, const char* what) {
    if (z.empty())
        return {};
    auto w = bound_solve(z[0].s(), z[0].t(), z, -1, opt);
    if (!w)
        throw BracketUndefined(std::string(what) + " (class of " + chain_str(z) +
                               " is nonzero)");
    return *w;
}

}  // namespace

size_t lambda_dim(int s, int t, int first_max) {
    if (s < 0 || t < s)
        return 0;
    if (s == 0)
        return t == 0 ? 1 : 0;
    int rem = t - s;
    return size_t(count_adm(s, rem, first_max < 0 ? rem : first_max));
}

size_t module_dim(const Spectrum& spec, int s, int t) {
    size_t n = 0;
    for (int c : spec.cells())
        n += lambda_dim(s, t - c);
    return n;
}

u32 lambda_rank(int s, int t, const LMono& m) {
    if (m.s() != s || m.t() != t || !m.admissible())
        throw Error("lambda_rank: not an admissible monomial of that bidegree");
    return adm_rank(s, t, -1, m);
}

std::pair<int, LMono> ExtClass::leading() const {
    if (rep.empty())
        throw Error("class has no chain-level representative");
    return {rep.front().first, rep.front().second.back()};
}

std::string ExtClass::leading_str() const {
    auto [c, m] = leading();
    std::string ms = chain_str(Chain{m});
    if (c == 0)
        return ms;
    return "e" + std::to_string(c) + "*" + ms;
}

std::string ExtClass::rep_str() const {
    if (rep.empty())
        return "0";
    if (rep.size() == 1 && rep[0].first == 0)
        return chain_str(rep[0].second);
    return mod_chain_str(rep);
}

MinRes& resolution_for(const Spectrum& spec, int smax, int tmax, const ExtOptions& opt) {
    static std::mutex mu;
    static std::map<u64, std::unique_ptr<MinRes>> reg;
    static std::shared_ptr<SteenrodAlg> alg = std::make_shared<SteenrodAlg>(80);
    if (tmax > alg->tmax())
        throw ResourceCap("resolution beyond the Steenrod algebra table (t <= " +
                          std::to_string(alg->tmax()) + ")");
    std::lock_guard lk(mu);
    auto& slot = reg[spec.hash()];
    if (!slot) {
        slot = std::make_unique<MinRes>(spec, alg);
        if (!opt.no_cache && Cache::inst().enabled()) {
            if (auto blob = Cache::inst().get(res_key(spec))) {
                try {
                    slot->restore(*blob);
                } catch (const Error&) {
                    /* stale or foreign data; recompute */
                }
            }
        }
    }
    if (slot->smax() < smax || slot->tmax() < tmax) {
        slot->extend(smax, tmax);
        if (!opt.no_cache && Cache::inst().enabled())
            Cache::inst().put(res_key(spec), slot->serialize());
    }
    return *slot;
}

ExtGroup ext_group(const Spectrum& spec, int s, int t, const ExtOptions& opt) {
    if (s < 0 || t < s)
        return ExtGroup{s, t, "lambda", {}};
    size_t dme = module_dim(spec, s, t);
    bool lam_ok = dme <= opt.lambda_cap &&
                  (s == 0 || module_dim(spec, s - 1, t) <= opt.lambda_cap);
    bool use_lambda = opt.force_lambda || (!opt.force_minres && lam_ok);

    if (!use_lambda) {
        MinRes& res = resolution_for(spec, s, t, opt);
        ExtGroup g;
        g.s = s;
        g.t = t;
        g.backend = "minres";
        g.classes.assign(res.ext_dim(s, t), ExtClass{s, t, {}, ""});
        return g;
    }

    bool cache_on = !opt.no_cache && Cache::inst().enabled();
    std::string key = ext_key(spec, s);
    ExtFileData data;
    if (cache_on) {
        if (auto f = Cache::inst().get(key)) {
            if (parse_ext_file(*f, spec, s, data)) {
                auto it = data.find(t);
                if (it != data.end()) {
                    ExtGroup g;
                    g.s = s;
                    g.t = t;
                    g.backend = "lambda";
                    for (const std::string& r : it->second)
                        g.classes.push_back(ExtClass{s, t, parse_mod_chain(r), ""});
                    return g;
                }
            } else {
                data.clear();
            }
        }
    }

    ExtGroup g = lambda_bidegree(spec, s, t, opt, nullptr);
    if (cache_on) {
        std::vector<std::string> reps;
        for (const ExtClass& c : g.classes)
            reps.push_back(mod_chain_str(c.rep));
        data[t] = std::move(reps);
        Cache::inst().put(key, render_ext_file(spec, s, data));
    }
    return g;
}

ExtClass reduce_class(const Spectrum& spec, int s, int t, const ModChain& z,
                      const ExtOptions& opt) {
    for (const auto& [cell, ch] : z) {
        if (!spec.has_cell(cell))
            throw Error("representative uses a cell outside the spectrum");
        for (const LMono& m : ch)
            if (m.s() != s || cell + m.t() != t)
                throw Error("representative has mixed bidegree");
    }
    if (!module_diff(spec, z).empty())
        throw NotACycle("element is not a cycle at (s=" + std::to_string(s) +
                        ", t=" + std::to_string(t) + ")");
    check_row_cap(spec, s, t, opt, "reduce_class");
    ModuleCtx me = ModuleCtx::make(spec, s, t);
    SpVec v = mod_chain_to_vec(me, z);
    if (s > 0) {
        ModuleCtx dn = ModuleCtx::make(spec, s - 1, t);
        SparseEch bnd(false, opt.entry_cap);
        for (u32 i = 0; i < dn.dim; ++i) {
            auto [c, m] = dn.element(i);
            bnd.add(mod_chain_to_vec(me, module_diff(spec, c, Chain{m})));
            if ((i & 0xfff) == 0xfff)
                lambda().maybe_trim();
        }
        v = bnd.reduce(v);
    }
    return ExtClass{s, t, vec_to_mod_chain(me, v), ""};
}

std::optional<Chain> bound_solve(int s, int t, const Chain& z, int first_max,
                                 const ExtOptions& opt) {
    for (const LMono& m : z)
        if (m.s() != s || m.t() != t)
            throw Error("element has mixed bidegree");
    if (z.empty())
        return Chain{};
    if (s <= 0)
        return std::nullopt;
    if (lambda_dim(s - 1, t, first_max) > opt.lambda_cap)
        cap_throw(lambda_dim(s - 1, t, first_max), opt, "bound_solve");
    auto src = LambdaAlg::basis(s - 1, t, first_max);
    SparseEch ech(true, opt.entry_cap);
    auto& L = lambda();
    for (size_t i = 0; i < src.size(); ++i) {
        ech.add(sphere_vec(s, t, L.d(src[i])));
        if ((i & 0xfff) == 0xfff)
            L.maybe_trim();
    }
    auto combo = ech.solve(sphere_vec(s, t, z));
    if (!combo)
        return std::nullopt;
    Chain w;
    for (u32 id : *combo)
        chain_xor_into(w, Chain{src[id]});
    return w;
}

std::optional<ModChain> bound_solve(const Spectrum& spec, int s, int t, const ModChain& z,
                                    const ExtOptions& opt) {
    for (const auto& [cell, ch] : z)
        for (const LMono& m : ch)
            if (m.s() != s || cell + m.t() != t)
                throw Error("element has mixed bidegree");
    if (z.empty())
        return ModChain{};
    if (s <= 0)
        return std::nullopt;
    check_row_cap(spec, s, t, opt, "bound_solve");
    ModuleCtx me = ModuleCtx::make(spec, s, t);
    ModuleCtx dn = ModuleCtx::make(spec, s - 1, t);
    SparseEch ech(true, opt.entry_cap);
    for (u32 i = 0; i < dn.dim; ++i) {
        auto [c, m] = dn.element(i);
        ech.add(mod_chain_to_vec(me, module_diff(spec, c, Chain{m})));
        if ((i & 0xfff) == 0xfff)
            lambda().maybe_trim();
    }
    auto combo = ech.solve(mod_chain_to_vec(me, z));
    if (!combo)
        return std::nullopt;
    ModChain w;
    for (u32 id : *combo) {
        auto [c, m] = dn.element(id);
        mod_xor_into(w, ModChain{{c, Chain{m}}});
    }
    return w;
}

ExtClass h_multiply(const Spectrum& spec, const ExtClass& x, int i, bool reduce,
                    const ExtOptions& opt) {
    if (!x.has_rep())
        throw Error("class has no chain-level representative");
    if (i < 0 || i > 7)
        throw Error("h index out of range");
    LMono lm;
    lm.len = 1;
    lm.i[0] = u8((1 << i) - 1);
    Chain h{lm};
    auto& L = lambda();
    ModChain prod;
    for (const auto& [cell, ch] : x.rep) {
        Chain p = is_sphere(spec) ? L.mul(h, ch) : L.mul(ch, h);
        if (!p.empty())
            prod.push_back({cell, std::move(p)});
    }
    int ns = x.s + 1;
    int nt = x.t + (1 << i);
    if (reduce)
        return reduce_class(spec, ns, nt, prod, opt);
    return ExtClass{ns, nt, std::move(prod), ""};
}

std::vector<int> basis_coords(const ExtGroup& g, ModChain r) {
    std::vector<int> out;
    while (!r.empty()) {
        auto lead = std::make_pair(r.front().first, r.front().second.back());
        bool hit = false;
        for (int k = 0; k < (int)g.classes.size(); ++k) {
            if (g.classes[k].rep.empty())
                continue;
            if (g.classes[k].leading() == lead) {
                out.push_back(k);
                mod_xor_into(r, g.classes[k].rep);
                hit = true;
                break;
            }
        }
        if (!hit)
            throw Error("cycle does not reduce into the group basis");
    }
    std::sort(out.begin(), out.end());
    return out;
}

Chain massey_triple(const Chain& a, const Chain& b, const Chain& c, const ExtOptions& opt) {
    auto& L = lambda();
    Chain uab = nullhomotopy(L.mul(a, b), opt, "product ab does not bound");
    Chain ubc = nullhomotopy(L.mul(b, c), opt, "product bc does not bound");
    Chain r = L.mul(uab, c);
    chain_xor_into(r, L.mul(a, ubc));
    return r;
}

Chain massey_four(const Chain& a, const Chain& b, const Chain& c, const Chain& d,
                  const ExtOptions& opt) {
    auto& L = lambda();
    Chain uab = nullhomotopy(L.mul(a, b), opt, "product ab does not bound");
    Chain ubc = nullhomotopy(L.mul(b, c), opt, "product bc does not bound");
    Chain ucd = nullhomotopy(L.mul(c, d), opt, "product cd does not bound");
    Chain e1 = L.mul(uab, c);
    chain_xor_into(e1, L.mul(a, ubc));
    Chain e2 = L.mul(ubc, d);
    chain_xor_into(e2, L.mul(b, ucd));
    Chain c13 = nullhomotopy(e1, opt, "inner bracket <a,b,c> does not vanish");
    Chain c24 = nullhomotopy(e2, opt, "inner bracket <b,c,d> does not vanish");
    Chain r = L.mul(c13, d);
    chain_xor_into(r, L.mul(uab, ucd));
    chain_xor_into(r, L.mul(a, c24));
    return r;
}

CurtisTable curtis_table(const Spectrum& spec, int smax, int stem_max, const ExtOptions& opt) {
    CurtisTable tbl;
    tbl.spec = spec;
    tbl.smax = smax;
    tbl.stem_max = stem_max;
    for (int s = 0; s <= smax; ++s)
        for (int stem = 0; stem <= stem_max; ++stem) {
            int t = s + stem;
            if (module_dim(spec, s, t) == 0)
                continue;
            check_caps(spec, s, t, opt, "curtis_table");
            CurtisEntry ce;
            lambda_bidegree(spec, s, t, opt, &ce);
            if (ce.gens.empty() && ce.tags.empty())
                continue;
            tbl.entries.push_back(std::move(ce));
        }
    return tbl;
}

std::string CurtisTable::text() const {
    std::ostringstream os;
    for (const CurtisEntry& e : entries) {
        int stem = e.t - e.s;
        for (const ExtClass& g : e.gens)
            os << "s=" << e.s << " stem=" << stem << " gen "
               << elem_str(spec, g.leading()) << '\n';
        for (const auto& [killed, killer] : e.tags)
            os << "s=" << e.s << " stem=" << stem << " tag " << elem_str(spec, killed)
               << " <- " << elem_str(spec, killer) << '\n';
    }
    return os.str();
}

}  // namespace extwb
