#include <extwb/seq.h>
#include <algorithm>
#include <climits>
#include <map>
#include <set>

namespace extwb {

namespace {

void check_partition(const CofiberSES& ses) {
    std::set<int> got(ses.sub.cells().begin(), ses.sub.cells().end());
    for (int c : ses.quot.cells())
        if (!got.insert(c).second)
            throw Error("sub and quotient share cell " + std::to_string(c));
    std::set<int> tot(ses.total.cells().begin(), ses.total.cells().end());
    if (got != tot)
        throw Error("sub and quotient cells do not partition the total spectrum");
}

std::map<int, int> identity_cells(const Spectrum& sp) {
    std::map<int, int> m;
    for (int c : sp.cells())
        m[c] = c;
    return m;
}

size_t mat_rank(const std::vector<BitVec>& rows, size_t ncols) {
    return echelonize(rows, ncols, false).rank();
}

/* rows-per-domain composition: (f then g), f rows over mid, g rows over out */
std::vector<BitVec> mat_mul(const std::vector<BitVec>& f, const std::vector<BitVec>& g,
                            size_t wout) {
    std::vector<BitVec> out;
    out.reserve(f.size());
    for (const BitVec& row : f) {
        BitVec acc(wout);
        for (size_t v = 0; v < g.size(); ++v)
            if (row.get(v))
                acc ^= g[v];
        out.push_back(std::move(acc));
    }
    return out;
}

bool mat_zero(const std::vector<BitVec>& m) {
    for (const BitVec& r : m)
        if (!r.none())
            return false;
    return true;
}

const Spectrum& sphere0() {
    static Spectrum s = build_sphere(0);
    return s;
}

}  // namespace

/* ---- ConnectingMap ---- */

ConnectingMap::ConnectingMap(CofiberSES ses) : ses_(std::move(ses)) {
    check_partition(ses_);
}

ModChain ConnectingMap::chain(int s, int t, const ModChain& z) const {
    for (const auto& [cell, ch] : z) {
        if (!ses_.quot.has_cell(cell))
            throw Error("representative does not live on the quotient cells");
        for (const LMono& m : ch)
            if (m.s() != s || cell + m.t() != t)
                throw Error("representative has mixed bidegree");
    }
    if (!module_diff(ses_.quot, z).empty())
        throw NotACycle("connecting map needs a cycle of the quotient complex");
    ModChain dz = module_diff(ses_.total, z);
    ModChain out;
    for (const auto& comp : dz) {
        if (!ses_.sub.has_cell(comp.first))
            throw LiftLeak("boundary has a component on quotient cell " +
                           std::to_string(comp.first));
        out.push_back(comp);
    }
    return out;
}

ExtClass ConnectingMap::apply(int s, int t, const ExtClass& x, const ExtOptions& opt) const {
    if (!x.has_rep())
        throw Error("class has no chain-level representative");
    ModChain dz = chain(s, t, x.rep);
    return reduce_class(ses_.sub, s + 1, t, dz, opt);
}

/* ---- induced maps ---- */

std::vector<BitVec> induced_map(const Spectrum& from, const Spectrum& to,
                                const std::vector<std::pair<int, int>>& pullback,
                                int s, int t, const ExtOptions& opt) {
    std::map<int, int> cmap(pullback.begin(), pullback.end());
    MinRes& rto = resolution_for(to, s, t, opt);
    MinRes& rfrom = resolution_for(from, s, t, opt);
    ResMap rm(rto, rfrom, cmap, s, t);
    return rm.ext_matrix(s, t);
}

/* ---- ExtLES ---- */

ExtLES::ExtLES(CofiberSES ses, int smax, int tmax, const ExtOptions& opt)
    : ses_(std::move(ses)), smax_(smax), tmax_(tmax) {
    check_partition(ses_);
    rsub_ = &resolution_for(ses_.sub, smax + 1, tmax, opt);
    rtot_ = &resolution_for(ses_.total, smax + 1, tmax, opt);
    rquo_ = &resolution_for(ses_.quot, smax + 1, tmax, opt);
    im_ = std::make_unique<ResMap>(*rtot_, *rsub_, identity_cells(ses_.sub), smax + 1, tmax);
    qm_ = std::make_unique<ResMap>(*rquo_, *rtot_, identity_cells(ses_.quot), smax + 1, tmax);
    dm_ = std::make_unique<ResSES>(ses_.total, *rsub_, *rquo_, smax + 1, tmax);
}

std::vector<BitVec> ExtLES::i_matrix(int s, int t) const { return im_->ext_matrix(s, t); }
std::vector<BitVec> ExtLES::q_matrix(int s, int t) const { return qm_->ext_matrix(s, t); }
std::vector<BitVec> ExtLES::d_matrix(int s, int t) const { return dm_->delta_matrix(s, t); }

size_t ExtLES::dim_sub(int s, int t) const { return rsub_->ext_dim(s, t); }
size_t ExtLES::dim_total(int s, int t) const { return rtot_->ext_dim(s, t); }
size_t ExtLES::dim_quot(int s, int t) const { return rquo_->ext_dim(s, t); }

bool ExtLES::exact_at(int s, int t) const {
    if (s > smax_ || t > tmax_)
        throw Error("bidegree outside the range of this LES");
    auto i0 = i_matrix(s, t), q0 = q_matrix(s, t), d0 = d_matrix(s, t);
    auto i1 = i_matrix(s + 1, t);
    size_t dt = dim_total(s, t), dq = dim_quot(s, t), ds1 = dim_sub(s + 1, t);

    bool at_total = mat_zero(mat_mul(i0, q0, dq)) &&
                    mat_rank(i0, dt) + mat_rank(q0, dq) == dt;
    bool at_quot = mat_zero(mat_mul(q0, d0, ds1)) &&
                   mat_rank(q0, dq) + mat_rank(d0, ds1) == dq;
    bool at_sub = mat_zero(mat_mul(d0, i1, dim_total(s + 1, t))) &&
                  mat_rank(d0, ds1) + mat_rank(i1, dim_total(s + 1, t)) == ds1;
    return at_total && at_quot && at_sub;
}

/* ---- algebraic cell spectral sequence ---- */

std::vector<GrPage> ahss_compute(const FilteredComplex& C, int rmax) {
    const int L = int(C.filt.size());
    if (int(C.rows.size()) != L)
        throw Error("filtered complex: rows and filt disagree");
    for (int n = 0; n + 1 < L; ++n)
        for (const SpVec& v : C.rows[n])
            for (u32 k : v)
                if (k >= C.filt[n + 1].size())
                    throw Error("filtered complex: differential hits a missing coordinate");
    if (L > 0)
        for (const SpVec& v : C.rows[L - 1])
            if (!v.empty())
                throw Error("filtered complex: top degree must map to zero");

    int pmin = INT_MAX, pmax = INT_MIN;
    for (const auto& fl : C.filt)
        for (int p : fl) {
            pmin = std::min(pmin, p);
            pmax = std::max(pmax, p);
        }
    std::vector<GrPage> pages;
    if (pmin > pmax)
        return pages;
    /* Z_{r-1}^{p+r-1} enters the denominator at p = pmax, so the Z ladder is
     * kept on a weight range extended past the top of the filtration */
    int pext = pmax + rmax;

    /* weight of a coordinate one degree above n (+inf past the end) */
    auto wt_above = [&](int n, u32 k) -> int {
        return n + 1 < L ? C.filt[n + 1][k] : INT_MAX;
    };
    /* d of a combination of degree-n basis vectors */
    auto d_combo = [&](int n, const SpVec& combo) {
        SpVec dv;
        for (u32 k : combo)
            sp_xor_into(dv, C.rows[n][k]);
        return dv;
    };

    /* Z_r^{p,n} bases as combinations of the degree-n basis */
    std::map<std::pair<int, int>, std::vector<SpVec>> zprev, zcur;
    for (int n = 0; n < L; ++n)
        for (int p = pmin; p <= pext; ++p) {
            std::vector<SpVec> basis;
            for (u32 k = 0; k < C.filt[n].size(); ++k)
                if (C.filt[n][k] <= p)
                    basis.push_back(SpVec{k});
            zprev[{n, p}] = std::move(basis);
        }

    for (int r = 1; r <= rmax; ++r) {
        zcur.clear();
        GrPage page;
        page.r = r;
        for (int n = 0; n < L; ++n)
            for (int p = pmin; p <= pext; ++p) {
                /* Z_r: combinations x in F_p with d x in F_{p-r} */
                std::vector<SpVec> zr;
                {
                    SparseEch ech(true);
                    std::vector<u32> ids;
                    for (u32 k = 0; k < C.filt[n].size(); ++k) {
                        if (C.filt[n][k] > p)
                            continue;
                        SpVec row;
                        for (u32 c : C.rows[n][k])
                            if (wt_above(n, c) > p - r)
                                row.push_back(c);
                        ids.push_back(k);
                        if (ech.add(std::move(row)) < 0) {
                            SpVec combo;
                            for (u32 id : ech.last_kernel())
                                combo.push_back(ids[id]);
                            std::sort(combo.begin(), combo.end());
                            zr.push_back(std::move(combo));
                        }
                    }
                }
                if (p > pmax) {  // ladder bookkeeping only, gr_p vanishes here
                    zcur[{n, p}] = std::move(zr);
                    continue;
                }
                /* denominator: Z_{r-1}^{p-1} + d Z_{r-1}^{p+r-1, n-1} */
                SparseEch den;
                size_t rank = 0;
                auto feed = [&](const SpVec& v) {
                    if (den.add(v) >= 0)
                        ++rank;
                };
                if (p - 1 >= pmin) {
                    auto it = zprev.find({n, p - 1});
                    if (it != zprev.end())
                        for (const SpVec& v : it->second)
                            feed(v);
                }
                if (n > 0) {
                    auto it = zprev.find({n - 1, p + r - 1});
                    if (it != zprev.end())
                        for (const SpVec& v : it->second) {
                            SpVec dv = d_combo(n - 1, v);
                            if (!dv.empty())
                                feed(dv);
                        }
                }
                size_t dim = zr.size() - rank;
                if (dim > 0)
                    page.entries.push_back(GrEntry{p, C.n0 + n, dim});
                zcur[{n, p}] = std::move(zr);
            }
        std::sort(page.entries.begin(), page.entries.end(), [](const GrEntry& a, const GrEntry& b) {
            return a.n != b.n ? a.n < b.n : a.p < b.p;
        });
        pages.push_back(std::move(page));
        zprev.swap(zcur);
    }
    return pages;
}

std::vector<AHSSPage> ahss_pages(const Spectrum& sp, int smax, int tmax, const ExtOptions& opt) {
    int span = sp.cells().back() - sp.cells().front();
    int rmax = span + 1;
    std::vector<AHSSPage> pages(rmax);
    for (int r = 0; r < rmax; ++r)
        pages[r].r = r + 1;

    for (int t = 0; t <= tmax; ++t) {
        FilteredComplex C;
        C.n0 = 0;
        std::vector<ModuleCtx> ctx;
        for (int s = 0; s <= smax + 1; ++s)
            ctx.push_back(ModuleCtx::make(sp, s, t));
        bool empty = true;
        for (int s = 0; s <= smax + 1; ++s) {
            if (ctx[s].dim > opt.lambda_cap)
                throw ResourceCap("cell spectral sequence: slice of dimension " +
                                  std::to_string(ctx[s].dim) + " exceeds cap");
            if (ctx[s].dim > 0)
                empty = false;
            std::vector<int> fl(ctx[s].dim);
            std::vector<SpVec> rows(ctx[s].dim);
            for (u32 k = 0; k < ctx[s].dim; ++k) {
                auto [cell, m] = ctx[s].element(k);
                fl[k] = cell;
                if (s <= smax)
                    rows[k] = mod_chain_to_vec(ctx[s + 1], module_diff(sp, cell, Chain{m}));
            }
            C.filt.push_back(std::move(fl));
            C.rows.push_back(std::move(rows));
        }
        if (empty)
            continue;
        lambda().maybe_trim();
        std::vector<GrPage> gr = ahss_compute(C, rmax);
        for (int r = 0; r < rmax; ++r)
            for (const GrEntry& e : gr[r].entries)
                if (e.n <= smax)
                    pages[r].entries.push_back(AHSSEntry{e.p, e.n, t, e.dim});
    }
    for (AHSSPage& pg : pages)
        std::sort(pg.entries.begin(), pg.entries.end(), [](const AHSSEntry& a, const AHSSEntry& b) {
            int sa = a.t - a.s, sb = b.t - b.s;
            if (sa != sb)
                return sa < sb;
            if (a.s != b.s)
                return a.s < b.s;
            return a.p < b.p;
        });
    return pages;
}

std::vector<AHSSEntry> ahss_einf(const Spectrum& sp, int smax, int tmax, const ExtOptions& opt) {
    const auto& cells = sp.cells();
    MinRes& rx = resolution_for(sp, smax, tmax, opt);

    /* rank of im(Ext(skeleton_j) -> Ext(sp)) per bidegree, increasing in j */
    std::vector<std::map<std::pair<int, int>, size_t>> ranks(cells.size());
    for (size_t j = 0; j + 1 < cells.size(); ++j) {
        std::vector<int> kept(cells.begin(), cells.begin() + j + 1);
        Spectrum skel = sp.subquotient(kept, sp.name() + "<=" + std::to_string(cells[j]));
        MinRes& rs = resolution_for(skel, smax, tmax, opt);
        std::map<int, int> cmap;
        for (int c : kept)
            cmap[c] = c;
        ResMap rm(rx, rs, cmap, smax, tmax);
        for (int s = 0; s <= smax; ++s)
            for (int t = s; t <= tmax; ++t) {
                size_t w = rx.gens_at(s, t).size();
                if (w == 0)
                    continue;
                ranks[j][{s, t}] = mat_rank(rm.ext_matrix(s, t), w);
            }
    }

    std::vector<AHSSEntry> out;
    for (int s = 0; s <= smax; ++s)
        for (int t = s; t <= tmax; ++t) {
            size_t prev = 0;
            for (size_t j = 0; j < cells.size(); ++j) {
                size_t rk;
                if (j + 1 == cells.size()) {
                    rk = rx.gens_at(s, t).size();
                } else {
                    auto it = ranks[j].find({s, t});
                    rk = it == ranks[j].end() ? 0 : it->second;
                }
                if (rk > prev)
                    out.push_back(AHSSEntry{cells[j], s, t, rk - prev});
                prev = rk;
            }
        }
    std::sort(out.begin(), out.end(), [](const AHSSEntry& a, const AHSSEntry& b) {
        int sa = a.t - a.s, sb = b.t - b.s;
        if (sa != sb)
            return sa < sb;
        if (a.s != b.s)
            return a.s < b.s;
        return a.p < b.p;
    });
    return out;
}

/* ---- algebraic transfer ---- */

TransferMap::TransferMap(const Spectrum& p) : p_(p) {
    if (p.cells().empty() || p.cells().front() < 1 ||
        !(p == build_stunted(p.cells().front(), p.cells().back())))
        throw NotPSpectrum("transfer is defined for stunted projective spaces P_a^b");
}

Chain TransferMap::chain(const ModChain& z) const {
    Chain out;
    auto& L = lambda();
    for (const auto& [cell, ch] : z)
        chain_xor_into(out, L.mul(make_mono({cell}), ch));
    return out;
}

ExtClass TransferMap::apply(const ExtClass& x, bool reduce, const ExtOptions& opt) const {
    if (!x.has_rep())
        throw Error("class has no chain-level representative");
    Chain tr = chain(x.rep);
    ModChain rep;
    if (!tr.empty())
        rep.push_back({0, std::move(tr)});
    if (reduce)
        return reduce_class(sphere0(), x.s + 1, x.t + 1, rep, opt);
    return ExtClass{x.s + 1, x.t + 1, std::move(rep), ""};
}

ExtClass transfer_class(const Spectrum& p, const ExtClass& x, bool reduce,
                        const ExtOptions& opt) {
    return TransferMap(p).apply(x, reduce, opt);
}

bool window_certifies_nonzero(int s, int t, const Chain& z, int first_min,
                              const ExtOptions& opt) {
    for (const LMono& m : z)
        if (m.s() != s || m.t() != t)
            throw Error("element has mixed bidegree");
    if (z.empty() || s <= 0)
        return false;
    size_t w = lambda_dim(s, t);
    if (first_min > 0)
        w -= lambda_dim(s, t, first_min - 1);
    if (w == 0)
        return false;

    auto window = [&](const Chain& c) {
        SpVec v;
        for (const LMono& m : c)
            if (m.i[0] >= first_min)
                v.push_back(lambda_rank(s, t, m));
        std::sort(v.begin(), v.end());
        return v;
    };
    SpVec zw = window(z);
    if (zw.empty())
        return false;

    auto src = LambdaAlg::basis(s - 1, t);
    SparseEch ech(false, opt.entry_cap);
    auto& L = lambda();
    for (size_t i = 0; i < src.size(); ++i) {
        SpVec row = window(L.d(src[i]));
        if (!row.empty())
            ech.add(std::move(row));
        if ((i & 0xfff) == 0xfff)
            L.maybe_trim();
    }
    return !ech.contains(zw);
}

bool transfer_surjective(const Spectrum& p, int s, int t, const ExtOptions& opt) {
    ExtGroup target = ext_group(sphere0(), s, t, opt);
    if (target.dim() == 0)
        return true;
    if (target.backend != "lambda")
        throw ResourceCap("surjectivity check needs chain-level representatives");
    TransferMap tr(p);
    ExtGroup source = ext_group(p, s - 1, t - 1, opt);

    ModuleCtx me = ModuleCtx::make(sphere0(), s, t);
    SparseEch span;
    for (const ExtClass& x : source.classes) {
        ExtClass y = tr.apply(x, true, opt);
        if (y.has_rep())
            span.add(mod_chain_to_vec(me, y.rep));
    }
    for (const ExtClass& g : target.classes)
        if (!span.contains(mod_chain_to_vec(me, g.rep)))
            return false;
    return true;
}

}  // namespace extwb
