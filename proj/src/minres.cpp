#include <extwb/minres.h>
#include <algorithm>
#include <set>
#include <sstream>

namespace extwb {

CohModule CohModule::of(const Spectrum& spec) {
    CohModule m;
    m.cells = spec.cells();
    std::set<int> covered;
    for (const auto& e : spec.action()) {
        m.act[{e.to, e.i}] = e.from;
        covered.insert(e.from);
    }
    for (int c : m.cells)
        if (!covered.count(c))
            m.gens.push_back(c);
    return m;
}

int CohModule::apply(const SqMono& m, int cell) const {
    int c = cell;
    for (int k = m.len - 1; k >= 0; --k) {
        auto it = act.find({c, m.e[k]});
        if (it == act.end())
            return -1;
        c = it->second;
    }
    return c;
}

std::vector<int> CohModule::cells_at(int t) const {
    std::vector<int> out;
    for (int c : cells)
        if (c == t)
            out.push_back(c);
    return out;
}

bool unit_coeff(const FreeElem& x, u32 gen) {
    bool c = false;
    for (const auto& [k, m] : x)
        if (k == gen && m.len == 0)
            c = !c;
    return c;
}

MinRes::MinRes(const Spectrum& spec, std::shared_ptr<SteenrodAlg> alg)
    : spec_(spec), mod_(CohModule::of(spec)), alg_(std::move(alg)) {}

size_t MinRes::ext_dim(int s, int t) const {
    if (s > smax_ || t > tmax_)
        throw Error("resolution not extended to (s,t)");
    return gens_at(s, t).size();
}

std::vector<u32> MinRes::gens_at(int s, int t) const {
    std::vector<u32> out;
    if (s < 0 || s > smax_)
        return out;
    const auto& deg = gen_deg_[s];
    for (u32 k = 0; k < deg.size(); ++k)
        if (deg[k] == t)
            out.push_back(k);
    return out;
}

MinRes::Slice MinRes::slice(int s, int t) const {
    Slice sl;
    const auto& deg = gen_deg_.at(s);
    sl.offset.resize(deg.size(), 0);
    for (u32 k = 0; k < deg.size(); ++k) {
        sl.offset[k] = u32(sl.elems.size());
        int d = t - deg[k];
        if (d < 0 || d > alg_->tmax())
            continue;
        for (const auto& m : alg_->basis(d))
            sl.elems.push_back({k, m});
    }
    return sl;
}

u32 MinRes::slice_index(const Slice& sl, u32 gen, const SqMono& m) const {
    return sl.offset.at(gen) + alg_->index(m);
}

BitVec MinRes::diff_coords(int s, int t, const FreeElem& x, const Slice& target) const {
    BitVec v(target.elems.size());
    for (const auto& [k, m] : x) {
        for (const auto& [k2, a] : diff_.at(s).at(k))
            for (const auto& p : alg_->mul(m, a))
                v.flip(slice_index(target, k2, p));
    }
    return v;
}

BitVec MinRes::eps_coords(int t, const FreeElem& x) const {
    auto cols = mod_.cells_at(t);
    BitVec v(cols.size());
    for (const auto& [k, m] : x) {
        int c = mod_.apply(m, gen_cell(k));
        if (c < 0)
            continue;
        auto it = std::find(cols.begin(), cols.end(), c);
        v.flip(u32(it - cols.begin()));
    }
    return v;
}

FreeElem MinRes::from_coords(const BitVec& v, const Slice& sl) {
    FreeElem x;
    for (u32 i : v.ones())
        x.push_back(sl.elems[i]);
    return x;
}

void MinRes::extend(int smax, int tmax) {
    if (tmax > alg_->tmax())
        throw Error("Steenrod algebra table too small for requested degree");
    if (smax <= smax_ && tmax <= tmax_)
        return;
    int ns = std::max(smax, smax_), nt = std::max(tmax, tmax_);
    gen_deg_.resize(ns + 1);
    diff_.resize(ns + 1);
    for (int t = 0; t <= nt; ++t)
        for (int s = 0; s <= ns; ++s)
            if (s > smax_ || t > tmax_)
                step(s, t);
    smax_ = ns;
    tmax_ = nt;
}

void MinRes::step(int s, int t) {
    if (s == 0) {
        for (size_t k = 0; k < mod_.gens.size(); ++k)
            if (mod_.gens[k] == t) {
                if (gen_deg_[0].size() != k)
                    throw Error("module generators out of order");
                gen_deg_[0].push_back(t);
                diff_[0].push_back({});
            }
        return;
    }
    Slice T = slice(s - 1, t);
    if (T.elems.empty())
        return;
    std::vector<BitVec> rows;
    rows.reserve(T.elems.size());
    if (s == 1) {
        for (const auto& e : T.elems)
            rows.push_back(eps_coords(t, {e}));
    } else {
        Slice T2 = slice(s - 2, t);
        for (const auto& e : T.elems)
            rows.push_back(diff_coords(s - 1, t, {e}, T2));
    }
    auto ker = kernel_basis(rows, rows.empty() ? 0 : rows[0].size());
    if (ker.empty())
        return;

    /* incremental echelon of the image of the old part of F_s */
    std::vector<BitVec> ech;
    std::vector<int> piv;
    auto reduce_add = [&](BitVec v, bool keep) {
        for (size_t i = 0; i < ech.size(); ++i)
            if (v.get(piv[i]))
                v ^= ech[i];
        int p = v.lowest();
        if (p >= 0 && keep) {
            ech.push_back(v);
            piv.push_back(p);
        }
        return v;
    };
    Slice S_old = slice(s, t);
    for (const auto& e : S_old.elems)
        reduce_add(diff_coords(s, t, {e}, T), true);

    /* kernel_basis returns combinations over `rows`, i.e. coordinates over T */
    for (const auto& kv : ker) {
        BitVec r = reduce_add(kv, false);
        if (r.none())
            continue;
        reduce_add(r, true);
        gen_deg_[s].push_back(t);
        diff_[s].push_back(from_coords(r, T));
    }
}

namespace {

/* d-preimage solver over one resolution; echelons are memoized per (s,t) */
struct SliceSolver {
    const MinRes& R;
    struct Entry {
        MinRes::Slice sl;
        EchelonF2 ech;
    };
    std::map<std::pair<int, int>, Entry> memo;

    explicit SliceSolver(const MinRes& r) : R(r) {}

    /* x in F_s at degree t with d(x) = rhs; rhs in slice(s-1,t) coordinates
     * (module-cell coordinates for s = 0, where d means the augmentation) */
    FreeElem solve(int s, int t, const BitVec& rhs) {
        if (rhs.none())
            return {};
        auto key = std::make_pair(s, t);
        auto it = memo.find(key);
        if (it == memo.end()) {
            Entry e;
            e.sl = R.slice(s, t);
            std::vector<BitVec> rows;
            rows.reserve(e.sl.elems.size());
            for (const auto& el : e.sl.elems)
                rows.push_back(s == 0 ? R.eps_coords(t, {el})
                                      : R.diff_coords(s, t, {el}, R.slice(s - 1, t)));
            e.ech = echelonize(rows, rhs.size(), true);
            it = memo.emplace(key, std::move(e)).first;
        }
        auto combo = it->second.ech.solve(rhs);
        if (!combo)
            throw Error("no preimage in resolution slice");
        return MinRes::from_coords(*combo, it->second.sl);
    }
};

/* image of x under an A-linear map given on generators: phi(sum m*k) = sum m*phi(k) */
FreeElem push_elem(SteenrodAlg& A, const FreeElem& x, const std::vector<FreeElem>& phi) {
    FreeElem out;
    for (const auto& [k, m] : x)
        for (const auto& [k2, b] : phi.at(k))
            for (const auto& p : A.mul(m, b))
                out.push_back({k2, p});
    return out;
}

/* coordinates of a free element over a slice of R */
BitVec to_coords(const MinRes& R, const FreeElem& x, const MinRes::Slice& sl) {
    BitVec v(sl.elems.size());
    for (const auto& [k, m] : x)
        v.flip(R.slice_index(sl, k, m));
    return v;
}

}  // namespace

ResLift::ResLift(const MinRes& R, const MinRes& S, const ResClass& beta, int depth, int tcap)
    : R_(R), S_(S), s0_(beta.s), t0_(beta.t), depth_(depth), tcap_(tcap) {
    if (S.gen_count(0) != 1 || S.gen_degree(0, 0) != 0)
        throw Error("lift target must resolve the sphere");
    SliceSolver solver(S);
    maps_.resize(depth + 1);
    maps_[0].resize(R.gen_count(s0_));
    auto start = R.gens_at(s0_, t0_);
    for (size_t i = 0; i < start.size(); ++i)
        if (beta.coef.get(i))
            maps_[0][start[i]] = {{0, SqMono{}}};
    for (int j = 0; j < depth; ++j) {
        maps_[j + 1].resize(R.gen_count(s0_ + j + 1));
        for (u32 y = 0; y < maps_[j + 1].size(); ++y) {
            int ty = R.gen_degree(s0_ + j + 1, y);
            if (ty > tcap_ || ty < t0_)
                continue;
            FreeElem w = push_elem(R.alg(), R.diff(s0_ + j + 1, y), maps_[j]);
            BitVec rhs = to_coords(S, w, S.slice(j, ty - t0_));
            maps_[j + 1][y] = solver.solve(j + 1, ty - t0_, rhs);
        }
    }
}

ResClass ResLift::product(const ResClass& alpha) const {
    if (alpha.s > depth_ || t0_ + alpha.t > tcap_)
        throw Error("lift not deep enough for this product");
    ResClass out;
    out.s = s0_ + alpha.s;
    out.t = t0_ + alpha.t;
    auto tgt = R_.gens_at(out.s, out.t);
    auto sgen = S_.gens_at(alpha.s, alpha.t);
    out.coef = BitVec(tgt.size());
    for (size_t i = 0; i < tgt.size(); ++i) {
        bool bit = false;
        for (size_t j = 0; j < sgen.size(); ++j)
            if (alpha.coef.get(j) && unit_coeff(maps_[alpha.s][tgt[i]], sgen[j]))
                bit = !bit;
        if (bit)
            out.coef.set(i);
    }
    return out;
}

ResMap::ResMap(const MinRes& M, const MinRes& N, const std::map<int, int>& cell_map, int smax,
               int tmax)
    : M_(M), N_(N) {
    const auto& mm = M.module();
    const auto& nm = N.module();
    /* the cell map must preserve degree and commute with the action */
    int imax = std::max(mm.cells.back(), nm.cells.back());
    for (int c : mm.cells) {
        auto uit = cell_map.find(c);
        int uc = uit == cell_map.end() ? -1 : uit->second;
        if (uc >= 0 && uc != c)
            throw Error("cell map must preserve degree");
        for (int i = 1; i <= imax; ++i) {
            auto a = mm.act.find({c, i});
            int lhs = a == mm.act.end() ? -1 : a->second;
            if (lhs >= 0) {
                auto u2 = cell_map.find(lhs);
                lhs = u2 == cell_map.end() ? -1 : u2->second;
            }
            int rhs = -1;
            if (uc >= 0) {
                auto b = nm.act.find({uc, i});
                rhs = b == nm.act.end() ? -1 : b->second;
            }
            if (lhs != rhs)
                throw Error("cell map does not commute with the Steenrod action");
        }
    }
    SliceSolver solver(N);
    maps_.resize(smax + 1);
    for (int s = 0; s <= smax; ++s) {
        maps_[s].resize(M.gen_count(s));
        for (u32 y = 0; y < maps_[s].size(); ++y) {
            int ty = M.gen_degree(s, y);
            if (ty > tmax)
                continue;
            BitVec rhs;
            if (s == 0) {
                auto uit = cell_map.find(M.gen_cell(y));
                if (uit == cell_map.end())
                    continue;
                auto cols = nm.cells_at(ty);
                rhs = BitVec(cols.size());
                for (size_t i = 0; i < cols.size(); ++i)
                    if (cols[i] == uit->second)
                        rhs.set(i);
            } else {
                FreeElem w = push_elem(M.alg(), M.diff(s, y), maps_[s - 1]);
                rhs = to_coords(N, w, N.slice(s - 1, ty));
            }
            maps_[s][y] = solver.solve(s, ty, rhs);
        }
    }
}

std::vector<BitVec> ResMap::ext_matrix(int s, int t) const {
    auto mg = M_.gens_at(s, t);
    auto ng = N_.gens_at(s, t);
    std::vector<BitVec> rows(ng.size(), BitVec(mg.size()));
    for (size_t j = 0; j < ng.size(); ++j)
        for (size_t i = 0; i < mg.size(); ++i)
            if (unit_coeff(maps_.at(s).at(mg[i]), ng[j]))
                rows[j].set(i);
    return rows;
}

ResSES::ResSES(const Spectrum& total, const MinRes& resSub, const MinRes& resQuot, int smax,
               int tmax)
    : sub_(resSub), quot_(resQuot) {
    CohModule tm = CohModule::of(total);
    const auto& qm = resQuot.module();
    SliceSolver solver(resQuot);
    tau_.resize(smax + 1);
    if (smax < 1)
        return;
    /* eta: F^{sub}_0 -> H*(total) sends each generator to the same-named cell */
    tau_[1].resize(sub_.gen_count(1));
    for (u32 y = 0; y < tau_[1].size(); ++y) {
        int ty = sub_.gen_degree(1, y);
        if (ty > tmax)
            continue;
        auto cols = tm.cells_at(ty);
        BitVec z(cols.size());
        for (const auto& [k, a] : sub_.diff(1, y)) {
            int c = tm.apply(a, sub_.gen_cell(k));
            if (c < 0)
                continue;
            auto it = std::find(cols.begin(), cols.end(), c);
            z.flip(u32(it - cols.begin()));
        }
        /* the image must lie in the quotient-spectrum cells */
        auto qcols = qm.cells_at(ty);
        BitVec rhs(qcols.size());
        for (size_t i = 0; i < cols.size(); ++i)
            if (z.get(i)) {
                auto it = std::find(qcols.begin(), qcols.end(), cols[i]);
                if (it == qcols.end())
                    throw Error("cell partition is not exact");
                rhs.set(u32(it - qcols.begin()));
            }
        tau_[1][y] = solver.solve(0, ty, rhs);
    }
    for (int s = 2; s <= smax; ++s) {
        tau_[s].resize(sub_.gen_count(s));
        for (u32 y = 0; y < tau_[s].size(); ++y) {
            int ty = sub_.gen_degree(s, y);
            if (ty > tmax)
                continue;
            FreeElem w = push_elem(sub_.alg(), sub_.diff(s, y), tau_[s - 1]);
            BitVec rhs = to_coords(quot_, w, quot_.slice(s - 2, ty));
            tau_[s][y] = solver.solve(s - 1, ty, rhs);
        }
    }
}

std::vector<BitVec> ResSES::delta_matrix(int s, int t) const {
    auto qg = quot_.gens_at(s, t);
    auto sg = sub_.gens_at(s + 1, t);
    std::vector<BitVec> rows(qg.size(), BitVec(sg.size()));
    for (size_t j = 0; j < qg.size(); ++j)
        for (size_t i = 0; i < sg.size(); ++i)
            if (unit_coeff(tau_.at(s + 1).at(sg[i]), qg[j]))
                rows[j].set(i);
    return rows;
}

std::string MinRes::serialize() const {
    std::ostringstream os;
    os << "minres " << spec_.hash() << ' ' << smax_ << ' ' << tmax_ << '\n';
    for (int s = 0; s <= smax_; ++s) {
        os << "s " << s << ' ' << gen_deg_[s].size() << '\n';
        for (size_t k = 0; k < gen_deg_[s].size(); ++k) {
            const auto& d = diff_[s][k];
            os << "g " << gen_deg_[s][k] << ' ' << d.size() << '\n';
            for (const auto& [k2, m] : d) {
                os << k2 << ' ' << int(m.len);
                for (int j = 0; j < m.len; ++j)
                    os << ' ' << int(m.e[j]);
                os << '\n';
            }
        }
    }
    return os.str();
}

void MinRes::restore(const std::string& text) {
    std::istringstream is(text);
    std::string tag;
    u64 h;
    int sm, tm;
    if (!(is >> tag >> h >> sm >> tm) || tag != "minres")
        throw Error("bad resolution data");
    if (h != spec_.hash())
        throw Error("resolution data is for a different spectrum");
    if (tm > alg_->tmax())
        throw Error("Steenrod algebra table too small for cached resolution");
    std::vector<std::vector<int>> gd(sm + 1);
    std::vector<std::vector<FreeElem>> df(sm + 1);
    for (int s = 0; s <= sm; ++s) {
        size_t ng;
        int sval;
        if (!(is >> tag >> sval >> ng) || tag != "s" || sval != s)
            throw Error("bad resolution data");
        for (size_t k = 0; k < ng; ++k) {
            size_t nterm;
            int deg;
            if (!(is >> tag >> deg >> nterm) || tag != "g")
                throw Error("bad resolution data");
            gd[s].push_back(deg);
            FreeElem d;
            for (size_t j = 0; j < nterm; ++j) {
                u32 k2;
                int len;
                SqMono m;
                is >> k2 >> len;
                m.len = u8(len);
                for (int q = 0; q < len; ++q) {
                    int e;
                    is >> e;
                    m.e[q] = u8(e);
                }
                d.push_back({k2, m});
            }
            df[s].push_back(std::move(d));
        }
    }
    if (!is)
        throw Error("bad resolution data");
    gen_deg_ = std::move(gd);
    diff_ = std::move(df);
    smax_ = sm;
    tmax_ = tm;
}

}  // namespace extwb
