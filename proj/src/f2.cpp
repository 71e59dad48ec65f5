#include "extwb/f2.h"
#include <algorithm>

namespace extwb {

BitVec EchelonF2::reduce(const BitVec& v) const {
    BitVec r = v;
    for (size_t i = 0; i < rows.size(); ++i)
        if (r.get(pivots[i]))
            r ^= rows[i];
    return r;
}

std::optional<BitVec> EchelonF2::solve(const BitVec& v) const {
    if (trans.empty() && !rows.empty())
        return std::nullopt;
    BitVec r = v;
    BitVec combo(trans.empty() ? 0 : trans[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        if (r.get(pivots[i])) {
            r ^= rows[i];
            combo ^= trans[i];
        }
    if (!r.none())
        return std::nullopt;
    return combo;
}

EchelonF2 echelonize(const std::vector<BitVec>& input, size_t ncols, bool with_transform) {
    EchelonF2 e;
    e.ncols = ncols;
    for (size_t id = 0; id < input.size(); ++id) {
        BitVec v = input[id];
        BitVec t;
        if (with_transform) {
            t = BitVec(input.size());
            t.set(id);
        }
        for (size_t i = 0; i < e.rows.size(); ++i)
            if (v.get(e.pivots[i])) {
                v ^= e.rows[i];
                if (with_transform)
                    t ^= e.trans[i];
            }
        int p = v.lowest();
        if (p < 0)
            continue;
        /* keep pivots strictly increasing */
        size_t at = std::lower_bound(e.pivots.begin(), e.pivots.end(), u32(p)) - e.pivots.begin();
        e.rows.insert(e.rows.begin() + at, std::move(v));
        e.pivots.insert(e.pivots.begin() + at, u32(p));
        if (with_transform)
            e.trans.insert(e.trans.begin() + at, std::move(t));
    }
    /* back-substitute to reduced form */
    for (size_t i = e.rows.size(); i-- > 0;)
        for (size_t j = 0; j < i; ++j)
            if (e.rows[j].get(e.pivots[i])) {
                e.rows[j] ^= e.rows[i];
                if (with_transform)
                    e.trans[j] ^= e.trans[i];
            }
    return e;
}

std::vector<BitVec> kernel_basis(const std::vector<BitVec>& input, size_t ncols) {
    std::vector<BitVec> out;
    EchelonF2 e;
    e.ncols = ncols;
    for (size_t id = 0; id < input.size(); ++id) {
        BitVec v = input[id];
        BitVec t(input.size());
        t.set(id);
        for (size_t i = 0; i < e.rows.size(); ++i)
            if (v.get(e.pivots[i])) {
                v ^= e.rows[i];
                t ^= e.trans[i];
            }
        int p = v.lowest();
        if (p < 0) {
            out.push_back(std::move(t));
            continue;
        }
        size_t at = std::lower_bound(e.pivots.begin(), e.pivots.end(), u32(p)) - e.pivots.begin();
        e.rows.insert(e.rows.begin() + at, std::move(v));
        e.pivots.insert(e.pivots.begin() + at, u32(p));
        e.trans.insert(e.trans.begin() + at, std::move(t));
    }
    return out;
}

void sp_xor_into(SpVec& a, const SpVec& b) {
    SpVec out;
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

SpVec sp_xor(const SpVec& a, const SpVec& b) {
    SpVec r = a;
    sp_xor_into(r, b);
    return r;
}

long long SparseEch::add(SpVec v) {
    SpVec tag;
    if (track_) {
        tag.push_back(u32(n_in_));
        last_kernel_.clear();
    }
    ++n_in_;
    while (!v.empty()) {
        auto it = by_pivot_.find(v[0]);
        if (it == by_pivot_.end()) {
            u32 p = v[0];
            entries_ += v.size() + tag.size();
            if (cap_ && entries_ > cap_)
                throw ResourceCap("sparse echelon exceeded entry cap (" + std::to_string(entries_) +
                                  " > " + std::to_string(cap_) + ")");
            by_pivot_.emplace(p, u32(rows_.size()));
            rows_.push_back(std::move(v));
            if (track_)
                tags_.push_back(std::move(tag));
            return p;
        }
        sp_xor_into(v, rows_[it->second]);
        if (track_)
            sp_xor_into(tag, tags_[it->second]);
    }
    if (track_)
        last_kernel_ = std::move(tag);
    return -1;
}

bool SparseEch::contains(SpVec v) const {
    while (!v.empty()) {
        auto it = by_pivot_.find(v[0]);
        if (it == by_pivot_.end())
            return false;
        sp_xor_into(v, rows_[it->second]);
    }
    return true;
}

SpVec SparseEch::reduce(SpVec v) const {
    /* every stored row has its minimum at the pivot, so one ascending pass
     * leaves no pivot coordinate behind */
    size_t pos = 0;
    while (pos < v.size()) {
        auto it = by_pivot_.find(v[pos]);
        if (it == by_pivot_.end()) {
            ++pos;
            continue;
        }
        SpVec tail(v.begin() + pos, v.end());
        sp_xor_into(tail, rows_[it->second]);
        v.resize(pos);
        v.insert(v.end(), tail.begin(), tail.end());
    }
    return v;
}

std::optional<SpVec> SparseEch::solve(SpVec v) const {
    if (!track_)
        return std::nullopt;
    SpVec combo;
    while (!v.empty()) {
        auto it = by_pivot_.find(v[0]);
        if (it == by_pivot_.end())
            return std::nullopt;
        sp_xor_into(v, rows_[it->second]);
        sp_xor_into(combo, tags_[it->second]);
    }
    return combo;
}

}  // namespace extwb
