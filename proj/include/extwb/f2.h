#pragma once
#include "util.h"
#include <optional>
#include <unordered_map>
#include <vector>

namespace extwb {

/* packed bit vector over GF(2) */
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(size_t nbits) : n_(nbits), w_((nbits + 63) / 64, 0) {}

    size_t size() const { return n_; }
    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i) { w_[i >> 6] |= u64(1) << (i & 63); }
    void reset(size_t i) { w_[i >> 6] &= ~(u64(1) << (i & 63)); }
    void flip(size_t i) { w_[i >> 6] ^= u64(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (size_t k = 0; k < w_.size(); ++k)
            w_[k] ^= o.w_[k];
        return *this;
    }
    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }

    bool none() const {
        for (u64 x : w_)
            if (x)
                return false;
        return true;
    }
    /* index of lowest set bit, -1 if zero */
    int lowest() const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k])
                return int(k * 64 + __builtin_ctzll(w_[k]));
        return -1;
    }
    size_t count() const {
        size_t c = 0;
        for (u64 x : w_)
            c += __builtin_popcountll(x);
        return c;
    }
    std::vector<u32> ones() const {
        std::vector<u32> out;
        for (size_t k = 0; k < w_.size(); ++k)
            for (u64 x = w_[k]; x; x &= x - 1)
                out.push_back(u32(k * 64 + __builtin_ctzll(x)));
        return out;
    }

private:
    size_t n_ = 0;
    std::vector<u64> w_;
};

/* row echelon form of a list of dense rows; pivot = lowest set bit.
 * trans[i] (if tracked) is the combination of input rows giving rows[i]. */
struct EchelonF2 {
    size_t ncols = 0;
    std::vector<BitVec> rows;    // pivots strictly increasing
    std::vector<u32> pivots;
    std::vector<BitVec> trans;   // empty unless transform was requested

    size_t rank() const { return rows.size(); }
    /* reduce v mod the row space (full reduction) */
    BitVec reduce(const BitVec& v) const;
    bool contains(const BitVec& v) const { return reduce(v).none(); }
    /* coefficients over the input rows summing to v, if v is in the span */
    std::optional<BitVec> solve(const BitVec& v) const;
};

EchelonF2 echelonize(const std::vector<BitVec>& input, size_t ncols, bool with_transform = false);

/* basis of {c : sum_i c_i input[i] = 0} */
std::vector<BitVec> kernel_basis(const std::vector<BitVec>& input, size_t ncols);

/* sparse GF(2) vector: strictly increasing coordinate indices */
using SpVec = std::vector<u32>;

void sp_xor_into(SpVec& a, const SpVec& b);
SpVec sp_xor(const SpVec& a, const SpVec& b);

/* streaming echelon over sparse rows; pivot = smallest index.
 * Rows are leading-reduced on insert; queries reduce fully.
 * Optionally tracks, per stored row, the combination of inserted vectors
 * (by insertion order id) that produced it. */
class SparseEch {
public:
    explicit SparseEch(bool with_transform = false, size_t entry_cap = 0)
        : track_(with_transform), cap_(entry_cap) {}

    /* insert; returns pivot index or -1 if v reduced to zero.
     * If the row vanishes and transform is tracked, last_kernel() holds the combo. */
    long long add(SpVec v);

    size_t rank() const { return rows_.size(); }
    size_t entries() const { return entries_; }
    size_t inserted() const { return n_in_; }
    size_t tag_entries() const {
        size_t n = 0;
        for (const auto& t : tags_)
            n += t.size();
        return n;
    }

    bool contains(SpVec v) const;
    /* fully reduce v mod the row space (no pivot coordinate survives) */
    SpVec reduce(SpVec v) const;
    /* combination of inserted rows summing to v, if any */
    std::optional<SpVec> solve(SpVec v) const;

    bool is_pivot(u32 col) const { return by_pivot_.count(col) != 0; }
    const SpVec& last_kernel() const { return last_kernel_; }

    const std::vector<SpVec>& rows() const { return rows_; }

private:
    bool track_;
    size_t cap_;
    size_t entries_ = 0;
    size_t n_in_ = 0;
    std::vector<SpVec> rows_;
    std::vector<SpVec> tags_;
    SpVec last_kernel_;
    std::unordered_map<u32, u32> by_pivot_;
};

}  // namespace extwb
