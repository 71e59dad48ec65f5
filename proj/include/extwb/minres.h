#pragma once
#include "f2.h"
#include "spectrum.h"
#include "steenrod.h"
#include <map>
#include <memory>

namespace extwb {

/* cohomology of a spectrum as a module over the Steenrod algebra;
 * one basis element per cell, Sq^i raises degree */
struct CohModule {
    std::vector<int> cells;                  // ascending degrees
    std::map<std::pair<int, int>, int> act;  // (cell, i) -> cell + i
    std::vector<int> gens;                   // cells not in the image of A^+

    static CohModule of(const Spectrum& spec);
    /* left action of an admissible monomial on a single cell; -1 if it dies */
    int apply(const SqMono& m, int cell) const;
    std::vector<int> cells_at(int t) const;
};

/* element of a free module F_s: list of (generator id, monomial m), meaning
 * the sum of m * gen with left coefficients */
using FreeElem = std::vector<std::pair<u32, SqMono>>;

/* minimal free resolution of H*(X) over the Steenrod algebra;
 * ext_dim(s,t) = number of generators of F_s in internal degree t */
class MinRes {
public:
    MinRes(const Spectrum& spec, std::shared_ptr<SteenrodAlg> alg);

    void extend(int smax, int tmax);

    const Spectrum& spectrum() const { return spec_; }
    const CohModule& module() const { return mod_; }
    SteenrodAlg& alg() const { return *alg_; }
    int smax() const { return smax_; }
    int tmax() const { return tmax_; }

    size_t ext_dim(int s, int t) const;
    /* generator ids of F_s sitting in degree t */
    std::vector<u32> gens_at(int s, int t) const;
    int gen_degree(int s, u32 k) const { return gen_deg_.at(s).at(k); }
    size_t gen_count(int s) const { return s >= 0 && s <= smax_ ? gen_deg_[s].size() : 0; }
    /* d(generator k of F_s), an element of F_{s-1}; for s = 0 the augmentation
     * sends generator k to the cell gen_cell(k) */
    const FreeElem& diff(int s, u32 k) const { return diff_.at(s).at(k); }
    int gen_cell(u32 k) const { return mod_.gens.at(k); }

    /* basis of F_s in degree t: (gen, monomial) pairs grouped by generator */
    struct Slice {
        std::vector<std::pair<u32, SqMono>> elems;
        std::vector<u32> offset;  // start index per generator id
    };
    Slice slice(int s, int t) const;
    u32 slice_index(const Slice& sl, u32 gen, const SqMono& m) const;
    /* d of an element of F_s at degree t, in coordinates of target = slice(s-1,t) */
    BitVec diff_coords(int s, int t, const FreeElem& x, const Slice& target) const;
    /* augmentation image over module().cells_at(t) */
    BitVec eps_coords(int t, const FreeElem& x) const;
    static FreeElem from_coords(const BitVec& v, const Slice& sl);

    std::string serialize() const;
    /* restore a previously serialized resolution of the same spectrum */
    void restore(const std::string& text);

private:
    void step(int s, int t);

    Spectrum spec_;
    CohModule mod_;
    std::shared_ptr<SteenrodAlg> alg_;
    int smax_ = -1, tmax_ = -1;
    std::vector<std::vector<int>> gen_deg_;    // [s][k] -> degree
    std::vector<std::vector<FreeElem>> diff_;  // [s][k]
};

/* Ext class over a resolution: coefficients over gens_at(s,t) */
struct ResClass {
    int s = 0, t = 0;
    BitVec coef;
    bool zero() const { return coef.none(); }
};

/* coefficient of (gen, 1) in a free element */
bool unit_coeff(const FreeElem& x, u32 gen);

/* chain-map lift of the dual of a class beta in Ext^{s0,t0}(R) into the sphere
 * resolution S, deep enough to multiply by sphere classes of filtration <= depth.
 * Generators of F^R of degree > tcap are ignored. */
class ResLift {
public:
    ResLift(const MinRes& R, const MinRes& S, const ResClass& beta, int depth, int tcap);
    /* image of generator k of F^R_{s0+j} in S_j */
    const FreeElem& at(int j, u32 k) const { return maps_.at(j).at(k); }
    /* the product alpha * beta in Ext(R), for alpha an Ext class of the sphere */
    ResClass product(const ResClass& alpha) const;

private:
    const MinRes& R_;
    const MinRes& S_;
    int s0_, t0_, depth_, tcap_;
    std::vector<std::vector<FreeElem>> maps_;  // [j][gen of F^R_{s0+j}]
};

/* chain map F^M -> F^N covering a degree-0 module map u: M -> N sending cells
 * to cells (or to zero); unit coefficients give Ext^s(N) -> Ext^s(M) */
class ResMap {
public:
    ResMap(const MinRes& M, const MinRes& N, const std::map<int, int>& cell_map, int smax,
           int tmax);
    const FreeElem& at(int s, u32 k) const { return maps_.at(s).at(k); }
    /* induced map at (s,t): one row per generator of N (a basis class of Ext^s(N)),
     * coordinates over the generators of M at (s,t) */
    std::vector<BitVec> ext_matrix(int s, int t) const;

private:
    const MinRes& M_;
    const MinRes& N_;
    std::vector<std::vector<FreeElem>> maps_;  // [s][gen of F^M_s] -> element of F^N_s
};

/* horseshoe twist for a cell partition of `total`: sub-spectrum cells resolve via
 * resSub, quotient-spectrum cells via resQuot.  tau_s: F^{sub}_s -> F^{quot}_{s-1}
 * and its unit coefficients give the connecting map of the cofibration
 * sub -> total -> quotient:  delta: Ext^s(quotient) -> Ext^{s+1}(sub). */
class ResSES {
public:
    ResSES(const Spectrum& total, const MinRes& resSub, const MinRes& resQuot, int smax,
           int tmax);
    /* one row per generator of resQuot at (s,t), coordinates over the generators
     * of resSub at (s+1,t); valid for s+1 <= smax passed at construction */
    std::vector<BitVec> delta_matrix(int s, int t) const;
    const FreeElem& tau(int s, u32 k) const { return tau_.at(s).at(k); }

private:
    const MinRes& sub_;
    const MinRes& quot_;
    std::vector<std::vector<FreeElem>> tau_;  // [s][gen of F^{sub}_s] -> F^{quot}_{s-1}
};

}  // namespace extwb
