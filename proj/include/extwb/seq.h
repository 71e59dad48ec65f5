#pragma once
#include "ext.h"

namespace extwb {

/* chain-level boundary map of a cofibration sub -> total -> quot coming from a
 * cell partition: lift a quot-cycle into the total complex, differentiate, and
 * read off the sub-cell part.  (s,t) -> (s+1,t). */
class ConnectingMap {
public:
    explicit ConnectingMap(CofiberSES ses);

    /* raw image of a quot-cycle; throws NotACycle / LiftLeak */
    ModChain chain(int s, int t, const ModChain& z) const;
    ExtClass apply(int s, int t, const ExtClass& x, const ExtOptions& opt = {}) const;

    const CofiberSES& ses() const { return ses_; }

private:
    CofiberSES ses_;
};

/* induced map on Ext of a spectrum map f: from -> to, described by its
 * cohomology restriction (pairs (cell of `to`, cell of `from`) with
 * f^*(x_to) = x_from).  One row per Ext^{s,t}(from) basis class, coordinates
 * over the Ext^{s,t}(to) basis.  Resolution-backed. */
std::vector<BitVec> induced_map(const Spectrum& from, const Spectrum& to,
                                const std::vector<std::pair<int, int>>& pullback,
                                int s, int t, const ExtOptions& opt = {});

/* long exact sequence of a cell partition, resolution-backed:
 *   ... -> Ext^s(sub) -i-> Ext^s(total) -q-> Ext^s(quot) -d-> Ext^{s+1}(sub) -> ...
 * Matrices carry one row per domain basis class. */
class ExtLES {
public:
    ExtLES(CofiberSES ses, int smax, int tmax, const ExtOptions& opt = {});

    std::vector<BitVec> i_matrix(int s, int t) const;
    std::vector<BitVec> q_matrix(int s, int t) const;
    std::vector<BitVec> d_matrix(int s, int t) const;

    size_t dim_sub(int s, int t) const;
    size_t dim_total(int s, int t) const;
    size_t dim_quot(int s, int t) const;

    /* im == ker at total (s,t), at quot (s,t) and at sub (s+1,t) */
    bool exact_at(int s, int t) const;

private:
    CofiberSES ses_;
    int smax_, tmax_;
    MinRes *rsub_, *rtot_, *rquo_;
    std::unique_ptr<ResMap> im_, qm_;
    std::unique_ptr<ResSES> dm_;
};

/* ---- algebraic cell spectral sequence ---- */

/* a cochain complex over GF(2) with a compatible increasing filtration:
 * d raises the degree by one and does not raise the filtration weight */
struct FilteredComplex {
    int n0 = 0;                              // lowest degree
    std::vector<std::vector<int>> filt;      // [n - n0][k] = weight of basis vector k
    std::vector<std::vector<SpVec>> rows;    // [n - n0][k] = d(x_{n,k}), coords one degree up
};

struct GrEntry {
    int p = 0, n = 0;
    size_t dim = 0;
};
struct GrPage {
    int r = 1;
    std::vector<GrEntry> entries;  // sorted by (n, p)
};

/* pages E_1 .. E_rmax of the spectral sequence of the filtration; d_r drops the
 * weight by r.  The last page equals E_infinity once rmax exceeds the weight span. */
std::vector<GrPage> ahss_compute(const FilteredComplex& C, int rmax);

struct AHSSEntry {
    int p = 0, s = 0, t = 0;  // p = cell, (s,t) internal bidegree
    size_t dim = 0;
};
struct AHSSPage {
    int r = 1;
    std::vector<AHSSEntry> entries;  // sorted by (t-s, s, p)
};

/* chain-level pages for the cell filtration of the module complex of `sp`,
 * over s <= smax, t <= tmax */
std::vector<AHSSPage> ahss_pages(const Spectrum& sp, int smax, int tmax,
                                 const ExtOptions& opt = {});

/* E_infinity ranks from the skeleton filtration, resolution-backed:
 * gr_p Ext^{s,t}(sp) as image-rank differences along skeleton inclusions */
std::vector<AHSSEntry> ahss_einf(const Spectrum& sp, int smax, int tmax,
                                 const ExtOptions& opt = {});

/* ---- algebraic transfer ---- */

/* chain-level transfer of a stunted projective space P_a^b:
 * e_n (x) m |-> la_n m, shifting (s,t) to (s+1,t+1) */
class TransferMap {
public:
    explicit TransferMap(const Spectrum& p);  // throws NotPSpectrum

    Chain chain(const ModChain& z) const;
    ExtClass apply(const ExtClass& x, bool reduce = true, const ExtOptions& opt = {}) const;

    const Spectrum& source() const { return p_; }

private:
    Spectrum p_;
};

ExtClass transfer_class(const Spectrum& p, const ExtClass& x, bool reduce = true,
                        const ExtOptions& opt = {});

/* one-sided nonvanishing certificate: project onto the span of admissible
 * monomials with leading index >= first_min (an initial coordinate block) and
 * check the projection of z stays outside the projected boundary space.
 * true = certified nonzero; false = inconclusive.  The second form also caps
 * the leading index at first_max (-1 = unbounded), shrinking the window to a
 * band; any coordinate subspace projection keeps the certificate one-sided. */
bool window_certifies_nonzero(int s, int t, const Chain& z, int first_min,
                              const ExtOptions& opt = {});
bool window_certifies_nonzero(int s, int t, const Chain& z, int first_min, int first_max,
                              const ExtOptions& opt = {});

/* do transfers from P cover Ext^{s,t}(S^0)?  (chain-level, small bidegrees) */
bool transfer_surjective(const Spectrum& p, int s, int t, const ExtOptions& opt = {});

}  // namespace extwb
