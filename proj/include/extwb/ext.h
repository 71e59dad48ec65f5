#pragma once
#include "lambda.h"
#include "minres.h"
#include <optional>

namespace extwb {

/* dimension of Lambda^{s,t} (leading index <= first_max if given), by counting */
size_t lambda_dim(int s, int t, int first_max = -1);
/* rank of an admissible monomial in the descending basis of Lambda^{s,t} */
u32 lambda_rank(int s, int t, const LMono& m);
/* dimension of the (s,t) piece of H(X) (x) Lambda */
size_t module_dim(const Spectrum& spec, int s, int t);

struct ExtOptions {
    bool no_cache = false;
    bool force_lambda = false;
    bool force_minres = false;
    /* largest lambda-complex slice the chain-level backend will echelonize */
    size_t lambda_cap = 120'000;
    /* sparse echelon entry budget before ResourceCap */
    size_t entry_cap = 150'000'000;
};

/* an Ext class with a canonical reduced cochain representative when the
 * chain-level backend produced one (rep is empty for rank-only classes) */
struct ExtClass {
    int s = 0, t = 0;
    ModChain rep;
    std::string name;  // filled from the name registry where known

    int stem() const { return t - s; }
    bool has_rep() const { return !rep.empty(); }
    bool operator==(const ExtClass& o) const { return s == o.s && t == o.t && rep == o.rep; }
    /* greatest basis element of the representative */
    std::pair<int, LMono> leading() const;
    std::string leading_str() const;
    std::string rep_str() const;
};

struct ExtGroup {
    int s = 0, t = 0;
    std::string backend;  // "lambda" or "minres"
    std::vector<ExtClass> classes;
    size_t dim() const { return classes.size(); }
};

/* Curtis-style elimination record at one bidegree: surviving generators plus
 * killed-monomial tags (killed <- killer, killer one filtration lower) */
struct CurtisEntry {
    int s = 0, t = 0;
    std::vector<ExtClass> gens;
    std::vector<std::pair<std::pair<int, LMono>, std::pair<int, LMono>>> tags;
};

struct CurtisTable {
    Spectrum spec;
    int smax = 0, stem_max = 0;
    std::vector<CurtisEntry> entries;  // s ascending, then stem ascending
    std::string text() const;
};

/* shared resolution registry (backed by the cache); grows monotonically */
MinRes& resolution_for(const Spectrum& spec, int smax, int tmax, const ExtOptions& opt = {});

ExtGroup ext_group(const Spectrum& spec, int s, int t, const ExtOptions& opt = {});

/* canonical representative of [z]; throws NotACycle if d(z) != 0 */
ExtClass reduce_class(const Spectrum& spec, int s, int t, const ModChain& z,
                      const ExtOptions& opt = {});

/* w with d(w) = z, searching sources with leading index <= first_max if given */
std::optional<Chain> bound_solve(int s, int t, const Chain& z, int first_max = -1,
                                 const ExtOptions& opt = {});
std::optional<ModChain> bound_solve(const Spectrum& spec, int s, int t, const ModChain& z,
                                    const ExtOptions& opt = {});

/* h_i * x: left multiplication by la_{2^i-1} on the sphere complex, the right
 * module action otherwise; canonicalizes when `reduce` is set */
ExtClass h_multiply(const Spectrum& spec, const ExtClass& x, int i, bool reduce = true,
                    const ExtOptions& opt = {});

/* express a reduced cycle as a xor of the group's canonical classes (indices
 * into g.classes, ascending); throws Error when a leading term has no match */
std::vector<int> basis_coords(const ExtGroup& g, ModChain r);

/* chain-level Massey products in the lambda algebra (sphere classes).
 * Throws BracketUndefined when a needed product fails to bound.  The 4-fold
 * bracket requires both inner triples to bound for the chosen nullhomotopies. */
Chain massey_triple(const Chain& a, const Chain& b, const Chain& c, const ExtOptions& opt = {});
Chain massey_four(const Chain& a, const Chain& b, const Chain& c, const Chain& d,
                  const ExtOptions& opt = {});

CurtisTable curtis_table(const Spectrum& spec, int smax, int stem_max,
                         const ExtOptions& opt = {});

}  // namespace extwb
