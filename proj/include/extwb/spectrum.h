#pragma once
#include "steenrod.h"
#include <map>
#include <string>
#include <vector>

namespace extwb {

/* one homology-side action entry: Sq^i sends the `from` cell to the `to` cell */
struct SqEntry {
    int i;
    int from;
    int to;
    auto operator<=>(const SqEntry&) const = default;
};

/* finite cell spectrum described by its mod-2 homology basis and dual Steenrod action */
class Spectrum {
public:
    Spectrum() = default;
    Spectrum(std::string name, std::vector<int> cells, std::vector<SqEntry> sq);

    const std::string& name() const { return name_; }
    const std::vector<int>& cells() const { return cells_; }
    const std::vector<SqEntry>& action() const { return sq_; }
    bool has_cell(int n) const;
    int bottom() const { return cells_.front(); }
    int top() const { return cells_.back(); }

    /* target of Sq^i on cell n, or -1 */
    int act(int n, int i) const;

    /* stable equivalence as cell data */
    bool operator==(const Spectrum& o) const { return cells_ == o.cells_ && sq_ == o.sq_; }

    Spectrum suspend(int k) const;
    /* keep a subset of cells; throws ClosureViolation if the subset is not a
     * valid subquotient of this spectrum */
    Spectrum subquotient(const std::vector<int>& kept, const std::string& name = "") const;

    u64 hash() const;
    std::string to_json() const;
    static Spectrum from_json(const std::string& text);

private:
    std::string name_;
    std::vector<int> cells_;              // ascending
    std::vector<SqEntry> sq_;             // sorted
    std::map<std::pair<int, int>, int> act_;  // (from,i) -> to
};

Spectrum build_sphere(int n);
/* stunted projective space P_a^b, cells a..b with the binomial action */
Spectrum build_stunted(int a, int b);

/* short exact sequence of spectra: sub -> total -> quotient, cells partitioned */
struct CofiberSES {
    Spectrum sub, total, quot;
};
/* split `total` along an action-closed cell subset */
CofiberSES cofiber_ses(const Spectrum& total, const std::vector<int>& sub_cells);

/* bundled spectra and name resolution ("S0", "Ceta", "P3_9", "X22", "Ceta@14", ...) */
const std::map<std::string, Spectrum>& spectrum_library();
Spectrum resolve_spectrum(const std::string& name_or_path);

}  // namespace extwb
