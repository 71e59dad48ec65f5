#include "extwb/spectrum.h"
#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <json.hpp>

namespace extwb {

Spectrum::Spectrum(std::string name, std::vector<int> cells, std::vector<SqEntry> sq)
    : name_(std::move(name)), cells_(std::move(cells)), sq_(std::move(sq)) {
    std::sort(cells_.begin(), cells_.end());
    std::sort(sq_.begin(), sq_.end());
    for (const SqEntry& e : sq_) {
        if (e.to != e.from - e.i)
            throw Error("action entry Sq^" + std::to_string(e.i) + " on cell " +
                        std::to_string(e.from) + " must land " + std::to_string(e.i) + " below");
        if (!has_cell(e.from) || !has_cell(e.to))
            throw Error("action entry references a missing cell");
        act_[{e.from, e.i}] = e.to;
    }
}

bool Spectrum::has_cell(int n) const {
    return std::binary_search(cells_.begin(), cells_.end(), n);
}

int Spectrum::act(int n, int i) const {
    auto it = act_.find({n, i});
    return it == act_.end() ? -1 : it->second;
}

Spectrum Spectrum::suspend(int k) const {
    std::vector<int> cells;
    for (int c : cells_)
        cells.push_back(c + k);
    std::vector<SqEntry> sq;
    for (const SqEntry& e : sq_)
        sq.push_back({e.i, e.from + k, e.to + k});
    std::string nm = name_.empty() ? "" : name_ + "@" + std::to_string(k);
    return Spectrum(nm, std::move(cells), std::move(sq));
}

Spectrum Spectrum::subquotient(const std::vector<int>& kept, const std::string& name) const {
    std::set<int> keep(kept.begin(), kept.end());
    for (int n : keep)
        if (!has_cell(n))
            throw Error("subquotient keeps cell " + std::to_string(n) + " absent from " + name_);
    /* action-closure of the kept set */
    std::set<int> closure = keep;
    bool grew = true;
    while (grew) {
        grew = false;
        for (int n : std::vector<int>(closure.begin(), closure.end()))
            for (const SqEntry& e : sq_)
                if (e.from == n && !closure.count(e.to)) {
                    closure.insert(e.to);
                    grew = true;
                }
    }
    /* the removed lower part must itself be action-closed, otherwise some
     * Sq lands back in the kept set and the quotient is not defined */
    for (const SqEntry& e : sq_)
        if (closure.count(e.from) && !keep.count(e.from) && keep.count(e.to))
            throw ClosureViolation("Sq^" + std::to_string(e.i) + " maps removed cell " +
                                   std::to_string(e.from) + " onto kept cell " +
                                   std::to_string(e.to) + " in " + name_);
    std::vector<SqEntry> sq;
    for (const SqEntry& e : sq_)
        if (keep.count(e.from) && keep.count(e.to))
            sq.push_back(e);
    return Spectrum(name, kept, std::move(sq));
}

u64 Spectrum::hash() const {
    u64 h = 1469598103934665603ull;
    auto mix = [&h](u64 x) {
        h ^= x;
        h *= 1099511628211ull;
    };
    for (int c : cells_)
        mix(u64(c) + 0x9e37);
    for (const SqEntry& e : sq_) {
        mix(u64(e.i));
        mix(u64(e.from) << 8);
    }
    return h;
}

std::string Spectrum::to_json() const {
    nlohmann::json j;
    j["name"] = name_;
    j["cells"] = cells_;
    auto& sq = j["sq"] = nlohmann::json::array();
    for (const SqEntry& e : sq_)
        sq.push_back({{"i", e.i}, {"from", e.from}, {"to", e.to}});
    return j.dump(2);
}

Spectrum build_sphere(int n) {
    return Spectrum("S" + std::to_string(n), {n}, {});
}

Spectrum build_stunted(int a, int b) {
    if (a < 0 || b < a)
        throw Error("bad stunted range");
    std::vector<int> cells;
    for (int n = a; n <= b; ++n)
        cells.push_back(n);
    std::vector<SqEntry> sq;
    for (int n = a; n <= b; ++n)
        for (int i = 1; n - i >= a; ++i)
            if (binom_mod2(n - i, i))
                sq.push_back({i, n, n - i});
    return Spectrum("P" + std::to_string(a) + "_" + std::to_string(b), std::move(cells),
                    std::move(sq));
}

CofiberSES cofiber_ses(const Spectrum& total, const std::vector<int>& sub_cells) {
    std::set<int> sub(sub_cells.begin(), sub_cells.end());
    /* the sub-object must be closed under the action on its own */
    for (const SqEntry& e : total.action())
        if (sub.count(e.from) && !sub.count(e.to))
            throw ClosureViolation("Sq^" + std::to_string(e.i) + " leaves the sub-object: cell " +
                                   std::to_string(e.from) + " -> " + std::to_string(e.to));
    std::vector<int> quot_cells;
    for (int c : total.cells())
        if (!sub.count(c))
            quot_cells.push_back(c);
    CofiberSES s;
    s.total = total;
    s.sub = total.subquotient(sub_cells, total.name() + ".sub");
    s.quot = total.subquotient(quot_cells, total.name() + ".quot");
    return s;
}

const std::map<std::string, Spectrum>& spectrum_library() {
    static const std::map<std::string, Spectrum> lib = [] {
        std::map<std::string, Spectrum> m;
        m.emplace("S0", build_sphere(0));
        m.emplace("Ceta", Spectrum("Ceta", {0, 2}, {{2, 2, 0}}));
        Spectrum p = build_stunted(14, 23);
        m.emplace("P14_23", p);
        m.emplace("P1_23", build_stunted(1, 23));
        auto sub = [&m, &p](const char* nm, std::vector<int> k) {
            m.emplace(nm, p.subquotient(k, nm));
        };
        sub("X", {14, 16, 17, 18, 19, 20, 21, 22, 23});
        sub("Xtilde", {14, 16, 17, 18, 19, 20, 21, 22});
        sub("X20", {14, 17, 18, 19, 20});
        sub("Xhat20", {14, 16, 17, 18, 19, 20});
        sub("X21", {14, 19, 21});
        sub("Xhat21", {14, 16, 19, 21});
        sub("X22", {14, 19, 21, 22});
        sub("Xhat22", {14, 16, 19, 21, 22});
        sub("X23", {14, 23});
        sub("Xhat23", {14, 16, 23});
        sub("W", {14, 15, 19, 21, 22});
        m.emplace("Y", build_stunted(1, 6).subquotient({3, 5, 6}, "Y"));
        return m;
    }();
    return lib;
}

Spectrum Spectrum::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Spectrum spec;
    if (j.contains("builtin")) {
        spec = resolve_spectrum(j["builtin"].get<std::string>());
    } else if (j.contains("base")) {
        Spectrum base = resolve_spectrum(j["base"].get<std::string>());
        if (j.contains("kept")) {
            spec = base.subquotient(j["kept"].get<std::vector<int>>(),
                                    j.value("name", std::string{}));
        } else if (j.contains("removed")) {
            std::set<int> rm;
            for (int c : j["removed"])
                rm.insert(c);
            std::vector<int> kept;
            for (int c : base.cells())
                if (!rm.count(c))
                    kept.push_back(c);
            spec = base.subquotient(kept, j.value("name", std::string{}));
        } else {
            spec = base;
        }
    } else {
        std::vector<SqEntry> sq;
        if (j.contains("sq"))
            for (const auto& e : j["sq"])
                sq.push_back({e["i"].get<int>(), e["from"].get<int>(), e["to"].get<int>()});
        spec = Spectrum(j.value("name", std::string{}), j["cells"].get<std::vector<int>>(),
                        std::move(sq));
    }
    if (j.contains("suspend"))
        spec = spec.suspend(j["suspend"].get<int>());
    if (j.contains("name") && !j["name"].get<std::string>().empty()) {
        Spectrum named(j["name"].get<std::string>(), spec.cells(), spec.action());
        spec = named;
    }
    return spec;
}

Spectrum resolve_spectrum(const std::string& s) {
    auto at = s.find('@');
    if (at != std::string::npos)
        return resolve_spectrum(s.substr(0, at)).suspend(std::stoi(s.substr(at + 1)));
    const auto& lib = spectrum_library();
    if (auto it = lib.find(s); it != lib.end())
        return it->second;
    if (s.size() > 1 && s[0] == 'S' && std::isdigit((unsigned char)s[1]))
        return build_sphere(std::stoi(s.substr(1)));
    if (s.size() > 1 && s[0] == 'P' && std::isdigit((unsigned char)s[1])) {
        auto us = s.find('_');
        if (us != std::string::npos)
            return build_stunted(std::stoi(s.substr(1, us - 1)), std::stoi(s.substr(us + 1)));
    }
    std::ifstream f(s);
    if (f) {
        std::stringstream ss;
        ss << f.rdbuf();
        return Spectrum::from_json(ss.str());
    }
    throw Error("unknown spectrum: " + s);
}

}  // namespace extwb
