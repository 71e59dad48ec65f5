#pragma once

#include "ext.h"

#include <map>
#include <set>
#include <tuple>

namespace extwb {

/* Registry of classical names for Ext classes, keyed by (s, stem, leading
 * term).  The leading term is the string form of ExtClass::leading_str():
 * "l3 l5 l9 l7 l7 l7" for a bottom-cell class, "e22*l21 l11 l7" otherwise.
 * A key whose term is just "e14*" matches any class led by that cell; exact
 * keys win over cell keys.  The map is kept bijective in both directions. */
class NameRegistry {
public:
    void add(int s, int stem, const std::string& leading, const std::string& name);
    /* merge entries from a JSON array of {s, stem, leading, name} objects;
     * unknown fields are ignored */
    void load(const std::string& path);

    /* "" when unknown */
    std::string lookup(int s, int stem, const std::string& leading) const;
    std::string lookup(const ExtClass& c) const;
    /* fill ExtClass::name on every member with a chain representative */
    void annotate(ExtGroup& g) const;

    size_t size() const { return exact_.size() + cell_.size(); }

private:
    std::map<std::tuple<int, int, std::string>, std::string> exact_;
    std::map<std::tuple<int, int, int>, std::string> cell_;
    std::set<std::string> taken_;
};

/* process-wide registry; starts empty, fill via load() */
NameRegistry& names();

}  // namespace extwb
