#include "extwb/names.h"

#include <fstream>
#include <json.hpp>

namespace extwb {

static int leading_cell(const std::string& leading) {
    auto star = leading.find('*');
    bool prefixed = leading.size() > 1 && leading[0] == 'e' && star != std::string::npos;
    if (!prefixed)
        return 0;
    return std::stoi(leading.substr(1, star - 1));
}

void NameRegistry::add(int s, int stem, const std::string& leading, const std::string& name) {
    if (leading.empty() || name.empty())
        throw Error("name entry needs a leading term and a name");
    if (taken_.count(name))
        throw Error("duplicate class name: " + name);
    auto star = leading.find('*');
    if (star != std::string::npos && star + 1 == leading.size()) {
        auto key = std::make_tuple(s, stem, leading_cell(leading));
        if (cell_.count(key))
            throw Error("duplicate cell key for name: " + name);
        cell_[key] = name;
    } else {
        auto key = std::make_tuple(s, stem, leading);
        if (exact_.count(key))
            throw Error("duplicate leading key for name: " + name);
        exact_[key] = name;
    }
    taken_.insert(name);
}

void NameRegistry::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open name table: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    for (auto& e : j)
        add(e.at("s").get<int>(), e.at("stem").get<int>(),
            e.at("leading").get<std::string>(), e.at("name").get<std::string>());
}

std::string NameRegistry::lookup(int s, int stem, const std::string& leading) const {
    auto it = exact_.find(std::make_tuple(s, stem, leading));
    if (it != exact_.end())
        return it->second;
    auto ic = cell_.find(std::make_tuple(s, stem, leading_cell(leading)));
    return ic == cell_.end() ? "" : ic->second;
}

std::string NameRegistry::lookup(const ExtClass& c) const {
    if (!c.has_rep())
        return "";
    return lookup(c.s, c.stem(), c.leading_str());
}

void NameRegistry::annotate(ExtGroup& g) const {
    for (auto& c : g.classes)
        if (c.has_rep())
            c.name = lookup(c);
}

NameRegistry& names() {
    static NameRegistry reg;
    return reg;
}

}  // namespace extwb
