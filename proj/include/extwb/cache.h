#pragma once
#include "util.h"
#include <optional>
#include <string>

namespace extwb {

/* bump when stored artifacts change shape or meaning */
inline constexpr int kEngineVersion = 1;

/* file-per-key store under EXTWB_CACHE_DIR (default .extwb_cache).
 * Writes go through a temp file + rename. */
class Cache {
public:
    static Cache& inst();

    void set_enabled(bool on) { enabled_ = on; }
    bool enabled() const { return enabled_; }
    void set_dir(const std::string& d) { dir_ = d; }
    const std::string& dir() const { return dir_; }

    std::optional<std::string> get(const std::string& name) const;
    void put(const std::string& name, const std::string& value) const;

    struct Stat {
        size_t files = 0;
        size_t bytes = 0;
    };
    Stat stat() const;
    /* drop entries from other engine versions; with `all`, drop everything */
    size_t gc(bool all) const;

private:
    Cache();
    bool enabled_ = true;
    std::string dir_;
};

}  // namespace extwb
