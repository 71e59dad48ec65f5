#include <extwb/cache.h>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace fs = std::filesystem;

namespace extwb {

Cache::Cache() {
    const char* env = std::getenv("EXTWB_CACHE_DIR");
    dir_ = env && *env ? env : ".extwb_cache";
}

Cache& Cache::inst() {
    static Cache c;
    return c;
}

std::optional<std::string> Cache::get(const std::string& name) const {
    if (!enabled_)
        return std::nullopt;
    std::ifstream in(fs::path(dir_) / name, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void Cache::put(const std::string& name, const std::string& value) const {
    if (!enabled_)
        return;
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec)
        return;
    fs::path tmp = fs::path(dir_) / (".tmp." + name);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            return;
        out << value;
    }
    fs::rename(tmp, fs::path(dir_) / name, ec);
    if (ec)
        fs::remove(tmp, ec);
}

Cache::Stat Cache::stat() const {
    Stat st;
    std::error_code ec;
    for (const auto& e : fs::directory_iterator(dir_, ec)) {
        if (!e.is_regular_file())
            continue;
        ++st.files;
        st.bytes += size_t(e.file_size());
    }
    return st;
}

size_t Cache::gc(bool all) const {
    std::string keep = "-v" + std::to_string(kEngineVersion) + ".";
    size_t n = 0;
    std::error_code ec;
    std::vector<fs::path> victims;
    for (const auto& e : fs::directory_iterator(dir_, ec)) {
        if (!e.is_regular_file())
            continue;
        std::string fn = e.path().filename().string();
        if (all || fn.find(keep) == std::string::npos || fn.rfind(".tmp.", 0) == 0)
            victims.push_back(e.path());
    }
    for (const auto& p : victims)
        if (fs::remove(p, ec))
            ++n;
    return n;
}

}  // namespace extwb
