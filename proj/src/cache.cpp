#include "bary/cache.hpp"

#include "bary/barycentric.hpp"

#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

namespace bary {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::string major_of(const std::string& version) { return version.substr(0, version.find('.')); }

// flock(2) held for the lifetime of the object.
class FileLock {
public:
    FileLock(const std::filesystem::path& path, bool exclusive) {
        fd_ = ::open(path.c_str(), exclusive ? (O_RDWR | O_CREAT | O_APPEND) : O_RDONLY, 0644);
        if (fd_ < 0) throw std::runtime_error("cannot open cache " + path.string() + ": " + std::strerror(errno));
        if (::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
            ::close(fd_);
            throw std::runtime_error("cannot lock cache " + path.string());
        }
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;
    ~FileLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }

    int fd() const noexcept { return fd_; }

private:
    int fd_ = -1;
};

void write_all(int fd, const std::string& data) {
    const char* p = data.data();
    std::size_t left = data.size();
    while (left > 0) {
        ssize_t n = ::write(fd, p, left);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw std::runtime_error(std::string("cache write failed: ") + std::strerror(errno));
        }
        p += n;
        left -= static_cast<std::size_t>(n);
    }
}

} // namespace

std::string CacheEntry::to_line() const {
    std::ostringstream out;
    out << group << ';' << k << ';' << value << ';' << witness << ';' << method << ';' << version << ';' << timestamp;
    return out.str();
}

CacheEntry CacheEntry::from_line(const std::string& line) {
    auto f = split(line, ';');
    if (f.size() != 7) throw std::invalid_argument("expected 7 fields, got " + std::to_string(f.size()));
    CacheEntry e;
    e.group = f[0];
    std::size_t used = 0;
    e.k = std::stoi(f[1], &used);
    if (used != f[1].size()) throw std::invalid_argument("bad k '" + f[1] + "'");
    e.value = std::stoll(f[2], &used);
    if (used != f[2].size()) throw std::invalid_argument("bad value '" + f[2] + "'");
    e.witness = f[3];
    e.method = f[4];
    e.version = f[5];
    e.timestamp = f[6];
    return e;
}

void CacheEntry::validate() const {
    const auto G = FiniteAbelianGroup::parse(group);
    if (G.to_string() != group) throw std::invalid_argument("group key '" + group + "' is not canonical");
    if (k < 1) throw std::invalid_argument("k must be positive");
    const std::int64_t n = G.order();
    if (value < std::min<std::int64_t>(k, n + 1) || value > n + 1)
        throw std::invalid_argument("value " + std::to_string(value) + " out of range");
    const ElementSet W = ElementSet::parse(G, witness);
    if (W.to_string() != witness) throw std::invalid_argument("witness '" + witness + "' is not in canonical form");
    if (static_cast<std::int64_t>(W.size()) != value - 1)
        throw std::invalid_argument("witness size " + std::to_string(W.size()) + " does not match value");
    if (has_k_barycentric_subset(W, k)) throw std::invalid_argument("witness contains a k-barycentric subset");
    if (method.empty() || version.empty()) throw std::invalid_argument("missing method or version");
}

std::string iso_timestamp_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) {
    if (!std::filesystem::exists(path_)) return;
    FileLock lock(path_, false);
    std::ifstream in(path_);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1) {
            if (line != kCacheHeader)
                throw std::runtime_error(path_.string() + " is not a bocalc cache (header '" + line + "')");
            continue;
        }
        if (line.empty() || line == kCacheColumns) continue;
        try {
            CacheEntry e = CacheEntry::from_line(line);
            e.validate();
            entries_[{e.group, e.k}] = std::move(e);
        } catch (const std::exception& ex) {
            rejected_.push_back("line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
}

std::filesystem::path ResultCache::default_path() {
    if (const char* env = std::getenv(kCacheEnv); env && *env) return env;
    return "bocalc-cache.csv";
}

std::optional<CacheEntry> ResultCache::find(const std::string& group, int k) const {
    std::lock_guard guard(mutex_);
    auto it = entries_.find({group, k});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::optional<CacheEntry> ResultCache::find_compatible(const std::string& group, int k,
                                                       const std::string& version) const {
    auto e = find(group, k);
    if (e && major_of(e->version) != major_of(version)) return std::nullopt;
    return e;
}

void ResultCache::put(const CacheEntry& entry) {
    entry.validate();
    std::lock_guard guard(mutex_);
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    FileLock lock(path_, true);
    std::string data;
    if (::lseek(lock.fd(), 0, SEEK_END) == 0) data = std::string(kCacheHeader) + "\n" + kCacheColumns + "\n";
    data += entry.to_line() + "\n";
    write_all(lock.fd(), data);
    entries_[{entry.group, entry.k}] = entry;
}

std::size_t ResultCache::size() const {
    std::lock_guard guard(mutex_);
    return entries_.size();
}

} // namespace bary
