#pragma once

// Append-only CSV store of computed BO values, one line per (group, k).
//
//   # bocalc-cache v1
//   group;k;value;witness;method;version;timestamp
//
// Later lines for the same key replace earlier ones. Every line is checked
// on load (value range, witness size and freeness); bad lines are rejected
// and reported, never used.

#include "bary/group.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace bary {

inline constexpr const char* kCacheHeader = "# bocalc-cache v1";
inline constexpr const char* kCacheColumns = "group;k;value;witness;method;version;timestamp";
/// Environment variable naming the default cache file.
inline constexpr const char* kCacheEnv = "BOCALC_CACHE";

struct CacheEntry {
    std::string group; // invariant factors, e.g. "2,4"
    int k = 0;
    std::int64_t value = 0;
    std::string witness; // ElementSet::to_string of the witness
    std::string method;
    std::string version;
    std::string timestamp; // ISO-8601 UTC

    std::string to_line() const;
    /// Parses one data line; throws std::invalid_argument on malformed input.
    static CacheEntry from_line(const std::string& line);
    /// Throws std::invalid_argument unless the entry is internally consistent.
    void validate() const;
};

std::string iso_timestamp_now();

class ResultCache {
public:
    /// Loads `path` if it exists. A file with a foreign header is refused.
    explicit ResultCache(std::filesystem::path path);

    static std::filesystem::path default_path();

    const std::filesystem::path& path() const noexcept { return path_; }
    std::optional<CacheEntry> find(const std::string& group, int k) const;
    /// Entries whose tool version has the same major number as `version`.
    std::optional<CacheEntry> find_compatible(const std::string& group, int k, const std::string& version) const;
    /// Validates, appends to the file under an exclusive lock, and keeps it in memory.
    void put(const CacheEntry& entry);

    std::size_t size() const;
    /// Descriptions of lines rejected while loading.
    const std::vector<std::string>& rejected() const noexcept { return rejected_; }

private:
    std::filesystem::path path_;
    mutable std::mutex mutex_;
    std::map<std::pair<std::string, int>, CacheEntry> entries_;
    std::vector<std::string> rejected_;
};

} // namespace bary
