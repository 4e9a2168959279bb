#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hciz/planar_enum.hpp"
#include "hciz/polynomial.hpp"

namespace hciz {

inline constexpr const char* kCacheVersion = "fcache-v1";

// One cached free-energy order: the graded polynomial F_n together with the
// method that produced it.  Serialized as one line of JSON with string
// rationals and canonically ordered monomial keys, so store/load round-trips
// byte for byte.
struct CacheRecord {
    std::string version = kCacheVersion;
    int order = 0;
    std::string method;  // "enum" or "oracle"
    QPoly poly;
    std::string timestamp;
    std::string revision;

    std::string to_line() const;  // canonical JSON, no trailing newline
    static CacheRecord parse_line(const std::string& line, std::size_t byte_offset);
};

// Line-delimited record store with advisory file locking for writers.
class CoefficientCache {
public:
    // Missing file loads as an empty cache; malformed content raises
    // cache_error naming the byte offset.
    static CoefficientCache load(const std::string& path);

    const CacheRecord* find(int order, const std::string& method) const;
    const std::map<std::pair<int, std::string>, CacheRecord>& records() const {
        return records_;
    }

    // Appends under an exclusive flock and updates the in-memory view.
    void append(const std::string& path, const CacheRecord& rec);

    // Single-writer append of several records: holds one exclusive lock,
    // re-reads the file under it and only writes records whose
    // (order, method) slot is still vacant.  Returns the records as stored.
    std::vector<CacheRecord> append_missing(const std::string& path,
                                            const std::vector<CacheRecord>& recs);

private:
    std::map<std::pair<int, std::string>, CacheRecord> records_;
};

// Compute F_1..F_order by the given method, reusing cached records when the
// path is nonempty and recording new ones.  Whenever both methods' records
// exist for an order they must agree exactly; a mismatch raises
// crosscheck_error with a per-monomial diff.
std::vector<CacheRecord> compute_and_cache(int order, const std::string& method,
                                           const std::string& cache_path,
                                           const EnumOptions& opts = {});

}  // namespace hciz
