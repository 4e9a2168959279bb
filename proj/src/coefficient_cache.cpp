#include "hciz/coefficient_cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include "hciz/character_series.hpp"
#include "hciz/errors.hpp"
#include "json.hpp"

namespace hciz {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string utc_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm_utc;
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string default_revision() { return std::string("hciz ") + HCIZ_VERSION; }

[[noreturn]] void fail_at(std::size_t offset, const std::string& what) {
    throw cache_error("cache format error at byte " + std::to_string(offset) + ": " + what);
}

}  // namespace

std::string CacheRecord::to_line() const {
    ordered_json j;
    j["version"] = version;
    j["order"] = order;
    j["method"] = method;
    ordered_json coeffs = ordered_json::object();
    for (const auto& [m, c] : poly.terms()) coeffs[m.str()] = rational_str(c);
    j["coeffs"] = std::move(coeffs);
    j["timestamp"] = timestamp;
    j["revision"] = revision;
    return j.dump();
}

CacheRecord CacheRecord::parse_line(const std::string& line, std::size_t byte_offset) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        fail_at(byte_offset + (e.byte > 0 ? e.byte - 1 : 0), e.what());
    }
    if (!j.is_object()) fail_at(byte_offset, "record is not a JSON object");
    for (const char* key : {"version", "order", "method", "coeffs", "timestamp", "revision"})
        if (!j.contains(key)) fail_at(byte_offset, std::string("missing key '") + key + "'");

    CacheRecord r;
    try {
        r.version = j["version"].get<std::string>();
        r.order = j["order"].get<int>();
        r.method = j["method"].get<std::string>();
        r.timestamp = j["timestamp"].get<std::string>();
        r.revision = j["revision"].get<std::string>();
        for (const auto& [key, val] : j["coeffs"].items())
            r.poly.add_term(Monomial::parse(key), rational_from_string(val.get<std::string>()));
    } catch (const cache_error&) {
        throw;
    } catch (const std::exception& e) {
        fail_at(byte_offset, e.what());
    }
    if (r.version != kCacheVersion)
        fail_at(byte_offset, "incompatible cache version '" + r.version + "'");
    if (r.order < 1) fail_at(byte_offset, "order must be >= 1");
    if (r.method != "enum" && r.method != "oracle")
        fail_at(byte_offset, "unknown method '" + r.method + "'");
    if (!r.poly.is_graded(r.order))
        fail_at(byte_offset, "stored polynomial is not graded at order " +
                                 std::to_string(r.order));
    return r;
}

CoefficientCache CoefficientCache::load(const std::string& path) {
    CoefficientCache cache;
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) return cache;  // absent file = empty cache

    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    while (pos < content.size()) {
        std::size_t eol = content.find('\n', pos);
        if (eol == std::string::npos)
            fail_at(pos, "truncated record (missing trailing newline)");
        std::string line = content.substr(pos, eol - pos);
        if (!line.empty()) {
            CacheRecord rec = CacheRecord::parse_line(line, pos);
            auto key = std::make_pair(rec.order, rec.method);
            if (cache.records_.count(key))
                fail_at(pos, "duplicate record for order " + std::to_string(rec.order) +
                                 ", method " + rec.method);
            cache.records_.emplace(key, std::move(rec));
        }
        pos = eol + 1;
    }
    return cache;
}

const CacheRecord* CoefficientCache::find(int order, const std::string& method) const {
    auto it = records_.find({order, method});
    return it == records_.end() ? nullptr : &it->second;
}

void CoefficientCache::append(const std::string& path, const CacheRecord& rec) {
    append_missing(path, {rec});
}

std::vector<CacheRecord> CoefficientCache::append_missing(const std::string& path,
                                                          const std::vector<CacheRecord>& recs) {
    int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
    if (fd < 0) throw cache_error("cannot open cache '" + path + "': " + std::strerror(errno));
    if (::flock(fd, LOCK_EX) != 0) {
        ::close(fd);
        throw cache_error("cannot lock cache '" + path + "'");
    }
    std::vector<CacheRecord> stored;
    try {
        // another writer may have appended since our load; refresh under the lock
        *this = load(path);
        for (const CacheRecord& rec : recs) {
            if (const CacheRecord* hit = find(rec.order, rec.method)) {
                stored.push_back(*hit);
                continue;
            }
            std::string line = rec.to_line() + "\n";
            if (::write(fd, line.data(), line.size()) != static_cast<ssize_t>(line.size()))
                throw cache_error("short write to cache '" + path + "'");
            records_[{rec.order, rec.method}] = rec;
            stored.push_back(rec);
        }
    } catch (...) {
        ::flock(fd, LOCK_UN);
        ::close(fd);
        throw;
    }
    ::flock(fd, LOCK_UN);
    ::close(fd);
    return stored;
}

std::vector<CacheRecord> compute_and_cache(int order, const std::string& method,
                                           const std::string& cache_path,
                                           const EnumOptions& opts) {
    if (order < 1) throw domain_error("order must be >= 1");
    if (method != "enum" && method != "oracle")
        throw domain_error("method must be 'enum' or 'oracle'");

    CoefficientCache cache;
    if (!cache_path.empty()) cache = CoefficientCache::load(cache_path);

    bool all_cached = true;
    for (int n = 1; n <= order; ++n)
        if (!cache.find(n, method)) all_cached = false;

    std::vector<QPoly> fresh;
    if (!all_cached)
        fresh = method == "enum" ? free_energy_enum(order, opts) : free_energy_oracle(order);

    // store every missing order in one single-writer pass
    if (!all_cached && !cache_path.empty()) {
        std::vector<CacheRecord> missing;
        for (int n = 1; n <= order; ++n) {
            if (cache.find(n, method)) continue;
            CacheRecord rec;
            rec.order = n;
            rec.method = method;
            rec.poly = fresh[static_cast<size_t>(n - 1)];
            rec.timestamp = utc_now();
            rec.revision = default_revision();
            missing.push_back(std::move(rec));
        }
        cache.append_missing(cache_path, missing);
    }

    std::vector<CacheRecord> out;
    for (int n = 1; n <= order; ++n) {
        const CacheRecord* hit = cache.find(n, method);
        CacheRecord rec;
        if (hit) {
            rec = *hit;
        } else {
            rec.order = n;
            rec.method = method;
            rec.poly = fresh[static_cast<size_t>(n - 1)];
            rec.timestamp = utc_now();
            rec.revision = default_revision();
        }
        // cross-method agreement whenever the other record exists
        const std::string other = method == "enum" ? "oracle" : "enum";
        if (const CacheRecord* o = cache.find(n, other); o && !(o->poly == rec.poly)) {
            std::ostringstream diff;
            diff << "method cross-check failed at order " << n << ":";
            for (const auto& [m, c] : rec.poly.terms()) {
                Rational oc = o->poly.coeff(m);
                if (!(oc == c))
                    diff << "\n  " << m.str() << ": " << method << "=" << rational_str(c)
                         << " " << other << "=" << rational_str(oc);
            }
            for (const auto& [m, c] : o->poly.terms())
                if (is_zero(rec.poly.coeff(m)))
                    diff << "\n  " << m.str() << ": " << method << "=0 " << other << "="
                         << rational_str(c);
            throw crosscheck_error(diff.str());
        }
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace hciz
