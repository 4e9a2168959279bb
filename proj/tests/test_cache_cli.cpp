#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "hciz/coefficient_cache.hpp"
#include "hciz/errors.hpp"

using namespace hciz;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) {
        path = std::string("hciz_test_") + name + "_" + std::to_string(::getpid()) + ".jsonl";
        std::remove(path.c_str());
    }
    ~TempFile() { std::remove(path.c_str()); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

int run_cli(const std::string& args) {
    const char* bin = std::getenv("HCIZ_BIN");
    if (!bin) return -1;
    int rc = std::system((std::string(bin) + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("record serialization round trip") {
    CacheRecord rec;
    rec.order = 2;
    rec.method = "enum";
    rec.poly.add_term(Monomial::theta(2) * Monomial::thetabar(2), Rational(1, 2));
    rec.poly.add_term(Monomial::theta(1, 2) * Monomial::thetabar(2), Rational(-1, 2));
    rec.timestamp = "2026-01-01T00:00:00Z";
    rec.revision = "hciz test";
    std::string line = rec.to_line();
    CacheRecord back = CacheRecord::parse_line(line, 0);
    CHECK(back.poly == rec.poly);
    CHECK(back.to_line() == line);  // byte-identical reserialization
}

TEST_CASE("compute, cache, reload") {
    TempFile tmp("cache");
    auto recs = compute_and_cache(2, "enum", tmp.path);
    REQUIRE(recs.size() == 2);

    // order 1 record is exactly { theta_1 thetabar_1 : 1 }
    QPoly f1(Monomial::theta(1) * Monomial::thetabar(1), Rational(1));
    CHECK(recs[0].poly == f1);

    // repeated call returns identical bytes from the cache
    std::string bytes_before = slurp(tmp.path);
    auto again = compute_and_cache(2, "enum", tmp.path);
    CHECK(again[0].to_line() == recs[0].to_line());
    CHECK(again[1].to_line() == recs[1].to_line());
    CHECK(slurp(tmp.path) == bytes_before);

    // the other method cross-checks cleanly and appends its own records
    auto oracle_recs = compute_and_cache(2, "oracle", tmp.path);
    CHECK(oracle_recs[1].poly == recs[1].poly);
    CoefficientCache cache = CoefficientCache::load(tmp.path);
    CHECK(cache.records().size() == 4);
}

TEST_CASE("cross-check failure is loud") {
    TempFile tmp("mismatch");
    // poison the cache with a wrong oracle record for order 1
    CacheRecord bad;
    bad.order = 1;
    bad.method = "oracle";
    bad.poly.add_term(Monomial::theta(1) * Monomial::thetabar(1), Rational(2));
    bad.timestamp = "2026-01-01T00:00:00Z";
    bad.revision = "hciz test";
    {
        std::ofstream out(tmp.path, std::ios::binary);
        out << bad.to_line() << "\n";
    }
    CHECK_THROWS_AS(compute_and_cache(1, "enum", tmp.path), crosscheck_error);
}

TEST_CASE("corrupt cache files raise format errors with offsets") {
    TempFile tmp("corrupt");
    {
        std::ofstream out(tmp.path, std::ios::binary);
        out << "{\"version\":\"fcache-v1\",\"order\":1,\"method\":\"enum\",\"coeffs\":{},"
            << "\"timestamp\":\"t\",\"revision\":\"r\"}\n";
        out << "this is not json\n";
    }
    try {
        CoefficientCache::load(tmp.path);
        FAIL("expected cache_error");
    } catch (const cache_error& e) {
        std::string msg = e.what();
        CHECK(msg.find("byte") != std::string::npos);
    }

    // truncated last line (no newline)
    TempFile tmp2("truncated");
    {
        std::ofstream out(tmp2.path, std::ios::binary);
        out << "{\"version\":\"fcache-v1\",\"order\":1,\"method\":\"enum\"";
    }
    CHECK_THROWS_AS(CoefficientCache::load(tmp2.path), cache_error);

    // wrong version
    TempFile tmp3("version");
    {
        std::ofstream out(tmp3.path, std::ios::binary);
        out << "{\"version\":\"fcache-v0\",\"order\":1,\"method\":\"enum\",\"coeffs\":{},"
            << "\"timestamp\":\"t\",\"revision\":\"r\"}\n";
    }
    CHECK_THROWS_AS(CoefficientCache::load(tmp3.path), cache_error);

    // ungraded polynomial
    TempFile tmp4("ungraded");
    {
        std::ofstream out(tmp4.path, std::ios::binary);
        out << "{\"version\":\"fcache-v1\",\"order\":2,\"method\":\"enum\","
            << "\"coeffs\":{\"t1^1|tb1^1\":\"1\"},\"timestamp\":\"t\",\"revision\":\"r\"}\n";
    }
    CHECK_THROWS_AS(CoefficientCache::load(tmp4.path), cache_error);

    // absent file is just an empty cache
    CHECK(CoefficientCache::load("does_not_exist.jsonl").records().empty());
}

TEST_CASE("cli exit codes" * doctest::skip(std::getenv("HCIZ_BIN") == nullptr)) {
    CHECK(run_cli("eval --a 0,1 --b 0,1 --s 2") == 0);
    CHECK(run_cli("eval --a 0,1 --b 0 --s 2") == 2);          // length mismatch
    CHECK(run_cli("eval --a 0,1 --b 0,1 --s -1") == 2);       // bad coupling
    CHECK(run_cli("eval --a 0,1 --b 0,1 --s 1e-300") == 3);   // beyond double range
    CHECK(run_cli("eval-rect --n1 2 --n2 1 --a 1 --b 1 --s 1") == 0);
    CHECK(run_cli("eval-chain --sizes 2,2,2 --a 0.5,1 --b 0.25,2 --s 1") == 0);
    CHECK(run_cli("toda-check --n 2 --order 5 --times t1=1/3,tb1=1/5") == 0);
    CHECK(run_cli("mc --n 2 --a 0,1 --b 0,1 --s 2 --samples 1000 --seed 1") == 0);
    CHECK(run_cli("mc --n1 2 --n2 1 --a 1 --b 1 --s 1 --samples 1000 --seed 1") == 0);
    CHECK(run_cli("cumulants --moments 1/2,1/3 --q 4") == 0);
    CHECK(run_cli("dispersionless --case diagonal --n 2 --order 6") == 0);
    CHECK(run_cli("free-energy --order 2 --method enum --format json") == 0);

    TempFile tmp("cli_corrupt");
    {
        std::ofstream out(tmp.path, std::ios::binary);
        out << "garbage\n";
    }
    CHECK(run_cli("free-energy --order 1 --method enum --cache " + tmp.path) == 4);

    TempFile tmp2("cli_mismatch");
    {
        CacheRecord bad;
        bad.order = 1;
        bad.method = "oracle";
        bad.poly.add_term(Monomial::theta(1) * Monomial::thetabar(1), Rational(2));
        bad.timestamp = "2026-01-01T00:00:00Z";
        bad.revision = "hciz test";
        std::ofstream out(tmp2.path, std::ios::binary);
        out << bad.to_line() << "\n";
    }
    CHECK(run_cli("free-energy --order 1 --method enum --cache " + tmp2.path) == 5);
}
