#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <string>
#include <string_view>

#include "hciz/errors.hpp"

namespace hciz {

// Exact coefficient arithmetic.  GMP-backed rationals are kept in canonical
// form (lowest terms, denominator > 0) by every arithmetic operation.
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline Int factorial(long n) {
    if (n < 0) throw domain_error("factorial of negative integer");
    Int r = 1;
    for (long k = 2; k <= n; ++k) r *= k;
    return r;
}

inline Int binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Int r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline Rational scale(const Rational& c, const Rational& s) { return c * s; }

// Canonical text form "p/q", with "/q" omitted when q = 1.
inline std::string rational_str(const Rational& r) {
    if (is_integer(r)) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational rational_from_string(std::string_view s) {
    auto bad = [&] { throw domain_error("malformed rational: '" + std::string(s) + "'"); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Rational(Int(std::string(s)));
        }
        Int num{std::string(s.substr(0, slash))};
        Int den{std::string(s.substr(slash + 1))};
        if (den == 0) bad();
        return Rational(num, den);  // canonicalizes sign and gcd
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rational();  // unreachable
}

}  // namespace hciz
