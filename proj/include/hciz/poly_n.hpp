#pragma once

#include <initializer_list>
#include <map>
#include <vector>

#include "hciz/rational.hpp"

namespace hciz {

// Dense univariate polynomial over the rationals, used for the formal matrix
// size N.  Coefficient k is the coefficient of N^k; trailing zeros are never
// stored, so the zero polynomial has an empty coefficient vector.
class PolyQ {
public:
    PolyQ() = default;
    PolyQ(const Rational& c) {
        if (c != 0) c_.push_back(c);
    }
    PolyQ(long c) : PolyQ(Rational(c)) {}
    explicit PolyQ(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static PolyQ variable() { return PolyQ(std::vector<Rational>{0, 1}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    Rational coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rational(0);
    }
    const Rational& leading() const {
        if (is_zero()) throw internal_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    friend PolyQ operator+(const PolyQ& a, const PolyQ& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return PolyQ(std::move(r));
    }
    friend PolyQ operator-(const PolyQ& a, const PolyQ& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return PolyQ(std::move(r));
    }
    PolyQ operator-() const {
        std::vector<Rational> r = c_;
        for (auto& x : r) x = -x;
        return PolyQ(std::move(r));
    }
    friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
        if (a.is_zero() || b.is_zero()) return PolyQ();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return PolyQ(std::move(r));
    }
    friend PolyQ operator*(const PolyQ& a, const Rational& s) {
        if (s == 0) return PolyQ();
        std::vector<Rational> r = a.c_;
        for (auto& x : r) x *= s;
        return PolyQ(std::move(r));
    }
    friend PolyQ operator*(const Rational& s, const PolyQ& a) { return a * s; }
    PolyQ& operator+=(const PolyQ& o) { return *this = *this + o; }
    PolyQ& operator-=(const PolyQ& o) { return *this = *this - o; }
    PolyQ& operator*=(const PolyQ& o) { return *this = *this * o; }

    friend bool operator==(const PolyQ& a, const PolyQ& b) { return a.c_ == b.c_; }

    // Euclidean division; denominator must be nonzero.
    friend std::pair<PolyQ, PolyQ> divmod(PolyQ a, const PolyQ& b) {
        if (b.is_zero()) throw domain_error("polynomial division by zero");
        std::vector<Rational> q(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0,
                                Rational(0));
        while (!a.is_zero() && a.degree() >= b.degree()) {
            Rational f = a.leading() / b.leading();
            int shift = a.degree() - b.degree();
            q[shift] = f;
            std::vector<Rational> r = a.c_;
            for (int i = 0; i <= b.degree(); ++i) r[i + shift] -= f * b.c_[i];
            r.pop_back();  // leading term cancels exactly
            a = PolyQ(std::move(r));
        }
        return {PolyQ(std::move(q)), a};
    }

    PolyQ monic() const {
        if (is_zero()) return *this;
        return *this * (Rational(1) / leading());
    }

    // Monic gcd via the Euclidean algorithm (normalizing every remainder
    // keeps the rational coefficients tame at these degrees).
    static PolyQ gcd(PolyQ a, PolyQ b) {
        a = a.monic();
        b = b.monic();
        while (!b.is_zero()) {
            PolyQ r = divmod(a, b).second.monic();
            a = b;
            b = r;
        }
        return a;
    }

    Rational eval(const Rational& x) const {
        Rational r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }

    std::string str(const char* var = "N") const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            if (c_[k] == 0) continue;
            if (!out.empty()) out += c_[k] > 0 ? " + " : " - ";
            else if (c_[k] < 0) out += "-";
            Rational mag = abs(c_[k]);
            bool unit = (mag == 1 && k > 0);
            if (!unit) out += rational_str(mag);
            if (k > 0) {
                if (!unit) out += "*";
                out += var;
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

// Rational function of the formal size N.  Canonical form: gcd(num, den) = 1
// and den monic, so equality is plain member comparison.
class RatN {
public:
    RatN() : num_(), den_(Rational(1)) {}
    RatN(const Rational& c) : num_(c), den_(Rational(1)) {}
    RatN(long c) : num_(Rational(c)), den_(Rational(1)) {}
    RatN(PolyQ num) : num_(std::move(num)), den_(Rational(1)) {}
    RatN(PolyQ num, PolyQ den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static RatN variable() { return RatN(PolyQ::variable()); }

    bool is_zero() const { return num_.is_zero(); }
    const PolyQ& num() const { return num_; }
    const PolyQ& den() const { return den_; }
    bool is_polynomial() const { return den_.degree() == 0; }

    friend RatN operator+(const RatN& a, const RatN& b) {
        return RatN(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatN operator-(const RatN& a, const RatN& b) {
        return RatN(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    RatN operator-() const {
        RatN r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatN operator*(const RatN& a, const RatN& b) {
        return RatN(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatN operator*(const RatN& a, const Rational& s) { return RatN(a.num_ * s, a.den_); }
    friend RatN operator*(const Rational& s, const RatN& a) { return a * s; }
    friend RatN operator/(const RatN& a, const RatN& b) {
        if (b.is_zero()) throw domain_error("division by zero rational function");
        return RatN(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatN& operator+=(const RatN& o) { return *this = *this + o; }
    RatN& operator-=(const RatN& o) { return *this = *this - o; }
    RatN& operator*=(const RatN& o) { return *this = *this * o; }

    friend bool operator==(const RatN& a, const RatN& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    Rational eval(const Rational& x) const {
        Rational d = den_.eval(x);
        if (d == 0) throw domain_error("rational function evaluated at a pole");
        return num_.eval(x) / d;
    }

    // Degree of the leading behaviour at N -> infinity: deg num - deg den.
    int degree_at_infinity() const {
        if (is_zero()) throw internal_error("degree_at_infinity of zero");
        return num_.degree() - den_.degree();
    }

    // Expansion at N = infinity: num/den = sum_{k <= d} e_k N^k, returned for
    // k = d down to `low`.  Exact: reverse both polynomials and divide the
    // resulting power series in 1/N.
    std::map<int, Rational> expand_at_infinity(int low) const {
        std::map<int, Rational> out;
        if (is_zero()) return out;
        int d = degree_at_infinity();
        if (low > d) return out;
        int terms = d - low + 1;
        // reversed coefficients: r[k] = coeff of x^k in x^deg * p(1/x)
        auto reversed = [](const PolyQ& p, int terms) {
            std::vector<Rational> r(terms, Rational(0));
            for (int k = 0; k < terms; ++k) r[k] = p.coeff(p.degree() - k);
            return r;
        };
        std::vector<Rational> pn = reversed(num_, terms), pd = reversed(den_, terms);
        // series division pn/pd mod x^terms; pd[0] = leading(den) != 0
        std::vector<Rational> q(terms, Rational(0));
        for (int k = 0; k < terms; ++k) {
            Rational acc = pn[k];
            for (int j = 1; j <= k; ++j) acc -= pd[j] * q[k - j];
            q[k] = acc / pd[0];
        }
        for (int k = 0; k < terms; ++k)
            if (q[k] != 0) out[d - k] = q[k];
        return out;
    }

    // Coefficient of N^k in the expansion at infinity (0 when k exceeds the
    // top degree); throws internal_error if the function blows up faster
    // than N^max_expected.
    Rational infinity_coeff(int k, int max_expected) const {
        if (is_zero()) return Rational(0);
        int d = degree_at_infinity();
        if (d > max_expected)
            throw internal_error("rational function grows like N^" + std::to_string(d) +
                                 ", expected at most N^" + std::to_string(max_expected));
        if (k > d) return Rational(0);
        auto e = expand_at_infinity(k);
        auto it = e.find(k);
        return it == e.end() ? Rational(0) : it->second;
    }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void normalize() {
        if (den_.is_zero()) throw domain_error("zero denominator in rational function");
        if (num_.is_zero()) {
            den_ = PolyQ(Rational(1));
            return;
        }
        PolyQ g = PolyQ::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
        Rational lc = den_.leading();
        if (lc != 1) {
            Rational inv = Rational(1) / lc;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }
    PolyQ num_, den_;
};

inline bool is_zero(const Rational& x) { return x == 0; }
inline bool is_zero(const RatN& x) { return x.is_zero(); }
inline RatN scale(const RatN& c, const Rational& s) { return c * s; }

}  // namespace hciz
