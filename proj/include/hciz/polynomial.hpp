#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hciz/poly_n.hpp"
#include "hciz/rational.hpp"

namespace hciz {

// Monomial in the moment alphabet theta_p (a side) and thetabar_q (b side).
// a[i] is the exponent of theta_{i+1}; trailing zeros are trimmed so the key
// is canonical.  Text form: "t2^1*t3^2|tb1^1" with the empty product on
// either side of '|' left blank.
struct Monomial {
    std::vector<int> a, b;

    static Monomial one() { return {}; }
    static Monomial theta(int p, int e = 1) {
        Monomial m;
        if (p < 1) throw domain_error("theta index must be >= 1");
        if (e > 0) {
            m.a.assign(p, 0);
            m.a[p - 1] = e;
        }
        return m;
    }
    static Monomial thetabar(int q, int e = 1) {
        Monomial m;
        if (q < 1) throw domain_error("thetabar index must be >= 1");
        if (e > 0) {
            m.b.assign(q, 0);
            m.b[q - 1] = e;
        }
        return m;
    }

    int a_weight() const {
        int w = 0;
        for (size_t i = 0; i < a.size(); ++i) w += static_cast<int>(i + 1) * a[i];
        return w;
    }
    int b_weight() const {
        int w = 0;
        for (size_t i = 0; i < b.size(); ++i) w += static_cast<int>(i + 1) * b[i];
        return w;
    }
    int total_degree() const {
        int d = 0;
        for (int e : a) d += e;
        for (int e : b) d += e;
        return d;
    }
    bool is_one() const { return a.empty() && b.empty(); }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        r.a.resize(std::max(a.size(), o.a.size()), 0);
        r.b.resize(std::max(b.size(), o.b.size()), 0);
        for (size_t i = 0; i < a.size(); ++i) r.a[i] += a[i];
        for (size_t i = 0; i < o.a.size(); ++i) r.a[i] += o.a[i];
        for (size_t i = 0; i < b.size(); ++i) r.b[i] += b[i];
        for (size_t i = 0; i < o.b.size(); ++i) r.b[i] += o.b[i];
        r.trim();
        return r;
    }

    void trim() {
        while (!a.empty() && a.back() == 0) a.pop_back();
        while (!b.empty() && b.back() == 0) b.pop_back();
    }

    friend bool operator==(const Monomial& x, const Monomial& y) {
        return x.a == y.a && x.b == y.b;
    }

    // Graded-lexicographic canonical order: total weight, then a-weight,
    // then lexicographic exponent comparison (a side, then b side).
    friend bool operator<(const Monomial& x, const Monomial& y) {
        int wx = x.a_weight() + x.b_weight(), wy = y.a_weight() + y.b_weight();
        if (wx != wy) return wx < wy;
        int ax = x.a_weight(), ay = y.a_weight();
        if (ax != ay) return ax < ay;
        if (x.a != y.a) return lex_less(x.a, y.a);
        return lex_less(x.b, y.b);
    }

    std::string str() const {
        auto side = [](const std::vector<int>& e, const char* name) {
            std::string s;
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!s.empty()) s += "*";
                s += name + std::to_string(i + 1) + "^" + std::to_string(e[i]);
            }
            return s;
        };
        return side(a, "t") + "|" + side(b, "tb");
    }

    static Monomial parse(std::string_view s) {
        auto bar = s.find('|');
        if (bar == std::string_view::npos)
            throw domain_error("malformed monomial key (missing '|'): '" + std::string(s) + "'");
        Monomial m;
        parse_side(s.substr(0, bar), "t", m.a);
        parse_side(s.substr(bar + 1), "tb", m.b);
        m.trim();
        return m;
    }

private:
    static bool lex_less(const std::vector<int>& x, const std::vector<int>& y) {
        size_t n = std::max(x.size(), y.size());
        for (size_t i = 0; i < n; ++i) {
            int xi = i < x.size() ? x[i] : 0;
            int yi = i < y.size() ? y[i] : 0;
            if (xi != yi) return xi < yi;
        }
        return false;
    }
    static void parse_side(std::string_view s, std::string_view name, std::vector<int>& out) {
        size_t pos = 0;
        while (pos < s.size()) {
            size_t end = s.find('*', pos);
            if (end == std::string_view::npos) end = s.size();
            std::string_view f = s.substr(pos, end - pos);
            auto caret = f.find('^');
            if (f.substr(0, name.size()) != name || caret == std::string_view::npos)
                throw domain_error("malformed monomial factor: '" + std::string(f) + "'");
            int idx = std::stoi(std::string(f.substr(name.size(), caret - name.size())));
            int exp = std::stoi(std::string(f.substr(caret + 1)));
            if (idx < 1 || exp < 1) throw domain_error("malformed monomial factor: '" + std::string(f) + "'");
            if (static_cast<size_t>(idx) > out.size()) out.resize(idx, 0);
            out[idx - 1] += exp;
            pos = end + (end < s.size() ? 1 : 0);
        }
    }
};

// Multivariate polynomial in the moment alphabet with coefficients in C
// (Rational for tabulated free energies, RatN for the formal-N series).
// Zero coefficients are never stored; iteration order is the canonical
// monomial order, which makes serialization deterministic.
template <typename C>
class Polynomial {
public:
    using Terms = std::map<Monomial, C>;

    Polynomial() = default;
    explicit Polynomial(const C& c) {
        if (!is_zero(c)) terms_[Monomial::one()] = c;
    }
    Polynomial(const Monomial& m, const C& c) {
        if (!is_zero(c)) terms_[m] = c;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero_poly() const { return terms_.empty(); }
    size_t num_terms() const { return terms_.size(); }

    C coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? C() : it->second;
    }

    void add_term(const Monomial& m, const C& c) {
        if (is_zero(c)) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (is_zero(it->second)) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, negate_coeff(c));
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    Polynomial operator-() const {
        Polynomial r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, negate_coeff(c));
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const C& s) {
        Polynomial r;
        if (is_zero(s)) return r;
        for (const auto& [m, c] : a.terms_) r.add_term(m, c * s);
        return r;
    }
    friend Polynomial operator*(const C& s, const Polynomial& a) { return a * s; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    // Scalar action of Rational on any coefficient ring (used by series log).
    Polynomial scaled(const Rational& s) const {
        Polynomial r;
        if (s == 0) return r;
        for (const auto& [m, c] : terms_) r.add_term(m, c * s);
        return r;
    }

    friend bool operator==(const Polynomial& x, const Polynomial& y) {
        return x.terms_ == y.terms_;
    }

    // True when every monomial has a-weight = b-weight = n.
    bool is_graded(int n) const {
        for (const auto& [m, c] : terms_)
            if (m.a_weight() != n || m.b_weight() != n) return false;
        return true;
    }

    template <typename D, typename F>
    Polynomial<D> map_coeffs(F&& f) const {
        Polynomial<D> r;
        for (const auto& [m, c] : terms_) r.add_term(m, f(c));
        return r;
    }

    Polynomial swap_ab() const {
        Polynomial r;
        for (const auto& [m, c] : terms_) {
            Monomial s;
            s.a = m.b;
            s.b = m.a;
            r.add_term(s, c);
        }
        return r;
    }

    // Substitute theta_p -> images_a(p), thetabar_q -> images_b(q).
    Polynomial substitute(const std::function<Polynomial(int)>& images_a,
                          const std::function<Polynomial(int)>& images_b) const {
        Polynomial out;
        for (const auto& [m, c] : terms_) {
            Polynomial prod(c);
            for (size_t i = 0; i < m.a.size(); ++i)
                for (int e = 0; e < m.a[i]; ++e) prod *= images_a(static_cast<int>(i + 1));
            for (size_t i = 0; i < m.b.size(); ++i)
                for (int e = 0; e < m.b[i]; ++e) prod *= images_b(static_cast<int>(i + 1));
            out += prod;
        }
        return out;
    }

    // Evaluation homomorphism; missing values are treated as zero.
    C eval(const std::vector<C>& theta_vals, const std::vector<C>& thetabar_vals) const {
        C total{};
        for (const auto& [m, c] : terms_) {
            C term = c;
            bool dead = false;
            auto apply = [&](const std::vector<int>& exps, const std::vector<C>& vals) {
                for (size_t i = 0; i < exps.size() && !dead; ++i) {
                    for (int e = 0; e < exps[i]; ++e) {
                        if (i >= vals.size() || is_zero(vals[i])) {
                            dead = true;
                            break;
                        }
                        term = term * vals[i];
                    }
                }
            };
            apply(m.a, theta_vals);
            apply(m.b, thetabar_vals);
            if (!dead) total += term;
        }
        return total;
    }

    // d/d theta_p (bar = false) or d/d thetabar_p (bar = true).
    Polynomial derivative(int p, bool bar) const {
        Polynomial r;
        for (const auto& [m, c] : terms_) {
            const std::vector<int>& e = bar ? m.b : m.a;
            if (static_cast<size_t>(p) > e.size() || e[p - 1] == 0) continue;
            Monomial d = m;
            std::vector<int>& de = bar ? d.b : d.a;
            int k = de[p - 1]--;
            d.trim();
            r.add_term(d, c * Rational(k));
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + coeff_str(c) + ")";
            if (!m.is_one()) out += "*" + m.str();
        }
        return out;
    }

private:
    static C negate_coeff(const C& c) { return C() - c; }
    static std::string coeff_str(const Rational& c) { return rational_str(c); }
    static std::string coeff_str(const RatN& c) { return c.str(); }
    Terms terms_;
};

using QPoly = Polynomial<Rational>;
using NPoly = Polynomial<RatN>;

template <typename C>
inline bool is_zero(const Polynomial<C>& p) {
    return p.is_zero_poly();
}

template <typename C>
inline Polynomial<C> scale(const Polynomial<C>& p, const Rational& s) {
    return p.scaled(s);
}

}  // namespace hciz
