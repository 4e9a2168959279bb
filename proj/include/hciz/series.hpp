#pragma once

#include <vector>

#include "hciz/polynomial.hpp"
#include "hciz/rational.hpp"

namespace hciz {

// Truncated formal power series in one expansion variable (1/s for the
// character series, 1/hbar for tau functions).  Coefficients are indexed
// 0..order and arithmetic never reads beyond the truncation order; binary
// operations return a series truncated at the smaller of the two orders.
template <typename C>
class TruncatedSeries {
public:
    enum class Var { inv_s, inv_hbar };

    explicit TruncatedSeries(int order, Var var = Var::inv_s)
        : var_(var), c_(static_cast<size_t>(order) + 1) {
        if (order < 0) throw domain_error("series truncation order must be >= 0");
    }

    static TruncatedSeries constant(const C& c0, int order, Var var = Var::inv_s) {
        TruncatedSeries s(order, var);
        s.c_[0] = c0;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    Var var() const { return var_; }
    C& operator[](int k) { return c_.at(static_cast<size_t>(k)); }
    const C& operator[](int k) const { return c_.at(static_cast<size_t>(k)); }

    // Index of the first nonzero coefficient; order()+1 if all stored
    // coefficients vanish.
    int valuation() const {
        for (int k = 0; k <= order(); ++k)
            if (!is_zero(c_[k])) return k;
        return order() + 1;
    }
    bool is_zero_series() const { return valuation() > order(); }

    TruncatedSeries truncated(int new_order) const {
        if (new_order > order()) throw internal_error("cannot extend series knowledge");
        TruncatedSeries r(new_order, var_);
        for (int k = 0; k <= new_order; ++k) r.c_[k] = c_[k];
        return r;
    }

    // Multiply by the monomial x^k (exact; raises all known orders by k).
    TruncatedSeries shifted_up(int k) const {
        TruncatedSeries r(order() + k, var_);
        for (int i = 0; i <= order(); ++i) r.c_[i + k] = c_[i];
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()), a.var_);
        for (int k = 0; k <= r.order(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()), a.var_);
        for (int k = 0; k <= r.order(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
        return r;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries r(std::min(a.order(), b.order()), a.var_);
        for (int i = 0; i <= r.order(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (int j = 0; i + j <= r.order(); ++j) {
                if (is_zero(b.c_[j])) continue;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }
    friend TruncatedSeries operator*(const TruncatedSeries& a, const C& s) {
        TruncatedSeries r(a.order(), a.var_);
        for (int k = 0; k <= a.order(); ++k) r.c_[k] = a.c_[k] * s;
        return r;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.c_ == b.c_;
    }

private:
    Var var_;
    std::vector<C> c_;
};

// log of a series with constant term 1, via the derivative recurrence
//   n y_n = n x_n - sum_{k=1}^{n-1} k y_k x_{n-k}.
template <typename C>
TruncatedSeries<C> series_log(const TruncatedSeries<C>& x) {
    if (!(x[0] == C(Rational(1))))
        throw domain_error("series_log requires constant term 1");
    TruncatedSeries<C> y(x.order(), x.var());
    for (int n = 1; n <= x.order(); ++n) {
        C acc = x[n];
        for (int k = 1; k < n; ++k) acc -= scale(y[k] * x[n - k], Rational(k, n));
        y[n] = acc;
    }
    return y;
}

// exp of a series with zero constant term:
//   n y_n = sum_{k=1}^{n} k u_k y_{n-k},  y_0 = 1.
template <typename C>
TruncatedSeries<C> series_exp(const TruncatedSeries<C>& u) {
    if (!is_zero(u[0])) throw domain_error("series_exp requires zero constant term");
    TruncatedSeries<C> y(u.order(), u.var());
    y[0] = C(Rational(1));
    for (int n = 1; n <= u.order(); ++n) {
        C acc{};
        for (int k = 1; k <= n; ++k) acc += scale(u[k] * y[n - k], Rational(k, n));
        y[n] = acc;
    }
    return y;
}

// Reciprocal of a series whose constant term is a unit.
template <typename C>
TruncatedSeries<C> series_inverse(const TruncatedSeries<C>& x) {
    if (is_zero(x[0])) throw domain_error("series_inverse requires a unit constant term");
    TruncatedSeries<C> y(x.order(), x.var());
    y[0] = C(Rational(1)) / x[0];
    for (int n = 1; n <= x.order(); ++n) {
        C acc{};
        for (int k = 1; k <= n; ++k) acc += x[k] * y[n - k];
        y[n] = C() - acc * y[0];
    }
    return y;
}

// Exact division a/b where b has valuation v and a is divisible by x^v.
// The quotient is known only to order min(ord a, ord b) - v; truncation is
// the caller's record of how much is still trustworthy.
template <typename C>
TruncatedSeries<C> series_div_exact(const TruncatedSeries<C>& a, const TruncatedSeries<C>& b) {
    int v = b.valuation();
    if (v > b.order()) throw domain_error("series division by zero series");
    int out_order = std::min(a.order(), b.order()) - v;
    if (out_order < 0) throw internal_error("series division exhausts truncation");
    for (int k = 0; k < std::min(v, a.order() + 1); ++k)
        if (!is_zero(a[k])) throw internal_error("inexact series division");
    // shift both down by v, then divide by the unit part
    TruncatedSeries<C> bu(out_order, b.var());
    for (int k = 0; k <= out_order; ++k) bu[k] = b[k + v];
    TruncatedSeries<C> au(out_order, a.var());
    for (int k = 0; k <= out_order; ++k) au[k] = (k + v <= a.order()) ? a[k + v] : C{};
    return au * series_inverse(bu);
}

}  // namespace hciz
