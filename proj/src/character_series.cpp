#include "hciz/character_series.hpp"

#include "hciz/characters.hpp"
#include "hciz/errors.hpp"

namespace hciz {

namespace {

// Monomial theta^alpha (bar = false) or thetabar^alpha (bar = true).
Monomial class_monomial(const ClassVector& alpha, bool bar) {
    Monomial m;
    auto& e = bar ? m.b : m.a;
    e = alpha.mult;
    m.trim();
    return m;
}

PolyQ power_of_n(int k) {
    std::vector<Rational> c(k + 1, Rational(0));
    c[k] = 1;
    return PolyQ(std::move(c));
}

// Coefficient of s^{-n}: for each class pair (alpha, beta),
//   [ sum_lambda chi(alpha) chi(beta) d^_lambda / d_lambda(N) ]
//   * N^{n + #alpha + #beta} / (z_alpha z_beta n!).
Polynomial<RatN> series_coefficient(int n) {
    Polynomial<RatN> out;
    if (n == 0) {
        out.add_term(Monomial::one(), RatN(Rational(1)));
        return out;
    }
    const CharacterTable& t = CharacterTable::get(n);
    size_t k = t.lambdas.size();
    std::vector<PolyQ> dim_poly(k);
    std::vector<Rational> dim_hat(k);
    for (size_t l = 0; l < k; ++l) {
        dim_poly[l] = gl_dimension_poly(t.lambdas[l]);
        dim_hat[l] = Rational(sn_dimension(t.lambdas[l]));
    }
    Rational inv_nfact = Rational(1) / Rational(factorial(n));
    for (size_t a = 0; a < k; ++a) {
        for (size_t b = 0; b < k; ++b) {
            RatN sum;
            for (size_t l = 0; l < k; ++l) {
                Rational w = Rational(t.chi[l][a]) * Rational(t.chi[l][b]) * dim_hat[l];
                if (w == 0) continue;
                sum += RatN(PolyQ(w), dim_poly[l]);
            }
            if (sum.is_zero()) continue;
            const ClassVector& ca = t.classes[a];
            const ClassVector& cb = t.classes[b];
            int npow = n + ca.num_cycles() + cb.num_cycles();
            Rational scalar = inv_nfact / (Rational(ca.z()) * Rational(cb.z()));
            RatN coeff = sum * RatN(power_of_n(npow)) * scalar;
            out.add_term(class_monomial(ca, false) * class_monomial(cb, true), coeff);
        }
    }
    return out;
}

}  // namespace

NSeries character_series(int order) {
    if (order < 0) throw domain_error("series order must be >= 0");
    NSeries s(order, NSeries::Var::inv_s);
    for (int n = 0; n <= order; ++n) s[n] = series_coefficient(n);
    return s;
}

NSeries log_character_series(int order) { return series_log(character_series(order)); }

std::vector<QPoly> free_energy_oracle(int order) {
    if (order < 1) throw domain_error("free energy order must be >= 1");
    NSeries lg = log_character_series(order);
    std::vector<QPoly> F;
    F.reserve(order);
    for (int n = 1; n <= order; ++n) {
        QPoly fn;
        int top = -1;
        for (const auto& [m, c] : lg[n].terms()) {
            int d = c.degree_at_infinity();
            if (d > 2)
                throw internal_error("log coefficient at order " + std::to_string(n) +
                                     " grows like N^" + std::to_string(d));
            top = std::max(top, d);
            Rational lead = c.infinity_coeff(2, 2);
            if (lead != 0) fn.add_term(m, lead);
        }
        if (top != 2 || fn.is_zero_poly())
            throw internal_error("log coefficient at order " + std::to_string(n) +
                                 " has no N^2 part");
        if (!fn.is_graded(n))
            throw internal_error("F_" + std::to_string(n) + " is not graded");
        F.push_back(std::move(fn));
    }
    return F;
}

Rational character_series_value(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                const Rational& s, int order) {
    if (a.size() != b.size()) throw domain_error("eigenvalue lists must have equal length");
    if (s == 0) throw domain_error("coupling s must be nonzero");
    int N = static_cast<int>(a.size());
    if (N < 1) throw domain_error("need at least one eigenvalue");

    auto power_sums = [&](const std::vector<Rational>& v, int n) {
        std::vector<Rational> ps(n + 1, Rational(0));
        for (int p = 1; p <= n; ++p)
            for (const Rational& x : v) {
                Rational xp = 1;
                for (int e = 0; e < p; ++e) xp *= x;
                ps[p] += xp;
            }
        return ps;
    };
    std::vector<Rational> pa = power_sums(a, order), pb = power_sums(b, order);

    Rational total = 1;  // n = 0 term
    Rational ns_pow = 1;
    for (int n = 1; n <= order; ++n) {
        ns_pow *= Rational(N) / s;
        const CharacterTable& t = CharacterTable::get(n);
        Rational lambda_sum = 0;
        for (size_t l = 0; l < t.lambdas.size(); ++l) {
            if (t.lambdas[l].num_rows() > N) continue;  // chi_lambda vanishes on GL(N)
            auto chi_at = [&](const std::vector<Rational>& ps) {
                Rational acc = 0;
                for (size_t c = 0; c < t.classes.size(); ++c) {
                    if (t.chi[l][c] == 0) continue;
                    Rational prod = 1;
                    const ClassVector& alpha = t.classes[c];
                    for (size_t i = 0; i < alpha.mult.size(); ++i)
                        for (int e = 0; e < alpha.mult[i]; ++e) prod *= ps[i + 1];
                    acc += Rational(t.chi[l][c]) / Rational(alpha.z()) * prod;
                }
                return acc;
            };
            Rational dn = gl_dimension_poly(t.lambdas[l]).eval(Rational(N));
            lambda_sum += Rational(sn_dimension(t.lambdas[l])) * chi_at(pa) * chi_at(pb) / dn;
        }
        total += ns_pow / Rational(factorial(n)) * lambda_sum;
    }
    return total;
}

Rational rect_series_value(int n1, int n2, const std::vector<Rational>& a,
                           const std::vector<Rational>& b, const Rational& s, int order) {
    if (n2 < 1 || n1 < n2) throw domain_error("need N1 >= N2 >= 1");
    if (static_cast<int>(a.size()) != n2 || static_cast<int>(b.size()) != n2)
        throw domain_error("need N2 eigenvalues on each side");
    if (s == 0) throw domain_error("coupling s must be nonzero");
    int N = n2, nu = n1 - n2;

    auto weight = [&](const Partition& lam) {
        std::vector<int> inc = lam.increasing_padded(N);
        Rational w = 1;
        for (int p = 1; p <= N; ++p)
            w /= Rational(factorial(inc[p - 1] + p - 1) * factorial(inc[p - 1] + p - 1 + nu));
        return w;
    };
    Rational w_empty = weight(Partition{});

    // one power of (N/s)^2 per box: the tau-function form carries hbar^{-k}
    // with hbar-rescaled spectral data, which for the integral itself means
    // hbar^{-2k} (the N = 1 case is the Bessel series in (N/s)^2 ab)
    Rational hbar_inv2 = Rational(N) * Rational(N) / (s * s);
    Rational total = 0;
    Rational hpow = 1;
    for (int k = 0; k <= order; ++k) {
        for (const Partition& lam : partitions(k)) {
            if (lam.num_rows() > N) continue;
            total += hpow * weight(lam) * schur_at(lam, a) * schur_at(lam, b);
        }
        hpow *= hbar_inv2;
    }
    return total / w_empty;
}

}  // namespace hciz
