#include "hciz/dispersionless.hpp"

#include <cmath>

#include "hciz/errors.hpp"

namespace hciz {

namespace {

Rational catalan_like(int q) {  // (2q)!/(q!)^2 = C(2q, q)
    return Rational(factorial(2 * q)) / Rational(factorial(q) * factorial(q));
}

Rational vertex_weight(int q) {  // (-1)^{q+1} (2q)!/(q!)^2
    Rational c = catalan_like(q);
    return q % 2 == 1 ? c : -c;
}

QPoly drop_above_weight(const QPoly& p, int order) {
    QPoly out;
    for (const auto& [m, c] : p.terms())
        if (m.a_weight() <= order) out.add_term(m, c);
    return out;
}

}  // namespace

QPoly psi_one_sided_series(int n, int order) {
    if (n < 0 || order < 0) throw domain_error("psi series needs n, order >= 0");
    QPoly psi(Rational(1));
    // each sweep is exact one weight further; `order` sweeps saturate
    for (int sweep = 0; sweep < order; ++sweep) {
        QPoly next(Rational(1));
        std::vector<QPoly> powers{QPoly(Rational(1))};  // psi^0
        for (int e = 1; e <= 2 * n + 1; ++e)
            powers.push_back(drop_above_weight(powers.back() * psi, order));
        for (int q = 1; q <= n; ++q) {
            QPoly term = powers[2 * q + 1] * QPoly(Monomial::theta(q), vertex_weight(q));
            next += drop_above_weight(term, order);
        }
        psi = drop_above_weight(next, order);
    }
    return psi;
}

double psi_one_sided_numeric(const std::vector<double>& theta, double tol, int max_iter) {
    int n = static_cast<int>(theta.size());
    std::vector<double> w(n);
    for (int q = 1; q <= n; ++q)
        w[q - 1] = static_cast<double>(vertex_weight(q).convert_to<double>()) * theta[q - 1];

    auto g = [&](double psi) {
        double acc = psi - 1.0;
        for (int q = 1; q <= n; ++q) acc -= w[q - 1] * std::pow(psi, 2 * q + 1);
        return acc;
    };
    auto gp = [&](double psi) {
        double acc = 1.0;
        for (int q = 1; q <= n; ++q) acc -= w[q - 1] * (2 * q + 1) * std::pow(psi, 2 * q);
        return acc;
    };

    // the physical branch is continuous to psi = 1 at zero coupling and
    // stays positive; steps are damped, and leaving psi > 0 is refused
    double psi = 1.0;
    double r = g(psi);
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(r) <= tol * std::max(1.0, std::abs(psi))) return psi;
        double d = gp(psi);
        if (d == 0.0) break;
        double step = r / d;
        bool moved = false;
        for (int h = 0; h < 60; ++h) {
            double cand = psi - step;
            if (cand > 0.0) {
                double rc = g(cand);
                if (std::abs(rc) < std::abs(r) || std::abs(rc) <= tol) {
                    psi = cand;
                    r = rc;
                    moved = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    if (std::abs(r) <= tol * std::max(1.0, std::abs(psi))) return psi;
    throw precision_error("Newton iteration for psi did not converge");
}

QPoly free_energy_one_sided(int n, int order) {
    if (n < 1 || order < 1) throw domain_error("one-sided series needs n, order >= 1");
    QPoly F;
    std::vector<int> alpha(n, 0);
    auto emit = [&]() {
        int weight = 0, s1 = 0, s2 = 0, parts = 0;
        for (int q = 1; q <= n; ++q) {
            weight += q * alpha[q - 1];
            s1 += (2 * q + 1) * alpha[q - 1];
            s2 += 2 * q * alpha[q - 1];
            parts += alpha[q - 1];
        }
        if (parts == 0) return;
        Rational coef = Rational(factorial(s1 - 3)) / Rational(factorial(s2));
        Monomial m;
        for (int q = 1; q <= n; ++q) {
            if (alpha[q - 1] == 0) continue;
            coef /= Rational(factorial(alpha[q - 1]));
            Rational vw = vertex_weight(q);
            for (int e = 0; e < alpha[q - 1]; ++e) coef *= vw;
            m = m * Monomial::theta(q, alpha[q - 1]);
        }
        m = m * Monomial::thetabar(1, weight);
        F.add_term(m, coef);
    };
    auto rec = [&](auto&& self, int q, int budget) -> void {
        if (q > n) {
            emit();
            return;
        }
        for (int k = 0; k * q <= budget; ++k) {
            alpha[q - 1] = k;
            self(self, q + 1, budget - k * q);
        }
        alpha[q - 1] = 0;
    };
    rec(rec, 1, order);
    return F;
}

DiagonalSeries diagonal_series(int n, int order) {
    if (n < 1 || order < 0) throw domain_error("diagonal series needs n >= 1, order >= 0");
    DiagonalSeries out;
    out.psi.resize(order + 1);
    out.F.assign(order + 1, Rational(0));
    for (int k = 0; k <= order; ++k) {
        Rational pk = 1;
        for (int e = 0; e < k; ++e) pk *= (n + 1);
        out.psi[k] = pk * Rational(factorial((n + 2) * k)) /
                     Rational(factorial((n + 1) * k + 1) * factorial(k));
        if (k >= 1)
            out.F[k] = pk * Rational(factorial((n + 2) * k - 3)) /
                       Rational(factorial((n + 1) * k) * factorial(k));
    }
    return out;
}

CurveData build_curve(const std::vector<double>& theta, double psi, double tol) {
    int n = static_cast<int>(theta.size());
    if (psi <= 0) throw domain_error("curve needs psi > 0");
    CurveData c;
    c.theta = theta;
    c.psi = psi;
    // 1/sqrt(1 + 4 psi^2/l) = sum_k (-1)^k C(2k,k) psi^{2k} l^{-k}; the
    // polynomial part of 2 psi (sum_j theta_j l^j) times that series is
    //   Q_r = 2 psi sum_{k >= 0, r+k <= n} theta_{r+k} (-1)^k C(2k,k) psi^{2k}.
    c.Q.assign(n + 1, 0.0);
    for (int r = 0; r <= n; ++r) {
        double acc = 0.0;
        double sign = 1.0;
        double psipow = 1.0;
        for (int k = 0; r + k <= n; ++k) {
            double th = (r + k == 0) ? 1.0 : theta[r + k - 1];
            acc += sign * catalan_like(k).convert_to<double>() * psipow * th;
            sign = -sign;
            psipow *= psi * psi;
        }
        c.Q[r] = 2.0 * psi * acc;
    }
    if (std::abs(c.Q[0] - 2.0) > tol)
        throw domain_error("Q(0) != 2: psi inconsistent with the fixed-point equation");
    return c;
}

double curve_b(const CurveData& c, double ell) {
    int n = static_cast<int>(c.theta.size());
    double poly = ell;
    double lp = ell;
    for (int q = 1; q <= n; ++q) {
        lp *= ell;
        poly += c.theta[q - 1] * lp;
    }
    double qv = 0.0;
    for (int r = n; r >= 0; --r) qv = qv * ell + c.Q[r];
    double disc = ell * (1.0 + ell / (4.0 * c.psi * c.psi));
    if (disc < 0) throw domain_error("curve evaluated off the principal branch");
    return 0.5 * (poly + std::sqrt(disc) * qv);
}

std::vector<double> m_expansion(const CurveData& c, int qmax) {
    int n = static_cast<int>(c.theta.size());
    // sqrt(1 + 4 psi^2 w) = sum_k C(1/2, k) (4 psi^2)^k w^k
    int terms = qmax + n + 1;
    std::vector<double> s(terms, 0.0);
    double coef = 1.0;
    double u = 4.0 * c.psi * c.psi;
    for (int k = 0; k < terms; ++k) {
        s[k] = coef;
        coef *= u * (0.5 - k) / (k + 1);
    }
    // m = 1/2 ( sum_j theta_j l^j + (1/(2psi)) sqrt(1+4psi^2 w) Q(l) ),
    // coefficient of w^q picks s_{q+r} against Q_r.
    std::vector<double> out(qmax);
    for (int q = 1; q <= qmax; ++q) {
        double acc = 0.0;
        for (int r = 0; r <= n; ++r) acc += c.Q[r] * s[q + r];
        out[q - 1] = 0.5 * acc / (2.0 * c.psi);
    }
    return out;
}

}  // namespace hciz
