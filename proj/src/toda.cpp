#include "hciz/toda.hpp"

#include "hciz/characters.hpp"
#include "hciz/errors.hpp"
#include "hciz/partitions.hpp"

namespace hciz {

namespace {

// P_k as a polynomial in x = 1/hbar: sum over partitions of k restricted to
// the support of the times, x^{#parts} prod_q t_q^{a_q} / a_q!.
std::vector<HbarSeries> p_polynomials(const std::map<int, Rational>& times, int kmax, int order) {
    std::vector<HbarSeries> P(kmax + 1, HbarSeries(order, HbarSeries::Var::inv_hbar));
    P[0][0] = 1;
    for (int k = 1; k <= kmax; ++k) {
        for (const Partition& mu : partitions(k)) {
            ClassVector alpha = ClassVector::from_partition(mu);
            Rational coef = 1;
            bool dead = false;
            for (size_t i = 0; i < alpha.mult.size() && !dead; ++i) {
                if (alpha.mult[i] == 0) continue;
                auto it = times.find(static_cast<int>(i + 1));
                if (it == times.end() || it->second == 0) {
                    dead = true;
                    break;
                }
                for (int e = 0; e < alpha.mult[i]; ++e) coef *= it->second;
                coef /= Rational(factorial(alpha.mult[i]));
            }
            if (dead || coef == 0) continue;
            int xpow = alpha.num_cycles();
            if (xpow <= order) P[k][xpow] += coef;
        }
    }
    return P;
}

HbarSeries entry_from_p(int i, int j, const std::vector<HbarSeries>& P,
                        const std::vector<HbarSeries>& Pbar, int order) {
    HbarSeries m(order, HbarSeries::Var::inv_hbar);
    for (int k = std::max(i, j); k <= order; ++k) {
        const HbarSeries& pj = P[k - j];
        const HbarSeries& pi = Pbar[k - i];
        Rational invfact = Rational(1) / Rational(factorial(k));
        // x^k / k! * P_{k-j} * Pbar_{k-i}, truncated at order
        for (int u = 0; u + k <= order; ++u) {
            if (pj[u] == 0) continue;
            for (int v = 0; u + v + k <= order; ++v) {
                if (pi[v] == 0) continue;
                m[u + v + k] += invfact * pj[u] * pi[v];
            }
        }
    }
    return m;
}

std::vector<std::vector<HbarSeries>> moment_matrix(const std::vector<int>& rows,
                                                   const std::vector<int>& cols,
                                                   const TodaTimes& times, int order) {
    int kmax = order;
    std::vector<HbarSeries> P = p_polynomials(times.t, kmax, order);
    std::vector<HbarSeries> Pbar = p_polynomials(times.tbar, kmax, order);
    std::vector<std::vector<HbarSeries>> m;
    for (int i : rows) {
        std::vector<HbarSeries> row;
        for (int j : cols) row.push_back(entry_from_p(i, j, P, Pbar, order));
        m.push_back(std::move(row));
    }
    return m;
}

std::vector<int> iota_vec(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

// rows/cols 0..n-1 with index k replaced by n (the shifted minors entering
// the derivative determinants)
std::vector<int> shifted_index(int n) {
    std::vector<int> v = iota_vec(n);
    if (n > 0) v[n - 1] = n;
    return v;
}

}  // namespace

HbarSeries moment_entry(int i, int j, const TodaTimes& times, int order) {
    if (i < 0 || j < 0) throw domain_error("moment entry indices must be >= 0");
    if (order < 0) throw domain_error("series order must be >= 0");
    std::vector<HbarSeries> P = p_polynomials(times.t, order, order);
    std::vector<HbarSeries> Pbar = p_polynomials(times.tbar, order, order);
    return entry_from_p(i, j, P, Pbar, order);
}

HbarSeries det_series(std::vector<std::vector<HbarSeries>> m) {
    int n = static_cast<int>(m.size());
    if (n == 0) throw domain_error("determinant of empty matrix");
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != n) throw domain_error("non-square matrix");
    if (n == 1) return m[0][0];

    int sign = 1;
    HbarSeries prev_pivot = HbarSeries::constant(Rational(1), m[0][0].order(),
                                                 HbarSeries::Var::inv_hbar);
    for (int k = 0; k + 1 < n; ++k) {
        // pick the pivot of minimal valuation to limit knowledge erosion
        int best = -1, best_val = 1 << 30;
        for (int r = k; r < n; ++r) {
            int v = m[r][k].valuation();
            if (v <= m[r][k].order() && v < best_val) {
                best = r;
                best_val = v;
            }
        }
        if (best < 0) return HbarSeries(m[k][k].order(), HbarSeries::Var::inv_hbar);  // zero
        if (best != k) {
            std::swap(m[best], m[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = series_div_exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev_pivot);
        prev_pivot = m[k][k];
    }
    HbarSeries det = m[n - 1][n - 1];
    if (sign < 0) det = HbarSeries(det.order(), HbarSeries::Var::inv_hbar) - det;
    return det;
}

HbarSeries tau(int N, const TodaTimes& times, int order) {
    if (N < 0) throw domain_error("tau index must be >= 0");
    if (N == 0) return HbarSeries::constant(Rational(1), order, HbarSeries::Var::inv_hbar);
    int slack = N * (N - 1) / 2 + 2;
    HbarSeries det = det_series(moment_matrix(iota_vec(N), iota_vec(N), times, order + slack));
    if (det.order() < order)
        throw internal_error("tau determinant lost too many orders to division");
    return det.truncated(order);
}

HbarSeries toda_check(int n, const TodaTimes& times, int order) {
    if (n < 1) throw domain_error("toda_check needs n >= 1");
    int size = n + 1;
    int slack = size * (size - 1) / 2 + 2;
    int entry_order = order + slack;

    auto det_of = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
        if (rows.empty())
            return HbarSeries::constant(Rational(1), entry_order, HbarSeries::Var::inv_hbar);
        return det_series(moment_matrix(rows, cols, times, entry_order));
    };

    HbarSeries tau_np1 = det_of(iota_vec(n + 1), iota_vec(n + 1));
    HbarSeries tau_nm1 = det_of(iota_vec(n - 1), iota_vec(n - 1));
    HbarSeries tau_n = det_of(iota_vec(n), iota_vec(n));
    HbarSeries d_tau = det_of(iota_vec(n), shifted_index(n));
    HbarSeries dbar_tau = det_of(shifted_index(n), iota_vec(n));
    HbarSeries ddbar_tau = det_of(shifted_index(n), shifted_index(n));

    HbarSeries residual = tau_np1 * tau_nm1 - (tau_n * ddbar_tau - d_tau * dbar_tau);
    if (residual.order() < order)
        throw internal_error("toda_check lost too many orders to division");
    return residual.truncated(order);
}

HbarSeries tau_spectral(int N, const std::vector<Rational>& a, const std::vector<Rational>& b,
                        int order) {
    if (N < 0) throw domain_error("tau index must be >= 0");
    if (N == 0) return HbarSeries::constant(Rational(1), order, HbarSeries::Var::inv_hbar);
    // complete homogeneous symmetric polynomials h_k: exp(sum_q p_q u^q / q)
    auto homog = [&](const std::vector<Rational>& v, int kmax) {
        std::vector<Rational> p(kmax + 1, Rational(0)), h(kmax + 1, Rational(0));
        for (int q = 1; q <= kmax; ++q)
            for (const Rational& x : v) {
                Rational xp = 1;
                for (int e = 0; e < q; ++e) xp *= x;
                p[q] += xp;
            }
        h[0] = 1;
        for (int k = 1; k <= kmax; ++k) {  // k h_k = sum_q p_q h_{k-q}
            Rational acc = 0;
            for (int q = 1; q <= k; ++q) acc += p[q] * h[k - q];
            h[k] = acc / k;
        }
        return h;
    };
    int slack = N * (N - 1) / 2 + 2;
    int entry_order = order + slack;
    std::vector<Rational> ha = homog(a, entry_order), hb = homog(b, entry_order);
    std::vector<std::vector<HbarSeries>> m(
        N, std::vector<HbarSeries>(N, HbarSeries(entry_order, HbarSeries::Var::inv_hbar)));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = std::max(i, j); k <= entry_order; ++k)
                m[i][j][k] = ha[k - j] * hb[k - i] / Rational(factorial(k));
    HbarSeries det = det_series(std::move(m));
    if (det.order() < order)
        throw internal_error("tau determinant lost too many orders to division");
    return det.truncated(order);
}

bool desnanot_jacobi_check(const std::vector<std::vector<Rational>>& m) {
    size_t n = m.size();
    if (n < 2) throw domain_error("Desnanot-Jacobi needs size >= 2");
    for (const auto& row : m)
        if (row.size() != n) throw domain_error("non-square matrix");

    auto minor_det = [&](bool drop_first_row, bool drop_last_row, bool drop_first_col,
                         bool drop_last_col) {
        std::vector<std::vector<Rational>> sub;
        for (size_t i = 0; i < n; ++i) {
            if (drop_first_row && i == 0) continue;
            if (drop_last_row && i == n - 1) continue;
            std::vector<Rational> row;
            for (size_t j = 0; j < n; ++j) {
                if (drop_first_col && j == 0) continue;
                if (drop_last_col && j == n - 1) continue;
                row.push_back(m[i][j]);
            }
            sub.push_back(std::move(row));
        }
        if (sub.empty()) return Rational(1);
        return rational_det(std::move(sub));
    };

    Rational lhs = rational_det(m) * minor_det(true, true, true, true);
    Rational rhs = minor_det(true, false, true, false) * minor_det(false, true, false, true) -
                   minor_det(true, false, false, true) * minor_det(false, true, true, false);
    return lhs == rhs;
}

}  // namespace hciz
