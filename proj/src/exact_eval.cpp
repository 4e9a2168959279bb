#include "hciz/exact_eval.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

#include "hciz/errors.hpp"
#include "hciz/rational.hpp"

namespace hciz {

namespace {

namespace mp = boost::multiprecision;
template <unsigned Bits>
using BinFloat = mp::number<mp::cpp_bin_float<Bits, mp::digit_base_2>, mp::et_off>;

// Kernel f(x) = sum_m c_m x^m described by c_0 and the ratio
//   c_{m+1}/c_m = base / prod_k (m + 1 + offsets[k]).
// HCIZ: c_0 = 1, base = N/s, offsets = {0} (f = exp((N/s) x)).
// Rectangular: c_0 = (N/s)^nu / nu!, base = (N/s)^2, offsets = {0, nu}.
// Chain: c_0 = 1/prod_k (N_k - N)!, base = (N/s)^K, offsets = {N_k - N}.
struct KernelSpec {
    double base_num = 1.0, base_den = 1.0;  // base = (base_num/base_den)^power
    int base_power = 1;
    std::vector<long> offsets;
    Int c0_den = 1;        // c_0 = base^{c0_pow} / c0_den
    int c0_pow = 0;
    bool plain_exp = false;  // base^1, offsets {0}: evaluate via exp()
};

struct Problem {
    int n = 0;                  // determinant size
    std::vector<double> a, b;   // eigenvalues
    KernelSpec kernel;
    Int pref_num = 1, pref_den = 1;  // rational prefactor
    double spow_num = 1.0, spow_den = 1.0;  // times (spow_num/spow_den)^spow
    long spow = 0;
};

void require_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) throw domain_error("non-finite eigenvalue input");
}

// Smallest pairwise gap relative to the spread; 0 when exact duplicates.
double relative_min_gap(const std::vector<double>& v) {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) scale = 1.0;
    double gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j)
            gap = std::min(gap, std::abs(v[i] - v[j]));
    return v.size() < 2 ? std::numeric_limits<double>::infinity() : gap / scale;
}

template <typename Real>
Real kernel_base(const KernelSpec& k) {
    Real b = Real(k.base_num) / Real(k.base_den);
    Real r = 1;
    for (int i = 0; i < k.base_power; ++i) r *= b;
    return r;
}

template <typename Real>
Real kernel_c0(const KernelSpec& k) {
    Real b = Real(k.base_num) / Real(k.base_den);
    Real r = 1;
    for (int i = 0; i < k.c0_pow; ++i) r *= b;
    return r / Real(k.c0_den.str());
}

// f(x) by direct series summation with a geometric tail cutoff.
template <typename Real>
Real kernel_value(const KernelSpec& k, const Real& x, const Real& eps) {
    if (k.plain_exp) return exp(kernel_base<Real>(k) * x);
    Real base = kernel_base<Real>(k);
    Real term = kernel_c0<Real>(k);
    Real sum = term;
    Real absx = abs(x);
    for (long m = 0; m < 100000; ++m) {
        Real denom = 1;
        for (long off : k.offsets) denom *= Real(m + 1 + off);
        term *= base * x / denom;
        sum += term;
        // once the term ratio is < 1/2 the tail is below twice the term
        Real ratio = abs(base) * absx;
        for (long off : k.offsets) ratio /= Real(m + 2 + off);
        if (ratio < Real(0.5) && abs(term) < eps * (abs(sum) + Real(1))) break;
    }
    return sum;
}

template <typename Real>
Real det_lu(std::vector<std::vector<Real>> m) {
    int n = static_cast<int>(m.size());
    Real det = 1;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (abs(m[i][k]) > abs(m[piv][k])) piv = i;
        if (m[piv][k] == 0) return Real(0);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        for (int i = k + 1; i < n; ++i) {
            Real f = m[i][k] / m[k][k];
            for (int j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

// Generic branch: det(f(a_i b_j)) / (Delta(a) Delta(b)).
template <typename Real>
Real det_ratio_generic(const Problem& pr, const Real& eps) {
    int n = pr.n;
    std::vector<Real> a(n), b(n);
    for (int i = 0; i < n; ++i) a[i] = Real(pr.a[i]);
    for (int i = 0; i < n; ++i) b[i] = Real(pr.b[i]);
    std::vector<std::vector<Real>> m(n, std::vector<Real>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = kernel_value(pr.kernel, a[i] * b[j], eps);
    Real det = det_lu(std::move(m));
    Real vand = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) vand *= (a[i] - a[j]) * (b[i] - b[j]);
    if (vand == 0) throw domain_error("coalescing eigenvalues reached the generic branch");
    return det / vand;
}

// Confluent branch: the double divided-difference table
//   D_ij = sum_m c_m h_{m-i}(a_0..a_i) h_{m-j}(b_0..b_j)
// equals det(f(a_i b_j))/(Delta(a) Delta(b)) as a determinant and stays
// finite (and stable) when eigenvalues coalesce: divided differences of
// x^m over k+1 nodes are the complete homogeneous polynomials h_{m-k}.
template <typename Real>
Real det_ratio_confluent(const Problem& pr, const Real& eps) {
    int n = pr.n;
    // h tables: h[i][k] = h_k(a_0..a_i), plus absolute-value majorants
    auto build_h = [&](const std::vector<double>& v, int kmax, bool absval) {
        std::vector<std::vector<Real>> h(n, std::vector<Real>(kmax + 1));
        for (int k = 0; k <= kmax; ++k) {
            Real x0 = absval ? Real(std::abs(v[0])) : Real(v[0]);
            h[0][k] = k == 0 ? Real(1) : h[0][k - 1] * x0;
        }
        for (int i = 1; i < n; ++i) {
            Real xi = absval ? Real(std::abs(v[i])) : Real(v[i]);
            h[i][0] = 1;
            for (int k = 1; k <= kmax; ++k) h[i][k] = h[i - 1][k] + xi * h[i][k - 1];
        }
        return h;
    };
    // pick the truncation adaptively from the positive majorant series
    int kmax = 64;
    Real base = kernel_base<Real>(pr.kernel);
    for (;;) {
        auto habs_a = build_h(pr.a, kmax, true);
        auto habs_b = build_h(pr.b, kmax, true);
        Real cm = abs(kernel_c0<Real>(pr.kernel));
        Real bound_max = 0;
        int m = 0;
        bool converged = false;
        std::vector<Real> cms;  // |c_m| for reuse
        for (; m <= kmax; ++m) {
            cms.push_back(cm);
            Real denom = 1;
            for (long off : pr.kernel.offsets) denom *= Real(m + 1 + off);
            cm *= abs(base) / denom;
            if (m < n) continue;
            Real bound = cms[m] * habs_a[n - 1][m - (n - 1)] * habs_b[n - 1][m - (n - 1)];
            bound_max = std::max(bound_max, bound);
            if (m > 2 * n + 4 && bound < eps * (bound_max + Real(1))) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            kmax *= 2;
            if (kmax > (1 << 20)) throw precision_error("confluent series did not converge");
            continue;
        }
        int mtop = m;
        auto ha = build_h(pr.a, kmax, false);
        auto hb = build_h(pr.b, kmax, false);
        std::vector<std::vector<Real>> D(n, std::vector<Real>(n, Real(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int mm = std::max(i, j); mm <= mtop; ++mm)
                    D[i][j] += cms[mm] * ha[i][mm - i] * hb[j][mm - j];
        return det_lu(std::move(D));
    }
}

template <typename Real>
double evaluate_at(const Problem& pr, bool confluent, int bits) {
    Real eps = ldexp(Real(1), -(bits + 16));
    Real ratio = confluent ? det_ratio_confluent<Real>(pr, eps) : det_ratio_generic<Real>(pr, eps);
    Real pref = Real(pr.pref_num.str()) / Real(pr.pref_den.str());
    Real sbase = Real(pr.spow_num) / Real(pr.spow_den);
    Real spw = pow(sbase, static_cast<int>(pr.spow));
    return static_cast<double>(pref * spw * ratio);
}

double evaluate_bits(const Problem& pr, bool confluent, int bits) {
    if (bits <= 128) return evaluate_at<BinFloat<128>>(pr, confluent, 128);
    if (bits <= 256) return evaluate_at<BinFloat<256>>(pr, confluent, 256);
    if (bits <= 512) return evaluate_at<BinFloat<512>>(pr, confluent, 512);
    if (bits <= 1024) return evaluate_at<BinFloat<1024>>(pr, confluent, 1024);
    if (bits <= 2048) return evaluate_at<BinFloat<2048>>(pr, confluent, 2048);
    if (bits <= 4096) return evaluate_at<BinFloat<4096>>(pr, confluent, 4096);
    throw precision_error("working precision above 4096 bits is not instantiated");
}

EvalResult run(const Problem& pr, const PrecisionPolicy& pol) {
    if (pol.bits < 53) throw domain_error("precision policy needs bits >= 53");
    double gap = std::min(relative_min_gap(pr.a), relative_min_gap(pr.b));

    int bits = std::max(64, pol.bits);
    EvalResult res;
    double prev = 0.0;
    bool have_prev = false;
    for (;;) {
        bool confluent = gap < std::ldexp(1.0, -bits / 4);
        double v = evaluate_bits(pr, confluent, bits);
        if (have_prev) {
            double denom = std::max({std::abs(v), std::abs(prev),
                                     std::numeric_limits<double>::min()});
            double err = std::abs(v - prev) / denom;
            if (err <= pol.target_rel_error) {
                res.value = v;
                res.rel_error = err;
                res.bits_used = bits;
                res.confluent = confluent;
                return res;
            }
        }
        prev = v;
        have_prev = true;
        if (bits * 2 > std::max(pol.max_bits, 2 * std::max(64, pol.bits)))
            throw precision_error("requested relative error unattainable at max precision");
        bits *= 2;
    }
}

Int factorial_product(int upto) {  // prod_{p=1}^{upto} p!
    Int r = 1;
    for (int p = 1; p <= upto; ++p) r *= factorial(p);
    return r;
}

}  // namespace

EvalResult eval_unitary_integral(const SpectralData& d, const PrecisionPolicy& p) {
    int n = static_cast<int>(d.a.size());
    if (n < 1) throw domain_error("need N >= 1");
    if (d.b.size() != d.a.size()) throw domain_error("eigenvalue lists must match in length");
    require_finite(d.a);
    require_finite(d.b);
    if (!std::isfinite(d.s) || d.s <= 0) throw domain_error("coupling s must be positive");

    Problem pr;
    pr.n = n;
    pr.a = d.a;
    pr.b = d.b;
    pr.kernel.base_num = n;
    pr.kernel.base_den = d.s;
    pr.kernel.offsets = {0};
    pr.kernel.plain_exp = true;
    pr.pref_num = factorial_product(n - 1);
    pr.spow_num = d.s;
    pr.spow_den = n;
    pr.spow = static_cast<long>(n) * (n - 1) / 2;  // (N/s)^{-N(N-1)/2}
    return run(pr, p);
}

EvalResult eval_rectangular(const RectangularData& d, const PrecisionPolicy& p) {
    if (d.n2 < 1 || d.n1 < d.n2) throw domain_error("need N1 >= N2 >= 1");
    if (static_cast<int>(d.a.size()) != d.n2 || static_cast<int>(d.b.size()) != d.n2)
        throw domain_error("need N2 squared singular values on each side");
    require_finite(d.a);
    require_finite(d.b);
    for (double x : d.a)
        if (x < 0) throw domain_error("squared singular values must be >= 0");
    for (double x : d.b)
        if (x < 0) throw domain_error("squared singular values must be >= 0");
    if (!std::isfinite(d.s) || d.s <= 0) throw domain_error("coupling s must be positive");

    int n = d.n2, nu = d.n1 - d.n2;
    Problem pr;
    pr.n = n;
    pr.a = d.a;
    pr.b = d.b;
    pr.kernel.base_num = n;
    pr.kernel.base_den = d.s;
    pr.kernel.base_power = 2;
    pr.kernel.offsets = {0, nu};
    pr.kernel.c0_pow = nu;
    pr.kernel.c0_den = factorial(nu);
    // prod_{p<N2} p! prod_{q<N1} q! / prod_{r<nu} r!  *  (s/N)^{N2 (N1-1)}
    pr.pref_num = factorial_product(n - 1) * factorial_product(d.n1 - 1);
    pr.pref_den = factorial_product(nu - 1);
    pr.spow_num = d.s;
    pr.spow_den = n;
    pr.spow = static_cast<long>(n) * (d.n1 - 1);
    return run(pr, p);
}

EvalResult eval_chain(const ChainData& d, const PrecisionPolicy& p) {
    int K = static_cast<int>(d.sizes.size());
    if (K < 1) throw domain_error("chain needs K >= 1");
    int N = d.sizes[0];
    for (int s : d.sizes) {
        if (s < 1) throw domain_error("chain sizes must be >= 1");
        N = std::min(N, s);
    }
    if (static_cast<int>(d.a.size()) != N || static_cast<int>(d.b.size()) != N)
        throw domain_error("chain needs min(sizes) eigenvalues on each side");
    require_finite(d.a);
    require_finite(d.b);
    if (!std::isfinite(d.s) || d.s <= 0) throw domain_error("coupling s must be positive");

    Problem pr;
    pr.n = N;
    pr.a = d.a;
    pr.b = d.b;
    pr.kernel.base_num = N;
    pr.kernel.base_den = d.s;
    pr.kernel.base_power = K;
    Int c0den = 1;
    for (int sz : d.sizes) {
        pr.kernel.offsets.push_back(sz - N);
        c0den *= factorial(sz - N);
    }
    pr.kernel.c0_den = c0den;
    // normalization I -> 1 as a -> 0:
    //   const = (N/s)^{-K N(N-1)/2} prod_{i<N} prod_k (i + N_k - N)!
    Int pref = 1;
    for (int i = 0; i < N; ++i)
        for (int sz : d.sizes) pref *= factorial(i + sz - N);
    pr.pref_num = pref;
    pr.spow_num = d.s;
    pr.spow_den = N;
    pr.spow = static_cast<long>(K) * N * (N - 1) / 2;
    return run(pr, p);
}

}  // namespace hciz
