#include "hciz/characters.hpp"

#include <map>
#include <mutex>

#include "hciz/errors.hpp"

namespace hciz {

namespace {

// Beta-set of a partition padded to m rows: distinct values lam_i + (m - i),
// i = 1..m with decreasing rows.
std::vector<int> beta_set(const Partition& lam, int m) {
    std::vector<int> b(m);
    for (int i = 0; i < m; ++i) {
        int row = i < lam.num_rows() ? lam.rows[i] : 0;
        b[i] = row + (m - 1 - i);
    }
    return b;  // strictly decreasing
}

Partition partition_from_beta(std::vector<int> b) {
    std::sort(b.begin(), b.end(), std::greater<int>());
    Partition lam;
    int m = static_cast<int>(b.size());
    for (int i = 0; i < m; ++i) {
        int row = b[i] - (m - 1 - i);
        if (row < 0) throw internal_error("invalid beta set");
        if (row > 0) lam.rows.push_back(row);
    }
    return lam;
}

using MemoKey = std::pair<std::vector<int>, std::vector<int>>;

long long mn_recurse(const Partition& lam, ClassVector alpha,
                     std::map<MemoKey, long long>& memo) {
    if (lam.n() == 0) return 1;
    MemoKey key{lam.rows, alpha.mult};
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    // remove one cycle of the largest remaining length r
    int r = static_cast<int>(alpha.mult.size());
    while (r >= 1 && alpha.mult[r - 1] == 0) --r;
    if (r == 0) throw internal_error("class/partition size mismatch in recursion");
    alpha.mult[r - 1]--;
    while (!alpha.mult.empty() && alpha.mult.back() == 0) alpha.mult.pop_back();

    int m = lam.num_rows();
    std::vector<int> b = beta_set(lam, m);
    long long total = 0;
    for (int i = 0; i < m; ++i) {
        int target = b[i] - r;
        if (target < 0) continue;
        bool occupied = false;
        int height = 0;  // entries strictly between target and b[i]
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            if (b[j] == target) occupied = true;
            if (b[j] > target && b[j] < b[i]) ++height;
        }
        if (occupied) continue;
        std::vector<int> nb = b;
        nb[i] = target;
        long long sub = mn_recurse(partition_from_beta(std::move(nb)), alpha, memo);
        total += (height % 2 == 0) ? sub : -sub;
    }
    memo[key] = total;
    return total;
}

std::vector<int> conjugate_rows(const Partition& lam) {
    std::vector<int> conj(lam.empty() ? 0 : lam.rows[0], 0);
    for (int r : lam.rows)
        for (int j = 0; j < r; ++j) conj[j]++;
    return conj;
}

}  // namespace

long long sn_character(const Partition& lam, const ClassVector& alpha) {
    if (!lam.valid()) throw domain_error("invalid partition");
    if (lam.n() != alpha.n())
        throw domain_error("character requires |lambda| = n(alpha): " + lam.str() +
                           " vs n=" + std::to_string(alpha.n()));
    std::map<MemoKey, long long> memo;
    return mn_recurse(lam, alpha, memo);
}

Int sn_dimension(const Partition& lam) {
    if (!lam.valid()) throw domain_error("invalid partition");
    std::vector<int> conj = conjugate_rows(lam);
    Int hooks = 1;
    for (int i = 0; i < lam.num_rows(); ++i)
        for (int j = 0; j < lam.rows[i]; ++j)
            hooks *= (lam.rows[i] - j) + (conj[j] - i) - 1;
    return factorial(lam.n()) / hooks;
}

PolyQ gl_dimension_poly(const Partition& lam) {
    if (!lam.valid()) throw domain_error("invalid partition");
    std::vector<int> conj = conjugate_rows(lam);
    PolyQ num(Rational(1));
    Int hooks = 1;
    for (int i = 0; i < lam.num_rows(); ++i)
        for (int j = 0; j < lam.rows[i]; ++j) {
            num *= PolyQ(std::vector<Rational>{Rational(j - i), 1});  // N + content
            hooks *= (lam.rows[i] - j) + (conj[j] - i) - 1;
        }
    return num * (Rational(1) / Rational(hooks));
}

const CharacterTable& CharacterTable::get(int n) {
    static std::mutex mu;
    static std::map<int, CharacterTable> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    CharacterTable t;
    t.n = n;
    t.lambdas = partitions(n);
    for (const Partition& mu_part : t.lambdas)
        t.classes.push_back(ClassVector::from_partition(mu_part));
    t.chi.resize(t.lambdas.size());
    for (size_t l = 0; l < t.lambdas.size(); ++l) {
        std::map<MemoKey, long long> memo;
        for (size_t c = 0; c < t.classes.size(); ++c)
            t.chi[l].push_back(mn_recurse(t.lambdas[l], t.classes[c], memo));
    }
    return cache.emplace(n, std::move(t)).first->second;
}

Rational rational_det(std::vector<std::vector<Rational>> m) {
    size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw domain_error("determinant of non-square matrix");
    Rational det = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        det *= m[k][k];
        Rational inv = Rational(1) / m[k][k];
        for (size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            Rational f = m[i][k] * inv;
            for (size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
        }
    }
    return det;
}

Rational schur_at(const Partition& lam, const std::vector<Rational>& a) {
    int N = static_cast<int>(a.size());
    if (lam.num_rows() > N) return Rational(0);
    std::vector<int> inc = lam.increasing_padded(N);
    auto power_matrix = [&](const std::vector<int>& exps) {
        std::vector<std::vector<Rational>> m(N, std::vector<Rational>(N));
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                Rational p = 1;
                for (int e = 0; e < exps[j]; ++e) p *= a[i];
                m[i][j] = p;
            }
        return m;
    };
    std::vector<int> vexp(N), lexp(N);
    for (int j = 0; j < N; ++j) {
        vexp[j] = j;
        lexp[j] = inc[j] + j;
    }
    Rational denom = rational_det(power_matrix(vexp));
    if (denom == 0) throw domain_error("schur_at requires distinct eigenvalues");
    return rational_det(power_matrix(lexp)) / denom;
}

}  // namespace hciz
