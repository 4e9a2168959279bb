#include "hciz/planar_enum.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "hciz/errors.hpp"

namespace hciz {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int x, int y) {
        x = find(x);
        y = find(y);
        if (x != y) parent[y] = x;
    }
};

SetPartition from_union_find(UnionFind& uf) {
    SetPartition sp;
    int n = static_cast<int>(uf.parent.size());
    sp.block_of.assign(n, -1);
    std::vector<int> label(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = uf.find(i);
        if (label[r] < 0) label[r] = sp.num_blocks++;
        sp.block_of[i] = label[r];
    }
    return sp;
}

void validate_permutation(const Permutation& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[v])
            throw domain_error("not a permutation");
        seen[v] = 1;
    }
}

// Cycles of rho as (length, block id of a representative under proj).
struct GammaItems {
    std::vector<int> lengths;
    std::vector<int> groups;  // pi0 block per item, relabelled canonically
    int needed_blocks = 0;    // required #Pi' for the gamma sum
};

// Canonical key: groups ordered by their sorted length multisets, lengths
// sorted inside each group.  gamma depends only on this shape.
std::vector<int> canonical_key(const GammaItems& g) {
    int ngroups = 0;
    for (int x : g.groups) ngroups = std::max(ngroups, x + 1);
    std::vector<std::vector<int>> per_group(ngroups);
    for (size_t i = 0; i < g.lengths.size(); ++i) per_group[g.groups[i]].push_back(g.lengths[i]);
    for (auto& v : per_group) std::sort(v.begin(), v.end());
    std::sort(per_group.begin(), per_group.end());
    std::vector<int> key;
    key.push_back(g.needed_blocks);
    for (const auto& v : per_group) {
        key.push_back(-1);
        key.insert(key.end(), v.begin(), v.end());
    }
    return key;
}

Rational w_of_lengths(std::vector<int> lengths) {
    ClassVector alpha;
    int maxlen = 0;
    for (int l : lengths) maxlen = std::max(maxlen, l);
    alpha.mult.assign(maxlen, 0);
    for (int l : lengths) alpha.mult[l - 1]++;
    return w_coefficient(alpha);
}

// Sum over set partitions of the items (restricted growth strings) with the
// two counting constraints; W products per block.
Rational gamma_from_items(const GammaItems& g) {
    int m = static_cast<int>(g.lengths.size());
    if (g.needed_blocks < 1 || g.needed_blocks > m) return Rational(0);
    int ngroups = 0;
    for (int x : g.groups) ngroups = std::max(ngroups, x + 1);

    Rational total = 0;
    std::vector<int> assign(m, 0);
    auto emit = [&]() {
        int nblocks = *std::max_element(assign.begin(), assign.end()) + 1;
        if (nblocks != g.needed_blocks) return;
        // connectivity of pi0 v Pi' over groups and blocks; every block holds
        // an item, so the components are exactly those seen from group nodes
        UnionFind uf(ngroups + nblocks);
        for (int i = 0; i < m; ++i) uf.unite(g.groups[i], ngroups + assign[i]);
        int first_root = uf.find(0);
        for (int i = 1; i < ngroups; ++i)
            if (uf.find(i) != first_root) return;
        Rational prod = 1;
        for (int b = 0; b < nblocks; ++b) {
            std::vector<int> lens;
            for (int i = 0; i < m; ++i)
                if (assign[i] == b) lens.push_back(g.lengths[i]);
            prod *= w_of_lengths(std::move(lens));
        }
        total += prod;
    };
    // iterate restricted growth strings
    auto rec = [&](auto&& self, int i, int maxused) -> void {
        if (i == m) {
            emit();
            return;
        }
        for (int b = 0; b <= std::min(maxused + 1, g.needed_blocks - 1); ++b) {
            assign[i] = b;
            self(self, i + 1, std::max(maxused, b));
        }
    };
    rec(rec, 0, -1);
    return total;
}

using GammaMemo = std::map<std::vector<int>, Rational>;

Rational gamma_memoized(const GammaItems& g, GammaMemo& memo) {
    std::vector<int> key = canonical_key(g);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Rational val = gamma_from_items(g);
    memo.emplace(std::move(key), val);
    return val;
}

// Extract the gamma items for rho and Pi: one item per cycle of rho,
// grouped by the blocks of Pi v Pi_rho; the block-count constraint uses the
// original #Pi per the definition.
GammaItems make_items(const Permutation& rho, const SetPartition& Pi) {
    int n = static_cast<int>(rho.size());
    std::vector<int> cycle_of(n, -1), cycle_len;
    for (int i = 0; i < n; ++i) {
        if (cycle_of[i] >= 0) continue;
        int c = static_cast<int>(cycle_len.size());
        int len = 0;
        for (int j = i; cycle_of[j] < 0; j = rho[j]) {
            cycle_of[j] = c;
            ++len;
        }
        cycle_len.push_back(len);
    }
    int m = static_cast<int>(cycle_len.size());
    UnionFind uf(m);
    for (int i = 0; i < n; ++i) {
        // join cycles sharing a Pi block
        for (int j = i + 1; j < n; ++j)
            if (Pi.block_of[i] == Pi.block_of[j]) uf.unite(cycle_of[i], cycle_of[j]);
    }
    GammaItems g;
    g.lengths = cycle_len;
    g.groups.assign(m, -1);
    std::vector<int> label(m, -1);
    int ng = 0;
    for (int c = 0; c < m; ++c) {
        int r = uf.find(c);
        if (label[r] < 0) label[r] = ng++;
        g.groups[c] = label[r];
    }
    g.needed_blocks = m - Pi.num_blocks + 1;
    return g;
}

// Lexicographic unranking of permutations of {0..n-1}.
Permutation unrank_permutation(int n, std::uint64_t rank) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::uint64_t> fact(n + 1, 1);
    for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
    Permutation p(n);
    for (int i = 0; i < n; ++i) {
        std::uint64_t f = fact[n - 1 - i];
        int idx = static_cast<int>(rank / f);
        rank %= f;
        p[i] = pool[idx];
        pool.erase(pool.begin() + idx);
    }
    return p;
}

// Canonical representative of the conjugacy class: consecutive cycles,
// longest first.
Permutation class_representative(const Partition& mu) {
    Permutation p;
    int start = 0;
    for (int len : mu.rows) {
        for (int k = 0; k < len; ++k) p.push_back(start + (k + 1) % len);
        start += len;
    }
    return p;
}

}  // namespace

Permutation compose(const Permutation& sigma, const Permutation& tau) {
    if (sigma.size() != tau.size()) throw domain_error("size mismatch in composition");
    Permutation r(sigma.size());
    for (size_t i = 0; i < sigma.size(); ++i) r[i] = tau[sigma[i]];
    return r;
}

ClassVector cycle_type(const Permutation& p) {
    int n = static_cast<int>(p.size());
    ClassVector cv;
    cv.mult.assign(n, 0);
    std::vector<char> seen(n, 0);
    for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (int j = i; !seen[j]; j = p[j]) {
            seen[j] = 1;
            ++len;
        }
        cv.mult[len - 1]++;
    }
    while (!cv.mult.empty() && cv.mult.back() == 0) cv.mult.pop_back();
    return cv;
}

SetPartition SetPartition::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
    SetPartition sp;
    sp.block_of.assign(n, -1);
    for (const auto& blk : blocks)
        for (int x : blk) {
            if (x < 0 || x >= n || sp.block_of[x] >= 0)
                throw domain_error("blocks must be disjoint subsets of the ground set");
            sp.block_of[x] = sp.num_blocks;
        }
    for (int x : sp.block_of)
        if (x < 0) throw domain_error("blocks must cover the ground set");
    sp.num_blocks = static_cast<int>(blocks.size());
    // relabel by first appearance
    std::vector<int> label(sp.num_blocks, -1);
    int next = 0;
    for (int& b : sp.block_of) {
        if (label[b] < 0) label[b] = next++;
        b = label[b];
    }
    return sp;
}

SetPartition SetPartition::from_cycles(const Permutation& p) {
    validate_permutation(p);
    int n = static_cast<int>(p.size());
    UnionFind uf(n);
    for (int i = 0; i < n; ++i) uf.unite(i, p[i]);
    return from_union_find(uf);
}

SetPartition SetPartition::join(const SetPartition& x, const SetPartition& y) {
    if (x.size() != y.size()) throw domain_error("join of partitions of different ground sets");
    int n = x.size();
    UnionFind uf(n);
    std::vector<int> first_x(x.num_blocks, -1), first_y(y.num_blocks, -1);
    for (int i = 0; i < n; ++i) {
        int bx = x.block_of[i], by = y.block_of[i];
        if (first_x[bx] < 0) first_x[bx] = i; else uf.unite(first_x[bx], i);
        if (first_y[by] < 0) first_y[by] = i; else uf.unite(first_y[by], i);
    }
    return from_union_find(uf);
}

SetPartition SetPartition::finest(int n) {
    SetPartition sp;
    sp.block_of.resize(n);
    for (int i = 0; i < n; ++i) sp.block_of[i] = i;
    sp.num_blocks = n;
    return sp;
}

MapStats map_stats(const PermPair& p) {
    if (static_cast<int>(p.sigma.size()) != p.n || static_cast<int>(p.tau.size()) != p.n)
        throw domain_error("permutation size mismatch");
    validate_permutation(p.sigma);
    validate_permutation(p.tau);
    MapStats s;
    s.sigma_type = cycle_type(p.sigma);
    s.tau_type = cycle_type(p.tau);
    s.product_type = cycle_type(compose(p.sigma, p.tau));
    s.sigma_cycles = s.sigma_type.num_cycles();
    s.tau_cycles = s.tau_type.num_cycles();
    s.product_cycles = s.product_type.num_cycles();
    UnionFind uf(p.n);
    for (int i = 0; i < p.n; ++i) {
        uf.unite(i, p.sigma[i]);
        uf.unite(i, p.tau[i]);
    }
    s.components = from_union_find(uf).num_blocks;
    s.euler = s.sigma_cycles + s.tau_cycles + s.product_cycles - p.n;
    s.planar = (s.euler == 2 * s.components);
    return s;
}

Rational w_coefficient(const ClassVector& alpha) {
    int n = alpha.n();
    if (n < 1) throw domain_error("W coefficient needs n >= 1");
    int parts = alpha.num_cycles();
    Rational w = Rational(factorial(2 * n + parts - 3)) / Rational(factorial(2 * n));
    if (n % 2 == 1) w = -w;
    for (size_t i = 0; i < alpha.mult.size(); ++i) {
        int p = static_cast<int>(i + 1);
        Rational v = -Rational(factorial(2 * p)) / Rational(factorial(p) * factorial(p - 1));
        for (int e = 0; e < alpha.mult[i]; ++e) w *= v;
    }
    return w;
}

Rational gamma_coefficient(const Permutation& rho, const SetPartition& Pi) {
    validate_permutation(rho);
    if (Pi.size() != static_cast<int>(rho.size()))
        throw domain_error("gamma: partition ground set must match the permutation");
    GammaMemo memo;
    return gamma_memoized(make_items(rho, Pi), memo);
}

std::vector<QPoly> free_energy_enum(int order, const EnumOptions& opts) {
    if (order < 1) throw domain_error("free energy order must be >= 1");
    std::vector<QPoly> F(order);

    for (int n = 1; n <= order; ++n) {
        std::vector<Partition> classes = partitions(n);
        std::uint64_t nfact = 1;
        for (int i = 2; i <= n; ++i) nfact *= i;

        // shard the tau loop; workers keep private accumulators and memos,
        // merged by exact addition (order-independent)
        int threads = std::max(1, opts.threads);
        std::uint64_t shard = std::max<std::uint64_t>(1, nfact / std::max(1, threads * 4));
        struct Task {
            size_t cls;
            std::uint64_t lo, hi;
        };
        std::vector<Task> tasks;
        for (size_t c = 0; c < classes.size(); ++c)
            for (std::uint64_t lo = 0; lo < nfact; lo += shard)
                tasks.push_back({c, lo, std::min(nfact, lo + shard)});

        std::atomic<size_t> next_task{0};
        std::atomic<std::uint64_t> processed{0};
        std::mutex merge_mu;
        QPoly fn;

        auto worker = [&]() {
            GammaMemo memo;
            QPoly local;
            std::uint64_t local_count = 0;
            for (;;) {
                size_t ti = next_task.fetch_add(1);
                if (ti >= tasks.size()) break;
                const Task& task = tasks[ti];
                const Partition& mu = classes[task.cls];
                Permutation sigma = class_representative(mu);
                Monomial theta_part;
                theta_part.a = ClassVector::from_partition(mu).mult;
                Rational weight = Rational(1) / Rational(ClassVector::from_partition(mu).z());

                SetPartition sig_part = SetPartition::from_cycles(sigma);
                Permutation tau = unrank_permutation(n, task.lo);
                for (std::uint64_t r = task.lo; r < task.hi; ++r) {
                    // map statistics without re-validating
                    Permutation rho = compose(sigma, tau);
                    ClassVector tau_type = cycle_type(tau);
                    ClassVector rho_type = cycle_type(rho);
                    UnionFind uf(n);
                    for (int i = 0; i < n; ++i) {
                        uf.unite(i, sigma[i]);
                        uf.unite(i, tau[i]);
                    }
                    SetPartition pi = from_union_find(uf);
                    int euler = sig_part.num_blocks + tau_type.num_cycles() +
                                rho_type.num_cycles() - n;
                    if (euler == 2 * pi.num_blocks) {
                        Rational g = gamma_memoized(make_items(rho, pi), memo);
                        if (g != 0) {
                            Monomial m = theta_part;
                            m.b = tau_type.mult;
                            m.trim();
                            local.add_term(m, g * weight);
                        }
                    }
                    if (opts.progress && ++local_count % opts.progress_every == 0)
                        opts.progress(processed.fetch_add(opts.progress_every) +
                                      opts.progress_every);
                    std::next_permutation(tau.begin(), tau.end());
                }
            }
            std::lock_guard<std::mutex> lock(merge_mu);
            fn += local;
        };

        if (threads == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        F[n - 1] = std::move(fn);
    }
    return F;
}

}  // namespace hciz
