#include "hciz/haar_mc.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "hciz/errors.hpp"

namespace hciz {

namespace {

constexpr std::int64_t kShardSize = 8192;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// uniform in (0,1]; the +1 keeps log() off zero
double uniform_unit(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
}

// Box-Muller pair; deterministic for a fixed platform
void gaussian_pair(std::mt19937_64& rng, double& g0, double& g1) {
    double u1 = uniform_unit(rng);
    double u2 = uniform_unit(rng);
    double r = std::sqrt(-2.0 * std::log(u1));
    g0 = r * std::cos(2.0 * M_PI * u2);
    g1 = r * std::sin(2.0 * M_PI * u2);
}

struct Welford {
    std::int64_t n = 0;
    double mean = 0.0, m2 = 0.0;

    void push(double x) {
        ++n;
        double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    // Chan's pairwise combination; applied in fixed shard order
    void merge(const Welford& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        double d = o.mean - mean;
        std::int64_t tot = n + o.n;
        m2 += o.m2 + d * d * (static_cast<double>(n) * static_cast<double>(o.n)) /
                         static_cast<double>(tot);
        mean += d * static_cast<double>(o.n) / static_cast<double>(tot);
        n = tot;
    }
};

McEstimate finish(const Welford& w, std::uint64_t seed) {
    if (w.n < 2) throw domain_error("need at least 2 samples");
    McEstimate e;
    e.mean = w.mean;
    e.std_error = std::sqrt(w.m2 / static_cast<double>(w.n - 1) / static_cast<double>(w.n));
    e.samples = w.n;
    e.seed = seed;
    return e;
}

template <typename SampleFn>
McEstimate sharded_estimate(std::int64_t samples, std::uint64_t seed, int threads,
                            SampleFn&& one_sample) {
    if (samples < 100) throw domain_error("need at least 100 samples");
    std::int64_t nshards = (samples + kShardSize - 1) / kShardSize;
    std::vector<Welford> shard(static_cast<size_t>(nshards));
    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::int64_t k = next.fetch_add(1);
            if (k >= nshards) break;
            std::int64_t count = std::min<std::int64_t>(kShardSize, samples - k * kShardSize);
            std::mt19937_64 rng = derived_stream(seed, static_cast<std::uint64_t>(k));
            Welford w;
            for (std::int64_t i = 0; i < count; ++i) w.push(one_sample(rng));
            shard[static_cast<size_t>(k)] = w;
        }
    };
    int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    Welford total;
    for (const Welford& w : shard) total.merge(w);
    return finish(total, seed);
}

}  // namespace

std::mt19937_64 derived_stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = splitmix64(seed ^ splitmix64(index));
    return std::mt19937_64(s);
}

Eigen::MatrixXcd sample_haar(int N, std::mt19937_64& rng) {
    if (N < 1) throw domain_error("need N >= 1");
    Eigen::MatrixXcd g(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            double re, im;
            gaussian_pair(rng, re, im);
            g(i, j) = std::complex<double>(re, im) * M_SQRT1_2;
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(N, N);
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < N; ++j) {
        std::complex<double> d = r(j, j);
        double a = std::abs(d);
        std::complex<double> phase = a == 0.0 ? 1.0 : d / a;
        q.col(j) *= phase;
    }
    return q;
}

McEstimate mc_estimate(const SpectralData& d, std::int64_t samples, std::uint64_t seed,
                       int threads) {
    int N = static_cast<int>(d.a.size());
    if (N < 1 || d.b.size() != d.a.size()) throw domain_error("bad spectral data");
    if (!(d.s > 0)) throw domain_error("coupling s must be positive");
    double c = static_cast<double>(N) / d.s;
    return sharded_estimate(samples, seed, threads, [&, N, c](std::mt19937_64& rng) {
        Eigen::MatrixXcd u = sample_haar(N, rng);
        double tr = 0.0;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) tr += d.a[i] * std::norm(u(i, j)) * d.b[j];
        return std::exp(c * tr);
    });
}

McEstimate mc_estimate_rect(const RectangularData& d, std::int64_t samples, std::uint64_t seed,
                            int threads) {
    if (d.n2 < 1 || d.n1 < d.n2) throw domain_error("need N1 >= N2 >= 1");
    if (static_cast<int>(d.a.size()) != d.n2 || static_cast<int>(d.b.size()) != d.n2)
        throw domain_error("need N2 squared singular values on each side");
    if (!(d.s > 0)) throw domain_error("coupling s must be positive");
    for (double x : d.a)
        if (x < 0) throw domain_error("squared singular values must be >= 0");
    for (double x : d.b)
        if (x < 0) throw domain_error("squared singular values must be >= 0");

    int n1 = d.n1, n2 = d.n2;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(n1, n2);  // A+ A = diag(a)
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(n2, n1);  // B B+ = diag(b)
    for (int i = 0; i < n2; ++i) {
        A(i, i) = std::sqrt(d.a[i]);
        B(i, i) = std::sqrt(d.b[i]);
    }
    double c = static_cast<double>(n2) / d.s;  // N = min(N1, N2) = N2
    return sharded_estimate(samples, seed, threads, [&, c](std::mt19937_64& rng) {
        Eigen::MatrixXcd u = sample_haar(n2, rng);
        Eigen::MatrixXcd v = sample_haar(n1, rng);
        std::complex<double> tr = (A * u * B * v.adjoint()).trace();
        return std::exp(c * 2.0 * tr.real());
    });
}

}  // namespace hciz
