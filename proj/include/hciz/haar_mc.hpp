#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "hciz/exact_eval.hpp"

namespace hciz {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;  // sample stddev / sqrt(samples)
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};

// Haar-distributed unitary: complex Ginibre matrix, QR, then the diagonal
// phase correction that makes the distribution exactly Haar.
Eigen::MatrixXcd sample_haar(int N, std::mt19937_64& rng);

// RNG stream for shard `index` derived from the master seed; reproducible
// from (seed, index) alone.
std::mt19937_64 derived_stream(std::uint64_t seed, std::uint64_t index);

// Sample mean / standard error of exp((N/s) Tr A U B U+) over Haar samples.
// Sharded into fixed-size blocks with per-shard derived streams and merged
// in shard order, so results are bit-identical for any thread count.
McEstimate mc_estimate(const SpectralData& d, std::int64_t samples, std::uint64_t seed,
                       int threads = 1);

// Same for the rectangular two-group integrand exp((N/s) Tr(A U B V+ + h.c.)).
McEstimate mc_estimate_rect(const RectangularData& d, std::int64_t samples, std::uint64_t seed,
                            int threads = 1);

}  // namespace hciz
