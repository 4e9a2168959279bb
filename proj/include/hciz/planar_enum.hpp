#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hciz/partitions.hpp"
#include "hciz/polynomial.hpp"

namespace hciz {

// Permutation of {0..n-1} as its image table.
using Permutation = std::vector<int>;

// Product "apply sigma first, then tau": (sigma tau)(i) = tau(sigma(i)).
// This matches the face convention of the bicolored-map encoding.
Permutation compose(const Permutation& sigma, const Permutation& tau);

ClassVector cycle_type(const Permutation& p);

// Pair of permutations encoding a bicolored map with labelled edges; sigma
// rotates edges clockwise around white vertices, tau around black vertices.
struct PermPair {
    int n = 0;
    Permutation sigma, tau;
};

// Partition of {0..n-1}; blocks are numbered 0..num_blocks-1 in order of
// first appearance.
struct SetPartition {
    std::vector<int> block_of;
    int num_blocks = 0;

    int size() const { return static_cast<int>(block_of.size()); }
    static SetPartition from_blocks(int n, const std::vector<std::vector<int>>& blocks);
    static SetPartition from_cycles(const Permutation& p);
    static SetPartition join(const SetPartition& x, const SetPartition& y);
    static SetPartition finest(int n);
    friend bool operator==(const SetPartition& a, const SetPartition& b) {
        return a.block_of == b.block_of;
    }
};

struct MapStats {
    ClassVector sigma_type, tau_type, product_type;
    int sigma_cycles = 0, tau_cycles = 0, product_cycles = 0;
    int components = 0;  // #(Pi_sigma v Pi_tau)
    int euler = 0;       // #Pi_sigma + #Pi_tau + #Pi_{sigma tau} - n
    bool planar = false; // euler == 2 * components
};

MapStats map_stats(const PermPair& p);

// W_alpha = (-1)^n (2n + sum a_p - 3)!/(2n)! prod_p ( -(2p)!/(p!(p-1)!) )^{a_p}.
// Always an integer in practice; returned exactly.
Rational w_coefficient(const ClassVector& alpha);

// gamma(rho, Pi) = sum over partitions Pi' of the cycles of rho with
// #(Pi v Pi') = 1 and #Pi_rho - #Pi' = #Pi - 1 of the product of W over the
// cycle types of rho restricted to each block of Pi'.
Rational gamma_coefficient(const Permutation& rho, const SetPartition& Pi);

struct EnumOptions {
    int threads = 1;
    std::function<void(std::uint64_t)> progress;  // called with pairs processed
    std::uint64_t progress_every = 1 << 20;
};

// Planar permutation-pair expansion of the free energy:
//   F_n = 1/n! sum_{sigma,tau planar} gamma(sigma tau, Pi_sigma v Pi_tau)
//         theta^{C_sigma} thetabar^{C_tau},
// with sigma reduced to one representative per conjugacy class weighted by
// the class size.  Returns F_1..F_order; deterministic for any thread count.
std::vector<QPoly> free_energy_enum(int order, const EnumOptions& opts = {});

}  // namespace hciz
