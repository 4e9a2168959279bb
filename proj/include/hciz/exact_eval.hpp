#pragma once

#include <vector>

#include "hciz/errors.hpp"

namespace hciz {

// Eigenvalue data for the unitary integral over U(N) with coupling
// exp((N/s) Tr A U B U+); N = a.size() = b.size(), s > 0.
struct SpectralData {
    std::vector<double> a, b;
    double s = 1.0;
};

// Two-group rectangular data: a, b are the n2 nonnegative squared singular
// values; nu = n1 - n2 >= 0.
struct RectangularData {
    int n1 = 1, n2 = 1;
    std::vector<double> a, b;
    double s = 1.0;
};

// K-fold chain of unitary integrals; a, b are the min(sizes) eigenvalues of
// the ordered products of the coupling matrices.
struct ChainData {
    std::vector<int> sizes;
    std::vector<double> a, b;
    double s = 1.0;
};

// Working precision in bits (>= 53); results are validated by re-evaluating
// at doubled precision and escalating until the target relative error is
// met or max_bits is exhausted (precision_error in that case).
struct PrecisionPolicy {
    int bits = 128;
    double target_rel_error = 1e-12;
    int max_bits = 4096;
};

struct EvalResult {
    double value = 0.0;
    double rel_error = 0.0;  // estimated, from the precision ladder
    int bits_used = 0;
    bool confluent = false;  // divided-difference branch was taken
};

// Exact finite-N determinant formula
//   I = (prod_{p<N} p!) (N/s)^{-N(N-1)/2} det(exp((N/s) a_i b_j)) / (Delta(a) Delta(b)),
// switching to confluent (divided-difference) evaluation when eigenvalues
// on either side coalesce within 2^{-bits/4} of the spread.
EvalResult eval_unitary_integral(const SpectralData& d, const PrecisionPolicy& p = {});

// Rectangular two-group integral with the Bessel-kernel determinant;
// the kernel is evaluated from its defining power series.
EvalResult eval_rectangular(const RectangularData& d, const PrecisionPolicy& p = {});

// K-chain integral det(phi(a_i b_j (N/s)^K)) / (Delta(a) Delta(b)) with
// phi(x) = sum_m x^m / prod_k (m + N_k - N)!; the overall constant is fixed
// by I -> 1 as all a_i -> 0.
EvalResult eval_chain(const ChainData& d, const PrecisionPolicy& p = {});

}  // namespace hciz
