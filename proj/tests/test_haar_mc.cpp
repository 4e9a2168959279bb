#include <cmath>

#include "doctest.h"
#include "hciz/exact_eval.hpp"
#include "hciz/haar_mc.hpp"

using namespace hciz;

TEST_CASE("sampled matrices are unitary") {
    std::mt19937_64 rng = derived_stream(7, 0);
    for (int N : {1, 2, 5}) {
        for (int rep = 0; rep < 20; ++rep) {
            Eigen::MatrixXcd u = sample_haar(N, rng);
            Eigen::MatrixXcd err = u.adjoint() * u - Eigen::MatrixXcd::Identity(N, N);
            CHECK(err.cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("N=1 samples are unit-modulus phases") {
    std::mt19937_64 rng = derived_stream(11, 0);
    double mean_re = 0.0;
    int reps = 20000;
    for (int rep = 0; rep < reps; ++rep) {
        Eigen::MatrixXcd u = sample_haar(1, rng);
        CHECK(std::abs(std::abs(u(0, 0)) - 1.0) < 1e-14);
        mean_re += u(0, 0).real();
    }
    // uniform phase: E[Re u] = 0, sd of the mean ~ 1/sqrt(2 reps)
    CHECK(std::abs(mean_re / reps) < 5.0 / std::sqrt(2.0 * reps));
}

TEST_CASE("E[|U_11|^2] = 1/N") {
    int N = 3, samples = 100000;
    std::mt19937_64 rng = derived_stream(13, 0);
    double mean = 0.0, m2 = 0.0;
    for (int k = 1; k <= samples; ++k) {
        Eigen::MatrixXcd u = sample_haar(N, rng);
        double x = std::norm(u(0, 0));
        double d = x - mean;
        mean += d / k;
        m2 += d * (x - mean);
    }
    double se = std::sqrt(m2 / (samples - 1.0) / samples);
    CHECK(std::abs(mean - 1.0 / N) < 4.0 * se);
}

TEST_CASE("seed determinism and thread independence") {
    SpectralData d{{0.0, 1.0}, {0.0, 1.0}, 2.0};
    McEstimate a = mc_estimate(d, 20000, 42);
    McEstimate b = mc_estimate(d, 20000, 42);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);

    McEstimate c = mc_estimate(d, 20000, 42, 4);
    CHECK(c.mean == a.mean);
    CHECK(c.std_error == a.std_error);

    McEstimate e = mc_estimate(d, 20000, 43);
    CHECK(e.mean != a.mean);
}

TEST_CASE("constant integrand when b = 0") {
    SpectralData d{{0.3, 1.7}, {0.0, 0.0}, 1.0};
    McEstimate e = mc_estimate(d, 1000, 1);
    CHECK(e.mean == 1.0);
    CHECK(e.std_error == 0.0);
}

TEST_CASE("estimate matches the exact value within 3 sigma") {
    SpectralData d{{0.0, 1.0}, {0.0, 1.0}, 2.0};
    McEstimate e = mc_estimate(d, 100000, 42, 2);
    double exact = std::exp(1.0) - 1.0;  // eval_unitary_integral reference
    CHECK(std::abs(e.mean - exact) < 3.0 * e.std_error);

    RectangularData r{1, 1, {1.0}, {1.0}, 1.0};
    McEstimate er = mc_estimate_rect(r, 100000, 42, 2);
    double i0 = eval_rectangular(r).value;
    CHECK(std::abs(er.mean - i0) < 3.0 * er.std_error);

    // genuinely rectangular groups (N1 > N2)
    RectangularData r21{2, 1, {0.7}, {1.3}, 1.5};
    McEstimate er21 = mc_estimate_rect(r21, 100000, 9, 2);
    double exact21 = eval_rectangular(r21).value;
    CHECK(std::abs(er21.mean - exact21) < 3.0 * er21.std_error);
}

TEST_CASE("permutation and swap invariance within 3 sigma") {
    SpectralData d{{0.2, 0.9, 1.5}, {-0.4, 0.3, 1.1}, 3.0};
    McEstimate base = mc_estimate(d, 60000, 5);

    SpectralData perm{{1.5, 0.2, 0.9}, {-0.4, 0.3, 1.1}, 3.0};
    McEstimate p = mc_estimate(perm, 60000, 6);
    CHECK(std::abs(base.mean - p.mean) < 3.0 * (base.std_error + p.std_error));

    SpectralData swap{{-0.4, 0.3, 1.1}, {0.2, 0.9, 1.5}, 3.0};
    McEstimate s = mc_estimate(swap, 60000, 7);
    CHECK(std::abs(base.mean - s.mean) < 3.0 * (base.std_error + s.std_error));
}

TEST_CASE("domain errors") {
    SpectralData d{{0.0, 1.0}, {0.0, 1.0}, 2.0};
    CHECK_THROWS_AS(mc_estimate(d, 10, 1), domain_error);  // too few samples
    SpectralData bad{{0.0, 1.0}, {0.0}, 2.0};
    CHECK_THROWS_AS(mc_estimate(bad, 1000, 1), domain_error);
}
