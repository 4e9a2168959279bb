#pragma once

#include <vector>

#include "hciz/polynomial.hpp"
#include "hciz/series.hpp"

namespace hciz {

// 1/s series of the unitary integral with the matrix size N kept formal.
// Coefficient of s^{-n} is a polynomial in theta/thetabar whose coefficients
// are rational functions of N; it is graded with a-weight = b-weight = n.
using NSeries = TruncatedSeries<Polynomial<RatN>>;

// I = sum_n (N/s)^n / n! sum_{lambda |- n} d^_lambda chi_lambda(A) chi_lambda(B) / d_lambda,
// with each character expanded over classes,
//   chi_lambda(A) = sum_{alpha |- n} chi^_lambda(alpha) / z_alpha * prod_p (N theta_p)^{alpha_p}.
NSeries character_series(int order);

// log of the above, coefficient by coefficient (formal N).
NSeries log_character_series(int order);

// Leading-N^2 part of each log coefficient: F_n for n = 1..order.
// Throws internal_error if any coefficient grows faster than N^2 or if the
// N^2 part of an order vanishes identically.
std::vector<QPoly> free_energy_oracle(int order);

// Exact numeric partial sum of the character series through s^{-order} at
// integer N and rational spectral data (representations with more than N
// rows drop out).
Rational character_series_value(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                const Rational& s, int order);

// Diagonal character expansion of the rectangular two-group integral:
//   I = sum_lambda hbar^{-|lambda|} w_lambda s_lambda(a) s_lambda(b) / w_empty,
//   w_lambda = prod_{p=1}^{N} 1/((l_p + p - 1)! (l_p + p - 1 + nu)!)
// with increasing rows padded to N = n2, nu = n1 - n2, hbar = s/N; requires
// distinct a's and b's.  Series oracle for eval_rectangular.
Rational rect_series_value(int n1, int n2, const std::vector<Rational>& a,
                           const std::vector<Rational>& b, const Rational& s, int order);

}  // namespace hciz
