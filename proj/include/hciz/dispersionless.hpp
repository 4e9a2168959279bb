#pragma once

#include <vector>

#include "hciz/polynomial.hpp"

namespace hciz {

// One-sided data: general theta_q for q <= n, thetabar fixed to (1, 0, ...)
// by homogeneity.

// Formal fixed point of psi = 1 + sum_q (-1)^{q+1} (2q)!/(q!)^2 theta_q psi^{2q+1},
// as a polynomial in theta_1..theta_n truncated at total weight <= order.
// The branch is the one with psi = 1 at zero coupling.
QPoly psi_one_sided_series(int n, int order);

// Damped Newton iteration for the same fixed point at numeric theta;
// throws precision_error if the iteration cap is hit.
double psi_one_sided_numeric(const std::vector<double>& theta, double tol = 1e-14,
                             int max_iter = 200);

// Lagrange-inversion series for the one-sided free energy:
//   F = sum_alpha (sum(2q+1)a_q - 3)!/(sum 2q a_q)! prod_q 1/a_q!
//       ((-1)^{q+1} (2q)!/(q!)^2 theta_q)^{a_q} thetabar_1^{sum q a_q},
// truncated at total weight sum q a_q <= order.
QPoly free_energy_one_sided(int n, int order);

// Diagonal data theta_q = delta_{qn} theta_n, thetabar likewise: closed-form
// series in x = theta_n thetabar_n,
//   psi_k = (n+1)^k ((n+2)k)! / (((n+1)k+1)! k!),
//   F_k   = (n+1)^k ((n+2)k-3)! / (((n+1)k)! k!)   (k >= 1).
struct DiagonalSeries {
    std::vector<Rational> psi;  // k = 0..order
    std::vector<Rational> F;    // k = 0..order, F[0] = 0
};
DiagonalSeries diagonal_series(int n, int order);

// One-sided spectral curve
//   b(l) = 1/2 ( l + theta_1 l^2 + ... + theta_n l^{n+1}
//                + sqrt(l (1 + l/(4 psi^2))) Q(l) ),
// where Q is the polynomial part of 2 psi (1 + theta_1 l + ... + theta_n l^n)
// / sqrt(1 + 4 psi^2 / l) in the expansion at l = infinity; Q(0) = 2 holds
// exactly when psi solves its fixed-point equation.
struct CurveData {
    std::vector<double> theta;  // theta[q-1], q = 1..n
    double psi = 1.0;
    std::vector<double> Q;      // Q[r] = coefficient of l^r, degree n
};

CurveData build_curve(const std::vector<double>& theta, double psi, double tol = 1e-9);

double curve_b(const CurveData& c, double ell);

// Asymptotic expansion of m = b/l at l -> infinity: returns the coefficients
// of l^{-q} for q = 1..qmax.  These equal d f/d t_q of the dispersionless
// tau function at s = 1.
std::vector<double> m_expansion(const CurveData& c, int qmax);

}  // namespace hciz
