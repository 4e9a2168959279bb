#pragma once

#include <map>
#include <vector>

#include "hciz/rational.hpp"
#include "hciz/series.hpp"

namespace hciz {

// Truncated series in 1/hbar: coefficient k is the coefficient of hbar^{-k}.
// The truncation order doubles as the record of how many coefficients are
// still exact after divisions.
using HbarSeries = TruncatedSeries<Rational>;

// Finitely many nonzero contour times t_q, tbar_q (exact rationals).
struct TodaTimes {
    std::map<int, Rational> t, tbar;  // q >= 1
};

// Moment-matrix entry
//   M_ij = sum_m hbar^{-m}/m! P_{m-j}(t) Pbar_{m-i}(tbar)
// where exp(hbar^{-1} sum_q t_q u^q) = sum_k P_k u^k; each P_k carries
// hbar^{-1}..hbar^{-k}, so the sum below order `order` is finite.
HbarSeries moment_entry(int i, int j, const TodaTimes& times, int order);

// tau_N = det(M_ij)_{0<=i,j<N}; tau_0 = 1.
HbarSeries tau(int N, const TodaTimes& times, int order);

// Residual of the Toda lattice equation
//   tau_{n+1} tau_{n-1} = tau_n D Dbar tau_n - D tau_n Dbar tau_n,
// identically zero as a series.  D, Dbar are the derivatives in the contour
// times normalized so that D M_ij = M_{i,j+1} (index shift); in terms of the
// spectral times t_1 this is hbar * d/dt_1.
HbarSeries toda_check(int n, const TodaTimes& times, int order);

// Entries specialized to eigenvalue data a, b via t_q = hbar/q sum a_i^q;
// the hbar factors cancel and P_k reduces to the complete homogeneous
// symmetric polynomial h_k(a).
HbarSeries tau_spectral(int N, const std::vector<Rational>& a, const std::vector<Rational>& b,
                        int order);

// Determinant of a series matrix by fraction-free (Bareiss) elimination;
// the returned truncation order accounts for knowledge lost to the exact
// divisions by earlier pivots.
HbarSeries det_series(std::vector<std::vector<HbarSeries>> m);

// Desnanot-Jacobi identity on an exact numeric matrix:
//   det M * det(inner core) = det M^{11} det M^{nn} - det M^{1n} det M^{n1}.
bool desnanot_jacobi_check(const std::vector<std::vector<Rational>>& m);

}  // namespace hciz
