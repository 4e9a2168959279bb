#pragma once

#include <vector>

#include "hciz/partitions.hpp"
#include "hciz/poly_n.hpp"

namespace hciz {

// Character of the irreducible S_n representation lambda on the class alpha,
// by the Murnaghan-Nakayama recursion (largest cycle removed first).
long long sn_character(const Partition& lam, const ClassVector& alpha);

// Dimension of the lambda representation of S_n: n! / prod(hooks).
Int sn_dimension(const Partition& lam);

// Dimension of the GL(N) representation lambda as a polynomial in formal N:
// prod over boxes of (N + content) / hook.
PolyQ gl_dimension_poly(const Partition& lam);
inline RatN gl_dimension(const Partition& lam) { return RatN(gl_dimension_poly(lam)); }

// Full character table of S_n; lambdas and classes both follow the
// partitions(n) order.  Cached and safe for concurrent readers.
struct CharacterTable {
    int n = 0;
    std::vector<Partition> lambdas;
    std::vector<ClassVector> classes;
    std::vector<std::vector<long long>> chi;  // chi[lambda][class]

    static const CharacterTable& get(int n);
};

// Exact determinant of a rational matrix (Gaussian elimination with exact
// arithmetic; pivoting only to skip zeros).
Rational rational_det(std::vector<std::vector<Rational>> m);

// Schur polynomial value chi_lambda(a) = Delta_lambda(a) / Delta(a) for
// distinct rational eigenvalues, via the bialternant determinants.
Rational schur_at(const Partition& lam, const std::vector<Rational>& a);

}  // namespace hciz
