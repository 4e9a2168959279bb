#pragma once

#include "hciz/polynomial.hpp"

namespace hciz {

// Moments of A - c*I in terms of moments of A:
//   theta'_p = sum_{q=0}^{p} C(p,q) theta_q (-c)^{p-q},  theta_0 = 1.
inline QPoly shifted_moment_image(int p, const Rational& c, bool bar) {
    QPoly img;
    Rational pw = 1;  // (-c)^{p-q}, built from q = p downwards
    for (int q = p; q >= 0; --q) {
        Rational coef = Rational(binomial(p, q)) * pw;
        Monomial m = q == 0 ? Monomial::one()
                            : (bar ? Monomial::thetabar(q) : Monomial::theta(q));
        img.add_term(m, coef);
        pw *= -c;
    }
    return img;
}

// Substitute every theta_p / thetabar_p by its shifted combination with
// numeric shifts c (a side) and cbar (b side).  The result is generally not
// graded; grading is restored only on quantities that are shift-covariant.
inline QPoly shift_moments(const QPoly& p, const Rational& c, const Rational& cbar) {
    return p.substitute([&](int q) { return shifted_moment_image(q, c, false); },
                        [&](int q) { return shifted_moment_image(q, cbar, true); });
}

// Symbolic variant: the shift is the first moment itself, so the images are
//   theta_p -> sum_q C(p,q) theta_q (-theta_1)^{p-q}
// (the moments of the traceless part).  theta_1 maps to 0, e.g.
// theta_2 -> theta_2 - theta_1^2.
inline QPoly traceless_moment_image(int p, bool bar) {
    QPoly img;
    for (int q = 0; q <= p; ++q) {
        Monomial m = q == 0 ? Monomial::one()
                            : (bar ? Monomial::thetabar(q) : Monomial::theta(q));
        Monomial pw = bar ? Monomial::thetabar(1, p - q) : Monomial::theta(1, p - q);
        Rational sign = (p - q) % 2 == 0 ? 1 : -1;
        img.add_term(m * pw, Rational(binomial(p, q)) * sign);
    }
    return img;
}

inline QPoly shift_to_traceless(const QPoly& p) {
    return p.substitute([&](int q) { return traceless_moment_image(q, false); },
                        [&](int q) { return traceless_moment_image(q, true); });
}

}  // namespace hciz
