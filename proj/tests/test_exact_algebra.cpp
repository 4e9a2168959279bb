#include <random>

#include "doctest.h"
#include "hciz/moment_shift.hpp"
#include "hciz/poly_n.hpp"
#include "hciz/polynomial.hpp"
#include "hciz/rational.hpp"
#include "hciz/series.hpp"

using namespace hciz;

namespace {

std::mt19937_64 rng(20260810);

Rational random_rational() {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9);
    return Rational(num(rng), den(rng));
}

PolyQ random_polyq(int maxdeg) {
    std::uniform_int_distribution<int> deg(0, maxdeg);
    std::vector<Rational> c(deg(rng) + 1);
    for (auto& x : c) x = random_rational();
    return PolyQ(c);
}

RatN random_ratn() {
    PolyQ den = random_polyq(2);
    while (den.is_zero()) den = random_polyq(2);
    return RatN(random_polyq(3), den);
}

QPoly random_qpoly() {
    QPoly p;
    std::uniform_int_distribution<int> idx(1, 3), exp(0, 2), nterms(1, 4);
    int k = nterms(rng);
    for (int i = 0; i < k; ++i) {
        Monomial m = Monomial::theta(idx(rng), exp(rng)) * Monomial::thetabar(idx(rng), exp(rng));
        p.add_term(m, random_rational());
    }
    return p;
}

using QSeries = TruncatedSeries<Rational>;

QSeries random_series(int order) {
    QSeries s(order);
    for (int k = 0; k <= order; ++k) s[k] = random_rational();
    return s;
}

}  // namespace

TEST_CASE("rational text form") {
    CHECK(rational_str(Rational(3, 1)) == "3");
    CHECK(rational_str(Rational(-4, 6)) == "-2/3");
    CHECK(rational_from_string("7/6") == Rational(7, 6));
    CHECK(rational_from_string("-4/-6") == Rational(2, 3));
    CHECK(rational_from_string("-12") == Rational(-12));
    CHECK(denominator(rational_from_string("4/6")) == 3);
    CHECK_THROWS_AS(rational_from_string("1/0"), domain_error);
    CHECK_THROWS_AS(rational_from_string("x"), domain_error);
}

TEST_CASE("ring laws on random small inputs") {
    for (int trial = 0; trial < 50; ++trial) {
        Rational a = random_rational(), b = random_rational(), c = random_rational();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);

        PolyQ p = random_polyq(3), q = random_polyq(3), r = random_polyq(3);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);

        RatN x = random_ratn(), y = random_ratn(), z = random_ratn();
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);

        QPoly u = random_qpoly(), v = random_qpoly(), w = random_qpoly();
        CHECK((u * v) * w == u * (v * w));
        CHECK(u * (v + w) == u * v + u * w);

        QSeries s1 = random_series(5), s2 = random_series(5), s3 = random_series(5);
        CHECK((s1 * s2) * s3 == s1 * (s2 * s3));
        CHECK(s1 * (s2 + s3) == s1 * s2 + s1 * s3);
    }
}

TEST_CASE("RatN canonical form") {
    // two construction routes for the same function compare equal
    PolyQ N = PolyQ::variable();
    RatN r1(N * N - PolyQ(Rational(1)), N + PolyQ(Rational(1)));
    RatN r2(N - PolyQ(Rational(1)));
    CHECK(r1 == r2);
    RatN r3 = RatN(PolyQ(Rational(2)) * N, PolyQ(Rational(4)));
    CHECK(r3 == RatN(N, PolyQ(Rational(2))));
    CHECK(r3.den().leading() == 1);  // monic denominator

    for (int trial = 0; trial < 30; ++trial) {
        RatN x = random_ratn(), y = random_ratn();
        RatN lhs = (x + y) * (x - y);
        RatN rhs = x * x - y * y;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("RatN expansion at infinity") {
    PolyQ N = PolyQ::variable();
    // N^4 / (2 (N^2 - 1)) = N^2/2 + 1/2 + 1/(2 N^2) + ...
    RatN f(N * N * N * N, (N * N - PolyQ(Rational(1))) * Rational(2));
    CHECK(f.degree_at_infinity() == 2);
    auto e = f.expand_at_infinity(-2);
    CHECK(e[2] == Rational(1, 2));
    CHECK(e.count(1) == 0);
    CHECK(e[0] == Rational(1, 2));
    CHECK(e.count(-1) == 0);
    CHECK(e[-2] == Rational(1, 2));
    CHECK(f.infinity_coeff(2, 2) == Rational(1, 2));
}

TEST_CASE("series log basics") {
    // log(1) = 0
    QSeries one = QSeries::constant(Rational(1), 4);
    CHECK(series_log(one).is_zero_series());

    // log(1 + x) at order 3 = x - x^2/2 + x^3/3
    QSeries onepx = one.truncated(3);
    onepx[1] = 1;
    QSeries lg = series_log(onepx);
    CHECK(lg[0] == 0);
    CHECK(lg[1] == 1);
    CHECK(lg[2] == Rational(-1, 2));
    CHECK(lg[3] == Rational(1, 3));

    // log(exp(x)) = x for random x with zero constant term
    for (int trial = 0; trial < 20; ++trial) {
        QSeries x = random_series(6);
        x[0] = 0;
        CHECK(series_log(series_exp(x)) == x);
    }

    QSeries bad = QSeries::constant(Rational(2), 3);
    CHECK_THROWS_AS(series_log(bad), domain_error);
}

TEST_CASE("series division tracks knowledge") {
    for (int trial = 0; trial < 20; ++trial) {
        QSeries b = random_series(6);
        b[0] = 0;
        b[1] = Rational(1) + random_rational() * random_rational();
        if (b[1] == 0) b[1] = 1;
        QSeries q = random_series(6);
        QSeries a = b * q;  // valuation >= 1
        QSeries back = series_div_exact(a, b);
        CHECK(back.order() == 5);
        for (int k = 0; k <= 5; ++k) CHECK(back[k] == q[k]);
    }
}

TEST_CASE("monomial text form and order") {
    Monomial m = Monomial::theta(2) * Monomial::theta(3, 2) * Monomial::thetabar(1);
    CHECK(m.str() == "t2^1*t3^2|tb1^1");
    CHECK(Monomial::parse("t2^1*t3^2|tb1^1") == m);
    CHECK(Monomial::parse("|") == Monomial::one());
    CHECK(m.a_weight() == 8);
    CHECK(m.b_weight() == 1);
    CHECK(Monomial::one() < Monomial::theta(1));
    CHECK(Monomial::theta(1) * Monomial::thetabar(1) < Monomial::theta(2) * Monomial::thetabar(2));
}

TEST_CASE("moment shift") {
    // theta_2 -> theta_2 - theta_1^2 under the traceless substitution
    QPoly t2(Monomial::theta(2), Rational(1));
    QPoly shifted = shift_to_traceless(t2);
    QPoly expected;
    expected.add_term(Monomial::theta(2), 1);
    expected.add_term(Monomial::theta(1, 2), -1);
    CHECK(shifted == expected);

    // zero shift is the identity map
    for (int trial = 0; trial < 10; ++trial) {
        QPoly p = random_qpoly();
        CHECK(shift_moments(p, Rational(0), Rational(0)) == p);
    }

    // numeric shift: theta_2 image at shift c is c^2 - 2 c theta_1 + theta_2
    Rational c(3, 2);
    QPoly img = shift_moments(t2, c, Rational(0));
    CHECK(img.coeff(Monomial::one()) == c * c);
    CHECK(img.coeff(Monomial::theta(1)) == -2 * c);
    CHECK(img.coeff(Monomial::theta(2)) == 1);
}

TEST_CASE("polynomial derivative and swap") {
    QPoly p;
    p.add_term(Monomial::theta(2) * Monomial::thetabar(1, 2), Rational(3));
    QPoly d = p.derivative(1, true);
    CHECK(d.coeff(Monomial::theta(2) * Monomial::thetabar(1)) == 6);
    QPoly s = p.swap_ab();
    CHECK(s.coeff(Monomial::theta(1, 2) * Monomial::thetabar(2)) == 3);
}
