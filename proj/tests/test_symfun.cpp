#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "hciz/characters.hpp"
#include "hciz/free_cumulants.hpp"
#include "hciz/partitions.hpp"
#include "hciz/polynomial.hpp"

using namespace hciz;

namespace {

// Independent character oracle: chi_lambda(alpha) is the coefficient of
// x^{lambda + delta} in a_delta(x) * p_alpha(x), where a_delta is the
// alternant sum_{w in S_n} sgn(w) x^{w(delta)}, delta = (n-1, ..., 1, 0).
// Exact multivariate expansion; no shared code with the recursion under test.
using ExpMap = std::map<std::vector<int>, long long>;

ExpMap alternant(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    ExpMap out;
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        std::vector<int> exps(n);
        for (int i = 0; i < n; ++i) exps[i] = n - 1 - perm[i];
        out[exps] += (inv % 2 == 0) ? 1 : -1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

ExpMap multiply_by_power_sum(const ExpMap& f, int p, int n) {
    ExpMap out;
    for (const auto& [e, c] : f)
        for (int i = 0; i < n; ++i) {
            std::vector<int> e2 = e;
            e2[i] += p;
            out[e2] += c;
        }
    return out;
}

long long oracle_character(const Partition& lam, const ClassVector& alpha) {
    int n = lam.n();
    ExpMap f = alternant(n);
    for (size_t i = 0; i < alpha.mult.size(); ++i)
        for (int k = 0; k < alpha.mult[i]; ++k)
            f = multiply_by_power_sum(f, static_cast<int>(i + 1), n);
    std::vector<int> target(n, 0);
    for (int i = 0; i < lam.num_rows(); ++i) target[i] = lam.rows[i];
    for (int i = 0; i < n; ++i) target[i] += n - 1 - i;
    auto it = f.find(target);
    return it == f.end() ? 0 : it->second;
}

std::mt19937_64 rng(987654321);

}  // namespace

TEST_CASE("partition enumeration") {
    CHECK(partitions(0).size() == 1);
    CHECK(partitions(0)[0].empty());

    auto p4 = partitions(4);
    REQUIRE(p4.size() == 5);
    CHECK(p4[0].rows == std::vector<int>{4});
    CHECK(p4[1].rows == std::vector<int>{3, 1});
    CHECK(p4[2].rows == std::vector<int>{2, 2});
    CHECK(p4[3].rows == std::vector<int>{2, 1, 1});
    CHECK(p4[4].rows == std::vector<int>{1, 1, 1, 1});

    CHECK(partitions(8).size() == 22);

    CHECK(Partition::parse("3,1,1").str() == "3,1,1");
    CHECK_THROWS_AS(Partition::parse("1,3"), domain_error);
}

TEST_CASE("class vectors") {
    ClassVector a = ClassVector::from_partition(Partition{{3, 1, 1}});
    CHECK(a.n() == 5);
    CHECK(a.num_cycles() == 3);
    CHECK(a.count(1) == 2);
    CHECK(a.count(3) == 1);
    CHECK(a.z() == 6);              // 1^2 * 2! * 3^1 * 1!
    CHECK(a.class_size() == 20);    // 5!/6
    CHECK(a.to_partition().rows == std::vector<int>{3, 1, 1});
}

TEST_CASE("characters: frozen examples") {
    // trivial representation on any class
    for (int n = 1; n <= 6; ++n)
        for (const Partition& mu : partitions(n))
            CHECK(sn_character(Partition{{n}}, ClassVector::from_partition(mu)) == 1);

    // sign representation on an even permutation
    CHECK(sn_character(Partition{{1, 1, 1}},
                       ClassVector::from_partition(Partition{{3}})) == 1);
    // frozen from the alternant oracle below
    CHECK(sn_character(Partition{{2, 1}},
                       ClassVector::from_partition(Partition{{3}})) == -1);
}

TEST_CASE("characters agree with the alternant oracle, n <= 5") {
    for (int n = 1; n <= 5; ++n)
        for (const Partition& lam : partitions(n))
            for (const Partition& mu : partitions(n)) {
                ClassVector alpha = ClassVector::from_partition(mu);
                CHECK(sn_character(lam, alpha) == oracle_character(lam, alpha));
            }
    CHECK_THROWS_AS(
        sn_character(Partition{{2}}, ClassVector::from_partition(Partition{{3}})),
        domain_error);
}

TEST_CASE("column orthogonality, n <= 6") {
    for (int n = 1; n <= 6; ++n) {
        const CharacterTable& t = CharacterTable::get(n);
        for (size_t a = 0; a < t.classes.size(); ++a)
            for (size_t b = 0; b < t.classes.size(); ++b) {
                Int sum = 0;
                for (size_t l = 0; l < t.lambdas.size(); ++l)
                    sum += Int(t.chi[l][a]) * Int(t.chi[l][b]);
                if (a == b)
                    CHECK(sum == t.classes[a].z());  // n!/|class|
                else
                    CHECK(sum == 0);
            }
    }
}

TEST_CASE("dimensions") {
    CHECK(sn_dimension(Partition{{5}}) == 1);
    CHECK(sn_dimension(Partition{{2, 1}}) == 2);  // hooks 3,1,1
    CHECK(sn_dimension(Partition{{2, 2}}) == 2);  // hooks 3,2,2,1

    // hook formula equals the character at [1^n]
    for (int n = 1; n <= 8; ++n) {
        ClassVector id;
        id.mult.assign(1, n);
        for (const Partition& lam : partitions(n))
            CHECK(sn_dimension(lam) == sn_character(lam, id));
    }
}

TEST_CASE("gl dimension polynomials") {
    PolyQ N = PolyQ::variable();
    CHECK(gl_dimension_poly(Partition{{1}}) == N);
    CHECK(gl_dimension_poly(Partition{{2}}) == N * (N + PolyQ(Rational(1))) * Rational(1, 2));
    CHECK(gl_dimension_poly(Partition{{1, 1}}) == N * (N - PolyQ(Rational(1))) * Rational(1, 2));
}

TEST_CASE("dimension ratio identity at integer N") {
    // ratio d^_lambda / d_lambda(N) = n! prod_p (p-1)!/(lambda_p + p - 1)!
    // with lambda in the increasing convention padded to N rows
    std::uniform_int_distribution<int> extra(0, 12);
    for (int n = 1; n <= 6; ++n)
        for (const Partition& lam : partitions(n)) {
            for (int trial = 0; trial < 5; ++trial) {
                int N = lam.num_rows() + extra(rng);
                if (N == 0) continue;
                std::vector<int> inc = lam.increasing_padded(N);
                Rational rhs = Rational(factorial(n));
                for (int p = 1; p <= N; ++p)
                    rhs *= Rational(factorial(p - 1)) / Rational(factorial(inc[p - 1] + p - 1));
                Rational dN = gl_dimension_poly(lam).eval(Rational(N));
                CHECK(Rational(sn_dimension(lam)) == rhs * dN);
            }
        }
}

TEST_CASE("frobenius consistency with numeric eigenvalues, n <= 5") {
    // N^{sum alpha_p} tr_alpha A = sum_lambda chi_lambda(A) chi^_lambda(alpha)
    for (int n = 1; n <= 5; ++n) {
        int N = n;
        std::vector<Rational> a;
        for (int i = 0; i < N; ++i) a.push_back(Rational(2 * i + 1, i + 2));
        // power sums
        std::vector<Rational> psum(n + 1, Rational(0));
        for (int p = 1; p <= n; ++p)
            for (const Rational& x : a) {
                Rational xp = 1;
                for (int e = 0; e < p; ++e) xp *= x;
                psum[p] += xp;
            }
        for (const Partition& mu : partitions(n)) {
            ClassVector alpha = ClassVector::from_partition(mu);
            Rational lhs = 1;  // N^{sum alpha} * prod (N^{-1} p_p)^{alpha_p} = prod p_p^{alpha_p}
            for (size_t i = 0; i < alpha.mult.size(); ++i)
                for (int k = 0; k < alpha.mult[i]; ++k) lhs *= psum[i + 1];
            Rational rhs = 0;
            for (const Partition& lam : partitions(n))
                rhs += schur_at(lam, a) * Rational(sn_character(lam, alpha));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("free cumulants") {
    // zero moments -> zero cumulants
    std::vector<Rational> zeros(6, Rational(0));
    for (const Rational& phi : moments_to_free_cumulants(zeros, 6)) CHECK(phi == 0);

    // symbolic: phibar_1 = tb_1, phibar_2 = tb_2 - tb_1^2
    std::vector<QPoly> tb;
    for (int q = 1; q <= 4; ++q) tb.emplace_back(Monomial::thetabar(q), Rational(1));
    auto phi = moments_to_free_cumulants(tb, 4);
    CHECK(phi[0] == tb[0]);
    QPoly expected2 = tb[1];
    expected2.add_term(Monomial::thetabar(1, 2), -1);
    CHECK(phi[1] == expected2);
}
