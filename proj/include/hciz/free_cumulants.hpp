#pragma once

#include <vector>

#include "hciz/partitions.hpp"

namespace hciz {

// Free cumulants from moments:
//   phibar_q = - sum_{alpha: sum i*a_i = q} (q + sum a_i - 2)!/(q-1)!
//              * prod_i (-tb_i)^{a_i} / a_i!
// The coefficient ring C is Rational for numeric moments or a polynomial
// ring when the moments are kept symbolic.
template <typename C>
std::vector<C> moments_to_free_cumulants(const std::vector<C>& tb, int Q) {
    if (Q < 0) throw domain_error("cumulant count must be >= 0");
    if (static_cast<int>(tb.size()) < Q)
        throw domain_error("need moments thetabar_1..thetabar_Q");
    std::vector<C> phi;
    phi.reserve(Q);
    for (int q = 1; q <= Q; ++q) {
        C sum{};
        for (const Partition& mu : partitions(q)) {
            ClassVector alpha = ClassVector::from_partition(mu);
            Rational coef = Rational(factorial(q + alpha.num_cycles() - 2)) /
                            Rational(factorial(q - 1));
            C prod{coef};
            for (size_t i = 0; i < alpha.mult.size(); ++i) {
                for (int e = 0; e < alpha.mult[i]; ++e) prod = prod * tb[i];
                if (alpha.mult[i] % 2 == 1) prod = C{} - prod;
                prod = scale(prod, Rational(1) / Rational(factorial(alpha.mult[i])));
            }
            sum += prod;
        }
        phi.push_back(C{} - sum);
    }
    return phi;
}

}  // namespace hciz
