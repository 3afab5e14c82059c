#pragma once

#include "qlat/exact.hpp"

#include <vector>

namespace qlat {

/// Ordinary binomial C(n, k). Throws DomainError unless 0 <= k <= n.
BigInt binom(int n, int k);

/// Gaussian binomial [n, k]_q: the number of k-dimensional subspaces of F_q^n.
/// Throws DomainError unless 0 <= k <= n and q >= 2.
BigInt gauss_binom(int n, int k, int q);

/// Number of unordered bases of F_q^n: prod_{i<n} (q^n - q^i) / n!.
BigInt alpha(int q, int n);

/// Number of unordered bases of F_q^n whose Boolean sublattice contains a
/// fixed i-dimensional subspace.
BigInt covering_multiplicity(int q, int n, int i);

/// Sum of the k largest binomial coefficients of order n.
BigInt sigma_sets(int n, int k);

/// Sum of the k largest Gaussian binomial coefficients of order n.
BigInt sigma_spaces(int n, int k, int q);

/// Level weights beta_0..beta_n for the weighted Lubell functions.
struct WeightVector {
    std::vector<Rational> beta;

    static WeightVector ones(int n) { return WeightVector{std::vector<Rational>(static_cast<std::size_t>(n + 1), Rational(1))}; }
    int n() const { return static_cast<int>(beta.size()) - 1; }
};

/// Floor division that rounds toward negative infinity.
constexpr int floor_div(int a, int b) {
    const int d = a / b;
    return (a % b != 0 && ((a < 0) != (b < 0))) ? d - 1 : d;
}

} // namespace qlat
