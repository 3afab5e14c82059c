#pragma once

#include "qlat/counting.hpp"
#include "qlat/exact.hpp"
#include "qlat/lattice.hpp"

#include <map>
#include <optional>
#include <vector>

namespace qlat {

/// Level densities phi(i) = |F_i| / |level i|, and for complexes the
/// decomposition alpha(j) = phi(j) - phi(j+1), j < n.
struct ProfileVector {
    std::vector<Rational> phi;
    std::optional<std::vector<Rational>> alpha;
};

/// Sum over members of 1 / |level of the member|. Same code for B_n and L_n(q).
Rational lubell(const Family& family);

/// Sum over levels of beta_i |F_i| / |level i|; throws UsageError if beta has the wrong length.
Rational weighted_lubell(const Family& family, const WeightVector& beta);

/// lubell / (n + 1), in [0, 1].
Rational rho(const Family& family);

ProfileVector profile(const Family& family);

/// Profile of a complex together with its alpha decomposition. Rejects
/// non-complexes and complexes containing the top element (UsageError).
ProfileVector profile_decompose(const Family& family);

/// Length (number of elements) of the longest chain inside the family; 0 for the empty family.
int longest_chain(const Family& family);

/// For each member F, the largest k such that F lies on a k-chain of members.
std::map<Handle, int> chain_participation(const Family& family);

/// Sum over members of 1 / (c(F) |level of F|).
Rational chain_weighted_lubell(const Family& family);

/// Smallest t with sum_{i <= t} |F_i| / C'(n-1, i-1) > 1, where C' is the
/// binomial (Boolean) or Gaussian binomial (linear) coefficient. A member at
/// level 0 makes the partial sum infinite from t = 0 on. Empty when no such t exists.
std::optional<int> sharpening_level(const Family& family);

/// Weights k/i below level k and (n-k)/(n-i) from level k on. Entries whose
/// formula divides by zero (i = 0 < k, and i = n >= k) are set to zero; under
/// the sharpening hypothesis those levels are empty.
WeightVector sharpening_weights(int n, int k);

} // namespace qlat
