#pragma once

#include "qlat/counting.hpp"
#include "qlat/exact.hpp"
#include "qlat/lattice.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace qlat {

/// Unordered basis of F_q^n, stored as its vector codes in increasing order
/// (the lexicographically least ordering of the set).
using Basis = std::vector<std::uint64_t>;

struct CoveringOptions {
    /// Upper limit on alpha(q, n), the number of unordered bases.
    std::uint64_t max_bases = 1'000'000;
    int workers = 1;
};

/// Calls `fn` for every unordered basis of F_q^n in increasing lexicographic
/// order of the code vectors, restricted to bases whose smallest vector v
/// satisfies (v - 1) % stride == offset. Returns the number of bases visited.
std::uint64_t for_each_basis(int q, int n, const std::function<void(const Basis&)>& fn, int stride = 1,
                             int offset = 0);

/// All alpha(q, n) unordered bases. ResourceError when alpha exceeds the cap.
std::vector<Basis> enumerate_bases(int q, int n, const CoveringOptions& options = {});

/// G_B: image[S] is the handle of span{b_i : bit i of S set}, b_0 < b_1 < ... the basis codes.
struct BasisSublattice {
    Basis basis;
    std::vector<Handle> image;
};

BasisSublattice make_sublattice(const Lattice& lattice, const Basis& basis);

/// Gamma, the family of all G_B, together with t_0..t_n.
struct CoveringFamily {
    int q = 2;
    int n = 0;
    std::vector<BasisSublattice> gamma;
    std::vector<BigInt> t;
};

CoveringFamily build_covering_family(const Lattice& lattice, const CoveringOptions& options = {});

struct LevelMultiplicity {
    int dim = 0;
    BigInt expected_t;
    std::uint64_t min_observed = 0;
    std::uint64_t max_observed = 0;
};

struct CoveringReport {
    int q = 2;
    int n = 0;
    std::uint64_t gamma_size = 0;
    BigInt expected_gamma;
    std::vector<LevelMultiplicity> per_level;
    /// Handles whose multiplicity differs from t_dim, in handle order (at most 32 kept).
    std::vector<Handle> violations;
    std::uint64_t violation_count = 0;

    bool gamma_size_ok() const { return BigInt(gamma_size) == expected_gamma; }
    bool ok() const { return gamma_size_ok() && violation_count == 0; }
};

/// Streams every G_B and counts, per element, how many contain it. Work is split
/// across workers by the smallest basis vector; counters are summed, so the
/// result does not depend on the worker count.
CoveringReport verify_covering(const Lattice& lattice, const CoveringOptions& options = {});

struct TransferReport {
    /// Sum over levels of w_i |V_i| with w_i = beta_i t_i / C(n, i).
    Rational weighted_sum;
    /// l_q(V) |Gamma| (or the beta-weighted Lubell value times |Gamma|).
    Rational lubell_times_gamma;
    /// Sum over G_B of the Boolean (weighted) Lubell value of V restricted to G_B;
    /// present when a materialized covering family is supplied.
    std::optional<Rational> sublattice_sum;

    bool equal() const {
        return weighted_sum == lubell_times_gamma && (!sublattice_sum || *sublattice_sum == weighted_sum);
    }
};

/// Checks both sides of the weight identity for a family of L_n(q); `beta`
/// defaults to all ones. `gamma`, when given, adds the sum computed sublattice by sublattice.
TransferReport verify_transfer_identity(const Family& family, const std::optional<WeightVector>& beta = std::nullopt,
                                        const CoveringFamily* gamma = nullptr);

/// The family {S ⊆ [n] : image of S lies in V} over `boolean_lattice` (which must be B_n).
Family sublattice_restriction(const Family& family, const BasisSublattice& sublattice, const Lattice& boolean_lattice);

} // namespace qlat
