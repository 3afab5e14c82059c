#pragma once

#include "qlat/exact.hpp"
#include "qlat/lattice.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qlat {

/// A bound value with its parameters. Exact bounds carry a rational (and its
/// floor, since family sizes are integers); irrational bounds carry a real at
/// kRealPrecisionBits bits plus a rational strictly above it for one-sided comparisons.
struct BoundReport {
    std::string theorem_id;
    std::map<std::string, long long> params;
    std::optional<Rational> exact;
    std::optional<Real> real;
    /// Set with `real`: an exact value at or above the true bound.
    std::optional<Rational> upper;
    std::vector<std::string> flags;
    std::string note;
    /// Extremal or sharpness families, when a lattice was supplied.
    std::vector<Family> construction;

    std::optional<BigInt> floor_value() const;
    std::size_t construction_size() const;
    bool has_flag(const std::string& flag) const;
};

inline const std::string kHypothesisUnmet = "hypothesis unmet";
inline const std::string kAsymptotic = "asymptotic - not valid for finite n";

/// Sperner: C(n, floor(n/2)), or [n, floor(n/2)]_q when q > 0.
BoundReport bound_sperner(int n, int q = 0);
/// k-Sperner size bound: Sigma(n, k), or Sigma[n, k] when q > 0.
BoundReport bound_k_sperner(int n, int k, int q = 0);
/// LYM: Lubell value of an antichain is at most 1; of a P_{k+1}-free family at most k.
BoundReport bound_lubell_k_sperner(int n, int k, int q = 0);

/// Families of 2^[n] with no s pairwise disjoint members. Requires n >= s >= 3.
BoundReport bound_kleitman_sets(int n, int s);
/// Families of L_n(q) with no s pairwise disjoint members. With a matching
/// lattice and n = sk - 1, the family of all subspaces of dimension >= k is attached.
BoundReport bound_kleitman_spaces(int n, int s, int q, const Lattice* lattice = nullptr);
/// Total size of s cross-dependent families of L_n(q), n = sl + r, 0 <= r < s.
/// With a matching lattice the r+1 families {dim > l} and s-r-1 families {dim >= l} are attached.
BoundReport bound_cross_dependent(int n, int s, int q, const Lattice* lattice = nullptr);

/// (s-1)(n+1)/s: norm of a single family with no s pairwise disjoint members.
Rational bound_frankl_norm(int n, int s);
/// (s-1)(n+1): total norm of s cross-dependent families.
Rational bound_frankl_norm_sum(int n, int s);

/// sum_{i<l} C'(n,i) + (value - l) C'(n,l), with C' the level sizes of `lattice`.
/// Requires 0 <= l < n and value < n + 1.
Rational bound_qperfect_rhs(const Lattice& lattice, int l, const Rational& value);
/// Same with Gaussian binomials (q >= 2) or binomials (q == 0), without a lattice.
Rational qperfect_rhs(int n, int q, int l, const Rational& value);

struct LemmaRow {
    int q = 2;
    int l = 0;
    int k = 0;
    int n = 0;
    BigInt lhs;
    BigInt rhs;
    bool holds = false;
};

/// sum_{l<=j<=k} [n,j]_q >= (k-l+1)[n,l]_q, exactly. Requires l < k <= n-1, q >= 2, n >= 3l.
LemmaRow evaluate_lemma_4_9(int q, int l, int k, int n);
bool check_lemma_4_9(int q, int l, int k, int n);
/// Every valid (q, l, k, n) with q in `qs`, 0 <= l <= max_l, 3l <= n <= 3l + extra_n.
std::vector<LemmaRow> scan_lemma_4_9(const std::vector<int>& qs, int max_l, int extra_n);

/// n >= (2^d - 2/ln 2)^2.
bool qalgebra_hypothesis(int n, int d);
/// 2 (n+1)^(1 - 2^(1-d)); Boolean (q == 0) or linear lattices. Flagged
/// "hypothesis unmet" when d < 3 or n < (2^d - 2/ln 2)^2; the value is still computed.
BoundReport bound_qalgebra_lubell(int n, int d, int q = 0);
/// 2 (n+1)^(1 - 2^(1-d)) [n, ceil(n/2)]_q.
BoundReport bound_qalgebra_size(int n, int d, int q);
/// (25/n)^(1/2^d) 2^n.
BoundReport bound_polymath(int n, int d);
/// ((sqrt 2 + 3)/2) [n, floor(n/2)]_q (or the binomial for q == 0), flagged asymptotic.
BoundReport bound_diamond_asymptotic(int n, int q = 0);

/// floor((1/2) n^(2/2^d)) = largest r >= 0 with (2r)^(2^(d-1)) <= n, in integers.
BigInt ramsey_lower(const BigInt& n, int d);
BoundReport bound_ramsey(int n, int d);

/// Constructions by kind: "middle_levels" (k), "top_dims" (k), "sperner_star" (k),
/// "kleitman_sharp" (s, k), "cross_dependent_sharp" (s, l, r).
std::vector<Family> make_construction(const std::string& kind, const Lattice& lattice,
                                      const std::map<std::string, long long>& params);

/// Evaluates a bound by identifier (T1.1 ... T5.10, P3.5) from named parameters;
/// throws UsageError for unknown ids or missing parameters.
BoundReport bound_by_id(const std::string& id, const std::map<std::string, long long>& params,
                        const Lattice* lattice = nullptr);

} // namespace qlat
