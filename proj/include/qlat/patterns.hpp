#pragma once

#include "qlat/lattice.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qlat {

/// Finite poset on {0..m-1}; less[i][j] means i < j. The relation must be a
/// strict order (irreflexive, antisymmetric, transitive).
struct PosetPattern {
    std::string name;
    int m = 0;
    std::vector<std::vector<bool>> less;
    /// Role label of each element, used in witnesses.
    std::vector<std::string> roles;

    /// P_k: 0 < 1 < ... < k-1.
    static PosetPattern chain(int k);
    /// Q_2: 0 < 1, 0 < 2, 1 < 3, 2 < 3.
    static PosetPattern diamond();
    static PosetPattern antichain(int k);
    /// Throws UsageError if the relation is not a strict order.
    void validate() const;
};

/// A realization of a configuration: handles[i] plays roles[i]. Handles may
/// repeat only for a self-disjoint element (the bottom) in disjointness witnesses.
struct Witness {
    std::string kind;
    std::vector<Handle> handles;
    std::vector<std::string> roles;
};

inline constexpr int kMaxPatternSize = 8;
inline constexpr int kMaxBooleanAlgebraDim = 4;
inline constexpr int kMaxQAlgebraDim = 3;

/// Injective map psi with psi(u) ⊊ psi(v) whenever u < v in the pattern.
/// Backtracking in pattern order over members in handle order, so the
/// lexicographically first embedding is returned. ResourceError above `cap` elements.
std::optional<Witness> contains_weak(const Family& family, const PosetPattern& pattern, int cap = kMaxPatternSize);
/// As contains_weak, with psi(u) ⊊ psi(v) if and only if u < v.
std::optional<Witness> contains_strong(const Family& family, const PosetPattern& pattern, int cap = kMaxPatternSize);

/// k members forming a chain (weak P_k); same first witness as the generic embedder.
std::optional<Witness> find_chain(const Family& family, int k);
/// Weak Q_2: x ⊊ y, x ⊊ z, y ⊊ w, z ⊊ w with four distinct members; roles x, y, z, w.
std::optional<Witness> find_diamond(const Family& family);

/// s members, pairwise of meet dimension zero. A member may be used more than
/// once only if it is disjoint from itself, which happens exactly for the
/// bottom element; so any family containing the bottom has s pairwise disjoint
/// members. This matches cross-dependence of s copies of the family.
std::optional<Witness> has_s_disjoint(const Family& family, int s);

struct CrossDependence {
    bool dependent = true;
    /// A pairwise disjoint transversal when not dependent.
    std::optional<Witness> transversal;
};

/// True iff no choice V_i in families[i] is pairwise disjoint. Requires at
/// least two families over one lattice.
CrossDependence are_cross_dependent(std::span<const Family> families);

/// d-dimensional Boolean algebra in a family of B_n: members S_0 and S_1..S_d
/// with S_i ⊋ S_0, the differences S_i \ S_0 pairwise disjoint, and every union
/// S_0 ∪ (union of S_i, i in I) a member. Witness lists the 2^d members by I.
std::optional<Witness> has_boolean_algebra(const Family& family, int d);

/// d-dimensional q-algebra in a family of L_n(q), read through subspace sums:
/// members W_0 and W_1..W_d with W_i ⊋ W_0 such that the 2^d sums
/// W_0 + (sum of W_i, i in I) are members and pairwise distinct.
std::optional<Witness> has_q_algebra(const Family& family, int d);

} // namespace qlat
