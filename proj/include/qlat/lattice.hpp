#pragma once

#include "qlat/field.hpp"
#include "qlat/linalg.hpp"

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace qlat {

using Handle = std::uint32_t;
using Bitset = boost::dynamic_bitset<std::uint64_t>;

enum class LatticeKind { boolean, linear };

/// Which lattice: the Boolean lattice B_n, or L_n(q) of subspaces of F_q^n.
struct LatticeSpec {
    LatticeKind kind = LatticeKind::linear;
    int q = 2; // 0 for Boolean
    int n = 0;

    static LatticeSpec boolean(int n) { return {LatticeKind::boolean, 0, n}; }
    static LatticeSpec linear(int q, int n) { return {LatticeKind::linear, q, n}; }

    bool is_boolean() const noexcept { return kind == LatticeKind::boolean; }
    /// "B4" or "L3(2)".
    std::string name() const;

    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

struct LatticeOptions {
    /// Largest permitted level (checked against the exact level count before enumeration).
    std::uint64_t max_level_size = 2'000'000;
    /// Containment is tabulated up to this many elements and computed on demand above it.
    std::size_t relation_table_limit = 4096;
    int max_q = 16;
    int max_boolean_n = 24;
};

/// A subspace of F_q^n by its canonical reduced row echelon basis. Boolean
/// subsets are the coordinate subspaces span{e_i : i in S} over GF(2).
struct Subspace {
    int q = 2;
    int n = 0;
    int dim = 0;
    Matrix basis;

    friend bool operator==(const Subspace&, const Subspace&) = default;
};

/// dim(a ∩ b) by rank; throws UsageError when a and b live in different spaces.
int meet_dim(const Subspace& a, const Subspace& b);
/// Canonical basis of a + b.
Subspace join(const Subspace& a, const Subspace& b);

/// Every element of B_n or L_n(q), ordered by (dimension, lexicographic
/// concatenation of RREF digits); the position is the element's handle.
/// Immutable after construction.
class Lattice {
public:
    static Lattice build(const LatticeSpec& spec, const LatticeOptions& options = {});
    static Lattice boolean(int n, const LatticeOptions& options = {}) {
        return build(LatticeSpec::boolean(n), options);
    }
    static Lattice linear(int q, int n, const LatticeOptions& options = {}) {
        return build(LatticeSpec::linear(q, n), options);
    }

    const LatticeSpec& spec() const noexcept { return spec_; }
    bool is_boolean() const noexcept { return spec_.is_boolean(); }
    int n() const noexcept { return spec_.n; }
    /// Field order; 2 for Boolean lattices, whose elements are coordinate subspaces over GF(2).
    int q() const noexcept { return is_boolean() ? 2 : spec_.q; }
    const Field& field() const noexcept { return *field_; }

    std::size_t size() const noexcept { return dims_.size(); }
    int dim(Handle h) const { return dims_.at(h); }
    Handle level_begin(int i) const { return level_start_.at(static_cast<std::size_t>(i)); }
    Handle level_end(int i) const { return level_start_.at(static_cast<std::size_t>(i) + 1); }
    std::size_t level_size(int i) const { return level_end(i) - level_begin(i); }
    Handle bottom() const noexcept { return 0; }
    Handle top() const noexcept { return static_cast<Handle>(size() - 1); }

    Subspace subspace(Handle h) const;
    /// Row-concatenated RREF digits of h.
    std::vector<std::uint8_t> digits(Handle h) const;
    /// Boolean lattices only: bit i set iff element i+1 of [n] is in the set.
    std::uint32_t mask(Handle h) const;
    Handle handle_of_mask(std::uint32_t mask) const;
    /// Handle of the subspace whose canonical basis is `rref_basis`; throws UsageError if absent.
    Handle find(const Matrix& rref_basis) const;
    /// Handle of the span of arbitrary rows.
    Handle span_of(Matrix rows) const;

    /// u ⊆ v.
    bool contains(Handle u, Handle v) const;
    bool has_relation_table() const noexcept { return !below_.empty(); }
    /// All w ⊆ v (including v).
    Bitset below(Handle v) const;
    /// All w ⊇ u (including u).
    Bitset above(Handle u) const;
    int meet_dim(Handle a, Handle b) const;
    Handle join(Handle a, Handle b) const;
    bool disjoint(Handle a, Handle b) const;
    /// All w with meet_dim(u, w) == 0 (the bottom element is disjoint from everything, itself included).
    Bitset disjoint_from(Handle u) const;

    Bitset empty_set() const { return Bitset(size()); }

    /// Same elements in the same order (containment is derived data).
    friend bool operator==(const Lattice& a, const Lattice& b);

private:
    Lattice() = default;
    void index_elements();
    void build_relation(const LatticeOptions& options);
    bool contains_slow(Handle u, Handle v) const;
    void build_vector_sets();
    std::size_t common_vectors(Handle a, Handle b) const;

    LatticeSpec spec_;
    std::shared_ptr<const Field> field_;
    std::vector<std::uint8_t> dims_;
    std::vector<Handle> level_start_;
    // Linear lattices: concatenated RREF digits, element h starts at offset_[h].
    std::vector<std::uint8_t> digits_;
    std::vector<std::size_t> offset_;
    std::unordered_map<std::string, Handle> index_;
    // Boolean lattices.
    std::vector<std::uint32_t> masks_;
    std::vector<Bitset> below_;
    std::vector<Bitset> above_;
    std::vector<Bitset> disjoint_;
    // Linear lattices: the vectors of each element as a bit set over codes of
    // F_q^n, words_per_ words each; empty when q^n is too large.
    std::vector<std::uint64_t> vectors_;
    std::size_t words_per_ = 0;
    // Join table for small lattices, size() * size() entries.
    std::vector<Handle> join_;

    friend class LatticeReader;
};

/// A set of lattice elements together with its level profile (|F_0|, ..., |F_n|).
/// Holds a non-owning reference: the lattice must outlive the family.
class Family {
public:
    explicit Family(const Lattice& lattice);
    Family(const Lattice& lattice, Bitset members);

    static Family from_handles(const Lattice& lattice, std::span<const Handle> handles);
    static Family whole(const Lattice& lattice);
    /// Union of the complete levels lo..hi (inclusive); empty when lo > hi.
    static Family levels(const Lattice& lattice, int lo, int hi);
    /// Family whose members are the set bits of `mask` (lattices of at most 64 elements).
    static Family from_mask(const Lattice& lattice, std::uint64_t mask);

    const Lattice& lattice() const noexcept { return *lattice_; }
    const Bitset& members() const noexcept { return members_; }
    const std::vector<std::size_t>& profile() const noexcept { return profile_; }

    bool contains(Handle h) const { return members_.test(h); }
    void insert(Handle h);
    void erase(Handle h);
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    std::vector<Handle> handles() const;

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (auto i = members_.find_first(); i != Bitset::npos; i = members_.find_next(i)) fn(static_cast<Handle>(i));
    }

    friend bool operator==(const Family& a, const Family& b) {
        return a.lattice_ == b.lattice_ && a.members_ == b.members_;
    }

private:
    void recount();

    const Lattice* lattice_;
    Bitset members_;
    std::vector<std::size_t> profile_;
    std::size_t size_ = 0;
};

void require_same_lattice(const Family& a, const Family& b);

/// {W of dimension k-1 : W ⊆ V for some V in the family}; all members must have dimension k >= 1.
Family shadow(const Family& family);
/// Down-closed.
bool is_complex(const Family& family);
/// Up-closed.
bool is_upset(const Family& family);
bool is_antichain(const Family& family);
Family upset_of(const Family& family);
Family downset_of(const Family& family);
Family complement(const Family& family);

} // namespace qlat
