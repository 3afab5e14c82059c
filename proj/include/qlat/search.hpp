#pragma once

#include "qlat/covering.hpp"
#include "qlat/exact.hpp"
#include "qlat/lattice.hpp"
#include "qlat/patterns.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qlat {

inline constexpr std::size_t kMaxExhaustiveElements = 24;
inline constexpr std::size_t kMaxBranchBoundElements = 64;
inline constexpr std::size_t kMaxAntichainLattice = 4096;
inline constexpr std::size_t kMaxReportedViolations = 16;

/// SplitMix64 stream; `derive` gives the independent stream for item `index` of a seeded run.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    static SplitMix64 derive(std::uint64_t seed, std::uint64_t index);
    std::uint64_t next();
    /// Uniform in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

/// Antichains in canonical order (depth first over increasing handles, the
/// empty family first). Returns the count; throws ResourceError past `cap`.
std::uint64_t enumerate_antichains(const Lattice& lattice, const std::function<void(const Bitset&)>& fn,
                                   std::uint64_t cap = 10'000'000);
/// Down-closed families, one per antichain of maximal elements, in antichain order.
std::uint64_t enumerate_complexes(const Lattice& lattice, const std::function<void(const Bitset&)>& fn,
                                  std::uint64_t cap = 10'000'000);
/// Up-closed families, one per antichain of minimal elements.
std::uint64_t enumerate_upsets(const Lattice& lattice, const std::function<void(const Bitset&)>& fn,
                               std::uint64_t cap = 10'000'000);

std::vector<Bitset> antichains(const Lattice& lattice, std::uint64_t cap = 10'000'000);
std::vector<Bitset> complexes(const Lattice& lattice, std::uint64_t cap = 10'000'000);
std::vector<Bitset> upsets(const Lattice& lattice, std::uint64_t cap = 10'000'000);

/// Monotone forbidden configuration: every superset of a family containing it contains it too.
struct Forbidden {
    enum class Kind { chain, diamond, poset, disjoint, boolean_algebra, q_algebra };
    Kind kind = Kind::chain;
    int param = 2;
    std::optional<PosetPattern> pattern;
    std::string id;
};

/// "P<k>" (k-chain), "Q2" or "diamond", "A<k>" (k-antichain), "disjoint<s>" or
/// "<s>-disjoint", "balg<d>", "qalg<d>". Throws UsageError otherwise.
Forbidden parse_forbidden(const std::string& id);
bool contains_forbidden(const Family& family, const Forbidden& forbid);

enum class SearchMode { exact, branch_bound, sample };
SearchMode parse_search_mode(const std::string& name);
std::string to_string(SearchMode mode);

struct SearchTask {
    const Lattice* lattice = nullptr;
    Forbidden forbid;
    SearchMode mode = SearchMode::exact;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    int workers = 1;
    /// Node budget per top-level branch; exhausting it clears `optimal`.
    std::uint64_t max_nodes = 200'000'000;
    /// A proven upper bound: branch_bound stops a branch once it is reached.
    std::optional<std::size_t> prune_bound;
};

struct SearchResult {
    std::size_t best_size = 0;
    /// Handles of the first family of maximum size in canonical depth-first
    /// order (sample mode: lowest sample index).
    std::vector<Handle> witness;
    std::uint64_t explored = 0;
    bool optimal = false;
};

/// Largest family avoiding the configuration. exact and branch_bound are
/// exhaustive and give identical results; sample returns a lower bound.
/// Results do not depend on the worker count.
SearchResult max_family(const SearchTask& task);

/// Which families a verifier walks.
struct Scope {
    enum class Kind { exhaustive, antichains, complexes, upsets, level, sample, capped };
    Kind kind = Kind::exhaustive;
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    /// Level for Kind::level (all subsets of one level).
    int level = 0;
    /// Member cap for Kind::capped (every family of at most this many members).
    std::size_t size_cap = 2;
};

/// "exhaustive", "antichains" ("antichains_only"), "complexes" ("complexes_only"),
/// "upsets", "level", "sample", "capped".
Scope::Kind parse_scope(const std::string& name);
std::string to_string(Scope::Kind kind);

struct CheckedCase {
    std::vector<std::vector<Handle>> families;
    Rational lhs;
    Rational rhs;
};

struct TheoremReport {
    std::string theorem_id;
    std::string scope;
    /// "<=" or ">=".
    std::string relation;
    std::map<std::string, long long> params;
    std::optional<std::uint64_t> seed;
    std::uint64_t checked = 0;
    std::uint64_t in_hypothesis = 0;
    std::uint64_t violation_count = 0;
    std::uint64_t equality_count = 0;
    /// The first kMaxReportedViolations violations in walk order.
    std::vector<CheckedCase> violations;
    /// Largest left-hand side, first in walk order.
    std::optional<CheckedCase> max_lhs;
    /// Smallest slack (rhs - lhs for "<=", lhs - rhs for ">="), first in walk order.
    std::optional<CheckedCase> tightest;
    /// Absolute tolerance on comparisons against rounded real right-hand sides (0 when exact).
    Rational tolerance = 0;
    /// Outside the theorem's stated range; violations are reported but do not fail.
    bool informational = false;
    std::vector<std::string> flags;
    std::string note;

    bool ok() const { return informational || violation_count == 0; }
};

/// Theorem ids the verifier knows.
std::vector<std::string> theorem_ids();

/// Checks the theorem's inequality on every family in scope that satisfies its
/// hypothesis. Cross-dependent tuple theorems (T4.2, T4.5, T1.14) walk s-tuples:
/// the exhaustive and upsets scopes enumerate (s-1)-tuples of up-sets and pair them with the
/// largest admissible last family, which dominates every other choice.
TheoremReport verify_theorem(const std::string& theorem_id, const Lattice& lattice, const Scope& scope,
                             const std::map<std::string, long long>& params = {}, int workers = 1);

struct TransferSampleReport {
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t gamma_size = 0;
    /// Families where the unweighted identity failed.
    std::uint64_t identity_failures = 0;
    /// Families where the identity with a random weight vector failed.
    std::uint64_t weighted_failures = 0;
    std::optional<std::uint64_t> first_failure;

    bool ok() const { return identity_failures == 0 && weighted_failures == 0; }
};

/// Seeded random families of L_n(q), each checked against the covering family
/// (both closed forms and the sublattice-by-sublattice sum) with weights 1 and
/// with a random positive rational weight vector.
TransferSampleReport verify_transfer_sampled(const Lattice& lattice, std::uint64_t samples, std::uint64_t seed,
                                             int workers = 1, std::uint64_t max_bases = 1'000'000);

/// [y, k]_q for real y: prod_{i<k} (q^(y-i) - 1) / (q^(k-i) - 1).
Real gauss_binom_real(const Real& y, int k, int q);

struct GaussRoot {
    Real y;
    /// [y, k-1]_q.
    Real lower;
};

/// y in [k, n] with [y, k]_q = m by bisection (absolute tolerance 1e-12).
/// Requires 1 <= m <= [n, k]_q, else DomainError.
GaussRoot solve_gauss_real(const BigInt& m, int k, int q, int n);

struct ColoringResult {
    /// Color per handle of a coloring with no monochromatic d-dimensional algebra.
    std::optional<std::vector<int>> coloring;
    /// True when the whole coloring space was searched (so none found is a certificate).
    bool exhaustive = false;
    std::uint64_t tried = 0;
};

/// Searches for an r-coloring without a monochromatic d-dimensional q-algebra
/// (Boolean algebra on B_n). Exhaustive backtracking when r^|lattice| <= cap,
/// otherwise `samples` seeded random colorings.
ColoringResult ramsey_color_check(const Lattice& lattice, int r, int d, std::uint64_t cap = 100'000'000,
                                  std::uint64_t samples = 10000, std::uint64_t seed = 0);

} // namespace qlat
