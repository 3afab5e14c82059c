#include "qlat/search.hpp"

#include "qlat/bounds.hpp"
#include "qlat/counting.hpp"
#include "qlat/errors.hpp"
#include "qlat/measures.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace qlat {

namespace {

std::size_t first_from(const Bitset& b, std::size_t start) {
    return start == 0 ? b.find_first() : b.find_next(start - 1);
}

Bitset bits_from_mask(std::size_t size, std::uint64_t mask) {
    Bitset b(size);
    for (std::size_t i = 0; i < size; ++i) {
        if ((mask >> i) & 1U) b.set(i);
    }
    return b;
}

std::vector<Handle> handles_of(const Bitset& b) {
    std::vector<Handle> out;
    for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i)) out.push_back(static_cast<Handle>(i));
    return out;
}

std::optional<int> parse_int(std::string_view text) {
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
    return value;
}

std::vector<Bitset> comparability(const Lattice& lattice) {
    std::vector<Bitset> out;
    out.reserve(lattice.size());
    for (Handle h = 0; h < lattice.size(); ++h) out.push_back(lattice.below(h) | lattice.above(h));
    return out;
}

class AntichainWalker {
public:
    AntichainWalker(const Lattice& lattice, const std::function<void(const Bitset&)>& fn, std::uint64_t cap)
        : comparable_(comparability(lattice)), fn_(fn), cap_(cap), current_(lattice.size()) {}

    std::uint64_t run(const Lattice& lattice) {
        Bitset avail(lattice.size());
        avail.set();
        visit(avail, 0);
        return count_;
    }

private:
    void visit(const Bitset& avail, std::size_t start) {
        if (count_ >= cap_) throw ResourceError("antichain enumeration cap exceeded", count_);
        ++count_;
        fn_(current_);
        for (auto j = first_from(avail, start); j != Bitset::npos; j = avail.find_next(j)) {
            current_.set(j);
            visit(avail - comparable_[j], j + 1);
            current_.reset(j);
        }
    }

    std::vector<Bitset> comparable_;
    const std::function<void(const Bitset&)>& fn_;
    std::uint64_t cap_;
    std::uint64_t count_ = 0;
    Bitset current_;
};

void require_antichain_size(const Lattice& lattice) {
    if (lattice.size() > kMaxAntichainLattice) {
        throw ResourceError("lattice too large for antichain enumeration (limit " +
                                std::to_string(kMaxAntichainLattice) + " elements)",
                            0);
    }
}

template <class Acc, class Fn>
std::vector<Acc> run_chunks(std::size_t chunks, int workers, Fn&& fn) {
    std::vector<Acc> out(chunks);
    detail::run_tasks(chunks, workers, [&](std::size_t c) { out[c] = fn(c); });
    return out;
}

} // namespace

SplitMix64 SplitMix64::derive(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 base(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
    return SplitMix64(base.next());
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
    if (bound == 0) throw UsageError("empty range");
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
}

std::uint64_t enumerate_antichains(const Lattice& lattice, const std::function<void(const Bitset&)>& fn,
                                   std::uint64_t cap) {
    require_antichain_size(lattice);
    AntichainWalker walker(lattice, fn, cap);
    return walker.run(lattice);
}

std::uint64_t enumerate_complexes(const Lattice& lattice, const std::function<void(const Bitset&)>& fn,
                                  std::uint64_t cap) {
    return enumerate_antichains(
        lattice,
        [&](const Bitset& a) {
            Bitset closure(lattice.size());
            for (auto h = a.find_first(); h != Bitset::npos; h = a.find_next(h)) closure |= lattice.below(static_cast<Handle>(h));
            fn(closure);
        },
        cap);
}

std::uint64_t enumerate_upsets(const Lattice& lattice, const std::function<void(const Bitset&)>& fn,
                               std::uint64_t cap) {
    return enumerate_antichains(
        lattice,
        [&](const Bitset& a) {
            Bitset closure(lattice.size());
            for (auto h = a.find_first(); h != Bitset::npos; h = a.find_next(h)) closure |= lattice.above(static_cast<Handle>(h));
            fn(closure);
        },
        cap);
}

std::vector<Bitset> antichains(const Lattice& lattice, std::uint64_t cap) {
    std::vector<Bitset> out;
    enumerate_antichains(lattice, [&](const Bitset& b) { out.push_back(b); }, cap);
    return out;
}

std::vector<Bitset> complexes(const Lattice& lattice, std::uint64_t cap) {
    std::vector<Bitset> out;
    enumerate_complexes(lattice, [&](const Bitset& b) { out.push_back(b); }, cap);
    return out;
}

std::vector<Bitset> upsets(const Lattice& lattice, std::uint64_t cap) {
    std::vector<Bitset> out;
    enumerate_upsets(lattice, [&](const Bitset& b) { out.push_back(b); }, cap);
    return out;
}

// ---------------------------------------------------------------- detectors

Forbidden parse_forbidden(const std::string& id) {
    Forbidden f;
    f.id = id;
    auto suffix = [&](std::string_view prefix) -> std::optional<int> {
        if (id.size() <= prefix.size() || id.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
        return parse_int(std::string_view(id).substr(prefix.size()));
    };
    if (id == "Q2" || id == "diamond") {
        f.kind = Forbidden::Kind::diamond;
        return f;
    }
    if (auto k = suffix("P")) {
        if (*k < 1 || *k > kMaxPatternSize) throw UsageError("chain length must be in 1.." + std::to_string(kMaxPatternSize));
        f.kind = Forbidden::Kind::chain;
        f.param = *k;
        return f;
    }
    if (auto k = suffix("A")) {
        if (*k < 1 || *k > kMaxPatternSize) throw UsageError("antichain size must be in 1.." + std::to_string(kMaxPatternSize));
        f.kind = Forbidden::Kind::poset;
        f.param = *k;
        f.pattern = PosetPattern::antichain(*k);
        return f;
    }
    std::optional<int> s = suffix("disjoint");
    if (!s && id.size() > 9 && id.compare(id.size() - 9, 9, "-disjoint") == 0) {
        s = parse_int(std::string_view(id).substr(0, id.size() - 9));
    }
    if (s) {
        if (*s < 2) throw UsageError("disjointness count must be at least 2");
        f.kind = Forbidden::Kind::disjoint;
        f.param = *s;
        return f;
    }
    if (auto d = suffix("balg")) {
        if (*d < 1 || *d > kMaxBooleanAlgebraDim) throw UsageError("Boolean algebra dimension out of range");
        f.kind = Forbidden::Kind::boolean_algebra;
        f.param = *d;
        return f;
    }
    if (auto d = suffix("qalg")) {
        if (*d < 1 || *d > kMaxQAlgebraDim) throw UsageError("q-algebra dimension out of range");
        f.kind = Forbidden::Kind::q_algebra;
        f.param = *d;
        return f;
    }
    throw UsageError("unknown forbidden configuration: " + id);
}

bool contains_forbidden(const Family& family, const Forbidden& forbid) {
    switch (forbid.kind) {
        case Forbidden::Kind::chain: return find_chain(family, forbid.param).has_value();
        case Forbidden::Kind::diamond: return find_diamond(family).has_value();
        case Forbidden::Kind::poset: return contains_weak(family, *forbid.pattern).has_value();
        case Forbidden::Kind::disjoint: return has_s_disjoint(family, forbid.param).has_value();
        case Forbidden::Kind::boolean_algebra: return has_boolean_algebra(family, forbid.param).has_value();
        case Forbidden::Kind::q_algebra: return has_q_algebra(family, forbid.param).has_value();
    }
    return false;
}

SearchMode parse_search_mode(const std::string& name) {
    if (name == "exact") return SearchMode::exact;
    if (name == "branch_bound" || name == "bb") return SearchMode::branch_bound;
    if (name == "sample") return SearchMode::sample;
    throw UsageError("unknown search mode: " + name);
}

std::string to_string(SearchMode mode) {
    switch (mode) {
        case SearchMode::exact: return "exact";
        case SearchMode::branch_bound: return "branch_bound";
        case SearchMode::sample: return "sample";
    }
    return "";
}

// ---------------------------------------------------------------- max_family

namespace {

struct BranchOutcome {
    bool have = false;
    std::size_t best = 0;
    std::vector<Handle> witness;
    std::uint64_t explored = 0;
    bool capped = false;
};

class Brancher {
public:
    Brancher(const SearchTask& task, bool prune)
        : task_(task), lattice_(*task.lattice), prune_(prune), current_(lattice_) {}

    BranchOutcome run_empty() {
        visit_node();
        return out_;
    }

    BranchOutcome run_from(Handle first) {
        current_.insert(first);
        if (!contains_forbidden(current_, task_.forbid)) dfs(first + 1);
        return out_;
    }

private:
    bool visit_node() {
        if (out_.explored >= task_.max_nodes) {
            out_.capped = true;
            stop_ = true;
            return false;
        }
        ++out_.explored;
        if (!out_.have || current_.size() > out_.best) {
            out_.have = true;
            out_.best = current_.size();
            out_.witness = current_.handles();
            if (prune_ && task_.prune_bound && out_.best >= *task_.prune_bound) stop_ = true;
        }
        return !stop_;
    }

    void dfs(std::size_t start) {
        if (!visit_node()) return;
        const std::size_t n = lattice_.size();
        for (std::size_t j = start; j < n; ++j) {
            if (prune_ && current_.size() + (n - j) < out_.best) break;
            const auto h = static_cast<Handle>(j);
            current_.insert(h);
            if (!contains_forbidden(current_, task_.forbid)) dfs(j + 1);
            current_.erase(h);
            if (stop_) return;
        }
    }

    const SearchTask& task_;
    const Lattice& lattice_;
    bool prune_;
    bool stop_ = false;
    Family current_;
    BranchOutcome out_;
};

constexpr std::uint64_t kSampleChunk = 256;

BranchOutcome sample_chunk(const SearchTask& task, std::uint64_t chunk) {
    const Lattice& lat = *task.lattice;
    BranchOutcome out;
    const std::uint64_t begin = chunk * kSampleChunk;
    const std::uint64_t end = std::min(task.samples, begin + kSampleChunk);
    std::vector<Handle> order(lat.size());
    for (std::uint64_t i = begin; i < end; ++i) {
        auto rng = SplitMix64::derive(task.seed, i);
        std::iota(order.begin(), order.end(), Handle{0});
        for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.below(k)]);
        Family f(lat);
        for (Handle h : order) {
            f.insert(h);
            if (contains_forbidden(f, task.forbid)) f.erase(h);
        }
        ++out.explored;
        if (!out.have || f.size() > out.best) {
            out.have = true;
            out.best = f.size();
            out.witness = f.handles();
        }
    }
    return out;
}

} // namespace

SearchResult max_family(const SearchTask& task) {
    if (task.lattice == nullptr) throw UsageError("search task has no lattice");
    const Lattice& lat = *task.lattice;
    std::vector<BranchOutcome> parts;
    if (task.mode == SearchMode::sample) {
        if (task.samples == 0) throw UsageError("sample mode needs at least one sample");
        const std::uint64_t chunks = (task.samples + kSampleChunk - 1) / kSampleChunk;
        parts = run_chunks<BranchOutcome>(chunks, task.workers,
                                          [&](std::size_t c) { return sample_chunk(task, c); });
    } else {
        const bool prune = task.mode == SearchMode::branch_bound;
        const std::size_t limit = prune ? kMaxBranchBoundElements : kMaxExhaustiveElements;
        if (lat.size() > limit) {
            throw UsageError(to_string(task.mode) + " search is limited to lattices of " + std::to_string(limit) +
                             " elements");
        }
        // Task 0 is the empty family; task j + 1 holds the families whose first handle is j.
        parts = run_chunks<BranchOutcome>(lat.size() + 1, task.workers, [&](std::size_t t) {
            Brancher b(task, prune);
            return t == 0 ? b.run_empty() : b.run_from(static_cast<Handle>(t - 1));
        });
    }
    SearchResult result;
    bool capped = false;
    bool have = false;
    for (auto& p : parts) {
        result.explored += p.explored;
        capped = capped || p.capped;
        if (p.have && (!have || p.best > result.best_size)) {
            have = true;
            result.best_size = p.best;
            result.witness = std::move(p.witness);
        }
    }
    result.optimal = task.mode != SearchMode::sample && !capped;
    return result;
}

// ---------------------------------------------------------------- verifiers

Scope::Kind parse_scope(const std::string& name) {
    if (name == "exhaustive") return Scope::Kind::exhaustive;
    if (name == "antichains" || name == "antichains_only") return Scope::Kind::antichains;
    if (name == "complexes" || name == "complexes_only") return Scope::Kind::complexes;
    if (name == "upsets" || name == "upsets_only") return Scope::Kind::upsets;
    if (name == "level") return Scope::Kind::level;
    if (name == "sample") return Scope::Kind::sample;
    if (name == "capped") return Scope::Kind::capped;
    throw UsageError("unknown scope: " + name);
}

std::string to_string(Scope::Kind kind) {
    switch (kind) {
        case Scope::Kind::exhaustive: return "exhaustive";
        case Scope::Kind::antichains: return "antichains";
        case Scope::Kind::complexes: return "complexes";
        case Scope::Kind::upsets: return "upsets";
        case Scope::Kind::level: return "level";
        case Scope::Kind::sample: return "sample";
        case Scope::Kind::capped: return "capped";
    }
    return "";
}

namespace {

enum class Side { boolean, linear };

struct TheoremInfo {
    const char* id;
    Side side;
    bool tuple;
};

constexpr TheoremInfo kTheorems[] = {
    {"T1.1", Side::boolean, false},  {"T1.2", Side::boolean, false},  {"T1.3", Side::linear, false},
    {"T1.4", Side::linear, false},   {"T1.5", Side::boolean, false},  {"T1.6", Side::boolean, false},
    {"T1.12", Side::boolean, false}, {"T1.13", Side::linear, false},  {"T1.14", Side::linear, true},
    {"T3.1", Side::linear, false},   {"T3.2", Side::linear, false},   {"P3.4", Side::boolean, false},
    {"P3.5", Side::linear, false},   {"T3.8", Side::boolean, false},  {"T3.9", Side::linear, false},
    {"T3.10", Side::boolean, false}, {"T3.11", Side::linear, false},  {"T4.2", Side::boolean, true},
    {"C4.3", Side::boolean, false},  {"T4.5", Side::linear, true},    {"T4.6", Side::linear, false},
    {"T4.7", Side::linear, false},   {"L4.8", Side::linear, false},   {"P4.11", Side::linear, false},
    {"T5.5", Side::boolean, false},  {"T5.8", Side::linear, false},
};

const TheoremInfo& theorem_info(const std::string& id) {
    for (const auto& t : kTheorems) {
        if (id == t.id) return t;
    }
    throw UsageError("unknown theorem id: " + id);
}

using Params = std::map<std::string, long long>;

long long get_param(const Params& params, const std::string& key) {
    const auto it = params.find(key);
    if (it == params.end()) throw UsageError("missing parameter --" + key);
    return it->second;
}

long long get_param_or(Params& params, const std::string& key, long long fallback) {
    auto [it, inserted] = params.emplace(key, fallback);
    return it->second;
}

struct Rule {
    std::string relation = "<=";
    Rational tolerance = 0;
    bool informational = false;
    std::vector<std::string> flags;
    std::string note;
    std::function<std::optional<std::pair<Rational, Rational>>(const Family&)> eval;
};

Rational middle_of(const Lattice& lat) {
    return Rational(lat.is_boolean() ? binom(lat.n(), lat.n() / 2) : gauss_binom(lat.n(), lat.n() / 2, lat.q()));
}

Rational real_guard_tolerance() { return Rational(1, 1000000000); }

Rule make_rule(const std::string& id, const Lattice& lat, Params& params) {
    const int n = lat.n();
    const int q = lat.is_boolean() ? 0 : lat.q();
    Rule rule;
    auto size_of = [](const Family& f) { return Rational(static_cast<long long>(f.size())); };

    if (id == "T1.1" || id == "T1.3") {
        const Rational rhs = middle_of(lat);
        rule.eval = [=](const Family& f) -> std::optional<std::pair<Rational, Rational>> {
            if (!is_antichain(f)) return std::nullopt;
            return std::pair{size_of(f), rhs};
        };
    } else if (id == "T1.2" || id == "T1.4") {
        const int k = static_cast<int>(get_param_or(params, "k", 1));
        const Rational rhs = *bound_k_sperner(n, k, q).exact;
        rule.eval = [=](const Family& f) -> std::optional<std::pair<Rational, Rational>> {
            if (longest_chain(f) > k) return std::nullopt;
            return std::pair{size_of(f), rhs};
        };
    } else if (id == "T1.5" || id == "T3.1") {
        rule.eval = [](const Family& f) -> std::optional<std::pair<Rational, Rational>> {
            if (!is_antichain(f)) return std::nullopt;
            return std::pair{lubell(f), Rational(1)};
        };
    } else if (id == "T1.6" || id == "T3.2") {
        const int k = static_cast<int>(get_param_or(params, "k", 1));
        if (k < 1) throw UsageError("k must be at least 1");
        rule.eval = [=](const Family& f) -> std::optional<std::pair<Rational, Rational>> {
            if (longest_chain(f) > k) return std::nullopt;
            return std::pair{lubell(f), Rational(k)};
        };
    } else if (id == "T3.8" || id == "T3.9") {
        rule.eval = [n](const Family& f) -> std::optional<std::pair<Rational, Rational>> {
            if (!is_antichain(f)) return std::nullopt;
            const auto k = sharpening_level(f);
            if (!k) return std::nullopt;
            return std::pair{weighted_lubell(f, sharpening_weights(n, *k)), Rational(1)};
        };
    } else if (id == "T3.10" || id == "T3.11") {
        rule.eval = [](const Family& f) -> std::optional<std::pair<Rational, Rational>> {
            return std::pair{chain_weighted_lubell(f), Rational(1)};
        };
    } else if (id == "T1.12" || id == "T1.13") {
        const int s = static_cast<int>(get_param_or(params, "s", 3));
        const Rational rhs = *(q == 0 ? bound_kleitman_sets(n, s) : bound_kleitman_spaces(n, s, q)).exact;
        rule.eval = [=](const Family& f) -> std::optional<std::pair<Rational, Rational>> {
            if (has_s_disjoint(f, s)) return std::nullopt;
            return std::pair{size_of(f), rhs};
        };
    } else if (id == "C4.3" || id == "T4.6") {
        const int s = static_cast<int>(get_param_or(params, "s", 3));
        const Rational rhs = bound_frankl_norm(n, s);
        rule.eval = [=](const Family& f) -> std::optional<std::pair<Rational, Rational>> {
            if (has_s_disjoint(f, s)) return std::nullopt;
            return std::pair{lubell(f), rhs};
        };
    } else if (id == "T4.7") {
        const int k = static_cast<int>(get_param(params, "k"));
        if (k < 1 || k > n) throw UsageError("T4.7 requires 1 <= k <= n");
        std::vector<Rational> rhs(lat.level_size(k) + 1, Rational(0));
        for (std::size_t m = 1; m < rhs.size(); ++m) rhs[m] = to_rational(solve_gauss_real(BigInt(m), k, q, n).lower);
        rule.relation = ">=";
        rule.tolerance = real_guard_tolerance();
        rule.note = "right-hand side [y,k-1]_q with y from bisection; comparisons allow 1e-9";
        rule.eval = [=](const Family& f) -> std::optional<std::pair<Rational, Rational>> {
            if (f.empty() || f.profile()[static_cast<std::size_t>(k)] != f.size()) return std::nullopt;
            return std::pair{size_of(shadow(f)), rhs[f.size()]};
        };
    } else if (id == "L4.8") {
        rule.relation = ">=";
        rule.note = "left-hand side is min over i of phi(i-1) - phi(i)";
        rule.eval = [](const Family& f) -> std::optional<std::pair<Rational, Rational>> {
            if (!is_complex(f)) return std::nullopt;
            const auto phi = profile(f).phi;
            std::optional<Rational> gap;
            for (std::size_t i = 1; i < phi.size(); ++i) {
                const Rational d = phi[i - 1] - phi[i];
                if (!gap || d < *gap) gap = d;
            }
            return std::pair{gap.value_or(Rational(0)), Rational(0)};
        };
    } else if (id == "P4.11") {
        const int l = static_cast<int>(get_param(params, "l"));
        if (l < 0 || l >= n) throw UsageError("P4.11 requires 0 <= l < n");
        if (n < 3 * l) {
            rule.informational = true;
            rule.flags.push_back(kHypothesisUnmet);
        }
        rule.relation = ">=";
        rule.eval = [=](const Family& f) -> std::optional<std::pair<Rational, Rational>> {
            if (!is_complex(f)) return std::nullopt;
            const Rational norm = lubell(f);
            if (norm >= Rational(n + 1)) return std::nullopt;
            return std::pair{size_of(f), qperfect_rhs(n, q, l, norm)};
        };
    } else if (id == "P3.4" || id == "P3.5") {
        const Real c = (boost::multiprecision::sqrt(Real(2)) + Real(3)) / Real(2);
        const Rational rhs = upper_guard(c);
        rule.informational = true;
        rule.flags.push_back(kAsymptotic);
        rule.eval = [=](const Family& f) -> std::optional<std::pair<Rational, Rational>> {
            if (find_diamond(f)) return std::nullopt;
            return std::pair{lubell(f), rhs};
        };
    } else if (id == "T5.5" || id == "T5.8") {
        const int d = static_cast<int>(get_param_or(params, "d", 3));
        const BoundReport bound = bound_qalgebra_lubell(n, d, q);
        const Rational rhs = *bound.upper;
        rule.flags = bound.flags;
        rule.informational = bound.has_flag(kHypothesisUnmet);
        if (rule.informational) rule.note = "hypothesis unmet, informational";
        const bool boolean = q == 0;
        rule.eval = [=](const Family& f) -> std::optional<std::pair<Rational, Rational>> {
            const bool present = boolean ? has_boolean_algebra(f, d).has_value() : has_q_algebra(f, d).has_value();
            if (present) return std::nullopt;
            return std::pair{lubell(f), rhs};
        };
    } else {
        throw UsageError("theorem " + id + " is not a single-family theorem");
    }
    return rule;
}

struct Acc {
    std::uint64_t checked = 0;
    std::uint64_t in_hypothesis = 0;
    std::uint64_t violation_count = 0;
    std::uint64_t equality_count = 0;
    std::vector<CheckedCase> violations;
    std::optional<CheckedCase> max_lhs;
    std::optional<Rational> min_slack;
    std::optional<CheckedCase> tightest;

    template <class Families>
    void observe(const Rational& lhs, const Rational& rhs, bool le, const Rational& tol, Families&& families) {
        ++in_hypothesis;
        const Rational slack = le ? rhs - lhs : lhs - rhs;
        const bool violated = slack < -tol;
        const bool equal = abs(slack) <= tol;
        const bool new_max = !max_lhs || lhs > max_lhs->lhs;
        const bool new_tight = !min_slack || slack < *min_slack;
        if (equal) ++equality_count;
        if (violated) ++violation_count;
        if (!(new_max || new_tight || (violated && violations.size() < kMaxReportedViolations))) return;
        CheckedCase c{families(), lhs, rhs};
        if (violated && violations.size() < kMaxReportedViolations) violations.push_back(c);
        if (new_max) max_lhs = c;
        if (new_tight) {
            min_slack = slack;
            tightest = c;
        }
    }

    void merge(Acc&& o) {
        checked += o.checked;
        in_hypothesis += o.in_hypothesis;
        violation_count += o.violation_count;
        equality_count += o.equality_count;
        for (auto& v : o.violations) {
            if (violations.size() < kMaxReportedViolations) violations.push_back(std::move(v));
        }
        if (o.max_lhs && (!max_lhs || o.max_lhs->lhs > max_lhs->lhs)) max_lhs = std::move(o.max_lhs);
        if (o.min_slack && (!min_slack || *o.min_slack < *min_slack)) {
            min_slack = o.min_slack;
            tightest = std::move(o.tightest);
        }
    }
};

constexpr std::size_t kMaskChunk = 4096;
constexpr std::size_t kListChunk = 512;

Bitset random_family(const Lattice& lat, SplitMix64& rng) {
    // Density 1/2, 1/4, 1/8 or 1/16, so sparse families are sampled too.
    const std::uint64_t shift = 1 + rng.below(4);
    Bitset b(lat.size());
    for (std::size_t h = 0; h < lat.size(); ++h) {
        if (rng.below(std::uint64_t{1} << shift) == 0) b.set(h);
    }
    return b;
}

std::vector<Bitset> capped_families(const Lattice& lat, std::size_t cap) {
    std::vector<Bitset> out;
    Bitset cur(lat.size());
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        out.push_back(cur);
        if (depth == cap) return;
        for (std::size_t j = start; j < lat.size(); ++j) {
            cur.set(j);
            rec(j + 1, depth + 1);
            cur.reset(j);
        }
    };
    rec(0, 0);
    return out;
}

// Families of a scope, produced chunk by chunk in a fixed order.
struct FamilySource {
    std::size_t chunks = 0;
    std::function<void(std::size_t, const std::function<void(const Bitset&)>&)> run;
};

FamilySource family_source(const Lattice& lat, const Scope& scope) {
    FamilySource src;
    auto from_list = [&](std::vector<Bitset> list) {
        auto shared = std::make_shared<std::vector<Bitset>>(std::move(list));
        src.chunks = (shared->size() + kListChunk - 1) / kListChunk;
        src.run = [shared](std::size_t c, const std::function<void(const Bitset&)>& fn) {
            const std::size_t end = std::min(shared->size(), (c + 1) * kListChunk);
            for (std::size_t i = c * kListChunk; i < end; ++i) fn((*shared)[i]);
        };
    };
    switch (scope.kind) {
        case Scope::Kind::exhaustive: {
            if (lat.size() > kMaxExhaustiveElements) {
                throw UsageError("exhaustive scope is limited to lattices of " +
                                 std::to_string(kMaxExhaustiveElements) + " elements");
            }
            const std::uint64_t total = std::uint64_t{1} << lat.size();
            src.chunks = static_cast<std::size_t>((total + kMaskChunk - 1) / kMaskChunk);
            const std::size_t size = lat.size();
            src.run = [size, total](std::size_t c, const std::function<void(const Bitset&)>& fn) {
                const std::uint64_t end = std::min<std::uint64_t>(total, (c + 1) * kMaskChunk);
                for (std::uint64_t m = c * kMaskChunk; m < end; ++m) fn(bits_from_mask(size, m));
            };
            break;
        }
        case Scope::Kind::level: {
            if (scope.level < 0 || scope.level > lat.n()) throw UsageError("level out of range");
            const std::size_t count = lat.level_size(scope.level);
            if (count > kMaxExhaustiveElements) throw UsageError("level too large for exhaustive subsets");
            const Handle base = lat.level_begin(scope.level);
            const std::uint64_t total = std::uint64_t{1} << count;
            src.chunks = static_cast<std::size_t>((total + kMaskChunk - 1) / kMaskChunk);
            const std::size_t size = lat.size();
            src.run = [=](std::size_t c, const std::function<void(const Bitset&)>& fn) {
                const std::uint64_t end = std::min<std::uint64_t>(total, (c + 1) * kMaskChunk);
                for (std::uint64_t m = c * kMaskChunk; m < end; ++m) {
                    Bitset b(size);
                    for (std::size_t i = 0; i < count; ++i) {
                        if ((m >> i) & 1U) b.set(base + i);
                    }
                    fn(b);
                }
            };
            break;
        }
        case Scope::Kind::antichains: from_list(antichains(lat)); break;
        case Scope::Kind::complexes: from_list(complexes(lat)); break;
        case Scope::Kind::upsets: from_list(upsets(lat)); break;
        case Scope::Kind::capped: from_list(capped_families(lat, scope.size_cap)); break;
        case Scope::Kind::sample: {
            const std::uint64_t samples = scope.samples;
            const std::uint64_t seed = scope.seed;
            src.chunks = static_cast<std::size_t>((samples + kListChunk - 1) / kListChunk);
            const Lattice* lp = &lat;
            src.run = [=](std::size_t c, const std::function<void(const Bitset&)>& fn) {
                const std::uint64_t end = std::min<std::uint64_t>(samples, (c + 1) * kListChunk);
                for (std::uint64_t i = c * kListChunk; i < end; ++i) {
                    auto rng = SplitMix64::derive(seed, i);
                    fn(random_family(*lp, rng));
                }
            };
            break;
        }
    }
    return src;
}

Acc verify_families(const Lattice& lat, const Rule& rule, const Scope& scope, int workers) {
    const FamilySource src = family_source(lat, scope);
    const bool le = rule.relation == "<=";
    auto parts = run_chunks<Acc>(src.chunks, workers, [&](std::size_t c) {
        Acc acc;
        src.run(c, [&](const Bitset& bits) {
            ++acc.checked;
            const Family f(lat, bits);
            const auto r = rule.eval(f);
            if (!r) return;
            acc.observe(r->first, r->second, le, rule.tolerance, [&] { return std::vector<std::vector<Handle>>{handles_of(bits)}; });
        });
        return acc;
    });
    Acc total;
    for (auto& p : parts) total.merge(std::move(p));
    return total;
}

// s-tuples of families, no pairwise disjoint transversal.
Acc verify_tuples(const std::string& id, const Lattice& lat, const Scope& scope, Params& params, int workers) {
    const int n = lat.n();
    const int s = static_cast<int>(get_param_or(params, "s", 3));
    const bool by_size = id == "T1.14";
    if (s < 2) throw UsageError("s must be at least 2");
    const Rational rhs = by_size ? *bound_cross_dependent(n, s, lat.q()).exact : bound_frankl_norm_sum(n, s);
    auto value = [&](const Bitset& b) {
        return by_size ? Rational(static_cast<long long>(b.count())) : lubell(Family(lat, b));
    };
    auto families_of = [](const std::vector<const Bitset*>& picks) {
        std::vector<std::vector<Handle>> out;
        for (const auto* p : picks) out.push_back(handles_of(*p));
        return out;
    };
    std::vector<Bitset> disjoint;
    for (Handle h = 0; h < lat.size(); ++h) disjoint.push_back(lat.disjoint_from(h));

    if (scope.kind == Scope::Kind::exhaustive || scope.kind == Scope::Kind::upsets) {
        const std::vector<Bitset> ups = upsets(lat);
        auto parts = run_chunks<Acc>(ups.size(), workers, [&](std::size_t first) {
            Acc acc;
            std::vector<std::size_t> idx{first};
            // bad = every c that completes a disjoint transversal of the chosen families.
            std::function<void(std::size_t, const Bitset&, Bitset&)> collect = [&](std::size_t depth, const Bitset& avail,
                                                                                  Bitset& bad) {
                if (depth == idx.size()) {
                    bad |= avail;
                    return;
                }
                const Bitset cand = ups[idx[depth]] & avail;
                for (auto a = cand.find_first(); a != Bitset::npos; a = cand.find_next(a)) {
                    collect(depth + 1, avail & disjoint[a], bad);
                    if (bad.all()) return;
                }
            };
            std::function<void()> rec = [&] {
                if (static_cast<int>(idx.size()) == s - 1) {
                    Bitset all(lat.size());
                    all.set();
                    Bitset bad(lat.size());
                    collect(0, all, bad);
                    const Bitset last = ~bad;
                    ++acc.checked;
                    Rational lhs = value(last);
                    for (auto i : idx) lhs += value(ups[i]);
                    acc.observe(lhs, rhs, true, Rational(0), [&] {
                        std::vector<const Bitset*> picks;
                        for (auto i : idx) picks.push_back(&ups[i]);
                        picks.push_back(&last);
                        return families_of(picks);
                    });
                    return;
                }
                for (std::size_t j = idx.back(); j < ups.size(); ++j) {
                    idx.push_back(j);
                    rec();
                    idx.pop_back();
                }
            };
            rec();
            return acc;
        });
        Acc total;
        for (auto& p : parts) total.merge(std::move(p));
        return total;
    }

    auto check_tuple = [&](Acc& acc, const std::vector<const Bitset*>& picks) {
        ++acc.checked;
        std::vector<Family> fams;
        for (const auto* p : picks) fams.emplace_back(lat, *p);
        if (!are_cross_dependent(fams).dependent) return;
        Rational lhs = 0;
        for (const auto* p : picks) lhs += value(*p);
        acc.observe(lhs, rhs, true, Rational(0), [&] { return families_of(picks); });
    };

    if (scope.kind == Scope::Kind::capped) {
        const std::vector<Bitset> fams = capped_families(lat, scope.size_cap);
        auto parts = run_chunks<Acc>(fams.size(), workers, [&](std::size_t first) {
            Acc acc;
            std::vector<std::size_t> idx{first};
            std::function<void()> rec = [&] {
                if (static_cast<int>(idx.size()) == s) {
                    std::vector<const Bitset*> picks;
                    for (auto i : idx) picks.push_back(&fams[i]);
                    check_tuple(acc, picks);
                    return;
                }
                for (std::size_t j = idx.back(); j < fams.size(); ++j) {
                    idx.push_back(j);
                    rec();
                    idx.pop_back();
                }
            };
            rec();
            return acc;
        });
        Acc total;
        for (auto& p : parts) total.merge(std::move(p));
        return total;
    }

    if (scope.kind == Scope::Kind::sample) {
        const std::size_t chunks = static_cast<std::size_t>((scope.samples + kListChunk - 1) / kListChunk);
        auto parts = run_chunks<Acc>(chunks, workers, [&](std::size_t c) {
            Acc acc;
            const std::uint64_t end = std::min<std::uint64_t>(scope.samples, (c + 1) * kListChunk);
            for (std::uint64_t i = c * kListChunk; i < end; ++i) {
                auto rng = SplitMix64::derive(scope.seed, i);
                std::vector<Bitset> tuple;
                for (int j = 0; j < s; ++j) tuple.push_back(random_family(lat, rng));
                std::vector<const Bitset*> picks;
                for (const auto& b : tuple) picks.push_back(&b);
                check_tuple(acc, picks);
            }
            return acc;
        });
        Acc total;
        for (auto& p : parts) total.merge(std::move(p));
        return total;
    }
    throw UsageError("cross-dependent theorems support the exhaustive, upsets, capped and sample scopes");
}

} // namespace

std::vector<std::string> theorem_ids() {
    std::vector<std::string> out;
    for (const auto& t : kTheorems) out.emplace_back(t.id);
    return out;
}

TheoremReport verify_theorem(const std::string& theorem_id, const Lattice& lattice, const Scope& scope,
                             const std::map<std::string, long long>& params, int workers) {
    const TheoremInfo& info = theorem_info(theorem_id);
    if ((info.side == Side::boolean) != lattice.is_boolean()) {
        throw UsageError("theorem " + theorem_id + " applies to " +
                         (info.side == Side::boolean ? "Boolean" : "linear") + " lattices");
    }
    TheoremReport report;
    report.theorem_id = theorem_id;
    report.scope = to_string(scope.kind);
    report.params = params;
    if (scope.kind == Scope::Kind::sample) report.seed = scope.seed;
    if (scope.kind == Scope::Kind::level) report.params["level"] = scope.level;
    if (scope.kind == Scope::Kind::capped) report.params["size_cap"] = static_cast<long long>(scope.size_cap);
    Acc acc;
    if (info.tuple) {
        report.relation = "<=";
        acc = verify_tuples(theorem_id, lattice, scope, report.params, workers);
        report.note = theorem_id == "T1.14" ? "left-hand side is the total size of the s families"
                                            : "left-hand side is the total norm of the s families";
        if (scope.kind == Scope::Kind::exhaustive || scope.kind == Scope::Kind::upsets) {
            report.note += "; tuples of up-sets completed by the largest admissible last family";
        }
    } else {
        Rule rule = make_rule(theorem_id, lattice, report.params);
        report.relation = rule.relation;
        report.tolerance = rule.tolerance;
        report.informational = rule.informational;
        report.flags = rule.flags;
        report.note = rule.note;
        acc = verify_families(lattice, rule, scope, workers);
    }
    report.checked = acc.checked;
    report.in_hypothesis = acc.in_hypothesis;
    report.violation_count = acc.violation_count;
    report.equality_count = acc.equality_count;
    report.violations = std::move(acc.violations);
    report.max_lhs = std::move(acc.max_lhs);
    report.tightest = std::move(acc.tightest);
    return report;
}

TransferSampleReport verify_transfer_sampled(const Lattice& lattice, std::uint64_t samples, std::uint64_t seed,
                                             int workers, std::uint64_t max_bases) {
    CoveringOptions options;
    options.max_bases = max_bases;
    const CoveringFamily gamma = build_covering_family(lattice, options);
    TransferSampleReport report;
    report.samples = samples;
    report.seed = seed;
    report.gamma_size = gamma.gamma.size();
    struct Part {
        std::uint64_t plain = 0;
        std::uint64_t weighted = 0;
        std::optional<std::uint64_t> first;
    };
    const std::size_t chunks = static_cast<std::size_t>((samples + kListChunk - 1) / kListChunk);
    auto parts = run_chunks<Part>(chunks, workers, [&](std::size_t c) {
        Part part;
        const std::uint64_t end = std::min<std::uint64_t>(samples, (c + 1) * kListChunk);
        for (std::uint64_t i = c * kListChunk; i < end; ++i) {
            auto rng = SplitMix64::derive(seed, i);
            const Family f(lattice, random_family(lattice, rng));
            WeightVector beta{std::vector<Rational>(static_cast<std::size_t>(lattice.n() + 1))};
            for (auto& b : beta.beta) {
                b = Rational(static_cast<long long>(1 + rng.below(9)), static_cast<long long>(1 + rng.below(4)));
            }
            const bool plain_ok = verify_transfer_identity(f, std::nullopt, &gamma).equal();
            const bool weighted_ok = verify_transfer_identity(f, beta, &gamma).equal();
            if (!plain_ok) ++part.plain;
            if (!weighted_ok) ++part.weighted;
            if ((!plain_ok || !weighted_ok) && !part.first) part.first = i;
        }
        return part;
    });
    for (const auto& p : parts) {
        report.identity_failures += p.plain;
        report.weighted_failures += p.weighted;
        if (p.first && !report.first_failure) report.first_failure = p.first;
    }
    return report;
}

// ---------------------------------------------------------------- real Gaussian binomials

Real gauss_binom_real(const Real& y, int k, int q) {
    if (k < 0) throw DomainError("k must be nonnegative");
    if (q < 2) throw DomainError("q must be at least 2");
    Real out = 1;
    const Real qr(q);
    for (int i = 0; i < k; ++i) {
        out *= (boost::multiprecision::pow(qr, y - i) - 1) / (boost::multiprecision::pow(qr, Real(k - i)) - 1);
    }
    return out;
}

GaussRoot solve_gauss_real(const BigInt& m, int k, int q, int n) {
    if (k < 1 || k > n) throw DomainError("requires 1 <= k <= n");
    const BigInt top = gauss_binom(n, k, q);
    if (m < 1 || m > top) throw DomainError("m must lie in [1, [n,k]_q]");
    Real y;
    if (m == 1) {
        y = k;
    } else if (m == top) {
        y = n;
    } else {
        const Real target(m);
        Real lo = k;
        Real hi = n;
        const Real eps("1e-14");
        while (hi - lo > eps) {
            const Real mid = (lo + hi) / 2;
            if (gauss_binom_real(mid, k, q) < target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        y = (lo + hi) / 2;
    }
    return {y, gauss_binom_real(y, k - 1, q)};
}

// ---------------------------------------------------------------- colorings

namespace {

bool has_algebra(const Family& f, int d) {
    return f.lattice().is_boolean() ? has_boolean_algebra(f, d).has_value() : has_q_algebra(f, d).has_value();
}

bool fits_cap(std::size_t elements, int r, std::uint64_t cap) {
    BigInt total = 1;
    for (std::size_t i = 0; i < elements; ++i) {
        total *= r;
        if (total > cap) return false;
    }
    return true;
}

} // namespace

ColoringResult ramsey_color_check(const Lattice& lattice, int r, int d, std::uint64_t cap, std::uint64_t samples,
                                  std::uint64_t seed) {
    if (r < 1) throw UsageError("r must be at least 1");
    if (d < 1) throw UsageError("d must be at least 1");
    ColoringResult result;
    const std::size_t n = lattice.size();
    if (fits_cap(n, r, cap)) {
        result.exhaustive = true;
        std::vector<int> colors(n, -1);
        std::vector<Family> classes(static_cast<std::size_t>(r), Family(lattice));
        // Colors are introduced in order, which removes relabelled duplicates.
        std::function<bool(std::size_t, int)> place = [&](std::size_t h, int used) {
            if (h == n) return true;
            for (int c = 0; c < std::min(r, used + 1); ++c) {
                ++result.tried;
                auto& cls = classes[static_cast<std::size_t>(c)];
                cls.insert(static_cast<Handle>(h));
                if (!has_algebra(cls, d)) {
                    colors[h] = c;
                    if (place(h + 1, std::max(used, c + 1))) return true;
                }
                cls.erase(static_cast<Handle>(h));
            }
            return false;
        };
        if (place(0, 0)) result.coloring = colors;
        return result;
    }
    for (std::uint64_t i = 0; i < samples; ++i) {
        auto rng = SplitMix64::derive(seed, i);
        std::vector<int> colors(n);
        std::vector<Family> classes(static_cast<std::size_t>(r), Family(lattice));
        for (std::size_t h = 0; h < n; ++h) {
            colors[h] = static_cast<int>(rng.below(static_cast<std::uint64_t>(r)));
            classes[static_cast<std::size_t>(colors[h])].insert(static_cast<Handle>(h));
        }
        ++result.tried;
        if (std::none_of(classes.begin(), classes.end(), [&](const Family& f) { return has_algebra(f, d); })) {
            result.coloring = colors;
            return result;
        }
    }
    return result;
}

} // namespace qlat
