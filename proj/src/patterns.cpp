#include "qlat/patterns.hpp"

#include "qlat/errors.hpp"

#include <string>

namespace qlat {

namespace {

// Strict up- and down-sets of every member, restricted to the family.
struct LocalOrder {
    std::vector<Bitset> up;
    std::vector<Bitset> down;

    explicit LocalOrder(const Family& family) {
        const Lattice& lat = family.lattice();
        up.assign(lat.size(), Bitset());
        down.assign(lat.size(), Bitset());
        family.for_each([&](Handle h) {
            up[h] = lat.above(h) & family.members();
            up[h].reset(h);
            down[h] = lat.below(h) & family.members();
            down[h].reset(h);
        });
    }
};

std::string subset_label(unsigned mask, int d) {
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < d; ++i) {
        if (mask & (1u << i)) {
            if (!first) out += ",";
            out += std::to_string(i + 1);
            first = false;
        }
    }
    return out + "}";
}

std::optional<Witness> embed(const Family& family, const PosetPattern& pattern, int cap, bool strong) {
    if (pattern.m > cap) {
        throw ResourceError("pattern " + pattern.name + " has " + std::to_string(pattern.m) +
                            " elements, above the cap " + std::to_string(cap));
    }
    pattern.validate();
    if (pattern.m == 0) return Witness{pattern.name, {}, {}};
    const LocalOrder order(family);
    const auto m = static_cast<std::size_t>(pattern.m);
    std::vector<Handle> psi(m);
    Bitset used(family.lattice().size());

    auto rec = [&](auto&& self, std::size_t j) -> bool {
        if (j == m) return true;
        Bitset cand = family.members() & ~used;
        for (std::size_t i = 0; i < j && cand.any(); ++i) {
            if (pattern.less[i][j]) {
                cand &= order.up[psi[i]];
            } else if (pattern.less[j][i]) {
                cand &= order.down[psi[i]];
            } else if (strong) {
                cand -= order.up[psi[i]];
                cand -= order.down[psi[i]];
            }
        }
        for (auto c = cand.find_first(); c != Bitset::npos; c = cand.find_next(c)) {
            psi[j] = static_cast<Handle>(c);
            used.set(c);
            if (self(self, j + 1)) return true;
            used.reset(c);
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return Witness{pattern.name, psi, pattern.roles};
}

void require_s(int s) {
    if (s < 2) throw UsageError("s must be at least 2");
}

} // namespace

PosetPattern PosetPattern::chain(int k) {
    if (k < 1) throw UsageError("chain length must be at least 1");
    PosetPattern p{"P" + std::to_string(k), k, std::vector<std::vector<bool>>(k, std::vector<bool>(k, false)), {}};
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) p.less[i][j] = true;
        p.roles.push_back("c" + std::to_string(i + 1));
    }
    return p;
}

PosetPattern PosetPattern::diamond() {
    PosetPattern p{"Q2", 4, std::vector<std::vector<bool>>(4, std::vector<bool>(4, false)), {"x", "y", "z", "w"}};
    p.less[0][1] = p.less[0][2] = p.less[0][3] = true;
    p.less[1][3] = p.less[2][3] = true;
    return p;
}

PosetPattern PosetPattern::antichain(int k) {
    if (k < 1) throw UsageError("antichain size must be at least 1");
    PosetPattern p{"A" + std::to_string(k), k, std::vector<std::vector<bool>>(k, std::vector<bool>(k, false)), {}};
    for (int i = 0; i < k; ++i) p.roles.push_back("a" + std::to_string(i + 1));
    return p;
}

void PosetPattern::validate() const {
    const auto n = static_cast<std::size_t>(m);
    if (less.size() != n) throw UsageError("pattern relation has the wrong size");
    for (const auto& row : less) {
        if (row.size() != n) throw UsageError("pattern relation has the wrong size");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (less[i][i]) throw UsageError("pattern relation is not irreflexive");
        for (std::size_t j = 0; j < n; ++j) {
            if (less[i][j] && less[j][i]) throw UsageError("pattern relation is not antisymmetric");
            for (std::size_t k = 0; k < n; ++k) {
                if (less[i][j] && less[j][k] && !less[i][k]) throw UsageError("pattern relation is not transitive");
            }
        }
    }
}

std::optional<Witness> contains_weak(const Family& family, const PosetPattern& pattern, int cap) {
    return embed(family, pattern, cap, false);
}

std::optional<Witness> contains_strong(const Family& family, const PosetPattern& pattern, int cap) {
    return embed(family, pattern, cap, true);
}

std::optional<Witness> find_chain(const Family& family, int k) {
    if (k < 1) throw UsageError("chain length must be at least 1");
    const Lattice& lat = family.lattice();
    const auto members = family.handles();
    // up_len[i]: longest chain of members starting at members[i].
    std::vector<int> up_len(members.size(), 1);
    for (std::size_t i = members.size(); i-- > 0;) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (up_len[j] + 1 > up_len[i] && lat.dim(members[i]) < lat.dim(members[j]) &&
                lat.contains(members[i], members[j])) {
                up_len[i] = up_len[j] + 1;
            }
        }
    }
    Witness w{"P" + std::to_string(k), {}, {}};
    std::size_t start = 0;
    for (int need = k; need >= 1; --need) {
        bool found = false;
        for (std::size_t i = start; i < members.size(); ++i) {
            if (up_len[i] < need) continue;
            if (!w.handles.empty()) {
                const Handle prev = w.handles.back();
                if (lat.dim(prev) >= lat.dim(members[i]) || !lat.contains(prev, members[i])) continue;
            }
            w.handles.push_back(members[i]);
            w.roles.push_back("c" + std::to_string(k - need + 1));
            start = i + 1;
            found = true;
            break;
        }
        if (!found) return std::nullopt;
    }
    return w;
}

std::optional<Witness> find_diamond(const Family& family) {
    const LocalOrder order(family);
    for (auto x = family.members().find_first(); x != Bitset::npos; x = family.members().find_next(x)) {
        const Bitset& ux = order.up[x];
        if (ux.count() < 3) continue;
        for (auto y = ux.find_first(); y != Bitset::npos; y = ux.find_next(y)) {
            for (auto z = ux.find_first(); z != Bitset::npos; z = ux.find_next(z)) {
                if (z == y) continue;
                const Bitset top = order.up[y] & order.up[z];
                const auto w = top.find_first();
                if (w != Bitset::npos) {
                    return Witness{"Q2",
                                   {static_cast<Handle>(x), static_cast<Handle>(y), static_cast<Handle>(z),
                                    static_cast<Handle>(w)},
                                   {"x", "y", "z", "w"}};
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<Witness> has_s_disjoint(const Family& family, int s) {
    require_s(s);
    const Lattice& lat = family.lattice();
    const auto count = static_cast<std::size_t>(s);
    std::vector<Handle> pick;
    pick.reserve(count);
    auto rec = [&](auto&& self, const Bitset& cand) -> bool {
        if (pick.size() == count) return true;
        // Nondecreasing handles; a repeat survives only when the element is self-disjoint.
        const auto from = pick.empty() ? cand.find_first() : (cand.test(pick.back()) ? pick.back() : cand.find_next(pick.back()));
        for (auto c = from; c != Bitset::npos; c = cand.find_next(c)) {
            pick.push_back(static_cast<Handle>(c));
            if (self(self, cand & lat.disjoint_from(static_cast<Handle>(c)))) return true;
            pick.pop_back();
        }
        return false;
    };
    if (!rec(rec, family.members())) return std::nullopt;
    Witness w{std::to_string(s) + "-disjoint", pick, {}};
    for (int i = 0; i < s; ++i) w.roles.push_back("V" + std::to_string(i + 1));
    return w;
}

CrossDependence are_cross_dependent(std::span<const Family> families) {
    if (families.size() < 2) throw UsageError("cross-dependence needs at least two families");
    for (const auto& f : families) require_same_lattice(families.front(), f);
    const Lattice& lat = families.front().lattice();
    std::vector<Handle> pick;
    auto rec = [&](auto&& self, const Bitset& allowed) -> bool {
        const std::size_t i = pick.size();
        if (i == families.size()) return true;
        const Bitset cand = allowed & families[i].members();
        for (auto c = cand.find_first(); c != Bitset::npos; c = cand.find_next(c)) {
            pick.push_back(static_cast<Handle>(c));
            if (self(self, allowed & lat.disjoint_from(static_cast<Handle>(c)))) return true;
            pick.pop_back();
        }
        return false;
    };
    Bitset all(lat.size());
    all.set();
    CrossDependence out;
    if (rec(rec, all)) {
        out.dependent = false;
        Witness w{"transversal", pick, {}};
        for (std::size_t i = 0; i < pick.size(); ++i) w.roles.push_back("V" + std::to_string(i + 1));
        out.transversal = std::move(w);
    }
    return out;
}

namespace {

// Shared search for both algebra readings. `compatible(S0, chosen, next)` decides
// whether `next` may join the generators; sums must be members, and with
// `distinct` the 2^d sums must be pairwise different.
template <class Compatible>
std::optional<Witness> find_algebra(const Family& family, int d, const std::string& kind, Compatible compatible,
                                    bool distinct) {
    const Lattice& lat = family.lattice();
    const LocalOrder order(family);
    std::vector<Handle> gens;
    std::vector<Handle> sums; // sums[I] for I ⊆ {1..|gens|}
    Handle base = 0;

    auto rec = [&](auto&& self, std::size_t from) -> bool {
        if (gens.size() == static_cast<std::size_t>(d)) return true;
        const Bitset& cand = order.up[base];
        for (auto c = from == 0 ? cand.find_first() : cand.find_next(from - 1); c != Bitset::npos; c = cand.find_next(c)) {
            const auto g = static_cast<Handle>(c);
            if (!compatible(base, gens, g)) continue;
            const std::size_t old = sums.size();
            bool ok = true;
            for (std::size_t I = 0; I < old && ok; ++I) {
                const Handle s = lat.join(sums[I], g);
                if (!family.contains(s)) ok = false;
                if (distinct) {
                    for (std::size_t J = 0; J < sums.size() && ok; ++J) {
                        if (sums[J] == s) ok = false;
                    }
                }
                sums.push_back(s);
            }
            if (ok) {
                gens.push_back(g);
                if (self(self, c + 1)) return true;
                gens.pop_back();
            }
            sums.resize(old);
        }
        return false;
    };

    for (auto b = family.members().find_first(); b != Bitset::npos; b = family.members().find_next(b)) {
        base = static_cast<Handle>(b);
        if (order.up[base].count() < static_cast<std::size_t>(d)) continue;
        gens.clear();
        sums.assign(1, base);
        if (rec(rec, 0)) {
            Witness w{kind, sums, {}};
            for (unsigned I = 0; I < sums.size(); ++I) w.roles.push_back(subset_label(I, d));
            return w;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<Witness> has_boolean_algebra(const Family& family, int d) {
    if (!family.lattice().is_boolean()) throw UsageError("Boolean algebra detection needs a Boolean lattice");
    if (d < 1) throw UsageError("algebra dimension must be at least 1");
    if (d > kMaxBooleanAlgebraDim) {
        throw ResourceError("Boolean algebra dimension " + std::to_string(d) + " above the cap " +
                            std::to_string(kMaxBooleanAlgebraDim));
    }
    const Lattice& lat = family.lattice();
    auto compatible = [&](Handle base, const std::vector<Handle>& gens, Handle g) {
        for (Handle h : gens) {
            if (lat.meet_dim(h, g) != lat.dim(base)) return false;
        }
        return true;
    };
    return find_algebra(family, d, "BA" + std::to_string(d), compatible, false);
}

std::optional<Witness> has_q_algebra(const Family& family, int d) {
    if (family.lattice().is_boolean()) throw UsageError("q-algebra detection needs a linear lattice");
    if (d < 1) throw UsageError("algebra dimension must be at least 1");
    if (d > kMaxQAlgebraDim) {
        throw ResourceError("q-algebra dimension " + std::to_string(d) + " above the cap " +
                            std::to_string(kMaxQAlgebraDim));
    }
    auto compatible = [](Handle, const std::vector<Handle>&, Handle) { return true; };
    return find_algebra(family, d, "QA" + std::to_string(d), compatible, true);
}

} // namespace qlat
