#include "qlat/measures.hpp"

#include "qlat/errors.hpp"

#include <algorithm>

namespace qlat {

namespace {

Rational level_count(const Lattice& lat, int i) { return Rational(static_cast<long long>(lat.level_size(i))); }

// Longest chain of members ending at (down) and starting at (up) each member.
void chain_lengths(const Family& family, std::vector<Handle>& members, std::vector<int>& down, std::vector<int>& up) {
    const Lattice& lat = family.lattice();
    members = family.handles(); // handle order refines containment order
    const std::size_t m = members.size();
    down.assign(m, 1);
    up.assign(m, 1);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            if (lat.dim(members[i]) < lat.dim(members[j]) && lat.contains(members[i], members[j])) {
                down[j] = std::max(down[j], down[i] + 1);
            }
        }
    }
    for (std::size_t j = m; j-- > 0;) {
        for (std::size_t i = j + 1; i < m; ++i) {
            if (lat.dim(members[j]) < lat.dim(members[i]) && lat.contains(members[j], members[i])) {
                up[j] = std::max(up[j], up[i] + 1);
            }
        }
    }
}

} // namespace

Rational lubell(const Family& family) {
    const Lattice& lat = family.lattice();
    Rational sum = 0;
    for (int i = 0; i <= lat.n(); ++i) {
        const auto cnt = family.profile()[static_cast<std::size_t>(i)];
        if (cnt != 0) sum += Rational(static_cast<long long>(cnt)) / level_count(lat, i);
    }
    return sum;
}

Rational weighted_lubell(const Family& family, const WeightVector& beta) {
    const Lattice& lat = family.lattice();
    if (beta.n() != lat.n()) throw UsageError("weight vector length must be n + 1");
    Rational sum = 0;
    for (int i = 0; i <= lat.n(); ++i) {
        const auto cnt = family.profile()[static_cast<std::size_t>(i)];
        if (cnt != 0) sum += beta.beta[static_cast<std::size_t>(i)] * Rational(static_cast<long long>(cnt)) / level_count(lat, i);
    }
    return sum;
}

Rational rho(const Family& family) { return lubell(family) / Rational(family.lattice().n() + 1); }

ProfileVector profile(const Family& family) {
    const Lattice& lat = family.lattice();
    ProfileVector out;
    out.phi.reserve(static_cast<std::size_t>(lat.n() + 1));
    for (int i = 0; i <= lat.n(); ++i) {
        out.phi.push_back(Rational(static_cast<long long>(family.profile()[static_cast<std::size_t>(i)])) /
                          level_count(lat, i));
    }
    return out;
}

ProfileVector profile_decompose(const Family& family) {
    if (!is_complex(family)) throw UsageError("profile_decompose: family is not a complex");
    if (family.contains(family.lattice().top())) {
        throw UsageError("profile_decompose: complex contains the whole space");
    }
    ProfileVector out = profile(family);
    const int n = family.lattice().n();
    std::vector<Rational> alpha;
    alpha.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) alpha.push_back(out.phi[static_cast<std::size_t>(j)] - out.phi[static_cast<std::size_t>(j) + 1]);
    out.alpha = std::move(alpha);
    return out;
}

int longest_chain(const Family& family) {
    std::vector<Handle> members;
    std::vector<int> down;
    std::vector<int> up;
    chain_lengths(family, members, down, up);
    return down.empty() ? 0 : *std::max_element(down.begin(), down.end());
}

std::map<Handle, int> chain_participation(const Family& family) {
    std::vector<Handle> members;
    std::vector<int> down;
    std::vector<int> up;
    chain_lengths(family, members, down, up);
    std::map<Handle, int> out;
    for (std::size_t i = 0; i < members.size(); ++i) out.emplace(members[i], down[i] + up[i] - 1);
    return out;
}

Rational chain_weighted_lubell(const Family& family) {
    const Lattice& lat = family.lattice();
    Rational sum = 0;
    for (const auto& [h, c] : chain_participation(family)) {
        sum += Rational(1) / (Rational(c) * level_count(lat, lat.dim(h)));
    }
    return sum;
}

std::optional<int> sharpening_level(const Family& family) {
    const Lattice& lat = family.lattice();
    const int n = lat.n();
    const auto& prof = family.profile();
    if (prof[0] > 0) return 0;
    Rational partial = 0;
    for (int t = 1; t <= n; ++t) {
        const auto cnt = prof[static_cast<std::size_t>(t)];
        if (cnt != 0) {
            const BigInt coeff = lat.is_boolean() ? binom(n - 1, t - 1) : gauss_binom(n - 1, t - 1, lat.q());
            partial += Rational(static_cast<long long>(cnt)) / Rational(coeff);
        }
        if (partial > 1) return t;
    }
    return std::nullopt;
}

WeightVector sharpening_weights(int n, int k) {
    if (k < 0 || k > n) throw DomainError("sharpening level out of range");
    WeightVector w{std::vector<Rational>(static_cast<std::size_t>(n + 1), Rational(0))};
    for (int i = 0; i <= n; ++i) {
        if (i < k) {
            if (i > 0) w.beta[static_cast<std::size_t>(i)] = Rational(k, i);
        } else if (i < n) {
            w.beta[static_cast<std::size_t>(i)] = Rational(n - k, n - i);
        }
    }
    return w;
}

} // namespace qlat
