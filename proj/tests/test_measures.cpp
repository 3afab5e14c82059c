#include "qlat/errors.hpp"
#include "qlat/measures.hpp"

#include <doctest.h>

#include <random>

using namespace qlat;

namespace {

Family mask_family(const Lattice& lat, std::uint64_t m) { return Family::from_mask(lat, m); }

// Member-by-member sum, independent of the level-profile shortcut.
Rational naive_lubell(const Family& f) {
    Rational s = 0;
    f.for_each([&](Handle h) { s += Rational(1, static_cast<long long>(f.lattice().level_size(f.lattice().dim(h)))); });
    return s;
}

} // namespace

TEST_CASE("lubell examples") {
    const auto l3 = Lattice::linear(2, 3);
    CHECK(lubell(Family::whole(l3)) == 4);
    const auto b4 = Lattice::boolean(4);
    CHECK(lubell(Family::levels(b4, 2, 2)) == 1);
    const auto b2 = Lattice::boolean(2);
    const Handle hs[] = {b2.handle_of_mask(0), b2.handle_of_mask(1)};
    CHECK(lubell(Family::from_handles(b2, hs)) == Rational(3, 2));
}

TEST_CASE("lubell bounds, additivity and agreement with the naive sum") {
    const auto lat = Lattice::linear(2, 3);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t) {
        const std::uint64_t a = rng() & 0xffff;
        const std::uint64_t b = rng() & 0xffff & ~a;
        const auto fa = mask_family(lat, a);
        const auto fb = mask_family(lat, b);
        const auto fab = mask_family(lat, a | b);
        CHECK(lubell(fa) == naive_lubell(fa));
        CHECK(lubell(fab) == lubell(fa) + lubell(fb));
        CHECK(lubell(fab) >= lubell(fa));
        CHECK(lubell(fa) >= 0);
        CHECK(lubell(fa) <= 4);
        if (a != 0xffff) CHECK(lubell(fa) < 4);
        CHECK(weighted_lubell(fa, WeightVector::ones(3)) == lubell(fa));
    }
}

TEST_CASE("weighted lubell") {
    const auto lat = Lattice::linear(2, 3);
    auto f = Family::levels(lat, 1, 1);
    f.insert(lat.level_begin(2));
    WeightVector ind{{0, 0, 1, 0}};
    CHECK(weighted_lubell(f, ind) == Rational(1, 7));
    CHECK_THROWS_AS(weighted_lubell(f, WeightVector::ones(4)), UsageError);
}

TEST_CASE("rho") {
    const auto b4 = Lattice::boolean(4);
    CHECK(rho(Family::whole(b4)) == 1);
    CHECK(rho(Family(b4)) == 0);
    CHECK(rho(Family::levels(b4, 2, 2)) == Rational(1, 5));
}

TEST_CASE("chain participation") {
    const auto b2 = Lattice::boolean(2);
    for (const auto& [h, c] : chain_participation(Family::whole(b2))) CHECK(c == 3);
    const auto b4 = Lattice::boolean(4);
    for (const auto& [h, c] : chain_participation(Family::levels(b4, 2, 2))) CHECK(c == 1);
    const Handle chain[] = {b4.handle_of_mask(0), b4.handle_of_mask(1), b4.handle_of_mask(3), b4.handle_of_mask(11)};
    const auto cp = chain_participation(Family::from_handles(b4, chain));
    CHECK(cp.size() == 4);
    for (const auto& [h, c] : cp) CHECK(c == 4);
    CHECK(longest_chain(Family::from_handles(b4, chain)) == 4);
    CHECK(longest_chain(Family(b4)) == 0);
    // Never exceeds the longest chain.
    const auto lat = Lattice::linear(2, 3);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 300; ++t) {
        const auto f = mask_family(lat, rng() & 0xffff);
        const int lc = longest_chain(f);
        for (const auto& [h, c] : chain_participation(f)) {
            CHECK(c >= 1);
            CHECK(c <= lc);
        }
    }
}

TEST_CASE("profile decomposition") {
    const auto lat = Lattice::linear(2, 3);
    const auto p = profile_decompose(Family::levels(lat, 0, 1));
    CHECK(p.phi == std::vector<Rational>{1, 1, 0, 0});
    CHECK(*p.alpha == std::vector<Rational>{0, 1, 0});
    const Handle z[] = {lat.bottom()};
    const auto pz = profile_decompose(Family::from_handles(lat, z));
    CHECK(pz.phi == std::vector<Rational>{1, 0, 0, 0});
    CHECK(*pz.alpha == std::vector<Rational>{1, 0, 0});
    const Handle l[] = {lat.level_begin(1)};
    CHECK_THROWS_AS(profile_decompose(Family::from_handles(lat, l)), UsageError);
    CHECK_THROWS_AS(profile_decompose(Family::whole(lat)), UsageError);
    // Every complex: monotone profile, nonnegative alpha, exact reconstruction.
    int complexes = 0;
    for (std::uint64_t m = 0; m < (1u << 16); ++m) {
        const auto f = mask_family(lat, m);
        if (!is_complex(f) || f.contains(lat.top())) continue;
        ++complexes;
        const auto pv = profile_decompose(f);
        for (int j = 0; j < 3; ++j) {
            CHECK((*pv.alpha)[j] >= 0);
            Rational s = 0;
            for (int k = j; k < 3; ++k) s += (*pv.alpha)[k];
            CHECK(s == pv.phi[j]);
        }
        Rational total = 0;
        for (const auto& x : pv.phi) total += x;
        CHECK(total == lubell(f));
    }
    CHECK(complexes > 2);
}

TEST_CASE("sharpening level and weights") {
    const auto b4 = Lattice::boolean(4);
    // Level 2 of B_4: partial sums 0, 0, 6/3 > 1 at t = 2.
    CHECK(sharpening_level(Family::levels(b4, 2, 2)) == 2);
    const Handle z[] = {b4.bottom()};
    CHECK(sharpening_level(Family::from_handles(b4, z)) == 0);
    const Handle single[] = {b4.handle_of_mask(1)};
    CHECK_FALSE(sharpening_level(Family::from_handles(b4, single)).has_value());
    const auto w = sharpening_weights(4, 2);
    CHECK(w.beta == std::vector<Rational>{0, 2, 1, 2, 0});
}
