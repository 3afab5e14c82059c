#include "qlat/field.hpp"

#include "qlat/errors.hpp"

#include <string>

namespace qlat {

bool is_prime(int v) {
    if (v < 2) return false;
    for (int d = 2; d * d <= v; ++d) {
        if (v % d == 0) return false;
    }
    return true;
}

FieldSpec FieldSpec::for_order(int q, int max_q) {
    if (q < 2) throw DomainError("field order must be >= 2, got " + std::to_string(q));
    if (q > max_q) {
        throw DomainError("field order " + std::to_string(q) + " exceeds the configured cap " +
                          std::to_string(max_q));
    }
    if (q > 255) throw DomainError("field order " + std::to_string(q) + " does not fit an element index");
    if (is_prime(q)) return FieldSpec{q, 1, q, {}};
    // Conway-style choices; each is irreducible over the prime subfield.
    switch (q) {
    case 4: return FieldSpec{2, 2, 4, {1, 1, 1}};        // x^2 + x + 1
    case 8: return FieldSpec{2, 3, 8, {1, 1, 0, 1}};     // x^3 + x + 1
    case 9: return FieldSpec{3, 2, 9, {1, 0, 1}};        // x^2 + 1
    case 16: return FieldSpec{2, 4, 16, {1, 1, 0, 0, 1}}; // x^4 + x + 1
    default: break;
    }
    throw DomainError("no built-in field of order " + std::to_string(q));
}

namespace {

std::vector<int> digits_of(int index, int p, int e) {
    std::vector<int> d(static_cast<std::size_t>(e));
    for (int i = 0; i < e; ++i) {
        d[static_cast<std::size_t>(i)] = index % p;
        index /= p;
    }
    return d;
}

int index_of(const std::vector<int>& d, int p) {
    int index = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) index = index * p + *it;
    return index;
}

} // namespace

Field::Field(FieldSpec spec) : spec_(std::move(spec)), q_(spec_.q) {
    const int p = spec_.p;
    const int e = spec_.e;
    if (!is_prime(p) || e < 1) throw DomainError("invalid field characteristic/degree");
    int q = 1;
    for (int i = 0; i < e; ++i) q *= p;
    if (q != spec_.q) throw DomainError("field order does not equal p^e");
    if (e > 1 && (spec_.modulus.size() != static_cast<std::size_t>(e + 1) || spec_.modulus.back() != 1)) {
        throw DomainError("modulus must be monic of degree e");
    }

    const auto n = static_cast<std::size_t>(q_);
    add_.resize(n * n);
    mul_.resize(n * n);
    neg_.resize(n);
    inv_.assign(n, 0);

    for (int a = 0; a < q_; ++a) {
        const auto da = digits_of(a, p, e);
        for (int b = 0; b < q_; ++b) {
            const auto db = digits_of(b, p, e);
            std::vector<int> sum(static_cast<std::size_t>(e));
            for (int i = 0; i < e; ++i) sum[i] = (da[i] + db[i]) % p;
            add_[a * q_ + b] = static_cast<std::uint8_t>(index_of(sum, p));

            // Schoolbook product, then reduce by the monic modulus.
            std::vector<int> prod(static_cast<std::size_t>(2 * e - 1), 0);
            for (int i = 0; i < e; ++i)
                for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            if (e > 1) {
                for (int deg = 2 * e - 2; deg >= e; --deg) {
                    const int c = prod[deg];
                    if (c == 0) continue;
                    for (int i = 0; i <= e; ++i) {
                        prod[deg - e + i] = ((prod[deg - e + i] - c * spec_.modulus[i]) % p + p) % p;
                    }
                }
            }
            prod.resize(static_cast<std::size_t>(e));
            mul_[a * q_ + b] = static_cast<std::uint8_t>(index_of(prod, p));
        }
    }
    for (int a = 0; a < q_; ++a) {
        for (int b = 0; b < q_; ++b) {
            if (add_[a * q_ + b] == 0) neg_[a] = static_cast<std::uint8_t>(b);
            if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<std::uint8_t>(b);
        }
    }
    // Every nonzero element is a unit iff the modulus is irreducible.
    for (int a = 1; a < q_; ++a) {
        if (mul_[a * q_ + inv_[a]] != 1) throw DomainError("modulus is reducible: GF(q) tables are not a field");
    }
}

FieldElement Field::element(int index) const {
    if (index < 0 || index >= q_) throw DomainError("field element index out of range");
    return {static_cast<std::uint8_t>(index)};
}

FieldElement Field::inv(FieldElement a) const {
    if (a.index == 0) throw DomainError("inverse of zero in GF(q)");
    return {inv_[a.index]};
}

} // namespace qlat
