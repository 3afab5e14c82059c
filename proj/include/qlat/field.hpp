#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace qlat {

/// GF(q), q = p^e. `modulus` holds the coefficients (lowest degree first) of a
/// monic irreducible polynomial of degree e over GF(p); it is empty when e == 1.
struct FieldSpec {
    int p = 2;
    int e = 1;
    int q = 2;
    std::vector<int> modulus;

    /// Looks up the built-in description of GF(q). Prime powers are limited to
    /// the shipped modulus table (4, 8, 9, 16); primes only need to respect `max_q`.
    static FieldSpec for_order(int q, int max_q = 16);

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Element of GF(q) by index: the base-p digits of the index are the polynomial
/// coefficients, lowest degree first. Index 0 is zero and index 1 is one.
struct FieldElement {
    std::uint8_t index = 0;

    friend auto operator<=>(const FieldElement&, const FieldElement&) = default;
};

/// Table-driven arithmetic. Tables are filled once; the object is immutable after.
class Field {
public:
    explicit Field(FieldSpec spec);

    const FieldSpec& spec() const noexcept { return spec_; }
    int order() const noexcept { return spec_.q; }
    int characteristic() const noexcept { return spec_.p; }

    FieldElement zero() const noexcept { return {0}; }
    FieldElement one() const noexcept { return {1}; }
    FieldElement element(int index) const;

    FieldElement add(FieldElement a, FieldElement b) const noexcept {
        return {add_[a.index * q_ + b.index]};
    }
    FieldElement sub(FieldElement a, FieldElement b) const noexcept {
        return add(a, neg(b));
    }
    FieldElement mul(FieldElement a, FieldElement b) const noexcept {
        return {mul_[a.index * q_ + b.index]};
    }
    FieldElement neg(FieldElement a) const noexcept { return {neg_[a.index]}; }
    /// Throws DomainError for zero.
    FieldElement inv(FieldElement a) const;

    // Raw-index variants for the row-reduction kernels.
    std::uint8_t add_raw(std::uint8_t a, std::uint8_t b) const noexcept { return add_[a * q_ + b]; }
    std::uint8_t mul_raw(std::uint8_t a, std::uint8_t b) const noexcept { return mul_[a * q_ + b]; }
    std::uint8_t neg_raw(std::uint8_t a) const noexcept { return neg_[a]; }
    std::uint8_t inv_raw(std::uint8_t a) const { return inv(FieldElement{a}).index; }

    friend bool operator==(const Field& a, const Field& b) { return a.spec_ == b.spec_; }

private:
    FieldSpec spec_;
    int q_;
    std::vector<std::uint8_t> add_;
    std::vector<std::uint8_t> mul_;
    std::vector<std::uint8_t> neg_;
    std::vector<std::uint8_t> inv_;
};

bool is_prime(int v);

} // namespace qlat
