#pragma once

#include "qlat/field.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qlat {

/// Dense row-major matrix over GF(q); entries are field element indices.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}

    std::span<std::uint8_t> row(int i) {
        return {data.data() + static_cast<std::size_t>(i) * cols, static_cast<std::size_t>(cols)};
    }
    std::span<const std::uint8_t> row(int i) const {
        return {data.data() + static_cast<std::size_t>(i) * cols, static_cast<std::size_t>(cols)};
    }
    void append_row(std::span<const std::uint8_t> r);

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// Brings `m` to reduced row echelon form in place (pivots equal one, zero
/// rows dropped) and returns the rank.
int rref(const Field& f, Matrix& m);

int rank(const Field& f, Matrix m);

/// Vertical concatenation.
Matrix stack(const Matrix& a, const Matrix& b);

/// Column index of the first nonzero entry of each row of an RREF matrix.
std::vector<int> pivot_columns(const Matrix& rref_form);

/// True iff `v` lies in the row space of `basis`, which must be in RREF.
bool in_row_space(const Field& f, const Matrix& basis, std::span<const std::uint8_t> v);

/// Vectors of F_q^n are coded as integers in [0, q^n): digit j (base q, most
/// significant first) is coordinate j.
std::vector<std::uint8_t> decode_vector(std::uint64_t code, int q, int n);
std::uint64_t encode_vector(std::span<const std::uint8_t> v, int q);

} // namespace qlat
