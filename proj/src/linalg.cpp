#include "qlat/linalg.hpp"

#include "qlat/errors.hpp"

#include <algorithm>

namespace qlat {

void Matrix::append_row(std::span<const std::uint8_t> r) {
    if (static_cast<int>(r.size()) != cols) throw UsageError("row length mismatch");
    data.insert(data.end(), r.begin(), r.end());
    ++rows;
}

int rref(const Field& f, Matrix& m) {
    int pivot_row = 0;
    for (int col = 0; col < m.cols && pivot_row < m.rows; ++col) {
        int sel = -1;
        for (int r = pivot_row; r < m.rows; ++r) {
            if (m.row(r)[col] != 0) {
                sel = r;
                break;
            }
        }
        if (sel < 0) continue;
        if (sel != pivot_row) {
            auto a = m.row(sel);
            auto b = m.row(pivot_row);
            std::swap_ranges(a.begin(), a.end(), b.begin());
        }
        auto prow = m.row(pivot_row);
        const std::uint8_t scale = f.inv_raw(prow[col]);
        for (auto& x : prow) x = f.mul_raw(x, scale);
        for (int r = 0; r < m.rows; ++r) {
            if (r == pivot_row) continue;
            auto cur = m.row(r);
            const std::uint8_t factor = cur[col];
            if (factor == 0) continue;
            const std::uint8_t neg = f.neg_raw(factor);
            for (int c = col; c < m.cols; ++c) cur[c] = f.add_raw(cur[c], f.mul_raw(neg, prow[c]));
        }
        ++pivot_row;
    }
    m.rows = pivot_row;
    m.data.resize(static_cast<std::size_t>(pivot_row) * m.cols);
    return pivot_row;
}

int rank(const Field& f, Matrix m) { return rref(f, m); }

Matrix stack(const Matrix& a, const Matrix& b) {
    if (a.cols != b.cols && a.rows > 0 && b.rows > 0) throw UsageError("column count mismatch");
    Matrix out;
    out.cols = a.rows > 0 ? a.cols : b.cols;
    out.rows = a.rows + b.rows;
    out.data = a.data;
    out.data.insert(out.data.end(), b.data.begin(), b.data.end());
    return out;
}

std::vector<int> pivot_columns(const Matrix& m) {
    std::vector<int> piv;
    piv.reserve(static_cast<std::size_t>(m.rows));
    for (int r = 0; r < m.rows; ++r) {
        const auto row = m.row(r);
        const auto it = std::find_if(row.begin(), row.end(), [](std::uint8_t x) { return x != 0; });
        piv.push_back(it == row.end() ? -1 : static_cast<int>(it - row.begin()));
    }
    return piv;
}

bool in_row_space(const Field& f, const Matrix& basis, std::span<const std::uint8_t> v) {
    std::vector<std::uint8_t> w(v.begin(), v.end());
    for (int r = 0; r < basis.rows; ++r) {
        const auto brow = basis.row(r);
        int pc = 0;
        while (pc < basis.cols && brow[pc] == 0) ++pc;
        const std::uint8_t factor = w[pc];
        if (factor == 0) continue;
        const std::uint8_t neg = f.neg_raw(factor);
        for (int c = pc; c < basis.cols; ++c) w[c] = f.add_raw(w[c], f.mul_raw(neg, brow[c]));
    }
    return std::all_of(w.begin(), w.end(), [](std::uint8_t x) { return x == 0; });
}

std::vector<std::uint8_t> decode_vector(std::uint64_t code, int q, int n) {
    std::vector<std::uint8_t> v(static_cast<std::size_t>(n));
    for (int j = n - 1; j >= 0; --j) {
        v[j] = static_cast<std::uint8_t>(code % static_cast<std::uint64_t>(q));
        code /= static_cast<std::uint64_t>(q);
    }
    return v;
}

std::uint64_t encode_vector(std::span<const std::uint8_t> v, int q) {
    std::uint64_t code = 0;
    for (auto x : v) code = code * static_cast<std::uint64_t>(q) + x;
    return code;
}

} // namespace qlat
