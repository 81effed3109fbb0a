#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quadsel {

using BitVector = std::vector<bool>;

/// Dense matrix over GF(2), rows stored as packed 64-bit words.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    static BitMatrix from_rows(const std::vector<BitVector>& rows, std::size_t cols) {
        BitMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("BitMatrix: ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * words_ + c / 64] >> (c % 64)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        auto& w = data_[r * words_ + c / 64];
        const std::uint64_t bit = std::uint64_t{1} << (c % 64);
        w = v ? (w | bit) : (w & ~bit);
    }

    BitVector row(std::size_t r) const {
        BitVector v(cols_);
        for (std::size_t c = 0; c < cols_; ++c) v[c] = get(r, c);
        return v;
    }

    void append_row(const BitVector& v) {
        if (v.size() != cols_) throw std::invalid_argument("BitMatrix: row length mismatch");
        data_.resize(data_.size() + words_, 0);
        ++rows_;
        for (std::size_t c = 0; c < cols_; ++c) set(rows_ - 1, c, v[c]);
    }

    /// Rows of `below` are placed under the rows of this matrix.
    BitMatrix stacked(const BitMatrix& below) const {
        if (below.cols_ != cols_) throw std::invalid_argument("BitMatrix: column mismatch");
        BitMatrix m(rows_ + below.rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m.set(r, c, get(r, c));
        for (std::size_t r = 0; r < below.rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m.set(rows_ + r, c, below.get(r, c));
        return m;
    }

    BitVector apply(const BitVector& x) const {
        if (x.size() != cols_) throw std::invalid_argument("BitMatrix: vector length mismatch");
        BitVector y(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            bool acc = false;
            for (std::size_t c = 0; c < cols_; ++c) acc ^= (get(r, c) && x[c]);
            y[r] = acc;
        }
        return y;
    }

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) s += get(r, c) ? '1' : '0';
            s += '\n';
        }
        return s;
    }

private:
    friend struct EchelonForm;

    void xor_row(std::size_t dst, std::size_t src) {
        for (std::size_t w = 0; w < words_; ++w) data_[dst * words_ + w] ^= data_[src * words_ + w];
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t w = 0; w < words_; ++w) std::swap(data_[a * words_ + w], data_[b * words_ + w]);
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Reduced row echelon form, optionally carrying an augmented right-hand side.
struct EchelonForm {
    BitMatrix m;
    BitVector rhs;
    std::vector<std::size_t> pivot_cols;

    explicit EchelonForm(BitMatrix a, BitVector b = {}) : m(std::move(a)), rhs(std::move(b)) {
        if (rhs.empty()) rhs.assign(m.rows(), false);
        std::size_t r = 0;
        for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
            std::size_t piv = r;
            while (piv < m.rows() && !m.get(piv, c)) ++piv;
            if (piv == m.rows()) continue;
            m.swap_rows(r, piv);
            std::swap(rhs[r], rhs[piv]);
            for (std::size_t i = 0; i < m.rows(); ++i) {
                if (i != r && m.get(i, c)) {
                    m.xor_row(i, r);
                    rhs[i] = rhs[i] != rhs[r];
                }
            }
            pivot_cols.push_back(c);
            ++r;
        }
    }

    std::size_t rank() const { return pivot_cols.size(); }
};

inline std::size_t f2_rank(const BitMatrix& m) { return EchelonForm(m).rank(); }

/// Basis of the right null space {v : m v = 0}; one vector per free column.
inline std::vector<BitVector> f2_kernel_basis(const BitMatrix& m) {
    EchelonForm e(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;

    std::vector<BitVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        BitVector v(m.cols(), false);
        v[free] = true;
        for (std::size_t i = 0; i < e.pivot_cols.size(); ++i)
            if (e.m.get(i, free)) v[e.pivot_cols[i]] = true;
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Some x with m x = v, or nullopt when the system is inconsistent.
inline std::optional<BitVector> f2_solve(const BitMatrix& m, const BitVector& v) {
    if (v.size() != m.rows()) throw std::invalid_argument("f2_solve: rhs length must equal row count");
    EchelonForm e(m, v);
    for (std::size_t i = e.rank(); i < m.rows(); ++i)
        if (e.rhs[i]) return std::nullopt;
    BitVector x(m.cols(), false);
    for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivot_cols[i]] = e.rhs[i];
    return x;
}

/// Columns of `m` as vectors; handy when a matrix is built column-per-generator.
inline BitMatrix from_columns(const std::vector<BitVector>& columns, std::size_t rows) {
    BitMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw std::invalid_argument("from_columns: column length mismatch");
        for (std::size_t r = 0; r < rows; ++r) m.set(r, c, columns[c][r]);
    }
    return m;
}

/// True iff every kernel vector of `a` is also killed by `b` (same column count).
inline bool kernel_contained(const BitMatrix& a, const BitMatrix& b) {
    for (const auto& v : f2_kernel_basis(a)) {
        auto w = b.apply(v);
        for (bool bit : w)
            if (bit) return false;
    }
    return true;
}

}  // namespace quadsel
