#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tqhp {

// Word-packed GF(2) vector. Padding bits above len are kept zero.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len) : len_(len), words_((len + 63) / 64, 0) {}

    static BitVector from_indices(std::size_t len, const std::vector<std::size_t>& ones) {
        BitVector v(len);
        for (std::size_t i : ones) v.set(i, true);
        return v;
    }
    static BitVector from_string(const std::string& bits) {
        BitVector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i] == '1') v.set(i, true);
        return v;
    }

    std::size_t size() const { return len_; }
    bool empty_support() const {
        for (uint64_t w : words_) if (w) return false;
        return true;
    }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool b) {
        uint64_t mask = uint64_t(1) << (i & 63);
        if (b) words_[i >> 6] |= mask; else words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= uint64_t(1) << (i & 63); }

    BitVector& operator^=(const BitVector& o) {
        if (o.len_ != len_) throw std::invalid_argument("BitVector xor: length mismatch");
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) { a ^= b; return a; }

    bool operator==(const BitVector& o) const { return len_ == o.len_ && words_ == o.words_; }
    bool operator!=(const BitVector& o) const { return !(*this == o); }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (uint64_t w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }
    // Parity of the AND with another vector (the standard F2 inner product).
    bool dot(const BitVector& o) const {
        if (o.len_ != len_) throw std::invalid_argument("BitVector dot: length mismatch");
        uint64_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
        return __builtin_parityll(acc);
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> idx;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            uint64_t x = words_[w];
            while (x) {
                idx.push_back(64 * w + static_cast<std::size_t>(__builtin_ctzll(x)));
                x &= x - 1;
            }
        }
        return idx;
    }
    std::string to_string() const {
        std::string s(len_, '0');
        for (std::size_t i = 0; i < len_; ++i) if (get(i)) s[i] = '1';
        return s;
    }

    const std::vector<uint64_t>& words() const { return words_; }
    std::vector<uint64_t>& words() { return words_; }

private:
    std::size_t len_ = 0;
    std::vector<uint64_t> words_;
};

// Dense row-packed GF(2) matrix with a coordinate-list view for I/O.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * ((cols + 63) / 64), 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }
    static BitMatrix from_triplets(std::size_t rows, std::size_t cols,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& entries) {
        BitMatrix m(rows, cols);
        for (auto [r, c] : entries) m.set(r, c, true);
        return m;
    }
    static BitMatrix from_rows(const std::vector<BitVector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool b) {
        uint64_t mask = uint64_t(1) << (c & 63);
        if (b) data_[r * wpr_ + (c >> 6)] |= mask; else data_[r * wpr_ + (c >> 6)] &= ~mask;
    }

    BitVector row(std::size_t r) const {
        BitVector v(cols_);
        for (std::size_t w = 0; w < wpr_; ++w) v.words()[w] = data_[r * wpr_ + w];
        return v;
    }
    void set_row(std::size_t r, const BitVector& v) {
        if (v.size() != cols_) throw std::invalid_argument("set_row: length mismatch");
        for (std::size_t w = 0; w < wpr_; ++w) data_[r * wpr_ + w] = v.words()[w];
    }
    void xor_row(std::size_t dst, std::size_t src) {
        uint64_t* d = &data_[dst * wpr_];
        const uint64_t* s = &data_[src * wpr_];
        for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
    }
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t w = 0; w < wpr_; ++w) std::swap(data_[a * wpr_ + w], data_[b * wpr_ + w]);
    }

    BitMatrix transposed() const;
    BitVector mul(const BitVector& x) const;             // m * x
    BitMatrix mul(const BitMatrix& o) const;             // m * o
    bool operator==(const BitMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

    bool is_zero() const {
        for (uint64_t w : data_) if (w) return false;
        return true;
    }

    // Coordinate-list sparse view; conversions are lossless.
    std::vector<std::pair<std::size_t, std::size_t>> triplets() const {
        std::vector<std::pair<std::size_t, std::size_t>> t;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c : row(r).support()) t.emplace_back(r, c);
        return t;
    }

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<uint64_t> data_;
};

// Result of a deterministic (lowest row/column index pivoting) row reduction.
struct RowEchelon {
    BitMatrix mat;                       // reduced matrix
    std::vector<std::size_t> pivot_cols; // pivot column per pivot row, ascending
    std::size_t rank = 0;
};

RowEchelon row_reduce(BitMatrix m);

std::size_t rank(const BitMatrix& m);

// Basis of the right null space {x : m x = 0}; size = cols - rank.
std::vector<BitVector> kernel_basis(const BitMatrix& m);

// Some x with m x = b, or nullopt. Free variables are set to zero after a
// fixed-pivot reduction, so the result is deterministic.
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b);

bool in_span(const std::vector<BitVector>& span_vecs, const BitVector& v);

// Representatives of span(cycles)/span(boundaries). Throws if some boundary
// vector is not contained in span(cycles).
std::vector<BitVector> quotient_basis(const std::vector<BitVector>& cycles,
                                      const std::vector<BitVector>& boundaries);

// Inverse of a square invertible matrix over GF(2); throws if singular.
BitMatrix inverse(const BitMatrix& m);

}  // namespace tqhp
