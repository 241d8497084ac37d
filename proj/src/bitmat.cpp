#include "tqhp/bitmat.hpp"

namespace tqhp {

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows, std::size_t cols) {
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
    return m;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c : row(r).support()) t.set(c, r, true);
    return t;
}

BitVector BitMatrix::mul(const BitVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("BitMatrix::mul: size mismatch");
    BitVector y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        uint64_t acc = 0;
        const uint64_t* rp = &data_[r * wpr_];
        for (std::size_t w = 0; w < wpr_; ++w) acc ^= rp[w] & x.words()[w];
        if (__builtin_parityll(acc)) y.set(r, true);
    }
    return y;
}

BitMatrix BitMatrix::mul(const BitMatrix& o) const {
    if (cols_ != o.rows()) throw std::invalid_argument("BitMatrix::mul: shape mismatch");
    BitMatrix out(rows_, o.cols());
    for (std::size_t r = 0; r < rows_; ++r) {
        BitVector acc(o.cols());
        for (std::size_t c : row(r).support()) acc ^= o.row(c);
        out.set_row(r, acc);
    }
    return out;
}

RowEchelon row_reduce(BitMatrix m) {
    RowEchelon re;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (m.get(i, c)) { pivot = i; break; }
        if (pivot == rows) continue;
        m.swap_rows(r, pivot);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && m.get(i, c)) m.xor_row(i, r);
        re.pivot_cols.push_back(c);
        ++r;
    }
    re.rank = r;
    re.mat = std::move(m);
    return re;
}

std::size_t rank(const BitMatrix& m) { return row_reduce(m).rank; }

std::vector<BitVector> kernel_basis(const BitMatrix& m) {
    RowEchelon re = row_reduce(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : re.pivot_cols) is_pivot[c] = true;

    std::vector<BitVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        BitVector v(cols);
        v.set(f, true);
        for (std::size_t pr = 0; pr < re.pivot_cols.size(); ++pr)
            if (re.mat.get(pr, f)) v.set(re.pivot_cols[pr], true);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs size mismatch");
    const std::size_t rows = m.rows(), cols = m.cols();
    // Augmented reduction; the extra column never becomes a pivot source.
    BitMatrix aug(rows, cols + 1);
    for (std::size_t r = 0; r < rows; ++r) {
        BitVector v(cols + 1);
        BitVector mr = m.row(r);
        for (std::size_t w = 0; w < mr.words().size(); ++w) v.words()[w] = mr.words()[w];
        if (b.get(r)) v.set(cols, true);
        aug.set_row(r, v);
    }
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (aug.get(i, c)) { pivot = i; break; }
        if (pivot == rows) continue;
        aug.swap_rows(r, pivot);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && aug.get(i, c)) aug.xor_row(i, r);
        pivot_cols.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (aug.get(i, cols)) return std::nullopt;
    BitVector x(cols);
    for (std::size_t pr = 0; pr < pivot_cols.size(); ++pr)
        if (aug.get(pr, cols)) x.set(pivot_cols[pr], true);
    return x;
}

bool in_span(const std::vector<BitVector>& span_vecs, const BitVector& v) {
    if (span_vecs.empty()) return v.empty_support();
    BitMatrix m(v.size(), span_vecs.size());
    for (std::size_t j = 0; j < span_vecs.size(); ++j)
        for (std::size_t i : span_vecs[j].support()) m.set(i, j, true);
    return solve(m, v).has_value();
}

std::vector<BitVector> quotient_basis(const std::vector<BitVector>& cycles,
                                      const std::vector<BitVector>& boundaries) {
    for (const BitVector& b : boundaries)
        if (!in_span(cycles, b))
            throw std::invalid_argument("quotient_basis: boundary vector outside cycle span");

    // Grow span(boundaries) by cycles that are independent of it; those are the
    // class representatives, taken in input order for determinism.
    std::vector<BitVector> accum = boundaries;
    std::vector<BitVector> reps;
    std::size_t base_rank = 0;
    {
        if (!boundaries.empty()) {
            BitMatrix m = BitMatrix::from_rows(boundaries, boundaries.front().size());
            base_rank = rank(m);
        }
    }
    std::size_t cur_rank = base_rank;
    for (const BitVector& c : cycles) {
        accum.push_back(c);
        BitMatrix m = BitMatrix::from_rows(accum, c.size());
        std::size_t nr = rank(m);
        if (nr > cur_rank) {
            reps.push_back(c);
            cur_rank = nr;
        } else {
            accum.pop_back();
        }
    }
    return reps;
}

BitMatrix inverse(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = m.rows();
    BitMatrix inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        BitVector e(n);
        e.set(j, true);
        auto x = solve(m, e);
        if (!x) throw std::invalid_argument("inverse: matrix is singular");
        for (std::size_t i : x->support()) inv.set(i, j, true);
    }
    return inv;
}

}  // namespace tqhp
