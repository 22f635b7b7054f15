// SPDX-License-Identifier: Apache-2.0

#include "mdr/bit_matrix.hpp"

#include <algorithm>
#include <bit>
#include <optional>

#include "mdr/error.hpp"

namespace mdr {

// ---------------------------------------------------------------------------
// IndexSet

IndexSet::IndexSet(std::size_t universe, std::vector<std::size_t> members)
    : universe_(universe), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
        throw Error(Errc::invalid_argument, "IndexSet: duplicate index");
    }
    if (!members_.empty() && (members_.front() < 1 || members_.back() > universe_)) {
        throw Error(Errc::out_of_range, "IndexSet: index outside [1, " + std::to_string(universe_) + "]");
    }
}

IndexSet IndexSet::full(std::size_t universe) { return range(universe, 1, universe); }

IndexSet IndexSet::range(std::size_t universe, std::size_t first, std::size_t last) {
    std::vector<std::size_t> m;
    for (std::size_t i = first; i <= last; ++i) m.push_back(i);
    return IndexSet(universe, std::move(m));
}

bool IndexSet::contains(std::size_t index) const {
    return std::binary_search(members_.begin(), members_.end(), index);
}

IndexSet IndexSet::complement() const {
    std::vector<std::size_t> out;
    out.reserve(universe_ - members_.size());
    auto it = members_.begin();
    for (std::size_t i = 1; i <= universe_; ++i) {
        if (it != members_.end() && *it == i) {
            ++it;
        } else {
            out.push_back(i);
        }
    }
    return IndexSet(universe_, std::move(out));
}

// ---------------------------------------------------------------------------
// BitVector

BitVector& BitVector::operator^=(const BitVector& other) {
    if (size_ != other.size_) throw Error(Errc::dimension_mismatch, "BitVector: size mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

bool BitVector::is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](word_t w) { return w == 0; });
}

std::size_t BitVector::popcount() const noexcept {
    std::size_t n = 0;
    for (word_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

// ---------------------------------------------------------------------------
// BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), words_(rows * words_for(cols), 0) {
    if (rows == 0 || cols == 0) throw Error(Errc::invalid_argument, "BitMatrix: dimensions must be positive");
}

BitMatrix::BitMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : BitMatrix(rows.size(), rows.size() == 0 ? 0 : rows.begin()->size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != cols_) throw Error(Errc::dimension_mismatch, "BitMatrix: ragged literal");
        std::size_t j = 0;
        for (int v : row) {
            if (v != 0 && v != 1) throw Error(Errc::invalid_argument, "BitMatrix: entries must be 0 or 1");
            set(i, j++, v == 1);
        }
        ++i;
    }
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
    if (rows.empty()) throw Error(Errc::invalid_argument, "BitMatrix: no rows");
    BitMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw Error(Errc::dimension_mismatch, "BitMatrix: ragged row strings");
        for (std::size_t j = 0; j < m.cols_; ++j) {
            const char c = rows[i][j];
            if (c != '0' && c != '1') throw Error(Errc::invalid_argument, "BitMatrix: row strings must be 0/1");
            m.set(i, j, c == '1');
        }
    }
    return m;
}

void BitMatrix::set(std::size_t row, std::size_t col, bool value) {
    word_t& w = words_[row * stride_ + col / kWordBits];
    const word_t mask = word_t{1} << (col % kWordBits);
    if (value) {
        w |= mask;
    } else {
        w &= ~mask;
    }
}

void BitMatrix::add_row(std::size_t dst, std::size_t src) {
    word_t* d = words_.data() + dst * stride_;
    const word_t* s = words_.data() + src * stride_;
    for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(words_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                     words_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                     words_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
}

BitVector BitMatrix::row_vector(std::size_t row) const {
    BitVector v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) {
        if (get(row, j)) v.set(j, true);
    }
    return v;
}

bool BitMatrix::is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](word_t w) { return w == 0; });
}

bool BitMatrix::is_identity() const noexcept {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t w = 0; w < stride_; ++w) {
            const word_t expect = (i / kWordBits == w) ? (word_t{1} << (i % kWordBits)) : 0;
            if (words_[i * stride_ + w] != expect) return false;
        }
    }
    return true;
}

std::size_t BitMatrix::popcount() const noexcept {
    std::size_t n = 0;
    for (word_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::vector<std::string> BitMatrix::to_strings() const {
    std::vector<std::string> out(rows_, std::string(cols_, '0'));
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            if (get(i, j)) out[i][j] = '1';
        }
    }
    return out;
}

BitMatrix& BitMatrix::operator+=(const BitMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw Error(Errc::dimension_mismatch, "add: dimension mismatch");
    }
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    return *this;
}

// ---------------------------------------------------------------------------
// Free functions

BitMatrix add(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out = a;
    out += b;
    return out;
}

BitMatrix mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw Error(Errc::dimension_mismatch, "mul: inner dimensions differ");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto dst = out.row_words(i);
        const auto arow = a.row_words(i);
        for (std::size_t w = 0; w < arow.size(); ++w) {
            word_t bits = arow[w];
            while (bits != 0) {
                const std::size_t j = w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits));
                bits &= bits - 1;
                const auto src = b.row_words(j);
                for (std::size_t x = 0; x < dst.size(); ++x) dst[x] ^= src[x];
            }
        }
    }
    return out;
}

BitVector mul(const BitMatrix& a, const BitVector& x) {
    if (a.cols() != x.size()) throw Error(Errc::dimension_mismatch, "mul: vector length differs");
    BitVector y(a.rows());
    const auto xw = x.words();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto row = a.row_words(i);
        word_t acc = 0;
        for (std::size_t w = 0; w < row.size(); ++w) acc ^= row[w] & xw[w];
        y.set(i, std::popcount(acc) & 1);
    }
    return y;
}

BitMatrix transpose(const BitMatrix& a) {
    BitMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.get(i, j)) out.set(j, i, true);
        }
    }
    return out;
}

namespace {

// Forward elimination over the first `pivot_cols` columns, first-nonzero
// pivoting, clearing the pivot column in every other row. Returns the pivot
// row count; rows [0, rank) hold the pivots in column order.
std::size_t reduce(BitMatrix& m, std::size_t pivot_cols, std::vector<std::size_t>* pivot_of_row = nullptr) {
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < pivot_cols && pivot_row < m.rows(); ++col) {
        std::optional<std::size_t> found;
        for (std::size_t i = pivot_row; i < m.rows(); ++i) {
            if (m.get(i, col)) {
                found = i;
                break;
            }
        }
        if (!found) continue;
        m.swap_rows(pivot_row, *found);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i != pivot_row && m.get(i, col)) m.add_row(i, pivot_row);
        }
        if (pivot_of_row) pivot_of_row->push_back(col);
        ++pivot_row;
    }
    return pivot_row;
}

// [a | b]
BitMatrix hcat(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.get(i, j)) out.set(i, j, true);
        }
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (b.get(i, j)) out.set(i, a.cols() + j, true);
        }
    }
    return out;
}

}  // namespace

std::size_t rank(const BitMatrix& a) {
    BitMatrix m = a;
    return reduce(m, m.cols());
}

bool is_nonsingular(const BitMatrix& a) {
    if (!a.is_square()) throw Error(Errc::dimension_mismatch, "is_nonsingular: matrix is not square");
    return rank(a) == a.rows();
}

LeftInverse left_inverse(const BitMatrix& a) {
    const std::size_t n = a.rows();
    const std::size_t m = a.cols();
    BitMatrix aug = hcat(a, BitMatrix::identity(n));
    if (reduce(aug, m) != m) throw Error(Errc::singular, "left_inverse: matrix lacks full column rank");
    // After full reduction rows [0, m) read [I | inverse], rows [m, n) read [0 | null].
    LeftInverse out{BitMatrix(m, n), {}};
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (aug.get(i, m + j)) out.inverse.set(i, j, true);
        }
    }
    for (std::size_t i = m; i < n; ++i) {
        BitVector v(n);
        for (std::size_t j = 0; j < n; ++j) {
            if (aug.get(i, m + j)) v.set(j, true);
        }
        out.null_rows.push_back(std::move(v));
    }
    return out;
}

BitMatrix invert(const BitMatrix& a) {
    if (!a.is_square()) throw Error(Errc::dimension_mismatch, "invert: matrix is not square");
    try {
        return left_inverse(a).inverse;
    } catch (const Error& e) {
        if (e.code() == Errc::singular) throw Error(Errc::singular, "invert: matrix is singular");
        throw;
    }
}

BitMatrix submatrix(const BitMatrix& a, const IndexSet& rows, const IndexSet& cols) {
    if (rows.empty() || cols.empty()) throw Error(Errc::invalid_argument, "submatrix: empty index set");
    if (rows.members().back() > a.rows() || cols.members().back() > a.cols()) {
        throw Error(Errc::out_of_range, "submatrix: index out of range");
    }
    BitMatrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (a.get(rows[i] - 1, cols[j] - 1)) out.set(i, j, true);
        }
    }
    return out;
}

std::size_t count_nonzero_columns(const BitMatrix& a) {
    std::vector<word_t> seen(words_for(a.cols()), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto row = a.row_words(i);
        for (std::size_t w = 0; w < row.size(); ++w) seen[w] |= row[w];
    }
    std::size_t n = 0;
    for (word_t w : seen) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

BitMatrix block_diag(const BitMatrix& a, const BitMatrix& b) {
    return block(a, BitMatrix(a.rows(), b.cols()), BitMatrix(b.rows(), a.cols()), b);
}

BitMatrix block(const BitMatrix& tl, const BitMatrix& tr, const BitMatrix& bl, const BitMatrix& br) {
    if (tl.rows() != tr.rows() || bl.rows() != br.rows() || tl.cols() != bl.cols() || tr.cols() != br.cols()) {
        throw Error(Errc::dimension_mismatch, "block: incompatible block sizes");
    }
    BitMatrix out(tl.rows() + bl.rows(), tl.cols() + tr.cols());
    auto paste = [&out](const BitMatrix& src, std::size_t r0, std::size_t c0) {
        for (std::size_t i = 0; i < src.rows(); ++i) {
            for (std::size_t j = 0; j < src.cols(); ++j) {
                if (src.get(i, j)) out.set(r0 + i, c0 + j, true);
            }
        }
    };
    paste(tl, 0, 0);
    paste(tr, 0, tl.cols());
    paste(bl, tl.rows(), 0);
    paste(br, tl.rows(), tl.cols());
    return out;
}

}  // namespace mdr
