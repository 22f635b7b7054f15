// SPDX-License-Identifier: Apache-2.0
//
// Dense linear algebra over F2. Rows are bit-packed into 64-bit words so row
// additions during elimination are word-parallel XORs.
//
// Element accessors (get/set) are 0-based like any C++ container; row and
// column selections go through IndexSet, which is 1-based.

#ifndef MDR_BIT_MATRIX_HPP
#define MDR_BIT_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mdr {

using word_t = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Sorted set of 1-based indices drawn from [universe].
class IndexSet {
public:
    IndexSet() = default;
    IndexSet(std::size_t universe, std::vector<std::size_t> members);
    IndexSet(std::size_t universe, std::initializer_list<std::size_t> members)
        : IndexSet(universe, std::vector<std::size_t>(members)) {}

    /// [universe] itself.
    static IndexSet full(std::size_t universe);
    /// {first, ..., last}, inclusive.
    static IndexSet range(std::size_t universe, std::size_t first, std::size_t last);

    std::size_t universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(std::size_t index) const;
    const std::vector<std::size_t>& members() const noexcept { return members_; }
    std::size_t operator[](std::size_t pos) const { return members_[pos]; }

    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }

    IndexSet complement() const;

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

private:
    std::size_t universe_ = 0;
    std::vector<std::size_t> members_;
};

/// Packed bit vector; used as a coefficient vector in symbolic evaluation.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

    static BitVector unit(std::size_t size, std::size_t pos) {
        BitVector v(size);
        v.set(pos, true);
        return v;
    }

    std::size_t size() const noexcept { return size_; }

    bool get(std::size_t pos) const { return (words_[pos / kWordBits] >> (pos % kWordBits)) & 1u; }
    void set(std::size_t pos, bool value) {
        const word_t mask = word_t{1} << (pos % kWordBits);
        if (value) {
            words_[pos / kWordBits] |= mask;
        } else {
            words_[pos / kWordBits] &= ~mask;
        }
    }

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

    bool is_zero() const noexcept;
    std::size_t popcount() const noexcept;

    std::span<const word_t> words() const noexcept { return words_; }

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::size_t size_ = 0;
    std::vector<word_t> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    /// Zero matrix; both dimensions must be positive.
    BitMatrix(std::size_t rows, std::size_t cols);
    /// Row-by-row literal, e.g. {{0, 1}, {0, 0}}.
    BitMatrix(std::initializer_list<std::initializer_list<int>> rows);

    static BitMatrix identity(std::size_t n);
    static BitMatrix zero(std::size_t rows, std::size_t cols) { return BitMatrix(rows, cols); }
    /// Rows as '0'/'1' strings, leftmost character is column 1.
    static BitMatrix from_strings(const std::vector<std::string>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    bool get(std::size_t row, std::size_t col) const {
        return (words_[row * stride_ + col / kWordBits] >> (col % kWordBits)) & 1u;
    }
    void set(std::size_t row, std::size_t col, bool value);

    std::span<const word_t> row_words(std::size_t row) const {
        return {words_.data() + row * stride_, stride_};
    }
    std::span<word_t> row_words(std::size_t row) { return {words_.data() + row * stride_, stride_}; }

    /// Row `dst` ^= row `src`.
    void add_row(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

    /// Row as a coefficient vector of length cols().
    BitVector row_vector(std::size_t row) const;

    bool is_zero() const noexcept;
    bool is_identity() const noexcept;
    std::size_t popcount() const noexcept;

    std::vector<std::string> to_strings() const;

    BitMatrix& operator+=(const BitMatrix& other);

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<word_t> words_;
};

BitMatrix add(const BitMatrix& a, const BitMatrix& b);
BitMatrix mul(const BitMatrix& a, const BitMatrix& b);
/// y = a x over F2.
BitVector mul(const BitMatrix& a, const BitVector& x);
BitMatrix transpose(const BitMatrix& a);

inline BitMatrix operator+(const BitMatrix& a, const BitMatrix& b) { return add(a, b); }
inline BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) { return mul(a, b); }

std::size_t rank(const BitMatrix& a);
bool is_nonsingular(const BitMatrix& a);
BitMatrix invert(const BitMatrix& a);

/// For `a` with full column rank: `inverse` satisfies inverse * a = I, and the
/// rows of `null_rows` span the left null space (null_rows * a = 0).
struct LeftInverse {
    BitMatrix inverse;
    std::vector<BitVector> null_rows;
};
LeftInverse left_inverse(const BitMatrix& a);

BitMatrix submatrix(const BitMatrix& a, const IndexSet& rows, const IndexSet& cols);
std::size_t count_nonzero_columns(const BitMatrix& a);

/// Block-diagonal [a 0; 0 b].
BitMatrix block_diag(const BitMatrix& a, const BitMatrix& b);
/// [[tl, tr], [bl, br]]; blocks in each row / column must agree in size.
BitMatrix block(const BitMatrix& tl, const BitMatrix& tr, const BitMatrix& bl, const BitMatrix& br);

}  // namespace mdr

#endif
