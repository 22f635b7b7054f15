// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "mdr/bit_matrix.hpp"
#include "mdr/error.hpp"

using namespace mdr;

namespace {

// Independent rank oracle: the row space of an n-row matrix has 2^rank
// elements, so enumerate every subset sum of the rows.
std::size_t rank_by_span(const BitMatrix& m) {
    std::set<std::vector<bool>> span;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m.rows()); ++mask) {
        std::vector<bool> v(m.cols(), false);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (!((mask >> i) & 1u)) continue;
            for (std::size_t j = 0; j < m.cols(); ++j) v[j] = v[j] != m.get(i, j);
        }
        span.insert(std::move(v));
    }
    std::size_t rank = 0;
    while ((std::size_t{1} << rank) < span.size()) ++rank;
    return rank;
}

}  // namespace

TEST_CASE("add") {
    const auto i2 = BitMatrix::identity(2);
    CHECK(add(i2, i2) == BitMatrix::zero(2, 2));

    const BitMatrix b1{{0, 1}, {0, 0}};
    const BitMatrix b2{{0, 0}, {1, 0}};
    CHECK(add(b1, BitMatrix::zero(2, 2)) == b1);
    CHECK(add(b1, b2) == BitMatrix{{0, 1}, {1, 0}});

    CHECK_THROWS_AS(add(i2, BitMatrix::identity(3)), Error);
}

TEST_CASE("mul") {
    std::mt19937_64 rng(1);
    const auto m = test::random_matrix(rng, 5, 7);
    CHECK(mul(BitMatrix::identity(5), m) == m);
    CHECK(mul(BitMatrix::zero(3, 5), m) == BitMatrix::zero(3, 7));

    const BitMatrix swap{{0, 1}, {1, 0}};
    CHECK(mul(swap, swap) == BitMatrix::identity(2));

    CHECK_THROWS_AS(mul(m, m), Error);
}

TEST_CASE("mul across word boundaries matches the entrywise definition") {
    std::mt19937_64 rng(2);
    const auto a = test::random_matrix(rng, 70, 130);
    const auto b = test::random_matrix(rng, 130, 65);
    const auto c = mul(a, b);
    for (std::size_t i = 0; i < a.rows(); i += 7) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            bool v = false;
            for (std::size_t t = 0; t < a.cols(); ++t) v = v != (a.get(i, t) && b.get(t, j));
            CHECK(c.get(i, j) == v);
        }
    }
}

TEST_CASE("rank") {
    CHECK(rank(BitMatrix::identity(4)) == 4);
    CHECK(rank(BitMatrix::zero(3, 3)) == 0);
    CHECK(rank(BitMatrix{{1, 1}, {1, 1}}) == 1);
}

TEST_CASE("rank agrees with the row-span oracle") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = 1 + rng() % 8;
        const std::size_t cols = 1 + rng() % 8;
        auto m = test::random_matrix(rng, rows, cols);
        if (trial % 3 == 0 && rows > 1) {
            // force a dependency
            for (std::size_t j = 0; j < cols; ++j) m.set(rows - 1, j, m.get(0, j));
        }
        CHECK(rank(m) == rank_by_span(m));
    }
}

TEST_CASE("is_nonsingular") {
    CHECK(is_nonsingular(BitMatrix::identity(2)));
    CHECK_FALSE(is_nonsingular(BitMatrix::zero(2, 2)));
    CHECK(is_nonsingular(BitMatrix{{0, 1}, {1, 0}}));
    CHECK_THROWS_AS(is_nonsingular(BitMatrix::zero(2, 3)), Error);
}

TEST_CASE("invert") {
    CHECK(invert(BitMatrix::identity(3)) == BitMatrix::identity(3));
    CHECK(invert(BitMatrix{{0, 1}, {1, 0}}) == BitMatrix{{0, 1}, {1, 0}});
    try {
        (void)invert(BitMatrix{{1, 1}, {1, 1}});
        FAIL("expected singular error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::singular);
    }
}

TEST_CASE("submatrix") {
    std::mt19937_64 rng(4);
    const auto m = test::random_matrix(rng, 4, 5);
    CHECK(submatrix(m, IndexSet::full(4), IndexSet::full(5)) == m);
    CHECK(submatrix(BitMatrix::identity(4), IndexSet(4, {1, 2}), IndexSet(4, {3, 4})) == BitMatrix::zero(2, 2));
    CHECK_THROWS_AS(submatrix(m, IndexSet(6, {6}), IndexSet::full(5)), Error);
}

TEST_CASE("count_nonzero_columns") {
    CHECK(count_nonzero_columns(BitMatrix::zero(3, 4)) == 0);
    CHECK(count_nonzero_columns(BitMatrix::identity(4)) == 4);
    CHECK(count_nonzero_columns(BitMatrix{{1, 0, 1}, {0, 0, 1}}) == 2);
}

TEST_CASE("IndexSet") {
    const IndexSet s(6, {5, 1, 3});
    CHECK(s.members() == std::vector<std::size_t>{1, 3, 5});
    CHECK(s.complement() == IndexSet(6, {2, 4, 6}));
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(4));
    CHECK(IndexSet::full(3).complement().empty());
    CHECK_THROWS_AS(IndexSet(3, {0}), Error);
    CHECK_THROWS_AS(IndexSet(3, {4}), Error);
    CHECK_THROWS_AS(IndexSet(3, {1, 1}), Error);
}

TEST_CASE("property: M * invert(M) = I for nonsingular M up to 16x16") {
    std::mt19937_64 rng(5);
    int nonsingular = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 16;
        const auto m = test::random_matrix(rng, n, n);
        if (!is_nonsingular(m)) {
            CHECK_THROWS_AS(invert(m), Error);
            continue;
        }
        ++nonsingular;
        const auto inv = invert(m);
        CHECK(mul(m, inv).is_identity());
        CHECK(mul(inv, m).is_identity());
    }
    CHECK(nonsingular > 50);
}

TEST_CASE("property: rank(M) = rank(transpose(M))") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = test::random_matrix(rng, 1 + rng() % 70, 1 + rng() % 70);
        CHECK(rank(m) == rank(transpose(m)));
    }
}

TEST_CASE("property: addition is commutative, associative and self-cancelling") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t r = 1 + rng() % 20;
        const std::size_t c = 1 + rng() % 90;
        const auto a = test::random_matrix(rng, r, c);
        const auto b = test::random_matrix(rng, r, c);
        const auto d = test::random_matrix(rng, r, c);
        CHECK(a + b == b + a);
        CHECK((a + b) + d == a + (b + d));
        CHECK((a + a).is_zero());
    }
}

TEST_CASE("property: nonzero plus zero columns equals column count") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t r = 1 + rng() % 6;
        const std::size_t c = 1 + rng() % 100;
        auto m = test::random_matrix(rng, r, c);
        std::size_t zero_cols = 0;
        for (std::size_t j = 0; j < c; ++j) {
            if (rng() % 3 == 0) {
                for (std::size_t i = 0; i < r; ++i) m.set(i, j, false);
            }
            bool any = false;
            for (std::size_t i = 0; i < r; ++i) any = any || m.get(i, j);
            if (!any) ++zero_cols;
        }
        CHECK(count_nonzero_columns(m) + zero_cols == c);
    }
}

TEST_CASE("left_inverse of a tall full-rank matrix") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        auto m = test::random_matrix(rng, 12, 7);
        if (rank(m) < 7) continue;
        const auto li = left_inverse(m);
        CHECK(mul(li.inverse, m).is_identity());
        CHECK(li.null_rows.size() == 5);
        for (const auto& v : li.null_rows) {
            CHECK_FALSE(v.is_zero());
            // v^T m = 0
            for (std::size_t j = 0; j < m.cols(); ++j) {
                bool acc = false;
                for (std::size_t i = 0; i < m.rows(); ++i) acc = acc != (v.get(i) && m.get(i, j));
                CHECK_FALSE(acc);
            }
        }
    }
}

TEST_CASE("string round-trip") {
    const BitMatrix m{{0, 1, 1}, {1, 0, 0}};
    CHECK(m.to_strings() == std::vector<std::string>{"011", "100"});
    CHECK(BitMatrix::from_strings(m.to_strings()) == m);
    CHECK_THROWS_AS(BitMatrix::from_strings({"01", "2"}), Error);
}
