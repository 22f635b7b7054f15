// SPDX-License-Identifier: Apache-2.0

#include "mdr/code.hpp"

#include <atomic>
#include <string>
#include <utility>

#include "mdr/error.hpp"

namespace mdr {

MdrCode::MdrCode(std::size_t k, std::vector<BitMatrix> b_matrices, std::vector<RepairStrategy> strategies)
    : k_(k), r_(0), b_(std::move(b_matrices)), strategies_(std::move(strategies)) {
    if (k_ < 1) throw Error(Errc::invalid_argument, "code: k must be at least 1");
    if (b_.size() != k_ + 1) {
        throw Error(Errc::invalid_argument, "code: expected " + std::to_string(k_ + 1) + " B matrices");
    }
    r_ = b_.front().rows();
    for (const auto& m : b_) {
        if (m.rows() != r_ || m.cols() != r_) throw Error(Errc::dimension_mismatch, "code: B matrices must be r x r");
    }
    if (r_ % 2 != 0) throw Error(Errc::invalid_argument, "code: r must be even");
    if (!strategies_.empty()) {
        if (strategies_.size() != k_ + 1) {
            throw Error(Errc::invalid_argument, "code: expected one repair strategy per basic disk");
        }
        for (const auto& s : strategies_) {
            if (s.q_rows.universe() != r_ || s.basic_rows.universe() != r_) {
                throw Error(Errc::invalid_argument, "code: strategy index sets must range over [r]");
            }
        }
    }
}

const BitMatrix& MdrCode::b(std::size_t i) const {
    if (i < 1 || i > k_ + 1) throw Error(Errc::out_of_range, "code: B index out of range");
    return b_[i - 1];
}

const RepairStrategy& MdrCode::strategy(std::size_t i) const {
    if (strategies_.empty()) throw Error(Errc::precondition, "code: no repair strategies");
    if (i < 1 || i > k_ + 1) throw Error(Errc::out_of_range, "code: strategy index out of range");
    return strategies_[i - 1];
}

MdrCode initial_code() {
    std::vector<BitMatrix> b{BitMatrix{{0, 1}, {0, 0}}, BitMatrix{{0, 0}, {1, 0}}};
    std::vector<RepairStrategy> s{
        {IndexSet(2, {1}), IndexSet(2, {1})},
        {IndexSet(2, {2}), IndexSet(2, {2})},
    };
    return MdrCode(1, std::move(b), std::move(s));
}

MdrCode extend(const MdrCode& code) {
    if (!code.has_strategies() || !satisfies_p1_p2(code) || !verify_repair_optimal(code)) {
        throw Error(Errc::precondition, "extend: input must be repair-optimal and satisfy P1/P2");
    }
    const std::size_t k = code.k();
    const std::size_t r = code.r();
    const BitMatrix zero = BitMatrix::zero(r, r);
    const BitMatrix eye = BitMatrix::identity(r);

    std::vector<BitMatrix> b;
    std::vector<RepairStrategy> s;
    b.reserve(k + 2);
    s.reserve(k + 2);
    for (std::size_t i = 1; i <= k; ++i) {
        const BitMatrix sum = code.b(i) + code.b(k + 1);
        b.push_back(block_diag(sum, sum));

        std::vector<std::size_t> rows;
        for (std::size_t x : code.strategy(i).q_rows) rows.push_back(x);
        for (std::size_t x : code.strategy(i).q_rows) rows.push_back(x + r);
        IndexSet doubled(2 * r, std::move(rows));
        s.push_back({doubled, doubled});
    }
    b.push_back(block(zero, eye, zero, zero));
    b.push_back(block(zero, zero, eye, zero));
    const IndexSet upper = IndexSet::range(2 * r, 1, r);
    const IndexSet lower = IndexSet::range(2 * r, r + 1, 2 * r);
    s.push_back({upper, upper});
    s.push_back({lower, lower});

    MdrCode out(k + 1, std::move(b), std::move(s));
    if (!verify_repair_optimal(out)) {
        throw Error(Errc::precondition, "extend: output failed the optimal-repair check");
    }
    return out;
}

MdrCode construct(std::size_t k) {
    if (k < 1 || k > kMaxConstructK) {
        throw Error(Errc::out_of_range, "construct: k must be in [1, " + std::to_string(kMaxConstructK) + "]");
    }
    MdrCode code = initial_code();
    for (std::size_t level = 1; level < k; ++level) code = extend(code);
    return code;
}

std::vector<BitMatrix> generator_submatrices(const MdrCode& code) {
    std::vector<BitMatrix> a;
    a.reserve(code.k());
    for (std::size_t i = 1; i <= code.k(); ++i) a.push_back(code.b(i) + code.b(code.k() + 1));
    return a;
}

bool verify_mds(const MdrCode& code) {
    const std::size_t n = code.k() + 1;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    }
    std::atomic<bool> ok{true};
    const auto count = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t p = 0; p < count; ++p) {
        if (!ok.load(std::memory_order_relaxed)) continue;
        const auto [i, j] = pairs[static_cast<std::size_t>(p)];
        if (!is_nonsingular(code.b(i) + code.b(j))) ok.store(false, std::memory_order_relaxed);
    }
    return ok.load();
}

namespace {

// B restricted to (rows, cols) is all zero, tested word-wise against a column mask.
bool block_is_zero(const BitMatrix& b, const IndexSet& rows, const std::vector<word_t>& col_mask) {
    for (std::size_t x : rows) {
        const auto row = b.row_words(x - 1);
        for (std::size_t w = 0; w < row.size(); ++w) {
            if ((row[w] & col_mask[w]) != 0) return false;
        }
    }
    return true;
}

}  // namespace

bool verify_repair_optimal(const MdrCode& code) {
    if (!code.has_strategies()) throw Error(Errc::precondition, "verify_repair_optimal: code has no strategies");
    const std::size_t r = code.r();
    const std::size_t n = code.k() + 1;
    for (std::size_t i = 1; i <= n; ++i) {
        const auto& s = code.strategy(i);
        if (s.q_rows.size() != r / 2 || s.basic_rows.size() != r / 2) {
            throw Error(Errc::invalid_argument, "verify_repair_optimal: strategy sets must have r/2 members");
        }
    }
    for (std::size_t i = 1; i <= n; ++i) {
        const auto& s = code.strategy(i);
        const IndexSet lost = s.basic_rows.complement();
        std::vector<word_t> mask(words_for(r), 0);
        for (std::size_t c : lost) mask[(c - 1) / kWordBits] |= word_t{1} << ((c - 1) % kWordBits);
        for (std::size_t j = 1; j <= n; ++j) {
            if (j != i && !block_is_zero(code.b(j), s.q_rows, mask)) return false;
        }
        if (!is_nonsingular(submatrix(code.b(i), s.q_rows, lost))) return false;
    }
    return true;
}

bool satisfies_p1_p2(const MdrCode& code) {
    for (std::size_t i = 1; i + 1 <= code.k(); ++i) {
        if (!is_nonsingular(code.b(i))) return false;
    }
    if (!code.has_strategies()) return false;
    for (const auto& s : code.strategies()) {
        if (s.q_rows != s.basic_rows) return false;
    }
    return true;
}

bool is_recursive_mdr(const MdrCode& code) {
    if (code.k() < 1 || code.k() > kMaxConstructK || code.r() != (std::size_t{1} << code.k())) return false;
    return code == construct(code.k());
}

}  // namespace mdr
