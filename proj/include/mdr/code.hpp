// SPDX-License-Identifier: Apache-2.0
//
// RAID-6 codes in B-matrix form. Disks are numbered 1..k+2: data disks 1..k,
// row-parity disk P = k+1, second parity disk Q = k+2. "Basic" disks are
// 1..k+1. The Q column satisfies d_Q = sum_{i<=k+1} B_i d_i, equivalently
// d_Q = sum_{i<=k} A_i d_i with A_i = B_i + B_{k+1}.

#ifndef MDR_CODE_HPP
#define MDR_CODE_HPP

#include <cstddef>
#include <vector>

#include "mdr/bit_matrix.hpp"

namespace mdr {

/// Largest k accepted by construct(); r = 2^k, so B matrices are 4096x4096 at the limit.
inline constexpr std::size_t kMaxConstructK = 12;

/// Rows read from Q (q_rows) and from every surviving basic disk
/// (basic_rows) to rebuild one basic disk. Both have r/2 members.
struct RepairStrategy {
    IndexSet q_rows;
    IndexSet basic_rows;

    friend bool operator==(const RepairStrategy&, const RepairStrategy&) = default;
};

class MdrCode {
public:
    /// Checks shapes only (k >= 1, k+1 square matrices of one even size r,
    /// zero or k+1 strategies over [r]). Use verify_mds / verify_repair_optimal
    /// for the algebraic properties.
    MdrCode(std::size_t k, std::vector<BitMatrix> b_matrices, std::vector<RepairStrategy> strategies = {});

    std::size_t k() const noexcept { return k_; }
    std::size_t r() const noexcept { return r_; }
    std::size_t disk_count() const noexcept { return k_ + 2; }
    std::size_t p_disk() const noexcept { return k_ + 1; }
    std::size_t q_disk() const noexcept { return k_ + 2; }
    bool is_basic(std::size_t disk) const noexcept { return disk >= 1 && disk <= k_ + 1; }

    /// B_i, 1 <= i <= k+1.
    const BitMatrix& b(std::size_t i) const;
    const std::vector<BitMatrix>& b_matrices() const noexcept { return b_; }

    bool has_strategies() const noexcept { return !strategies_.empty(); }
    /// Strategy for basic disk i, 1 <= i <= k+1.
    const RepairStrategy& strategy(std::size_t i) const;
    const std::vector<RepairStrategy>& strategies() const noexcept { return strategies_; }

    friend bool operator==(const MdrCode&, const MdrCode&) = default;

private:
    std::size_t k_;
    std::size_t r_;
    std::vector<BitMatrix> b_;
    std::vector<RepairStrategy> strategies_;
};

/// The (k=1, r=2) seed code.
MdrCode initial_code();

/// One recursion step: (k, r) -> (k+1, 2r). Throws Errc::precondition if the
/// input is not repair-optimal with properties P1/P2, and re-verifies the
/// repair conditions on the output.
MdrCode extend(const MdrCode& code);

/// initial_code() extended k-1 times; r = 2^k. 1 <= k <= kMaxConstructK.
MdrCode construct(std::size_t k);

/// A_i = B_i + B_{k+1}, i = 1..k.
std::vector<BitMatrix> generator_submatrices(const MdrCode& code);

/// B_i + B_j nonsingular for every pair of distinct basic disks.
bool verify_mds(const MdrCode& code);

/// For every basic disk i with strategy (R_i, C_i): B_i restricted to
/// (R_i, complement C_i) is nonsingular and every other B_j vanishes there.
/// Throws if strategies are missing or not of size r/2.
bool verify_repair_optimal(const MdrCode& code);

/// P1: B_i nonsingular for i in [k-1]. P2: R_i = C_i for all basic disks.
bool satisfies_p1_p2(const MdrCode& code);

/// True iff `code` is exactly construct(code.k()).
bool is_recursive_mdr(const MdrCode& code);

}  // namespace mdr

#endif
