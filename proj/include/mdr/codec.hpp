// SPDX-License-Identifier: Apache-2.0

#ifndef MDR_CODEC_HPP
#define MDR_CODEC_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <set>
#include <span>
#include <vector>

#include "mdr/bit_matrix.hpp"
#include "mdr/code.hpp"
#include "mdr/schedule.hpp"
#include "mdr/stripe.hpp"

namespace mdr {

/// Up to two failed disks, sorted and distinct.
class ErasurePattern {
public:
    ErasurePattern() = default;
    ErasurePattern(std::initializer_list<std::size_t> disks) : ErasurePattern(std::vector<std::size_t>(disks)) {}
    explicit ErasurePattern(std::vector<std::size_t> disks);

    const std::vector<std::size_t>& disks() const noexcept { return disks_; }
    std::size_t size() const noexcept { return disks_.size(); }
    bool contains(std::size_t disk) const;

private:
    std::vector<std::size_t> disks_;
};

/// How to rebuild one failed disk.
///
/// Basic disk i: read rows C_i of every surviving basic disk and rows R_i of
/// Q. Rows C_i of the failed disk come back by row parity; the other rows
/// solve  B_i|(R_i, ~C_i) d_i|~C_i = d_Q|R_i + sum_j B_j|(R_i, C_i) d_j|C_i.
/// Q disk: read every data block and re-encode.
struct RepairPlan {
    std::size_t failed_disk = 0;
    std::set<BlockRef> reads;
    IndexSet q_rows;
    IndexSet row_parity_rows;
    IndexSet solve_rows;
    BitMatrix solver;                     // inverse of B_i|(R_i, solve_rows)
    std::vector<BitMatrix> coefficients;  // B_j|(R_i, row_parity_rows), j = 1..k+1
    std::shared_ptr<const XorSchedule> q_schedule;  // Q plans on recursive codes

    std::size_t reads_from(std::size_t disk) const;
    /// Rows read from `disk`, 1-based and ascending.
    std::vector<std::size_t> rows_read_from(std::size_t disk) const;
};

enum class RepairMode {
    batched,
    /// Row-parity rows are rebuilt one at a time; holds r/2 + 2 block buffers.
    streaming,
};

struct RepairStats {
    std::size_t blocks_read = 0;
    std::size_t xors = 0;
    std::size_t peak_buffers = 0;
};

/// H = [I ... I I 0; A_1 ... A_k 0 I], 2r x (k+2)r; column (d-1)r + (y-1) is block (d, y).
BitMatrix parity_check_matrix(const MdrCode& code);

/// Stripe with all k data disks present (zero-filled), parities absent.
Stripe make_data_stripe(const MdrCode& code, std::size_t block_size = kDefaultBlockSize);

/// P and Q by direct evaluation of the row parity and sum A_i d_i.
Stripe encode_naive(const MdrCode& code, const Stripe& data);

/// P and Q by running `schedule`; byte-identical to encode_naive.
/// `xors_out` receives the number of block XORs performed.
Stripe encode(const MdrCode& code, const Stripe& data, const XorSchedule& schedule, std::size_t* xors_out = nullptr);

/// Rebuilds the erased disks by solving H d = 0 for them. Every other block
/// must be present. Throws Errc::unrecoverable for more than two erasures and
/// Errc::integrity when the present blocks violate a parity relation that
/// the erasures leave checkable (e.g. any violation when nothing is erased).
Stripe decode(const MdrCode& code, const Stripe& stripe, const ErasurePattern& erased);

/// Minimum-read plan from the code's repair strategies (Q: all data blocks).
RepairPlan repair_plan(const MdrCode& code, std::size_t failed);
/// Baseline: basic disks rebuilt purely by row parity (kr reads).
RepairPlan conventional_repair_plan(const MdrCode& code, std::size_t failed);

/// Rebuilt strip (r * block_size bytes) of plan.failed_disk. Only blocks in
/// plan.reads are read; a missing one raises Errc::missing_block.
std::vector<std::uint8_t> execute_repair(const MdrCode& code, const RepairPlan& plan, const Stripe& available,
                                         RepairMode mode = RepairMode::batched, RepairStats* stats = nullptr);

// Batch kernels over many stripes. The serial versions are the reference the
// OpenMP versions are tested against; both give identical bytes and counts.

/// Fills P and Q of every stripe in place. Returns total block XORs.
std::size_t encode_batch_serial(const XorSchedule& schedule, std::span<Stripe> stripes);
std::size_t encode_batch_parallel(const XorSchedule& schedule, std::span<Stripe> stripes);

/// Rebuilds plan.failed_disk for every stripe; out[s] is stripe s's strip.
std::vector<std::vector<std::uint8_t>> repair_batch_serial(const MdrCode& code, const RepairPlan& plan,
                                                           std::span<const Stripe> stripes);
std::vector<std::vector<std::uint8_t>> repair_batch_parallel(const MdrCode& code, const RepairPlan& plan,
                                                             std::span<const Stripe> stripes);

}  // namespace mdr

#endif
