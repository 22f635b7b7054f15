// SPDX-License-Identifier: Apache-2.0
//
// XOR schedules: ordered multi-input XOR operations over stripe blocks and
// named temporaries. An operation with n sources costs n-1 two-input XORs
// (a single-source operation is a copy).

#ifndef MDR_SCHEDULE_HPP
#define MDR_SCHEDULE_HPP

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "mdr/bit_matrix.hpp"
#include "mdr/code.hpp"
#include "mdr/stripe.hpp"

namespace mdr {

struct BufferId {
    enum class Kind : std::uint8_t { block, temp };

    Kind kind = Kind::block;
    std::size_t index = 0;  // disk for blocks, slot for temporaries
    std::size_t row = 0;    // 1-based row for blocks, unused for temporaries

    static BufferId block(std::size_t disk, std::size_t row) { return {Kind::block, disk, row}; }
    static BufferId temp(std::size_t slot) { return {Kind::temp, slot, 0}; }

    bool is_block() const noexcept { return kind == Kind::block; }
    BlockRef ref() const noexcept { return {index, row}; }

    friend auto operator<=>(const BufferId&, const BufferId&) = default;
};

struct XorOp {
    BufferId target;
    std::vector<BufferId> sources;
};

enum class ScheduleKind { encode, repair };

struct XorSchedule {
    ScheduleKind kind = ScheduleKind::encode;
    std::size_t k = 0;
    std::size_t r = 0;
    std::size_t failed_disk = 0;  // repair schedules only
    std::vector<XorOp> ops;
    std::vector<std::string> temp_names;

    std::size_t xor_count() const;
    std::size_t temp_count() const noexcept { return temp_names.size(); }
    std::string describe(const BufferId& id) const;
};

/// P by left-to-right prefix sums (the partial sums d_1 + ... + d_t are kept
/// as temporaries), then each Q block as a k-term sum that reuses those
/// prefixes. Total 2(k-1)r XORs. Requires a code produced by construct().
XorSchedule build_encode_schedule(const MdrCode& code);

/// Rebuilds basic disk `failed`: rows C_i by row parity (prefix and suffix
/// partial sums of the surviving basic disks), the remaining r/2 rows as
/// Q[x] plus k-1 already-available terms. Total (k-1)r XORs. Requires a code
/// produced by construct(); the Q disk is rejected.
XorSchedule build_repair_schedule(const MdrCode& code, std::size_t failed);

/// Every source is an input block or the target of an earlier operation, and
/// no temporary is read before it is written.
bool is_acyclic(const XorSchedule& schedule);

/// Evaluates the schedule over coefficient vectors. `inputs` gives the vector
/// of every block the schedule reads; returns the vector of every block it writes.
std::map<BlockRef, BitVector> evaluate_symbolic(const XorSchedule& schedule,
                                                const std::map<BlockRef, BitVector>& inputs);

/// Each block of the stripe as a vector over the k*r data symbols; data block
/// (j, y) is symbol (j-1)*r + (y-1).
std::map<BlockRef, BitVector> data_symbol_expressions(const MdrCode& code);

/// Acyclic, consistent with the code's shape, reads only what it may read
/// (repair schedules: the strategy's rows of surviving basic disks plus its Q
/// rows), and reproduces the generator relations exactly.
bool validate_schedule(const MdrCode& code, const XorSchedule& schedule);

/// Runs the schedule on a stripe. Block sources are read through the
/// stripe's metered accessor unless an earlier operation wrote them.
/// Returns the number of two-input block XORs performed.
std::size_t execute_schedule(const XorSchedule& schedule, Stripe& stripe);

}  // namespace mdr

#endif
