// SPDX-License-Identifier: Apache-2.0

#ifndef MDR_STRIPE_HPP
#define MDR_STRIPE_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

namespace mdr {

inline constexpr std::size_t kDefaultBlockSize = 512;

/// A block position, disk and row both 1-based.
struct BlockRef {
    std::size_t disk;
    std::size_t row;

    friend auto operator<=>(const BlockRef&, const BlockRef&) = default;
};

/// The (k+2) x r block array of one stripe. Storage is disk-major so each
/// disk's strip is contiguous.
///
/// read() is the metered accessor: with tracking enabled every distinct
/// block it touches is recorded, and reading an absent disk throws
/// Errc::missing_block. block() is the unmetered write accessor.
class Stripe {
public:
    Stripe() = default;
    /// All disks start absent and zero-filled.
    Stripe(std::size_t k, std::size_t r, std::size_t block_size);

    std::size_t k() const noexcept { return k_; }
    std::size_t r() const noexcept { return r_; }
    std::size_t disk_count() const noexcept { return k_ + 2; }
    std::size_t block_size() const noexcept { return block_size_; }

    bool present(std::size_t disk) const;
    void set_present(std::size_t disk, bool present);
    /// Marks the disk absent and zeroes its strip.
    void erase(std::size_t disk);
    bool all_present() const;

    std::span<const std::uint8_t> read(std::size_t disk, std::size_t row) const;
    std::span<std::uint8_t> block(std::size_t disk, std::size_t row);
    /// Unmetered view, for comparisons in tests and tools.
    std::span<const std::uint8_t> peek(std::size_t disk, std::size_t row) const;

    /// Contiguous r * block_size bytes of one disk (unmetered).
    std::span<std::uint8_t> strip(std::size_t disk);
    std::span<const std::uint8_t> strip(std::size_t disk) const;

    void enable_tracking(bool on = true) { tracking_ = on; }
    bool tracking() const noexcept { return tracking_; }
    const std::set<BlockRef>& reads() const noexcept { return reads_; }
    std::size_t reads_from(std::size_t disk) const;
    void reset_reads() { reads_.clear(); }

    /// Byte equality of every present block; presence masks must agree.
    friend bool operator==(const Stripe& a, const Stripe& b);

private:
    std::size_t offset(std::size_t disk, std::size_t row) const;
    void check(std::size_t disk, std::size_t row) const;

    std::size_t k_ = 0;
    std::size_t r_ = 0;
    std::size_t block_size_ = 0;
    std::vector<std::uint8_t> bytes_;
    std::vector<bool> present_;
    bool tracking_ = false;
    mutable std::set<BlockRef> reads_;
};

}  // namespace mdr

#endif
