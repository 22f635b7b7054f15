// SPDX-License-Identifier: Apache-2.0

#include "mdr/stripe.hpp"

#include <algorithm>
#include <string>

#include "mdr/error.hpp"

namespace mdr {

Stripe::Stripe(std::size_t k, std::size_t r, std::size_t block_size)
    : k_(k), r_(r), block_size_(block_size), bytes_((k + 2) * r * block_size, 0), present_(k + 2, false) {
    if (k == 0 || r == 0) throw Error(Errc::invalid_argument, "stripe: k and r must be positive");
}

void Stripe::check(std::size_t disk, std::size_t row) const {
    if (disk < 1 || disk > k_ + 2 || row < 1 || row > r_) {
        throw Error(Errc::out_of_range,
                    "stripe: block (" + std::to_string(disk) + ", " + std::to_string(row) + ") out of range");
    }
}

std::size_t Stripe::offset(std::size_t disk, std::size_t row) const {
    return ((disk - 1) * r_ + (row - 1)) * block_size_;
}

bool Stripe::present(std::size_t disk) const {
    check(disk, 1);
    return present_[disk - 1];
}

void Stripe::set_present(std::size_t disk, bool present) {
    check(disk, 1);
    present_[disk - 1] = present;
}

void Stripe::erase(std::size_t disk) {
    auto s = strip(disk);
    std::fill(s.begin(), s.end(), std::uint8_t{0});
    present_[disk - 1] = false;
}

bool Stripe::all_present() const {
    return std::all_of(present_.begin(), present_.end(), [](bool p) { return p; });
}

std::span<const std::uint8_t> Stripe::read(std::size_t disk, std::size_t row) const {
    check(disk, row);
    if (!present_[disk - 1]) {
        throw Error(Errc::missing_block,
                    "stripe: block (" + std::to_string(disk) + ", " + std::to_string(row) + ") is not present");
    }
    if (tracking_) reads_.insert({disk, row});
    return {bytes_.data() + offset(disk, row), block_size_};
}

std::span<std::uint8_t> Stripe::block(std::size_t disk, std::size_t row) {
    check(disk, row);
    return {bytes_.data() + offset(disk, row), block_size_};
}

std::span<const std::uint8_t> Stripe::peek(std::size_t disk, std::size_t row) const {
    check(disk, row);
    return {bytes_.data() + offset(disk, row), block_size_};
}

std::span<std::uint8_t> Stripe::strip(std::size_t disk) {
    check(disk, 1);
    return {bytes_.data() + offset(disk, 1), r_ * block_size_};
}

std::span<const std::uint8_t> Stripe::strip(std::size_t disk) const {
    check(disk, 1);
    return {bytes_.data() + offset(disk, 1), r_ * block_size_};
}

std::size_t Stripe::reads_from(std::size_t disk) const {
    return static_cast<std::size_t>(
        std::count_if(reads_.begin(), reads_.end(), [disk](const BlockRef& b) { return b.disk == disk; }));
}

bool operator==(const Stripe& a, const Stripe& b) {
    if (a.k_ != b.k_ || a.r_ != b.r_ || a.block_size_ != b.block_size_ || a.present_ != b.present_) return false;
    for (std::size_t d = 1; d <= a.k_ + 2; ++d) {
        if (!a.present_[d - 1]) continue;
        const auto x = a.strip(d);
        const auto y = b.strip(d);
        if (!std::equal(x.begin(), x.end(), y.begin())) return false;
    }
    return true;
}

}  // namespace mdr
