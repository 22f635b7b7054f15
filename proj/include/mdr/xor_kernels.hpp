// SPDX-License-Identifier: Apache-2.0

#ifndef MDR_XOR_KERNELS_HPP
#define MDR_XOR_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>

namespace mdr {

/// dst ^= src, eight bytes at a time. Sizes must match.
inline void xor_into(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
    std::size_t n = dst.size();
    std::uint8_t* d = dst.data();
    const std::uint8_t* s = src.data();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        std::uint64_t a;
        std::uint64_t b;
        std::memcpy(&a, d + i, 8);
        std::memcpy(&b, s + i, 8);
        a ^= b;
        std::memcpy(d + i, &a, 8);
    }
    for (; i < n; ++i) d[i] ^= s[i];
}

inline void copy_block(std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
    std::memcpy(dst.data(), src.data(), dst.size());
}

}  // namespace mdr

#endif
