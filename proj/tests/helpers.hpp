// SPDX-License-Identifier: Apache-2.0
//
// Shared random generators for the test suites.

#ifndef MDR_TEST_HELPERS_HPP
#define MDR_TEST_HELPERS_HPP

#include <cstdint>
#include <random>

#include "mdr/bit_matrix.hpp"
#include "mdr/code.hpp"
#include "mdr/codec.hpp"
#include "mdr/stripe.hpp"

namespace mdr::test {

inline BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    BitMatrix m(rows, cols);
    std::bernoulli_distribution bit(0.5);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, bit(rng));
    }
    return m;
}

inline void fill_random(std::mt19937_64& rng, std::span<std::uint8_t> bytes) {
    std::uniform_int_distribution<int> byte(0, 255);
    for (auto& b : bytes) b = static_cast<std::uint8_t>(byte(rng));
}

/// Data disks filled with random bytes, parities absent.
inline Stripe random_data(std::mt19937_64& rng, const MdrCode& code, std::size_t block_size) {
    Stripe s = make_data_stripe(code, block_size);
    for (std::size_t d = 1; d <= code.k(); ++d) fill_random(rng, s.strip(d));
    return s;
}

}  // namespace mdr::test

#endif
