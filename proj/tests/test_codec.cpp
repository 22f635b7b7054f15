// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "mdr/codec.hpp"
#include "mdr/error.hpp"

using namespace mdr;

namespace {

std::vector<std::uint8_t> strip_of(const Stripe& s, std::size_t disk) {
    const auto v = s.strip(disk);
    return {v.begin(), v.end()};
}

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no exception");
    return Errc::io;
}

// Stripe bytes as F2 vector of the first bit of every block.
BitVector first_bits(const Stripe& s) {
    BitVector v(s.disk_count() * s.r());
    for (std::size_t d = 1; d <= s.disk_count(); ++d) {
        for (std::size_t y = 1; y <= s.r(); ++y) v.set((d - 1) * s.r() + (y - 1), s.peek(d, y)[0] & 1u);
    }
    return v;
}

}  // namespace

TEST_CASE("erasure pattern") {
    const ErasurePattern e{4, 2};
    CHECK(e.disks() == std::vector<std::size_t>{2, 4});
    CHECK(e.contains(4));
    CHECK_FALSE(e.contains(3));
    CHECK_THROWS_AS(ErasurePattern({1, 1}), Error);
}

TEST_CASE("encode_naive on the initial code") {
    const auto code = initial_code();
    Stripe data = make_data_stripe(code, 1);
    data.block(1, 1)[0] = 0xA5;
    data.block(1, 2)[0] = 0x3C;
    const auto s = encode_naive(code, data);
    CHECK(s.peek(2, 1)[0] == 0xA5);
    CHECK(s.peek(2, 2)[0] == 0x3C);
    CHECK(s.peek(3, 1)[0] == 0x3C);
    CHECK(s.peek(3, 2)[0] == 0xA5);
}

TEST_CASE("encoded stripes satisfy H d = 0") {
    std::mt19937_64 rng(1);
    for (std::size_t k = 1; k <= 5; ++k) {
        const auto code = construct(k);
        const auto h = parity_check_matrix(code);
        CHECK(h.rows() == 2 * code.r());
        CHECK(h.cols() == (k + 2) * code.r());
        for (int t = 0; t < 4; ++t) {
            const auto s = encode_naive(code, test::random_data(rng, code, 8));
            CHECK(mul(h, first_bits(s)).is_zero());
        }
    }
}

TEST_CASE("scheduled encode equals naive encode") {
    std::mt19937_64 rng(2);
    for (std::size_t k = 1; k <= 6; ++k) {
        CAPTURE(k);
        const auto code = construct(k);
        const auto sched = build_encode_schedule(code);
        for (int t = 0; t < 3; ++t) {
            const auto data = test::random_data(rng, code, 40);
            std::size_t xors = 0;
            CHECK(encode(code, data, sched, &xors) == encode_naive(code, data));
            CHECK(xors == 2 * (k - 1) * code.r());
        }
    }
    const auto c4 = construct(4);
    std::size_t xors = 0;
    (void)encode(c4, make_data_stripe(c4, 16), build_encode_schedule(c4), &xors);
    CHECK(xors == 96);
}

TEST_CASE("encode argument checks") {
    const auto code = construct(2);
    Stripe data = make_data_stripe(code, 8);
    data.set_present(1, false);
    CHECK(code_of([&] { (void)encode_naive(code, data); }) == Errc::missing_block);
    CHECK(code_of([&] { (void)encode_naive(code, make_data_stripe(construct(3), 8)); }) == Errc::dimension_mismatch);
    CHECK(code_of([&] {
              (void)encode(code, make_data_stripe(code, 8), build_encode_schedule(construct(3)));
          }) == Errc::precondition);
}

TEST_CASE("decode recovers every pattern of up to two erasures") {
    std::mt19937_64 rng(3);
    for (std::size_t k = 1; k <= 5; ++k) {
        const auto code = construct(k);
        const auto full = encode_naive(code, test::random_data(rng, code, 24));
        CHECK(decode(code, full, {}) == full);
        for (std::size_t a = 1; a <= k + 2; ++a) {
            for (std::size_t b = a; b <= k + 2; ++b) {
                CAPTURE(k);
                CAPTURE(a);
                CAPTURE(b);
                Stripe damaged = full;
                damaged.erase(a);
                damaged.erase(b);
                const ErasurePattern e = a == b ? ErasurePattern{a} : ErasurePattern{a, b};
                CHECK(decode(code, damaged, e) == full);
            }
        }
    }
}

TEST_CASE("decode errors") {
    std::mt19937_64 rng(4);
    const auto code = construct(3);
    const auto full = encode_naive(code, test::random_data(rng, code, 16));

    CHECK(code_of([&] { (void)decode(code, full, {1, 2, 3}); }) == Errc::unrecoverable);
    CHECK(code_of([&] { (void)decode(code, full, {9}); }) == Errc::out_of_range);

    Stripe missing = full;
    missing.erase(2);
    CHECK(code_of([&] { (void)decode(code, missing, {1}); }) == Errc::missing_block);

    Stripe corrupt = full;
    corrupt.block(3, 4)[5] ^= 0x40;
    CHECK(code_of([&] { (void)decode(code, corrupt, {}); }) == Errc::integrity);
    // one erasure leaves r independent checks
    Stripe one = corrupt;
    one.erase(1);
    CHECK(code_of([&] { (void)decode(code, one, {1}); }) == Errc::integrity);
}

TEST_CASE("repair plan read counts") {
    const auto c3 = construct(3);
    const auto p = repair_plan(c3, 1);
    CHECK(p.reads.size() == 16);
    for (std::size_t d = 2; d <= 5; ++d) CHECK(p.reads_from(d) == 4);
    CHECK(p.reads_from(1) == 0);
    CHECK(p.rows_read_from(5) == std::vector<std::size_t>(p.q_rows.begin(), p.q_rows.end()));

    const auto conv = conventional_repair_plan(c3, 1);
    CHECK(conv.reads.size() == 24);
    CHECK(p.reads.size() * 3 == conv.reads.size() * 2);

    const auto c2 = construct(2);
    CHECK(repair_plan(c2, 4).reads.size() == 8);
    CHECK(repair_plan(c2, 4).q_schedule != nullptr);

    for (std::size_t k = 1; k <= 6; ++k) {
        const auto code = construct(k);
        for (std::size_t i = 1; i <= k + 1; ++i) {
            CHECK(repair_plan(code, i).reads.size() == (k + 1) * code.r() / 2);
            CHECK(conventional_repair_plan(code, i).reads.size() == k * code.r());
        }
    }
    CHECK_THROWS_AS(repair_plan(c3, 0), Error);
    CHECK_THROWS_AS(repair_plan(c3, 6), Error);
}

TEST_CASE("execute_repair rebuilds every disk") {
    std::mt19937_64 rng(5);
    for (std::size_t k = 1; k <= 5; ++k) {
        const auto code = construct(k);
        const auto full = encode_naive(code, test::random_data(rng, code, 32));
        for (std::size_t i = 1; i <= k + 2; ++i) {
            CAPTURE(k);
            CAPTURE(i);
            Stripe damaged = full;
            damaged.erase(i);
            const auto want = strip_of(full, i);
            const auto plan = repair_plan(code, i);

            for (auto mode : {RepairMode::batched, RepairMode::streaming}) {
                damaged.enable_tracking();
                damaged.reset_reads();
                RepairStats stats;
                CHECK(execute_repair(code, plan, damaged, mode, &stats) == want);
                CHECK(damaged.reads() == plan.reads);
                CHECK(stats.blocks_read == plan.reads.size());
                if (i <= k + 1 && mode == RepairMode::streaming) CHECK(stats.peak_buffers == code.r() / 2 + 2);
            }

            const auto d = decode(code, damaged, {i});
            CHECK(strip_of(d, i) == want);
            if (i <= k + 1) CHECK(execute_repair(code, conventional_repair_plan(code, i), damaged) == want);
        }
    }
}

TEST_CASE("execute_repair needs the planned disks") {
    std::mt19937_64 rng(6);
    const auto code = construct(3);
    Stripe s = encode_naive(code, test::random_data(rng, code, 8));
    s.erase(1);
    s.erase(2);
    CHECK(code_of([&] { (void)execute_repair(code, repair_plan(code, 1), s); }) == Errc::missing_block);
}

TEST_CASE("batch kernels: serial and parallel agree") {
    std::mt19937_64 rng(8);
    const auto code = construct(4);
    const auto sched = build_encode_schedule(code);
    std::vector<Stripe> a;
    for (int i = 0; i < 24; ++i) a.push_back(test::random_data(rng, code, 64));
    auto b = a;
    const auto xa = encode_batch_serial(sched, a);
    const auto xb = encode_batch_parallel(sched, b);
    CHECK(xa == xb);
    CHECK(xa == 24 * 96);
    CHECK(a == b);

    for (auto& s : a) s.erase(2);
    const auto plan = repair_plan(code, 2);
    const auto ra = repair_batch_serial(code, plan, a);
    const auto rb = repair_batch_parallel(code, plan, a);
    CHECK(ra == rb);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(ra[i] == strip_of(b[i], 2));

    a[5].erase(3);
    CHECK_THROWS_AS(repair_batch_parallel(code, plan, a), Error);
}
