// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "mdr/analysis.hpp"
#include "mdr/error.hpp"

using namespace mdr;

TEST_CASE("oracle on the initial code") {
    const auto c = initial_code();
    const auto d1 = min_io_bruteforce(c, 1);
    CHECK(d1.total_reads == 2);
    CHECK(d1.search_space == 16);
    CHECK(d1.per_disk_reads[0] == 0);
    CHECK(d1.per_disk_reads[1] + d1.per_disk_reads[2] == 2);
    CHECK(min_io_bruteforce(c, 2).total_reads == 2);
    CHECK(min_io_bruteforce(c, 3).total_reads == 2);
}

TEST_CASE("oracle on construct(2) matches the repair plans") {
    const auto c = construct(2);
    for (std::size_t d = 1; d <= 4; ++d) {
        CAPTURE(d);
        const auto rep = min_io_bruteforce(c, d);
        CHECK(rep.total_reads == (d == 4 ? 8u : 6u));
        CHECK(rep.total_reads == repair_plan(c, d).reads.size());
        CHECK(rep.search_space == 65536);
        CHECK(rep.per_disk_reads[d - 1] == 0);
        if (d != 4) {
            for (std::size_t j = 1; j <= 4; ++j) {
                if (j != d) CHECK(rep.per_disk_reads[j - 1] == 2);
            }
        }
        const auto ser = min_io_bruteforce_serial(c, d);
        CHECK(ser.total_reads == rep.total_reads);
        CHECK(ser.witness == rep.witness);
        CHECK(ser.per_disk_reads == rep.per_disk_reads);
    }
}

TEST_CASE("oracle never beats the lower bounds") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 6; ++t) {
        // random MDS code with r = 2
        std::vector<BitMatrix> b;
        for (int i = 0; i < 3; ++i) b.push_back(test::random_matrix(rng, 2, 2));
        const MdrCode c(2, b);
        if (!verify_mds(c)) continue;
        for (std::size_t d = 1; d <= 3; ++d) CHECK(min_io_bruteforce(c, d).total_reads >= 3);
        CHECK(min_io_bruteforce(c, 4).total_reads >= 4);
    }
}

TEST_CASE("oracle guards") {
    const auto c = construct(3);
    CHECK_THROWS_AS(min_io_bruteforce(c, 1), Error);
    CHECK_THROWS_AS(min_io_bruteforce(c, 1, true), Error);
    CHECK_THROWS_AS(min_io_bruteforce(construct(2), 5), Error);
}

TEST_CASE("zero-column pair bound on random X") {
    std::mt19937_64 rng(12);
    for (std::size_t k : {2u, 3u, 4u}) {
        const auto c = construct(k);
        const auto a = generator_submatrices(c);
        const auto id = BitMatrix::identity(c.r());
        for (int t = 0; t < 50; ++t) {
            const auto x = test::random_matrix(rng, c.r(), c.r());
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = i + 1; j < k; ++j) {
                    CHECK(zero_column_count(id + x * a[i]) + zero_column_count(id + x * a[j]) <= c.r());
                }
            }
        }
    }
}

TEST_CASE("repair plans meet the bounds with equality") {
    for (std::size_t k = 1; k <= 8; ++k) CHECK(check_lower_bounds(construct(k)));

    const auto c = construct(3);
    auto extra = repair_plan(c, 1);
    extra.reads.insert({2, extra.solve_rows[0]});
    CHECK_FALSE(plan_meets_bound(c, extra));

    auto skewed = repair_plan(c, 1);
    const auto rows2 = skewed.rows_read_from(2);
    skewed.reads.erase({2, rows2[0]});
    skewed.reads.insert({3, skewed.solve_rows[0]});
    CHECK(skewed.reads.size() == 16);
    CHECK_FALSE(plan_meets_bound(c, skewed));

    CHECK_FALSE(plan_meets_bound(c, conventional_repair_plan(c, 2)));
    auto q = repair_plan(c, 5);
    CHECK(plan_meets_bound(c, q));
    q.reads.erase(q.reads.begin());
    CHECK_FALSE(plan_meets_bound(c, q));
}

TEST_CASE("update I/O") {
    CHECK(update_io(construct(1)) == Rational(2));
    CHECK(update_io(construct(2)) == Rational(9, 4));
    CHECK(update_io(construct(5)) == Rational(3));
    for (std::int64_t k = 2; k <= 8; ++k) CHECK(update_io(construct(static_cast<std::size_t>(k))) == Rational(k + 7, 4));
}

TEST_CASE("XOR accounting") {
    const auto c3 = construct(3);
    const auto e3 = count_schedule_xors(build_encode_schedule(c3), c3);
    CHECK(e3.q_per_block == Rational(2));
    CHECK(e3.p_per_block == Rational(2));
    CHECK(count_schedule_xors(build_encode_schedule(construct(1)), construct(1)).q_total == 0);

    const auto c4 = construct(4);
    for (std::size_t i = 1; i <= 5; ++i) {
        const auto rep = count_schedule_xors(build_repair_schedule(c4, i), c4);
        CHECK(rep.repair_per_block == Rational(3));
        CHECK(rep.repair_total == 48);
    }

    auto bad = build_encode_schedule(c3);
    bad.ops.pop_back();
    CHECK_THROWS_AS(count_schedule_xors(bad, c3), Error);
    CHECK(to_json(e3)["q_per_block"]["num"] == 2);
}

TEST_CASE("strip-size search") {
    const auto s1 = search_repair_optimal(1, 2, 1'000'000);
    CHECK(s1.exhausted);
    bool has_initial = false;
    for (const auto& c : s1.codes) has_initial = has_initial || c == initial_code();
    CHECK(has_initial);

    const auto s2 = search_repair_optimal(2, 2, 1'000'000);
    CHECK(s2.exhausted);
    CHECK(!s2.codes.empty());
    for (const auto& c : s2.codes) {
        CHECK(verify_mds(c));
        CHECK(verify_repair_optimal(c));
    }

    const auto s3 = search_repair_optimal(3, 2, 1'000'000);
    CHECK(s3.exhausted);
    CHECK(s3.codes.empty());
    CHECK(s3.candidates > 0);
}

TEST_CASE("search: serial reference, budget and arguments") {
    const auto par = search_repair_optimal(2, 2, 1'000'000);
    const auto ser = search_repair_optimal_serial(2, 2, 1'000'000);
    CHECK(par.candidates == ser.candidates);
    CHECK(par.codes == ser.codes);

    const auto cut = search_repair_optimal(2, 2, 17);
    const auto cut_ser = search_repair_optimal_serial(2, 2, 17);
    CHECK_FALSE(cut.exhausted);
    CHECK(cut.candidates == 17);
    CHECK(cut.codes == cut_ser.codes);

    // the budget cuts the first codes of the full result, never reorders them
    const auto few = search_repair_optimal(2, 4, 2000);
    CHECK_FALSE(few.exhausted);
    CHECK(few.candidates == 2000);

    CHECK_THROWS_AS(search_repair_optimal(2, 3, 10), Error);
    CHECK_THROWS_AS(search_repair_optimal(2, 6, 10), Error);
    CHECK_THROWS_AS(search_repair_optimal(0, 2, 10), Error);
    CHECK(search_space_log2(1, 2) == doctest::Approx(12.0));
    CHECK(search_space_log2(3, 2) == doctest::Approx(24.0));
}
