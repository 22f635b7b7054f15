// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "mdr/analysis.hpp"
#include "mdr/codec.hpp"
#include "mdr/recovery_sim.hpp"

using namespace mdr;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail << "failed: " << what << "; ";
        ok = ok && cond;
    }
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail << "exception: " << e.what() << "; ";
    }
    const double t = seconds_since(t0);
    if (limit_s > 0 && t > limit_s) {
        o.ok = false;
        o.detail << "exceeded " << limit_s << " s; ";
    }
    if (!o.ok) ++failures;
    std::printf("criterion %d: %s - %s (%.2f s) %s\n", id, o.ok ? "PASS" : "FAIL", title, t, o.detail.str().c_str());
    std::fflush(stdout);
}

Stripe random_stripe(std::mt19937_64& rng, const MdrCode& code, std::size_t block_size) {
    Stripe s = make_data_stripe(code, block_size);
    for (std::size_t d = 1; d <= code.k(); ++d) {
        for (auto& b : s.strip(d)) b = static_cast<std::uint8_t>(rng());
    }
    return s;
}

}  // namespace

int main() {
    criterion(1, "construction soundness, k = 1..8", 0, [](Outcome& o) {
        for (std::size_t k = 1; k <= 8; ++k) {
            const auto t0 = Clock::now();
            const auto code = construct(k);
            const bool mds = verify_mds(code);
            const bool opt = verify_repair_optimal(code);
            const double t = seconds_since(t0);
            o.require(mds && opt, "k=" + std::to_string(k) + " verification");
            o.require(t < 10.0, "k=" + std::to_string(k) + " took over 10 s");
            o.detail << "k=" << k << ":" << static_cast<int>(t * 1000) << "ms ";
        }
    });

    criterion(2, "two-erasure round trip, k = 1..5, 100 stripes each", 60.0, [](Outcome& o) {
        std::mt19937_64 rng(2024);
        std::size_t decoded = 0;
        for (std::size_t k = 1; k <= 5; ++k) {
            const auto code = construct(k);
            for (int s = 0; s < 100; ++s) {
                const auto full = encode_naive(code, random_stripe(rng, code, kDefaultBlockSize));
                for (std::size_t a = 1; a <= k + 2; ++a) {
                    for (std::size_t b = a + 1; b <= k + 2; ++b) {
                        Stripe damaged = full;
                        damaged.erase(a);
                        damaged.erase(b);
                        o.require(decode(code, damaged, {a, b}) == full,
                                  "k=" + std::to_string(k) + " pattern " + std::to_string(a) + "," + std::to_string(b));
                        ++decoded;
                    }
                }
            }
        }
        o.detail << decoded << " decodes ";
    });

    criterion(3, "repair I/O exactness and read ratio (k+1)/(2k)", 0, [](Outcome& o) {
        std::mt19937_64 rng(3);
        for (std::size_t k = 1; k <= 8; ++k) {
            const auto code = construct(k);
            const std::size_t r = code.r();
            for (std::size_t i = 1; i <= k + 1; ++i) {
                const auto plan = repair_plan(code, i);
                o.require(plan.reads.size() == (k + 1) * (r / 2), "total reads");
                std::vector<std::size_t> rows;
                for (std::size_t j = 1; j <= k + 2; ++j) {
                    if (j == i) continue;
                    o.require(plan.reads_from(j) == r / 2, "per-disk reads");
                    if (!code.is_basic(j)) continue;
                    if (rows.empty()) rows = plan.rows_read_from(j);
                    o.require(plan.rows_read_from(j) == rows, "identical row sets");
                }
                const auto conv = conventional_repair_plan(code, i);
                o.require(plan.reads.size() * 2 * k == conv.reads.size() * (k + 1), "ratio");
            }
            o.require(repair_plan(code, k + 2).reads.size() == k * r, "Q reads");
            if (k <= 6) {
                // the executed repair touches exactly the planned blocks
                const auto full = encode_naive(code, random_stripe(rng, code, 32));
                for (std::size_t i = 1; i <= k + 2; ++i) {
                    Stripe damaged = full;
                    damaged.erase(i);
                    damaged.enable_tracking();
                    const auto plan = repair_plan(code, i);
                    const auto strip = execute_repair(code, plan, damaged);
                    o.require(damaged.reads() == plan.reads, "tracked reads");
                    const auto want = full.strip(i);
                    o.require(std::equal(strip.begin(), strip.end(), want.begin(), want.end()), "rebuilt bytes");
                }
            }
        }
        const auto r3 = static_cast<double>(repair_plan(construct(3), 1).reads.size()) /
                        static_cast<double>(conventional_repair_plan(construct(3), 1).reads.size());
        const auto r8 = static_cast<double>(repair_plan(construct(8), 1).reads.size()) /
                        static_cast<double>(conventional_repair_plan(construct(8), 1).reads.size());
        o.require(r8 == 0.5625, "k=8 ratio");
        o.detail << "ratio k=3 " << r3 << ", k=8 " << r8 << " ";
    });

    criterion(4, "minimum-I/O oracle on construct(2)", 300.0, [](Outcome& o) {
        const auto code = construct(2);
        const std::size_t want[] = {6, 6, 6, 8};
        for (std::size_t d = 1; d <= 4; ++d) {
            const auto rep = min_io_bruteforce(code, d);
            o.require(rep.search_space == 65536, "search space");
            o.require(rep.total_reads == want[d - 1], "disk " + std::to_string(d));
            o.require(rep.total_reads == repair_plan(code, d).reads.size(), "plan agreement");
            o.detail << rep.total_reads << (d < 4 ? "/" : " ");
        }
    });

    criterion(5, "XOR counts of encode and repair, k = 1..6", 0, [](Outcome& o) {
        std::mt19937_64 rng(5);
        for (std::size_t k = 1; k <= 6; ++k) {
            const auto code = construct(k);
            const std::size_t r = code.r();
            const auto data = random_stripe(rng, code, 64);
            std::size_t xors = 0;
            const auto full = encode(code, data, build_encode_schedule(code), &xors);
            o.require(xors == 2 * (k - 1) * r, "encode k=" + std::to_string(k));
            o.require(full == encode_naive(code, data), "encode bytes");
            for (std::size_t i = 1; i <= k + 1; ++i) {
                Stripe damaged = full;
                damaged.erase(i);
                const std::size_t n = execute_schedule(build_repair_schedule(code, i), damaged);
                o.require(n == (k - 1) * r, "repair k=" + std::to_string(k));
                o.require(damaged == full, "repair bytes");
            }
        }
    });

    criterion(6, "update I/O (k+7)/4 for k = 2..8, 2 for k = 1", 0, [](Outcome& o) {
        o.require(update_io(construct(1)) == Rational(2), "k=1");
        for (std::int64_t k = 2; k <= 8; ++k) {
            o.require(update_io(construct(static_cast<std::size_t>(k))) == Rational(k + 7, 4), "k=" + std::to_string(k));
        }
    });

    criterion(7, "strip-size search: (k=2, r=2) found, (k=3, r=2) none", 600.0, [](Outcome& o) {
        const auto s2 = search_repair_optimal(2, 2, 1'000'000'000);
        const auto s3 = search_repair_optimal(3, 2, 1'000'000'000);
        o.require(s2.exhausted && !s2.codes.empty(), "k=2");
        o.require(s3.exhausted && s3.codes.empty(), "k=3");
        for (const auto& c : s2.codes) o.require(verify_mds(c) && verify_repair_optimal(c), "re-verification");
        o.detail << "k=2: " << s2.codes.size() << " codes / " << s2.candidates << " candidates, k=3: "
                 << s3.codes.size() << " codes / " << s3.candidates << " candidates ";
    });

    criterion(8, "simulation read counts, access-time ratio, determinism", 0, [](Outcome& o) {
        double worst = 0;
        for (std::size_t k = 2; k <= 8; ++k) {
            const std::size_t r = std::size_t{1} << k;
            for (std::size_t failed = 1; failed <= k + 2; ++failed) {
            for (std::size_t bs : {512u, 4096u, 65536u}) {
                for (double rate : {0.0, 100.0}) {
                    SimConfig base;
                    base.k = k;
                    base.failed_disk = failed;
                    base.block_size = bs;
                    base.stripe_count = 16;
                    base.background_rate = rate;
                    base.strategy = RecoveryStrategy::conventional;
                    SimConfig cand = base;
                    cand.strategy = RecoveryStrategy::mdr;
                    const auto cmp = compare(base, cand);
                    if (failed == k + 2) {
                        // Q is rebuilt from all data blocks under both strategies
                        o.require(cmp.candidate.total_blocks_read == cmp.baseline.total_blocks_read, "Q rebuild reads");
                        continue;
                    }
                    for (std::size_t d = 1; d <= k + 1; ++d) {
                        if (d == failed) continue;
                        o.require(cmp.candidate.blocks_read[d - 1] * 2 == cmp.baseline.blocks_read[d - 1], "half reads");
                    }
                    o.require(cmp.baseline.blocks_read[k + 1] == 0, "conventional Q reads");
                    o.require(cmp.candidate.blocks_read[k + 1] == 16 * r / 2, "Q reads");
                    o.require(cmp.candidate.total_blocks_read * 2 * k == cmp.baseline.total_blocks_read * (k + 1), "ratio");
                    o.require(cmp.access_time_ratio < 1.0, "access time ratio");
                    worst = std::max(worst, cmp.access_time_ratio);
                    o.require(to_json(simulate(cand)) == to_json(cmp.candidate), "determinism");
                }
            }
            }
        }
        o.detail << "max access-time ratio " << worst << " ";
    });

    criterion(9, "symbolic evaluation of every schedule, k = 1..6", 0, [](Outcome& o) {
        std::size_t n = 0;
        for (std::size_t k = 1; k <= 6; ++k) {
            const auto code = construct(k);
            o.require(validate_schedule(code, build_encode_schedule(code)), "encode k=" + std::to_string(k));
            ++n;
            for (std::size_t i = 1; i <= k + 1; ++i) {
                o.require(validate_schedule(code, build_repair_schedule(code, i)), "repair k=" + std::to_string(k));
                ++n;
            }
        }
        o.detail << n << " schedules ";
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
