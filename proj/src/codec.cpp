// SPDX-License-Identifier: Apache-2.0

#include "mdr/codec.hpp"

#include <algorithm>
#include <string>

#include "mdr/error.hpp"
#include "mdr/parallel.hpp"
#include "mdr/xor_kernels.hpp"

namespace mdr {

ErasurePattern::ErasurePattern(std::vector<std::size_t> disks) : disks_(std::move(disks)) {
    std::sort(disks_.begin(), disks_.end());
    if (std::adjacent_find(disks_.begin(), disks_.end()) != disks_.end()) {
        throw Error(Errc::invalid_argument, "erasure pattern: duplicate disk");
    }
}

bool ErasurePattern::contains(std::size_t disk) const {
    return std::binary_search(disks_.begin(), disks_.end(), disk);
}

std::size_t RepairPlan::reads_from(std::size_t disk) const {
    return static_cast<std::size_t>(
        std::count_if(reads.begin(), reads.end(), [disk](const BlockRef& b) { return b.disk == disk; }));
}

std::vector<std::size_t> RepairPlan::rows_read_from(std::size_t disk) const {
    std::vector<std::size_t> rows;
    for (const auto& b : reads) {
        if (b.disk == disk) rows.push_back(b.row);
    }
    return rows;
}

BitMatrix parity_check_matrix(const MdrCode& code) {
    const std::size_t k = code.k();
    const std::size_t r = code.r();
    BitMatrix h(2 * r, (k + 2) * r);
    const auto a = generator_submatrices(code);
    for (std::size_t y = 0; y < r; ++y) {
        for (std::size_t d = 0; d <= k; ++d) h.set(y, d * r + y, true);
        h.set(r + y, (k + 1) * r + y, true);
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t c = 0; c < r; ++c) {
                if (a[j].get(y, c)) h.set(r + y, j * r + c, true);
            }
        }
    }
    return h;
}

Stripe make_data_stripe(const MdrCode& code, std::size_t block_size) {
    Stripe s(code.k(), code.r(), block_size);
    for (std::size_t d = 1; d <= code.k(); ++d) s.set_present(d, true);
    return s;
}

namespace {

void check_shape(const MdrCode& code, const Stripe& stripe, const char* who) {
    if (stripe.k() != code.k() || stripe.r() != code.r()) {
        throw Error(Errc::dimension_mismatch, std::string(who) + ": stripe shape does not match the code");
    }
}

void check_data_present(const MdrCode& code, const Stripe& data, const char* who) {
    check_shape(code, data, who);
    for (std::size_t d = 1; d <= code.k(); ++d) {
        if (!data.present(d)) {
            throw Error(Errc::missing_block, std::string(who) + ": data disk " + std::to_string(d) + " missing");
        }
    }
}

}  // namespace

Stripe encode_naive(const MdrCode& code, const Stripe& data) {
    check_data_present(code, data, "encode_naive");
    const std::size_t k = code.k();
    const std::size_t r = code.r();
    Stripe out = data;
    const auto a = generator_submatrices(code);
    for (std::size_t y = 1; y <= r; ++y) {
        auto p = out.block(k + 1, y);
        std::fill(p.begin(), p.end(), std::uint8_t{0});
        for (std::size_t j = 1; j <= k; ++j) xor_into(p, out.read(j, y));
    }
    for (std::size_t x = 1; x <= r; ++x) {
        auto q = out.block(k + 2, x);
        std::fill(q.begin(), q.end(), std::uint8_t{0});
        for (std::size_t j = 1; j <= k; ++j) {
            for (std::size_t c = 1; c <= r; ++c) {
                if (a[j - 1].get(x - 1, c - 1)) xor_into(q, out.read(j, c));
            }
        }
    }
    out.set_present(k + 1, true);
    out.set_present(k + 2, true);
    return out;
}

Stripe encode(const MdrCode& code, const Stripe& data, const XorSchedule& schedule, std::size_t* xors_out) {
    check_data_present(code, data, "encode");
    if (schedule.kind != ScheduleKind::encode || schedule.k != code.k() || schedule.r != code.r()) {
        throw Error(Errc::precondition, "encode: schedule does not belong to this code");
    }
    Stripe out = data;
    const std::size_t xors = execute_schedule(schedule, out);
    out.set_present(code.p_disk(), true);
    out.set_present(code.q_disk(), true);
    if (xors_out) *xors_out = xors;
    return out;
}

Stripe decode(const MdrCode& code, const Stripe& stripe, const ErasurePattern& erased) {
    check_shape(code, stripe, "decode");
    const std::size_t n = code.disk_count();
    const std::size_t r = code.r();
    if (erased.size() > 2) {
        throw Error(Errc::unrecoverable, "decode: " + std::to_string(erased.size()) + " erasures exceed RAID-6 tolerance");
    }
    for (std::size_t d : erased.disks()) {
        if (d < 1 || d > n) throw Error(Errc::out_of_range, "decode: erased disk index out of range");
    }
    for (std::size_t d = 1; d <= n; ++d) {
        if (!erased.contains(d) && !stripe.present(d)) {
            throw Error(Errc::missing_block, "decode: disk " + std::to_string(d) + " is neither present nor erased");
        }
    }

    const BitMatrix h = parity_check_matrix(code);
    const std::size_t bs = stripe.block_size();
    const std::size_t equations = 2 * r;

    // Syndromes of the surviving blocks: s = H_S d_S.
    std::vector<std::uint8_t> syndrome(equations * bs, 0);
    auto syn = [&](std::size_t e) { return std::span<std::uint8_t>(syndrome.data() + e * bs, bs); };
    for (std::size_t e = 0; e < equations; ++e) {
        for (std::size_t d = 1; d <= n; ++d) {
            if (erased.contains(d)) continue;
            for (std::size_t y = 1; y <= r; ++y) {
                if (h.get(e, (d - 1) * r + (y - 1))) xor_into(syn(e), stripe.read(d, y));
            }
        }
    }
    auto is_zero = [](std::span<const std::uint8_t> b) {
        return std::all_of(b.begin(), b.end(), [](std::uint8_t v) { return v == 0; });
    };

    Stripe out = stripe;
    if (erased.size() == 0) {
        for (std::size_t e = 0; e < equations; ++e) {
            if (!is_zero(syn(e))) throw Error(Errc::integrity, "decode: parity check failed");
        }
        return out;
    }

    std::vector<std::size_t> unknown_cols;
    for (std::size_t d : erased.disks()) {
        for (std::size_t y = 1; y <= r; ++y) unknown_cols.push_back((d - 1) * r + (y - 1));
    }
    BitMatrix h_e(equations, unknown_cols.size());
    for (std::size_t e = 0; e < equations; ++e) {
        for (std::size_t u = 0; u < unknown_cols.size(); ++u) {
            if (h.get(e, unknown_cols[u])) h_e.set(e, u, true);
        }
    }
    LeftInverse solve;
    try {
        solve = left_inverse(h_e);
    } catch (const Error& e) {
        if (e.code() == Errc::singular) throw Error(Errc::unrecoverable, "decode: erasure pattern not solvable");
        throw;
    }

    std::vector<std::uint8_t> check(bs);
    for (const auto& null_row : solve.null_rows) {
        std::fill(check.begin(), check.end(), std::uint8_t{0});
        for (std::size_t e = 0; e < equations; ++e) {
            if (null_row.get(e)) xor_into(check, syn(e));
        }
        if (!is_zero(check)) throw Error(Errc::integrity, "decode: surviving blocks are inconsistent");
    }

    for (std::size_t u = 0; u < unknown_cols.size(); ++u) {
        const std::size_t disk = unknown_cols[u] / r + 1;
        const std::size_t row = unknown_cols[u] % r + 1;
        auto dst = out.block(disk, row);
        std::fill(dst.begin(), dst.end(), std::uint8_t{0});
        for (std::size_t e = 0; e < equations; ++e) {
            if (solve.inverse.get(u, e)) xor_into(dst, syn(e));
        }
    }
    for (std::size_t d : erased.disks()) out.set_present(d, true);
    return out;
}

RepairPlan repair_plan(const MdrCode& code, std::size_t failed) {
    const std::size_t k = code.k();
    const std::size_t r = code.r();
    if (failed < 1 || failed > code.disk_count()) throw Error(Errc::out_of_range, "repair_plan: invalid disk index");

    RepairPlan plan;
    plan.failed_disk = failed;
    if (failed == code.q_disk()) {
        for (std::size_t j = 1; j <= k; ++j) {
            for (std::size_t y = 1; y <= r; ++y) plan.reads.insert({j, y});
        }
        plan.q_rows = IndexSet(r, {});
        plan.row_parity_rows = IndexSet(r, {});
        plan.solve_rows = IndexSet(r, {});
        if (is_recursive_mdr(code)) plan.q_schedule = std::make_shared<const XorSchedule>(build_encode_schedule(code));
        return plan;
    }

    const auto& st = code.strategy(failed);
    plan.q_rows = st.q_rows;
    plan.row_parity_rows = st.basic_rows;
    plan.solve_rows = st.basic_rows.complement();
    for (std::size_t j = 1; j <= k + 1; ++j) {
        if (j == failed) continue;
        for (std::size_t y : st.basic_rows) plan.reads.insert({j, y});
    }
    for (std::size_t x : st.q_rows) plan.reads.insert({code.q_disk(), x});
    plan.solver = invert(submatrix(code.b(failed), st.q_rows, plan.solve_rows));
    for (std::size_t j = 1; j <= k + 1; ++j) plan.coefficients.push_back(submatrix(code.b(j), st.q_rows, st.basic_rows));
    return plan;
}

RepairPlan conventional_repair_plan(const MdrCode& code, std::size_t failed) {
    if (failed == code.q_disk()) return repair_plan(code, failed);
    if (!code.is_basic(failed)) throw Error(Errc::out_of_range, "conventional_repair_plan: invalid disk index");
    const std::size_t r = code.r();
    RepairPlan plan;
    plan.failed_disk = failed;
    for (std::size_t j = 1; j <= code.k() + 1; ++j) {
        if (j == failed) continue;
        for (std::size_t y = 1; y <= r; ++y) plan.reads.insert({j, y});
    }
    plan.q_rows = IndexSet(r, {});
    plan.row_parity_rows = IndexSet::full(r);
    plan.solve_rows = IndexSet(r, {});
    return plan;
}

namespace {

std::vector<std::uint8_t> repair_q(const MdrCode& code, const RepairPlan& plan, const Stripe& available,
                                   RepairStats& stats) {
    Stripe scratch = make_data_stripe(code, available.block_size());
    for (std::size_t j = 1; j <= code.k(); ++j) {
        for (std::size_t y = 1; y <= code.r(); ++y) copy_block(scratch.block(j, y), available.read(j, y));
    }
    stats.blocks_read = code.k() * code.r();
    Stripe full = plan.q_schedule ? encode(code, scratch, *plan.q_schedule, &stats.xors) : encode_naive(code, scratch);
    stats.peak_buffers = (code.k() + 2) * code.r();
    const auto q = full.strip(code.q_disk());
    return {q.begin(), q.end()};
}

}  // namespace

std::vector<std::uint8_t> execute_repair(const MdrCode& code, const RepairPlan& plan, const Stripe& available,
                                         RepairMode mode, RepairStats* stats_out) {
    check_shape(code, available, "execute_repair");
    RepairStats stats;
    for (const auto& b : plan.reads) {
        if (!available.present(b.disk)) {
            throw Error(Errc::missing_block, "execute_repair: required disk " + std::to_string(b.disk) + " is absent");
        }
    }
    if (plan.failed_disk == code.q_disk()) {
        auto q = repair_q(code, plan, available, stats);
        if (stats_out) *stats_out = stats;
        return q;
    }

    const std::size_t r = code.r();
    const std::size_t bs = available.block_size();
    const std::size_t i = plan.failed_disk;
    const std::size_t basic = code.k() + 1;
    const auto& rows = plan.row_parity_rows;
    const auto& lost = plan.solve_rows;
    std::vector<std::uint8_t> out(r * bs, 0);
    auto out_block = [&](std::size_t row) { return std::span<std::uint8_t>(out.data() + (row - 1) * bs, bs); };
    auto read = [&](std::size_t disk, std::size_t row) {
        ++stats.blocks_read;
        return available.read(disk, row);
    };
    auto xor_to = [&](std::span<std::uint8_t> dst, std::span<const std::uint8_t> src) {
        xor_into(dst, src);
        ++stats.xors;
    };

    if (mode == RepairMode::batched) {
        for (std::size_t y : rows) {
            bool first = true;
            for (std::size_t j = 1; j <= basic; ++j) {
                if (j == i) continue;
                if (first) {
                    copy_block(out_block(y), read(j, y));
                    first = false;
                } else {
                    xor_to(out_block(y), read(j, y));
                }
            }
        }
        // rhs_m = d_Q[R_m] + sum_j B_j|(R, C) d_j|C
        std::vector<std::uint8_t> rhs(plan.q_rows.size() * bs, 0);
        for (std::size_t m = 0; m < plan.q_rows.size(); ++m) {
            std::span<std::uint8_t> acc(rhs.data() + m * bs, bs);
            copy_block(acc, read(code.q_disk(), plan.q_rows[m]));
            for (std::size_t j = 1; j <= basic; ++j) {
                const BitMatrix& coeff = plan.coefficients[j - 1];
                for (std::size_t c = 0; c < rows.size(); ++c) {
                    if (!coeff.get(m, c)) continue;
                    xor_to(acc, j == i ? std::span<const std::uint8_t>(out_block(rows[c])) : read(j, rows[c]));
                }
            }
        }
        for (std::size_t m = 0; m < lost.size(); ++m) {
            bool first = true;
            for (std::size_t e = 0; e < plan.q_rows.size(); ++e) {
                if (!plan.solver.get(m, e)) continue;
                std::span<const std::uint8_t> src(rhs.data() + e * bs, bs);
                if (first) {
                    copy_block(out_block(lost[m]), src);
                    first = false;
                } else {
                    xor_to(out_block(lost[m]), src);
                }
            }
        }
        stats.peak_buffers = rows.size() + 2 * lost.size();
        stats.blocks_read = plan.reads.size();
        if (stats_out) *stats_out = stats;
        return out;
    }

    // Streaming: one accumulator per lost row, one for the current row-parity
    // sum and one for the block just read. Each read block is folded into the
    // accumulators through G_j = solver * B_j|(R, C).
    std::vector<BitMatrix> fold;
    if (!lost.empty()) {
        for (std::size_t j = 1; j <= basic; ++j) fold.push_back(mul(plan.solver, plan.coefficients[j - 1]));
    }
    std::vector<std::uint8_t> acc(lost.size() * bs, 0);
    std::vector<std::uint8_t> parity(bs);
    std::vector<std::uint8_t> current(bs);
    auto acc_block = [&](std::size_t m) { return std::span<std::uint8_t>(acc.data() + m * bs, bs); };
    auto fold_in = [&](const BitMatrix& g, std::size_t col, std::span<const std::uint8_t> src) {
        for (std::size_t m = 0; m < lost.size(); ++m) {
            if (g.get(m, col)) xor_to(acc_block(m), src);
        }
    };

    for (std::size_t c = 0; c < rows.size(); ++c) {
        bool first = true;
        for (std::size_t j = 1; j <= basic; ++j) {
            if (j == i) continue;
            copy_block(current, read(j, rows[c]));
            if (!lost.empty()) fold_in(fold[j - 1], c, current);
            if (first) {
                copy_block(parity, current);
                first = false;
            } else {
                xor_to(parity, current);
            }
        }
        if (!lost.empty()) fold_in(fold[i - 1], c, parity);
        copy_block(out_block(rows[c]), parity);
    }
    for (std::size_t e = 0; e < plan.q_rows.size(); ++e) {
        copy_block(current, read(code.q_disk(), plan.q_rows[e]));
        for (std::size_t m = 0; m < lost.size(); ++m) {
            if (plan.solver.get(m, e)) xor_to(acc_block(m), current);
        }
    }
    for (std::size_t m = 0; m < lost.size(); ++m) copy_block(out_block(lost[m]), acc_block(m));

    stats.peak_buffers = lost.size() + 2;
    stats.blocks_read = plan.reads.size();
    if (stats_out) *stats_out = stats;
    return out;
}

std::size_t encode_batch_serial(const XorSchedule& schedule, std::span<Stripe> stripes) {
    std::size_t xors = 0;
    for (auto& s : stripes) {
        xors += execute_schedule(schedule, s);
        s.set_present(schedule.k + 1, true);
        s.set_present(schedule.k + 2, true);
    }
    return xors;
}

std::size_t encode_batch_parallel(const XorSchedule& schedule, std::span<Stripe> stripes) {
    std::size_t xors = 0;
    FirstError failure;
    const auto n = static_cast<std::ptrdiff_t>(stripes.size());
#pragma omp parallel for schedule(static) reduction(+ : xors)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
        failure.run([&] {
            auto& stripe = stripes[static_cast<std::size_t>(s)];
            xors += execute_schedule(schedule, stripe);
            stripe.set_present(schedule.k + 1, true);
            stripe.set_present(schedule.k + 2, true);
        });
    }
    failure.rethrow();
    return xors;
}

std::vector<std::vector<std::uint8_t>> repair_batch_serial(const MdrCode& code, const RepairPlan& plan,
                                                           std::span<const Stripe> stripes) {
    std::vector<std::vector<std::uint8_t>> out;
    out.reserve(stripes.size());
    for (const auto& s : stripes) out.push_back(execute_repair(code, plan, s));
    return out;
}

std::vector<std::vector<std::uint8_t>> repair_batch_parallel(const MdrCode& code, const RepairPlan& plan,
                                                             std::span<const Stripe> stripes) {
    std::vector<std::vector<std::uint8_t>> out(stripes.size());
    FirstError failure;
    const auto n = static_cast<std::ptrdiff_t>(stripes.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
        failure.run([&] {
            const auto idx = static_cast<std::size_t>(s);
            out[idx] = execute_repair(code, plan, stripes[idx]);
        });
    }
    failure.rethrow();
    return out;
}

}  // namespace mdr
