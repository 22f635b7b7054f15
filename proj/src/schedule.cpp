// SPDX-License-Identifier: Apache-2.0

#include "mdr/schedule.hpp"

#include <optional>
#include <set>

#include "mdr/error.hpp"
#include "mdr/xor_kernels.hpp"

namespace mdr {

std::size_t XorSchedule::xor_count() const {
    std::size_t n = 0;
    for (const auto& op : ops) n += op.sources.empty() ? 0 : op.sources.size() - 1;
    return n;
}

std::string XorSchedule::describe(const BufferId& id) const {
    if (id.is_block()) return "d[" + std::to_string(id.index) + "][" + std::to_string(id.row) + "]";
    return id.index < temp_names.size() ? temp_names[id.index] : "t" + std::to_string(id.index);
}

namespace {

// One term of the level walk that expresses Q row x (0-based) of a recursive
// code: either a data-disk block or the partial sum d_1 + ... + d_level at a row.
struct Term {
    bool partial_sum;
    std::size_t level;  // disk index for blocks, prefix length for partial sums
    std::size_t row0;
};

// The recursion places Q's upper half of a level-t window on the lower half of
// d_t, and Q's lower half on the upper half of (d_1 + ... + d_t); the remaining
// terms come from the level t-1 code on the same half-window.
std::vector<Term> q_row_terms(std::size_t k, std::size_t x0) {
    std::vector<Term> terms;
    std::size_t off = 0;
    for (std::size_t t = k; t >= 1; --t) {
        const std::size_t half = std::size_t{1} << (t - 1);
        if (x0 - off < half) {
            terms.push_back({false, t, x0 + half});
        } else {
            terms.push_back({true, t, x0 - half});
            off += half;
        }
    }
    return terms;
}

void require_recursive(const MdrCode& code, const char* who) {
    if (!is_recursive_mdr(code)) {
        throw Error(Errc::precondition, std::string(who) + ": code is not produced by the MDR recursion");
    }
}

}  // namespace

XorSchedule build_encode_schedule(const MdrCode& code) {
    require_recursive(code, "build_encode_schedule");
    const std::size_t k = code.k();
    const std::size_t r = code.r();
    XorSchedule s;
    s.kind = ScheduleKind::encode;
    s.k = k;
    s.r = r;

    // prefix[t][y] for 2 <= t <= k-1 are temporaries; prefix 1 is d_1, prefix k is P.
    std::vector<std::vector<std::size_t>> prefix_slot(k + 1);
    for (std::size_t t = 2; t + 1 <= k; ++t) {
        for (std::size_t y = 1; y <= r; ++y) {
            prefix_slot[t].push_back(s.temp_names.size());
            s.temp_names.push_back("S" + std::to_string(t) + "[" + std::to_string(y) + "]");
        }
    }
    auto prefix = [&](std::size_t t, std::size_t y) {
        if (t == 1) return BufferId::block(1, y);
        if (t == k) return BufferId::block(k + 1, y);
        return BufferId::temp(prefix_slot[t][y - 1]);
    };

    for (std::size_t y = 1; y <= r; ++y) {
        if (k == 1) {
            s.ops.push_back({BufferId::block(2, y), {BufferId::block(1, y)}});
            continue;
        }
        for (std::size_t t = 2; t <= k; ++t) {
            s.ops.push_back({prefix(t, y), {prefix(t - 1, y), BufferId::block(t, y)}});
        }
    }
    for (std::size_t x = 1; x <= r; ++x) {
        XorOp op{BufferId::block(k + 2, x), {}};
        for (const Term& term : q_row_terms(k, x - 1)) {
            op.sources.push_back(term.partial_sum ? prefix(term.level, term.row0 + 1)
                                                  : BufferId::block(term.level, term.row0 + 1));
        }
        s.ops.push_back(std::move(op));
    }
    return s;
}

XorSchedule build_repair_schedule(const MdrCode& code, std::size_t failed) {
    require_recursive(code, "build_repair_schedule");
    const std::size_t k = code.k();
    const std::size_t r = code.r();
    if (!code.is_basic(failed)) {
        throw Error(Errc::invalid_argument, "build_repair_schedule: only basic disks (1..k+1) have a repair schedule");
    }
    const std::size_t i = failed;
    const IndexSet& read_rows = code.strategy(i).basic_rows;
    const IndexSet& q_rows = code.strategy(i).q_rows;

    XorSchedule s;
    s.kind = ScheduleKind::repair;
    s.k = k;
    s.r = r;
    s.failed_disk = i;

    // prefix_t = d_1 + ... + d_t for t < i, suffix_m = d_m + ... + d_{k+1} for m > i,
    // kept per read row.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> prefix_slot;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> suffix_slot;
    auto left = [&](std::size_t m, std::size_t y) -> std::optional<BufferId> {
        if (m == 0) return std::nullopt;
        if (m == 1) return BufferId::block(1, y);
        return BufferId::temp(prefix_slot.at({m, y}));
    };
    auto right = [&](std::size_t m, std::size_t y) -> std::optional<BufferId> {
        if (m == k + 2) return std::nullopt;
        if (m == k + 1) return BufferId::block(k + 1, y);
        return BufferId::temp(suffix_slot.at({m, y}));
    };

    for (std::size_t y : read_rows) {
        for (std::size_t t = 2; t + 1 <= i; ++t) {
            prefix_slot[{t, y}] = s.temp_names.size();
            s.temp_names.push_back("S" + std::to_string(t) + "[" + std::to_string(y) + "]");
            s.ops.push_back({BufferId::temp(prefix_slot[{t, y}]), {*left(t - 1, y), BufferId::block(t, y)}});
        }
        for (std::size_t m = k; m >= i + 1; --m) {
            suffix_slot[{m, y}] = s.temp_names.size();
            s.temp_names.push_back("T" + std::to_string(m) + "[" + std::to_string(y) + "]");
            s.ops.push_back({BufferId::temp(suffix_slot[{m, y}]), {BufferId::block(m, y), *right(m + 1, y)}});
        }
        XorOp op{BufferId::block(i, y), {}};
        if (auto l = left(i - 1, y)) op.sources.push_back(*l);
        if (auto rt = right(i + 1, y)) op.sources.push_back(*rt);
        s.ops.push_back(std::move(op));
    }

    // d_1 + ... + d_t at a read row, from whichever partial sums were kept.
    auto partial = [&](std::size_t t, std::size_t y) {
        if (t == 1) return BufferId::block(1, y);
        if (t == k) return BufferId::block(k + 1, y);
        return t < i ? *left(t, y) : *right(t + 1, y);
    };

    for (std::size_t x : q_rows) {
        XorOp op{BufferId::block(k + 2, x), {BufferId::block(k + 2, x)}};
        std::optional<std::size_t> lost_row;
        for (const Term& term : q_row_terms(k, x - 1)) {
            const std::size_t y = term.row0 + 1;
            if (read_rows.contains(y)) {
                op.sources.push_back(term.partial_sum ? partial(term.level, y) : BufferId::block(term.level, y));
                continue;
            }
            // The single term on an unread row must be the failed disk itself.
            const bool is_failed = term.partial_sum ? (term.level == 1 && i == 1) || (term.level == k && i == k + 1)
                                                    : term.level == i;
            if (!is_failed || lost_row) {
                throw Error(Errc::precondition, "build_repair_schedule: Q row does not isolate one lost block");
            }
            lost_row = y;
        }
        if (!lost_row) throw Error(Errc::precondition, "build_repair_schedule: Q row involves no lost block");
        op.target = BufferId::block(i, *lost_row);
        s.ops.push_back(std::move(op));
    }
    return s;
}

bool is_acyclic(const XorSchedule& schedule) {
    std::set<BufferId> written;
    for (const auto& op : schedule.ops) {
        if (op.sources.empty()) return false;
        for (const auto& src : op.sources) {
            if (!src.is_block() && !written.contains(src)) return false;
            if (src == op.target) return false;
        }
        if (!op.target.is_block() && op.target.index >= schedule.temp_count()) return false;
        written.insert(op.target);
    }
    return true;
}

std::map<BlockRef, BitVector> evaluate_symbolic(const XorSchedule& schedule,
                                                const std::map<BlockRef, BitVector>& inputs) {
    std::map<BufferId, BitVector> values;
    std::map<BlockRef, BitVector> outputs;
    auto lookup = [&](const BufferId& id) -> const BitVector& {
        if (auto it = values.find(id); it != values.end()) return it->second;
        if (id.is_block()) {
            if (auto it = inputs.find(id.ref()); it != inputs.end()) return it->second;
        }
        throw Error(Errc::precondition, "evaluate_symbolic: " + schedule.describe(id) + " read before definition");
    };
    for (const auto& op : schedule.ops) {
        if (op.sources.empty()) throw Error(Errc::precondition, "evaluate_symbolic: operation without sources");
        BitVector acc = lookup(op.sources.front());
        for (std::size_t s = 1; s < op.sources.size(); ++s) acc ^= lookup(op.sources[s]);
        if (op.target.is_block()) outputs[op.target.ref()] = acc;
        values[op.target] = std::move(acc);
    }
    return outputs;
}

std::map<BlockRef, BitVector> data_symbol_expressions(const MdrCode& code) {
    const std::size_t k = code.k();
    const std::size_t r = code.r();
    const std::size_t n = k * r;
    std::map<BlockRef, BitVector> expr;
    for (std::size_t y = 1; y <= r; ++y) {
        BitVector parity(n);
        for (std::size_t j = 1; j <= k; ++j) {
            BitVector e = BitVector::unit(n, (j - 1) * r + (y - 1));
            parity ^= e;
            expr[{j, y}] = std::move(e);
        }
        expr[{k + 1, y}] = std::move(parity);
    }
    const auto a = generator_submatrices(code);
    for (std::size_t x = 1; x <= r; ++x) {
        BitVector q(n);
        for (std::size_t j = 1; j <= k; ++j) {
            for (std::size_t c = 1; c <= r; ++c) {
                if (a[j - 1].get(x - 1, c - 1)) q.set((j - 1) * r + (c - 1), true);
            }
        }
        expr[{k + 2, x}] = std::move(q);
    }
    return expr;
}

bool validate_schedule(const MdrCode& code, const XorSchedule& schedule) {
    if (schedule.k != code.k() || schedule.r != code.r() || !is_acyclic(schedule)) return false;
    const auto expr = data_symbol_expressions(code);

    std::map<BlockRef, BitVector> inputs;
    std::set<BlockRef> expected_outputs;
    if (schedule.kind == ScheduleKind::encode) {
        for (std::size_t j = 1; j <= code.k(); ++j) {
            for (std::size_t y = 1; y <= code.r(); ++y) inputs[{j, y}] = expr.at({j, y});
        }
        for (std::size_t y = 1; y <= code.r(); ++y) {
            expected_outputs.insert({code.p_disk(), y});
            expected_outputs.insert({code.q_disk(), y});
        }
    } else {
        const std::size_t i = schedule.failed_disk;
        if (!code.is_basic(i) || !code.has_strategies()) return false;
        const auto& st = code.strategy(i);
        for (std::size_t y : st.basic_rows) {
            for (std::size_t j = 1; j <= code.k() + 1; ++j) {
                if (j != i) inputs[{j, y}] = expr.at({j, y});
            }
        }
        for (std::size_t x : st.q_rows) inputs[{code.q_disk(), x}] = expr.at({code.q_disk(), x});
        for (std::size_t y = 1; y <= code.r(); ++y) expected_outputs.insert({i, y});
    }

    std::map<BlockRef, BitVector> outputs;
    try {
        outputs = evaluate_symbolic(schedule, inputs);
    } catch (const Error&) {
        return false;
    }
    if (outputs.size() != expected_outputs.size()) return false;
    for (const auto& ref : expected_outputs) {
        auto it = outputs.find(ref);
        if (it == outputs.end() || it->second != expr.at(ref)) return false;
    }
    return true;
}

std::size_t execute_schedule(const XorSchedule& schedule, Stripe& stripe) {
    if (stripe.k() != schedule.k || stripe.r() != schedule.r) {
        throw Error(Errc::dimension_mismatch, "execute_schedule: stripe shape does not match the schedule");
    }
    const std::size_t bs = stripe.block_size();
    std::vector<std::uint8_t> temps(schedule.temp_count() * bs);
    std::set<BlockRef> written;
    std::size_t xors = 0;

    auto source = [&](const BufferId& id) -> std::span<const std::uint8_t> {
        if (!id.is_block()) return {temps.data() + id.index * bs, bs};
        if (written.contains(id.ref())) return stripe.peek(id.index, id.row);
        return stripe.read(id.index, id.row);
    };
    for (const auto& op : schedule.ops) {
        std::span<std::uint8_t> dst =
            op.target.is_block() ? stripe.block(op.target.index, op.target.row)
                                 : std::span<std::uint8_t>(temps.data() + op.target.index * bs, bs);
        copy_block(dst, source(op.sources.front()));
        for (std::size_t s = 1; s < op.sources.size(); ++s) {
            xor_into(dst, source(op.sources[s]));
            ++xors;
        }
        if (op.target.is_block()) written.insert(op.target.ref());
    }
    for (const auto& b : written) stripe.set_present(b.disk, true);
    return xors;
}

}  // namespace mdr
