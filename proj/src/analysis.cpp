// SPDX-License-Identifier: Apache-2.0

#include "mdr/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "mdr/error.hpp"
#include "mdr/parallel.hpp"

namespace mdr {

namespace {

using Row = std::uint64_t;

// Row-mask form of an r x r matrix: bit c of rows[t] is entry (t, c).
std::vector<Row> row_masks(const BitMatrix& m) {
    std::vector<Row> rows(m.rows(), 0);
    for (std::size_t t = 0; t < m.rows(); ++t) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m.get(t, c)) rows[t] |= Row{1} << c;
        }
    }
    return rows;
}

// The oracle's matrix form for one failed disk.
struct OracleForm {
    bool q_form = false;                 // [X+M_1 .. X+M_k X] instead of [I+XM_1 .. I+XM_k X]
    std::vector<std::vector<Row>> m;     // M_1 .. M_k as row masks
    std::vector<std::vector<Row>> table; // table[j][s] = XOR of rows of M_j selected by s
    std::vector<std::size_t> disk_of;    // disk for block j; the trailing X block maps to disk_of[k]
};

OracleForm make_form(const MdrCode& code, std::size_t disk) {
    const std::size_t k = code.k();
    const std::size_t r = code.r();
    const auto a = generator_submatrices(code);
    OracleForm f;
    if (disk == code.q_disk()) {
        f.q_form = true;
        for (std::size_t j = 1; j <= k; ++j) {
            f.m.push_back(row_masks(a[j - 1]));
            f.disk_of.push_back(j);
        }
        f.disk_of.push_back(code.p_disk());
    } else if (disk == code.p_disk()) {
        for (std::size_t j = 1; j <= k; ++j) {
            f.m.push_back(row_masks(a[j - 1]));
            f.disk_of.push_back(j);
        }
        f.disk_of.push_back(code.q_disk());
    } else {
        // d_i = d_P + sum_{j != i} d_j substituted into the Q relation.
        for (std::size_t j = 1; j <= k; ++j) {
            if (j == disk) continue;
            f.m.push_back(row_masks(a[j - 1] + a[disk - 1]));
            f.disk_of.push_back(j);
        }
        f.m.push_back(row_masks(a[disk - 1]));
        f.disk_of.push_back(code.p_disk());
        f.disk_of.push_back(code.q_disk());
    }
    if (!f.q_form) {
        const std::size_t n = std::size_t{1} << r;
        for (const auto& mj : f.m) {
            std::vector<Row> t(n, 0);
            for (std::size_t s = 1; s < n; ++s) {
                const auto low = static_cast<std::size_t>(std::countr_zero(s));
                t[s] = t[s & (s - 1)] ^ mj[low];
            }
            f.table.push_back(std::move(t));
        }
    }
    return f;
}

// Nonzero-column count of every block for candidate x; returns the total.
std::size_t evaluate(const OracleForm& f, std::size_t r, std::uint64_t x, std::size_t* per_block) {
    const Row mask = (Row{1} << r) - 1;
    Row xrows[64];
    Row x_or = 0;
    for (std::size_t t = 0; t < r; ++t) {
        xrows[t] = (x >> (t * r)) & mask;
        x_or |= xrows[t];
    }
    std::size_t total = 0;
    for (std::size_t j = 0; j < f.m.size(); ++j) {
        Row cols = 0;
        for (std::size_t t = 0; t < r; ++t) {
            cols |= f.q_form ? (xrows[t] ^ f.m[j][t]) : (f.table[j][xrows[t]] ^ (Row{1} << t));
        }
        const auto n = static_cast<std::size_t>(std::popcount(cols));
        if (per_block) per_block[j] = n;
        total += n;
    }
    const auto n = static_cast<std::size_t>(std::popcount(x_or));
    if (per_block) per_block[f.m.size()] = n;
    return total + n;
}

void check_oracle_args(const MdrCode& code, std::size_t disk, bool allow_large) {
    if (disk < 1 || disk > code.disk_count()) throw Error(Errc::out_of_range, "min_io_bruteforce: invalid disk index");
    if (code.r() > kOracleHardMaxR) {
        throw Error(Errc::precondition, "min_io_bruteforce: r = " + std::to_string(code.r()) + " exceeds the hard limit");
    }
    if (code.r() > kOracleMaxR && !allow_large) {
        throw Error(Errc::precondition, "min_io_bruteforce: r = " + std::to_string(code.r()) +
                                            " needs 2^" + std::to_string(code.r() * code.r()) +
                                            " candidates; pass allow_large to proceed");
    }
}

BitMatrix matrix_from_bits(std::uint64_t bits, std::size_t r) {
    BitMatrix m(r, r);
    for (std::size_t t = 0; t < r; ++t) {
        for (std::size_t c = 0; c < r; ++c) {
            if ((bits >> (t * r + c)) & 1u) m.set(t, c, true);
        }
    }
    return m;
}

IoReport finish(const MdrCode& code, std::size_t disk, const OracleForm& f, std::uint64_t best_x) {
    const std::size_t r = code.r();
    IoReport rep;
    rep.disk = disk;
    rep.search_space = std::uint64_t{1} << (r * r);
    rep.per_disk_reads.assign(code.disk_count(), 0);
    std::vector<std::size_t> per_block(f.m.size() + 1);
    rep.total_reads = evaluate(f, r, best_x, per_block.data());
    for (std::size_t j = 0; j < per_block.size(); ++j) rep.per_disk_reads[f.disk_of[j] - 1] = per_block[j];
    rep.witness = matrix_from_bits(best_x, r);
    return rep;
}

struct Best {
    std::size_t total = std::numeric_limits<std::size_t>::max();
    std::uint64_t x = 0;
    void offer(std::size_t t, std::uint64_t cand) {
        if (t < total || (t == total && cand < x)) {
            total = t;
            x = cand;
        }
    }
};

}  // namespace

IoReport min_io_bruteforce_serial(const MdrCode& code, std::size_t disk, bool allow_large) {
    check_oracle_args(code, disk, allow_large);
    const std::size_t r = code.r();
    const OracleForm f = make_form(code, disk);
    const std::uint64_t space = std::uint64_t{1} << (r * r);
    Best best;
    for (std::uint64_t x = 0; x < space; ++x) best.offer(evaluate(f, r, x, nullptr), x);
    return finish(code, disk, f, best.x);
}

IoReport min_io_bruteforce(const MdrCode& code, std::size_t disk, bool allow_large) {
    check_oracle_args(code, disk, allow_large);
    const std::size_t r = code.r();
    const OracleForm f = make_form(code, disk);
    const auto space = static_cast<std::int64_t>(std::uint64_t{1} << (r * r));
    Best best;
#pragma omp parallel
    {
        Best local;
#pragma omp for schedule(static) nowait
        for (std::int64_t x = 0; x < space; ++x) {
            local.offer(evaluate(f, r, static_cast<std::uint64_t>(x), nullptr), static_cast<std::uint64_t>(x));
        }
#pragma omp critical(mdr_oracle_merge)
        best.offer(local.total, local.x);
    }
    return finish(code, disk, f, best.x);
}

std::size_t zero_column_count(const BitMatrix& a) { return a.cols() - count_nonzero_columns(a); }

bool plan_meets_bound(const MdrCode& code, const RepairPlan& plan) {
    const std::size_t k = code.k();
    const std::size_t r = code.r();
    const std::size_t i = plan.failed_disk;
    if (i < 1 || i > code.disk_count()) return false;
    if (plan.reads_from(i) != 0) return false;
    if (i == code.q_disk()) return plan.reads.size() == k * r;

    if (plan.reads.size() != (k + 1) * r / 2) return false;
    std::vector<std::size_t> rows;
    for (std::size_t j = 1; j <= code.disk_count(); ++j) {
        if (j == i) continue;
        if (plan.reads_from(j) != r / 2) return false;
        if (!code.is_basic(j)) continue;
        const auto these = plan.rows_read_from(j);
        if (rows.empty()) {
            rows = these;
        } else if (these != rows) {
            return false;
        }
    }
    return true;
}

bool check_lower_bounds(const MdrCode& code) {
    for (std::size_t i = 1; i <= code.disk_count(); ++i) {
        if (!plan_meets_bound(code, repair_plan(code, i))) return false;
    }
    return true;
}

Rational update_io(const MdrCode& code) {
    std::int64_t ones = 0;
    for (const auto& a : generator_submatrices(code)) ones += static_cast<std::int64_t>(a.popcount());
    return Rational(1) + Rational(ones, static_cast<std::int64_t>(code.k() * code.r()));
}

XorReport count_schedule_xors(const XorSchedule& schedule, const MdrCode& code) {
    if (!validate_schedule(code, schedule)) {
        throw Error(Errc::precondition, "count_schedule_xors: schedule does not validate against the code");
    }
    XorReport rep;
    rep.kind = schedule.kind;
    const auto r = static_cast<std::int64_t>(code.r());
    for (const auto& op : schedule.ops) {
        const std::size_t n = op.sources.size() - 1;
        if (schedule.kind == ScheduleKind::repair) {
            rep.repair_total += n;
        } else if (op.target.is_block() && op.target.index == code.q_disk()) {
            rep.q_total += n;
        } else {
            rep.p_total += n;
        }
    }
    rep.p_per_block = Rational(static_cast<std::int64_t>(rep.p_total), r);
    rep.q_per_block = Rational(static_cast<std::int64_t>(rep.q_total), r);
    rep.repair_per_block = Rational(static_cast<std::int64_t>(rep.repair_total), r);
    return rep;
}

// Strip-size search ---------------------------------------------------------

namespace {

using Small = std::uint32_t;

struct SearchSpace {
    std::size_t k;
    std::size_t r;
    Small count;                       // 2^(r*r)
    std::vector<bool> nonsingular;     // by encoding
    std::vector<Small> subsets;        // r/2-subsets of rows/cols in lexicographic order, as masks
};

Small row_of(Small m, std::size_t r, std::size_t t) { return (m >> (t * r)) & ((Small{1} << r) - 1); }

std::size_t rank_of(std::vector<Small> rows) {
    std::size_t rank = 0;
    for (std::size_t bit = 0; bit < 32 && rank < rows.size(); ++bit) {
        const Small b = Small{1} << bit;
        auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                               [b](Small v) { return v & b; });
        if (it == rows.end()) continue;
        std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(rank), it);
        for (std::size_t t = 0; t < rows.size(); ++t) {
            if (t != rank && (rows[t] & b)) rows[t] ^= rows[rank];
        }
        ++rank;
    }
    return rank;
}

void gen_subsets(std::size_t r, std::size_t need, std::size_t from, Small acc, std::vector<Small>& out) {
    if (need == 0) {
        out.push_back(acc);
        return;
    }
    for (std::size_t v = from; v + need <= r; ++v) gen_subsets(r, need - 1, v + 1, acc | (Small{1} << v), out);
}

SearchSpace make_space(std::size_t k, std::size_t r) {
    if (k < 1) throw Error(Errc::invalid_argument, "search_repair_optimal: k must be at least 1");
    if (r < 2 || r % 2 != 0) throw Error(Errc::invalid_argument, "search_repair_optimal: r must be even and positive");
    if (r > kSearchMaxR) throw Error(Errc::precondition, "search_repair_optimal: r too large to enumerate");
    SearchSpace s{k, r, Small{1} << (r * r), {}, {}};
    s.nonsingular.resize(s.count);
    for (Small m = 0; m < s.count; ++m) {
        std::vector<Small> rows(r);
        for (std::size_t t = 0; t < r; ++t) rows[t] = row_of(m, r, t);
        s.nonsingular[m] = rank_of(rows) == r;
    }
    gen_subsets(r, r / 2, 0, 0, s.subsets);
    return s;
}

// Columns of `row` selected by `cols`, packed to the low bits.
Small compress(Small row, Small cols) {
    Small out = 0;
    std::size_t pos = 0;
    for (std::size_t c = 0; c < 32 && (cols >> c); ++c) {
        if ((cols >> c) & 1u) {
            if ((row >> c) & 1u) out |= Small{1} << pos;
            ++pos;
        }
    }
    return out;
}

bool first_strategy(const SearchSpace& s, const std::vector<Small>& b, std::size_t i, RepairStrategy& out) {
    const std::size_t r = s.r;
    const Small all = (Small{1} << r) - 1;
    for (Small rows : s.subsets) {
        for (Small cols : s.subsets) {
            const Small off = all & ~cols;
            bool ok = true;
            std::vector<Small> sub;
            for (std::size_t t = 0; t < r && ok; ++t) {
                if (!((rows >> t) & 1u)) continue;
                for (std::size_t j = 0; j < b.size() && ok; ++j) {
                    if (j != i && (row_of(b[j], r, t) & off)) ok = false;
                }
                sub.push_back(compress(row_of(b[i], r, t), off));
            }
            if (!ok || rank_of(sub) != r / 2) continue;
            std::vector<std::size_t> rv;
            std::vector<std::size_t> cv;
            for (std::size_t t = 0; t < r; ++t) {
                if ((rows >> t) & 1u) rv.push_back(t + 1);
                if ((cols >> t) & 1u) cv.push_back(t + 1);
            }
            out = {IndexSet(r, rv), IndexSet(r, cv)};
            return true;
        }
    }
    return false;
}

struct Found {
    std::uint64_t leaf;
    MdrCode code;
};

struct Subtree {
    std::uint64_t leaves = 0;
    bool complete = true;
    std::vector<Found> found;
};

Subtree search_subtree(const SearchSpace& s, Small b0, std::uint64_t limit) {
    Subtree out;
    const std::size_t n = s.k + 1;
    std::vector<Small> b(n, 0);
    b[0] = b0;

    auto leaf = [&] {
        std::vector<RepairStrategy> strategies(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!first_strategy(s, b, i, strategies[i])) return;
        }
        std::vector<BitMatrix> mats;
        for (Small m : b) mats.push_back(matrix_from_bits(m, s.r));
        out.found.push_back({out.leaves, MdrCode(s.k, std::move(mats), std::move(strategies))});
    };

    // Iterative depth-first walk over positions 1..n-1.
    auto compatible = [&](std::size_t pos, Small v) {
        for (std::size_t j = 0; j < pos; ++j) {
            if (!s.nonsingular[v ^ b[j]]) return false;
        }
        return true;
    };
    if (n == 1) {
        leaf();
        out.leaves = 1;
        return out;
    }
    std::vector<std::uint64_t> next(n, 0);
    std::size_t pos = 1;
    next[1] = 0;
    while (true) {
        if (next[pos] >= s.count) {
            if (pos == 1) break;
            --pos;
            continue;
        }
        const auto v = static_cast<Small>(next[pos]++);
        if (!compatible(pos, v)) continue;
        b[pos] = v;
        if (pos + 1 == n) {
            if (out.leaves == limit) {
                out.complete = false;
                return out;
            }
            leaf();
            ++out.leaves;
        } else {
            ++pos;
            next[pos] = 0;
        }
    }
    return out;
}

SearchResult run_search(std::size_t k, std::size_t r, std::uint64_t limit, bool parallel) {
    const SearchSpace s = make_space(k, r);
    SearchResult res;
    res.k = k;
    res.r = r;
    res.exhausted = true;

    const std::size_t chunk = parallel ? static_cast<std::size_t>(worker_count()) * 4 : 1;
    for (Small start = 0; start < s.count; start += static_cast<Small>(chunk)) {
        const Small end = std::min<Small>(s.count, start + static_cast<Small>(chunk));
        const std::uint64_t remaining = limit - res.candidates;
        std::vector<Subtree> parts(end - start);
        FirstError failure;
        const auto n = static_cast<std::ptrdiff_t>(parts.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
        for (std::ptrdiff_t p = 0; p < n; ++p) {
            failure.run([&] {
                parts[static_cast<std::size_t>(p)] = search_subtree(s, start + static_cast<Small>(p), remaining);
            });
        }
        failure.rethrow();
        for (auto& part : parts) {
            const std::uint64_t room = limit - res.candidates;
            for (auto& f : part.found) {
                if (f.leaf < room) res.codes.push_back(std::move(f.code));
            }
            if (!part.complete || part.leaves > room) {
                res.candidates = limit;
                res.exhausted = false;
                return res;
            }
            res.candidates += part.leaves;
        }
    }
    return res;
}

}  // namespace

double search_space_log2(std::size_t k, std::size_t r) {
    double c = 0;
    for (std::size_t v = 1; v <= r / 2; ++v) c += std::log2(static_cast<double>(r / 2 + v) / static_cast<double>(v));
    return static_cast<double>((k + 1) * r * r) + 2.0 * static_cast<double>(k + 1) * c;
}

SearchResult search_repair_optimal(std::size_t k, std::size_t r, std::uint64_t limit) {
    return run_search(k, r, limit, true);
}

SearchResult search_repair_optimal_serial(std::size_t k, std::size_t r, std::uint64_t limit) {
    return run_search(k, r, limit, false);
}

nlohmann::json to_json(const Rational& value) {
    return {{"num", value.numerator()}, {"den", value.denominator()}};
}

nlohmann::json to_json(const IoReport& report) {
    return {{"disk", report.disk},
            {"per_disk_reads", report.per_disk_reads},
            {"total_reads", report.total_reads},
            {"witness", report.witness.to_strings()},
            {"search_space", report.search_space}};
}

nlohmann::json to_json(const XorReport& report) {
    nlohmann::json j;
    if (report.kind == ScheduleKind::encode) {
        j["kind"] = "encode";
        j["p_total"] = report.p_total;
        j["q_total"] = report.q_total;
        j["p_per_block"] = to_json(report.p_per_block);
        j["q_per_block"] = to_json(report.q_per_block);
    } else {
        j["kind"] = "repair";
        j["repair_total"] = report.repair_total;
        j["repair_per_block"] = to_json(report.repair_per_block);
    }
    return j;
}

nlohmann::json to_json(const SearchResult& result) {
    nlohmann::json codes = nlohmann::json::array();
    for (const auto& c : result.codes) {
        nlohmann::json b = nlohmann::json::array();
        for (const auto& m : c.b_matrices()) b.push_back(m.to_strings());
        codes.push_back(b);
    }
    return {{"k", result.k},
            {"r", result.r},
            {"found", result.codes.size()},
            {"exhausted", result.exhausted},
            {"candidates", result.candidates},
            {"b_matrices", codes}};
}

}  // namespace mdr
