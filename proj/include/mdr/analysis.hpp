// SPDX-License-Identifier: Apache-2.0
//
// Exhaustive oracles and analytic metrics over MDR-form codes: minimum repair
// I/O by enumerating every combining matrix X, lower-bound checks on repair
// plans, update I/O, XOR accounting and the strip-size search.

#ifndef MDR_ANALYSIS_HPP
#define MDR_ANALYSIS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "mdr/bit_matrix.hpp"
#include "mdr/code.hpp"
#include "mdr/codec.hpp"
#include "mdr/schedule.hpp"

namespace mdr {

using Rational = boost::rational<std::int64_t>;

/// Largest r the oracle accepts without `allow_large` (2^16 candidates).
inline constexpr std::size_t kOracleMaxR = 4;
/// Hard ceiling even with `allow_large`: 2^36 candidates.
inline constexpr std::size_t kOracleHardMaxR = 6;

struct IoReport {
    std::size_t disk = 0;
    std::vector<std::size_t> per_disk_reads;  // index disk-1; the failed disk reads 0
    std::size_t total_reads = 0;
    BitMatrix witness;                        // smallest X (in enumeration order) attaining the minimum
    std::uint64_t search_space = 0;           // 2^(r*r)
};

/// Minimum blocks read to rebuild `disk`, minimised over every r x r binary X.
/// Column counts are taken over [I+XA'_1 .. I+XA'_k  X] for basic disks (A'
/// being the generator blocks after treating `disk` as row parity) and over
/// [X+A_1 .. X+A_k  X] for Q. Throws Errc::precondition for r > kOracleMaxR
/// unless allow_large is set.
IoReport min_io_bruteforce(const MdrCode& code, std::size_t disk, bool allow_large = false);
/// Single-threaded reference for min_io_bruteforce; identical results.
IoReport min_io_bruteforce_serial(const MdrCode& code, std::size_t disk, bool allow_large = false);

/// Number of all-zero columns.
std::size_t zero_column_count(const BitMatrix& a);

/// Basic disk: (k+1)r/2 reads in total, r/2 from every surviving disk and the
/// same rows from every surviving basic disk. Q disk: kr reads.
bool plan_meets_bound(const MdrCode& code, const RepairPlan& plan);
/// plan_meets_bound for repair_plan(code, i), every disk i.
bool check_lower_bounds(const MdrCode& code);

/// 1 + (ones in [A_1 .. A_k]) / (kr).
Rational update_io(const MdrCode& code);

struct XorReport {
    ScheduleKind kind = ScheduleKind::encode;
    std::size_t p_total = 0;       // encode: XORs spent on P and its prefix temporaries
    std::size_t q_total = 0;       // encode: XORs spent on Q
    std::size_t repair_total = 0;  // repair: all XORs
    Rational p_per_block;
    Rational q_per_block;
    Rational repair_per_block;     // per rebuilt block
};

/// Throws Errc::precondition unless validate_schedule(code, schedule) holds.
XorReport count_schedule_xors(const XorSchedule& schedule, const MdrCode& code);

struct SearchResult {
    std::size_t k = 0;
    std::size_t r = 0;
    std::vector<MdrCode> codes;  // enumeration order, with the first valid strategy per disk
    bool exhausted = false;
    std::uint64_t candidates = 0;  // complete B-tuples examined (after MDS pruning)
};

/// Largest r the search accepts (B-matrices are indexed by r*r-bit integers).
inline constexpr std::size_t kSearchMaxR = 4;

/// log2 of the unpruned space: (k+1) r^2 + 2(k+1) log2 C(r, r/2).
double search_space_log2(std::size_t k, std::size_t r);

/// Enumerates (B_1 .. B_{k+1}) in increasing order of their r*r-bit encodings
/// (row-major, column 1 least significant), prunes tuples whose pairwise sums
/// are singular, and keeps those with a repair strategy for every basic disk.
/// Stops after `limit` complete tuples; `exhausted` tells whether the whole
/// space was covered.
SearchResult search_repair_optimal(std::size_t k, std::size_t r, std::uint64_t limit);
SearchResult search_repair_optimal_serial(std::size_t k, std::size_t r, std::uint64_t limit);

nlohmann::json to_json(const IoReport& report);
nlohmann::json to_json(const XorReport& report);
nlohmann::json to_json(const SearchResult& result);
/// {"num": n, "den": d}
nlohmann::json to_json(const Rational& value);

}  // namespace mdr

#endif
