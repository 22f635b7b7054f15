// SPDX-License-Identifier: Apache-2.0
//
// Discrete-event rebuild simulator. One failed disk is rebuilt stripe by
// stripe onto a replacement disk: all reads of stripe t are queued together,
// the rebuilt strip is written once they complete, and the reads of stripe
// t+1 start at the same moment, so writes overlap the next stripe's reads.
// Disks serve their own FIFO queues independently; there is no shared bus.

#ifndef MDR_RECOVERY_SIM_HPP
#define MDR_RECOVERY_SIM_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace mdr {

/// A request within `sequential_window` blocks ahead of the head costs only
/// its transfer; anything else pays seek + rotational latency + transfer.
struct DiskModel {
    double seek_time_ms = 4.0;
    double rotational_latency_ms = 2.0;
    double transfer_rate = 100'000.0;  // bytes per ms
    std::size_t sequential_window = 4096;  // blocks; at least r for every supported k
};

enum class RecoveryStrategy { conventional, mdr };

struct SimConfig {
    std::size_t k = 3;  // r = 2^k
    std::size_t block_size = 512;
    std::size_t stripe_count = 64;
    RecoveryStrategy strategy = RecoveryStrategy::mdr;
    std::size_t failed_disk = 1;    // physical disk, 1..k+2
    double background_rate = 0.0;  // single-block reads per second; 0 = offline
    std::uint64_t seed = 1;
    bool rotate_layout = false;     // logical roles shift by one disk per stripe
    bool record_trace = false;
};

struct TraceEvent {
    enum class Kind { read, write, background };
    Kind kind = Kind::read;
    std::size_t disk = 0;
    std::size_t address = 0;  // block offset on the disk
    double arrival_ms = 0;
    double start_ms = 0;
    double finish_ms = 0;
};

struct SimReport {
    std::size_t k = 0;
    std::size_t r = 0;
    RecoveryStrategy strategy = RecoveryStrategy::mdr;
    double recovery_time_ms = 0;
    /// Mean response time (queueing + service) of every request served by a
    /// surviving disk; 0 for a disk that served none.
    std::vector<double> access_time_ms;  // index disk-1; the failed disk is 0
    double mean_access_time_ms = 0;      // over all requests on surviving disks
    std::vector<std::size_t> blocks_read;  // rebuild reads only, index disk-1
    std::size_t total_blocks_read = 0;
    std::size_t conventional_blocks_read = 0;  // same stripes under the conventional plans
    double read_ratio = 1.0;  // total_blocks_read / conventional_blocks_read
    std::size_t background_requests = 0;
    std::string model_note;
    std::vector<TraceEvent> trace;
};

struct SimComparison {
    SimReport baseline;
    SimReport candidate;
    double read_ratio = 1.0;         // candidate / baseline blocks read
    double access_time_ratio = 1.0;  // candidate / baseline mean access time
    double recovery_time_ratio = 1.0;
};

/// Throws Errc::invalid_argument for a non-positive model or invalid config.
SimReport simulate(const SimConfig& config, const DiskModel& model = {});

/// Runs both configs; they may differ only in strategy.
SimComparison compare(const SimConfig& baseline, const SimConfig& candidate, const DiskModel& model = {});

/// kind,disk,address,arrival_ms,start_ms,finish_ms
void write_trace_csv(std::ostream& out, const SimReport& report);

nlohmann::json to_json(const SimReport& report);
nlohmann::json to_json(const SimComparison& comparison);

const char* to_string(RecoveryStrategy s);

}  // namespace mdr

#endif
