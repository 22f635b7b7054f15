// SPDX-License-Identifier: Apache-2.0

#include "mdr/recovery_sim.hpp"

#include <deque>
#include <ostream>
#include <queue>
#include <random>
#include <tuple>

#include "mdr/code.hpp"
#include "mdr/codec.hpp"
#include "mdr/error.hpp"

namespace mdr {

const char* to_string(RecoveryStrategy s) { return s == RecoveryStrategy::mdr ? "mdr" : "conventional"; }

namespace {

constexpr std::size_t kSimMaxK = 10;

void validate(const SimConfig& c, const DiskModel& m) {
    auto bad = [](const std::string& what) { throw Error(Errc::invalid_argument, "simulate: " + what); };
    if (c.k < 1 || c.k > kSimMaxK) bad("k must be in 1.." + std::to_string(kSimMaxK));
    if (c.block_size == 0) bad("block_size must be positive");
    if (c.stripe_count == 0) bad("stripe_count must be positive");
    if (c.failed_disk < 1 || c.failed_disk > c.k + 2) bad("failed_disk out of range");
    if (!(c.background_rate >= 0)) bad("background_rate must be non-negative");
    if (!(m.seek_time_ms > 0) || !(m.rotational_latency_ms > 0) || !(m.transfer_rate > 0) || m.sequential_window == 0) {
        bad("disk model parameters must be positive");
    }
}

struct Request {
    TraceEvent::Kind kind;
    std::size_t disk;
    std::size_t address;
    std::size_t stripe;
    double arrival;
    double start = 0;
};

struct Disk {
    std::deque<std::size_t> queue;
    bool busy = false;
    bool positioned = false;
    std::size_t head = 0;  // next sequential address
    double response_sum = 0;
    std::size_t served = 0;
};

enum class EventKind { done, background };

struct Event {
    double time;
    std::uint64_t seq;
    EventKind kind;
    std::size_t request;
    bool operator>(const Event& o) const { return std::tie(time, seq) > std::tie(o.time, o.seq); }
};

class Simulation {
public:
    Simulation(const SimConfig& c, const DiskModel& m)
        : cfg_(c), model_(m), code_(construct(c.k)), n_(c.k + 2), r_(code_.r()), disks_(n_ + 1), rng_(c.seed) {
        for (std::size_t role = 1; role <= n_; ++role) {
            plans_.push_back(c.strategy == RecoveryStrategy::mdr || role == code_.q_disk()
                                 ? repair_plan(code_, role)
                                 : conventional_repair_plan(code_, role));
            baseline_.push_back(code_.k() * r_);
        }
        transfer_ = static_cast<double>(c.block_size) / m.transfer_rate;
    }

    SimReport run() {
        SimReport rep;
        rep.k = cfg_.k;
        rep.r = r_;
        rep.strategy = cfg_.strategy;
        rep.blocks_read.assign(n_, 0);
        rep.model_note = "disks are independent FIFO servers; shared-bus contention is not modelled";
        report_ = &rep;

        issue_stripe(0, 0.0);
        if (cfg_.background_rate > 0) schedule_background(0.0);
        while (!events_.empty()) {
            const Event e = events_.top();
            events_.pop();
            if (e.kind == EventKind::background) {
                on_background(e.time);
            } else {
                on_done(e.request, e.time);
            }
        }

        double sum = 0;
        std::size_t count = 0;
        rep.access_time_ms.assign(n_, 0);
        for (std::size_t d = 1; d <= n_; ++d) {
            if (d == cfg_.failed_disk) continue;
            const Disk& disk = disks_[d];
            if (disk.served) rep.access_time_ms[d - 1] = disk.response_sum / static_cast<double>(disk.served);
            sum += disk.response_sum;
            count += disk.served;
        }
        rep.mean_access_time_ms = count ? sum / static_cast<double>(count) : 0;
        rep.recovery_time_ms = finish_time_;
        for (std::size_t b : rep.blocks_read) rep.total_blocks_read += b;
        rep.read_ratio = static_cast<double>(rep.total_blocks_read) / static_cast<double>(rep.conventional_blocks_read);
        return rep;
    }

private:
    // Logical role of physical disk `phys` in stripe s, and the inverse.
    std::size_t role_of(std::size_t phys, std::size_t s) const {
        if (!cfg_.rotate_layout) return phys;
        return (phys - 1 + n_ - s % n_) % n_ + 1;
    }
    std::size_t phys_of(std::size_t role, std::size_t s) const {
        if (!cfg_.rotate_layout) return role;
        return (role - 1 + s) % n_ + 1;
    }

    void push(double time, EventKind kind, std::size_t request) { events_.push({time, seq_++, kind, request}); }

    void submit(Request req) {
        requests_.push_back(req);
        const std::size_t id = requests_.size() - 1;
        Disk& disk = disks_[req.disk];
        disk.queue.push_back(id);
        if (!disk.busy) start_next(req.disk, req.arrival);
    }

    void start_next(std::size_t d, double now) {
        Disk& disk = disks_[d];
        if (disk.queue.empty()) {
            disk.busy = false;
            return;
        }
        const std::size_t id = disk.queue.front();
        disk.queue.pop_front();
        Request& req = requests_[id];
        req.start = now;
        double service = transfer_;
        const bool sequential = disk.positioned && req.address >= disk.head &&
                                req.address - disk.head <= model_.sequential_window;
        if (!sequential) service += model_.seek_time_ms + model_.rotational_latency_ms;
        disk.head = req.address + 1;
        disk.positioned = true;
        disk.busy = true;
        push(now + service, EventKind::done, id);
    }

    void issue_stripe(std::size_t s, double now) {
        const std::size_t role = role_of(cfg_.failed_disk, s);
        const RepairPlan& plan = plans_[role - 1];
        report_->conventional_blocks_read += baseline_[role - 1];
        pending_reads_ = plan.reads.size();
        for (const BlockRef& b : plan.reads) {
            const std::size_t phys = phys_of(b.disk, s);
            ++report_->blocks_read[phys - 1];
            submit({TraceEvent::Kind::read, phys, s * r_ + b.row - 1, s, now});
        }
    }

    void on_done(std::size_t id, double now) {
        const Request req = requests_[id];
        Disk& disk = disks_[req.disk];
        if (req.disk != cfg_.failed_disk) {
            disk.response_sum += now - req.arrival;
            ++disk.served;
        }
        if (cfg_.record_trace) {
            report_->trace.push_back({req.kind, req.disk, req.address, req.arrival, req.start, now});
        }
        start_next(req.disk, now);

        if (req.kind == TraceEvent::Kind::read && --pending_reads_ == 0) {
            for (std::size_t y = 0; y < r_; ++y) {
                submit({TraceEvent::Kind::write, cfg_.failed_disk, req.stripe * r_ + y, req.stripe, now});
            }
            pending_writes_ += r_;
            if (req.stripe + 1 < cfg_.stripe_count) {
                issue_stripe(req.stripe + 1, now);
            } else {
                reads_finished_ = true;
            }
        } else if (req.kind == TraceEvent::Kind::write && --pending_writes_ == 0 && reads_finished_) {
            finish_time_ = now;
            done_ = true;
        }
    }

    void schedule_background(double now) {
        std::exponential_distribution<double> gap(cfg_.background_rate / 1000.0);
        push(now + gap(rng_), EventKind::background, 0);
    }

    void on_background(double now) {
        if (done_) return;
        std::uniform_int_distribution<std::size_t> pick(1, n_ - 1);
        std::size_t d = pick(rng_);
        if (d >= cfg_.failed_disk) ++d;
        std::uniform_int_distribution<std::size_t> addr(0, cfg_.stripe_count * r_ - 1);
        submit({TraceEvent::Kind::background, d, addr(rng_), 0, now});
        ++report_->background_requests;
        schedule_background(now);
    }

    SimConfig cfg_;
    DiskModel model_;
    MdrCode code_;
    std::size_t n_;
    std::size_t r_;
    std::vector<RepairPlan> plans_;    // by logical role
    std::vector<std::size_t> baseline_;  // conventional reads by logical role (always kr)
    std::vector<Disk> disks_;          // 1-based
    std::vector<Request> requests_;
    std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
    std::uint64_t seq_ = 0;
    std::mt19937_64 rng_;
    double transfer_ = 0;
    std::size_t pending_reads_ = 0;
    std::size_t pending_writes_ = 0;
    bool reads_finished_ = false;
    bool done_ = false;
    double finish_time_ = 0;
    SimReport* report_ = nullptr;
};

}  // namespace

SimReport simulate(const SimConfig& config, const DiskModel& model) {
    validate(config, model);
    return Simulation(config, model).run();
}

SimComparison compare(const SimConfig& baseline, const SimConfig& candidate, const DiskModel& model) {
    auto key = [](const SimConfig& c) {
        return std::tie(c.k, c.block_size, c.stripe_count, c.failed_disk, c.background_rate, c.seed, c.rotate_layout);
    };
    if (key(baseline) != key(candidate)) {
        throw Error(Errc::invalid_argument, "compare: configurations may differ only in strategy");
    }
    SimComparison out;
    out.baseline = simulate(baseline, model);
    out.candidate = simulate(candidate, model);
    auto ratio = [](double a, double b) { return b == 0 ? 1.0 : a / b; };
    out.read_ratio = ratio(static_cast<double>(out.candidate.total_blocks_read),
                           static_cast<double>(out.baseline.total_blocks_read));
    out.access_time_ratio = ratio(out.candidate.mean_access_time_ms, out.baseline.mean_access_time_ms);
    out.recovery_time_ratio = ratio(out.candidate.recovery_time_ms, out.baseline.recovery_time_ms);
    return out;
}

void write_trace_csv(std::ostream& out, const SimReport& report) {
    out << "kind,disk,address,arrival_ms,start_ms,finish_ms\n";
    for (const auto& e : report.trace) {
        const char* kind = e.kind == TraceEvent::Kind::read    ? "read"
                           : e.kind == TraceEvent::Kind::write ? "write"
                                                               : "background";
        out << kind << ',' << e.disk << ',' << e.address << ',' << e.arrival_ms << ',' << e.start_ms << ','
            << e.finish_ms << '\n';
    }
}

nlohmann::json to_json(const SimReport& report) {
    return {{"note", report.model_note},
            {"k", report.k},
            {"r", report.r},
            {"strategy", to_string(report.strategy)},
            {"recovery_time_ms", report.recovery_time_ms},
            {"mean_access_time_ms", report.mean_access_time_ms},
            {"access_time_ms", report.access_time_ms},
            {"blocks_read", report.blocks_read},
            {"total_blocks_read", report.total_blocks_read},
            {"conventional_blocks_read", report.conventional_blocks_read},
            {"read_ratio", report.read_ratio},
            {"background_requests", report.background_requests}};
}

nlohmann::json to_json(const SimComparison& c) {
    return {{"baseline", to_json(c.baseline)},
            {"candidate", to_json(c.candidate)},
            {"read_ratio", c.read_ratio},
            {"access_time_ratio", c.access_time_ratio},
            {"recovery_time_ratio", c.recovery_time_ratio}};
}

}  // namespace mdr
