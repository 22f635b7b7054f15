// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "mdr/analysis.hpp"
#include "mdr/code.hpp"
#include "mdr/code_io.hpp"
#include "mdr/codec.hpp"
#include "mdr/error.hpp"
#include "mdr/parallel.hpp"
#include "mdr/recovery_sim.hpp"
#include "mdr/schedule.hpp"
#include "shard.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace mdr::cli {

namespace {

constexpr std::size_t kBatchStripes = 64;

struct Common {
    std::string code_file;
    std::size_t k = 3;
    std::size_t block_size = kDefaultBlockSize;
    std::uint64_t seed = 1;
    bool meter = false;
    bool as_json = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--code", c.code_file, "Code description document (JSON)");
    cmd->add_option("--k", c.k, "Number of data disks; the code is construct(k)");
    cmd->add_option("--block-size", c.block_size, "Block size in bytes")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed, "Random seed");
    cmd->add_flag("--meter", c.meter, "Report per-shard byte counts");
    cmd->add_flag("--json", c.as_json, "Emit JSON instead of text");
}

MdrCode code_for(const Common& c) {
    if (!c.code_file.empty()) return load_code(c.code_file);
    if (c.k < 1 || c.k > kMaxConstructK) {
        throw Error(Errc::invalid_argument, "k must be in 1.." + std::to_string(kMaxConstructK));
    }
    return construct(c.k);
}

// Code for existing shards: --code if given (must match), else construct(k).
MdrCode code_for_shards(const Common& c, const ShardHeader& h) {
    if (h.k > kMaxConstructK) throw Error(Errc::invalid_argument, "shards use k beyond the supported range");
    MdrCode code = c.code_file.empty() ? construct(h.k) : load_code(c.code_file);
    if (code.k() != h.k || code.r() != h.r) throw Error(Errc::invalid_argument, "code does not match the shard headers");
    return code;
}

std::string rational_text(const Rational& q) {
    return q.denominator() == 1 ? std::to_string(q.numerator())
                                : std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

// Present shard headers by disk, checked against each other and their names.
struct ShardSet {
    std::vector<std::optional<ShardHeader>> headers;  // index disk-1
    ShardHeader reference;
    std::vector<std::size_t> missing;
};

ShardSet scan_shards(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw Error(Errc::io, dir.string() + " is not a directory");
    std::optional<ShardHeader> ref;
    for (std::size_t d = 1; d <= 64 && !ref; ++d) ref = read_shard_header(shard_path(dir, d));
    if (!ref) throw Error(Errc::unrecoverable, "no shards found in " + dir.string());

    ShardSet set;
    set.reference = *ref;
    const std::size_t n = ref->k + 2;
    set.headers.resize(n);
    for (std::size_t d = 1; d <= n; ++d) {
        auto h = read_shard_header(shard_path(dir, d));
        if (!h) {
            set.missing.push_back(d);
            continue;
        }
        if (h->disk_index != d) throw Error(Errc::integrity, shard_path(dir, d).string() + ": disk index mismatch");
        if (!h->sibling_of(*ref)) throw Error(Errc::integrity, shard_path(dir, d).string() + ": header differs from siblings");
        set.headers[d - 1] = *h;
    }
    return set;
}

ShardHeader header_for(const ShardHeader& ref, std::size_t disk) {
    ShardHeader h = ref;
    h.disk_index = static_cast<std::uint32_t>(disk);
    return h;
}

// gen ------------------------------------------------------------------------

int cmd_gen(std::size_t k, const std::string& out_file, std::ostream& out) {
    if (k < 1 || k > kMaxConstructK) throw Error(Errc::invalid_argument, "k must be in 1.." + std::to_string(kMaxConstructK));
    const std::string doc = dump_code(construct(k));
    if (out_file.empty()) {
        out << doc << '\n';
    } else {
        std::ofstream f(out_file);
        f << doc << '\n';
        if (!f) throw Error(Errc::io, "cannot write " + out_file);
    }
    return kExitOk;
}

// encode ---------------------------------------------------------------------

int cmd_encode(const Common& c, const fs::path& input, const fs::path& dir, std::ostream& out) {
    const MdrCode code = code_for(c);
    const std::size_t k = code.k();
    const std::size_t r = code.r();
    const std::size_t bs = c.block_size;
    if (bs > (std::size_t{1} << 30)) throw Error(Errc::invalid_argument, "block size too large");

    std::ifstream in(input, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open " + input.string());
    const std::uint64_t length = fs::file_size(input);
    const std::uint64_t payload = std::uint64_t{k} * r * bs;
    const std::uint64_t stripes = (length + payload - 1) / payload;

    fs::create_directories(dir);
    ShardHeader ref;
    ref.k = static_cast<std::uint32_t>(k);
    ref.r = static_cast<std::uint32_t>(r);
    ref.block_size = static_cast<std::uint32_t>(bs);
    ref.stripe_count = stripes;
    ref.payload_length = length;
    std::vector<ShardWriter> writers;
    for (std::size_t d = 1; d <= k + 2; ++d) writers.emplace_back(shard_path(dir, d), header_for(ref, d));

    const bool scheduled = is_recursive_mdr(code);
    std::optional<XorSchedule> schedule;
    if (scheduled) schedule = build_encode_schedule(code);
    std::size_t xors = 0;
    for (std::uint64_t first = 0; first < stripes; first += kBatchStripes) {
        const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kBatchStripes, stripes - first));
        std::vector<Stripe> batch;
        for (std::size_t s = 0; s < count; ++s) {
            Stripe st = make_data_stripe(code, bs);
            for (std::size_t d = 1; d <= k; ++d) {
                auto strip = st.strip(d);
                in.read(reinterpret_cast<char*>(strip.data()), static_cast<std::streamsize>(strip.size()));
            }
            batch.push_back(std::move(st));
        }
        if (scheduled) {
            xors += encode_batch_parallel(*schedule, batch);
        } else {
            for (auto& st : batch) st = encode_naive(code, st);
        }
        for (const auto& st : batch) {
            for (std::size_t d = 1; d <= k + 2; ++d) writers[d - 1].write_strip(st.strip(d));
        }
    }
    for (auto& w : writers) w.close();

    if (c.as_json) {
        json j{{"shards", k + 2}, {"k", k}, {"r", r}, {"block_size", bs}, {"stripes", stripes}, {"payload_length", length}};
        j["xors"] = scheduled ? json(xors) : json(nullptr);
        if (c.meter) {
            json m = json::array();
            for (const auto& w : writers) m.push_back(w.bytes_written());
            j["bytes_written"] = m;
        }
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "encoded " << length << " bytes into " << k + 2 << " shards (k=" << k << ", r=" << r << ", block size "
        << bs << ", " << stripes << " stripes)\n";
    if (scheduled) out << "xors: " << xors << '\n';
    if (c.meter) {
        for (std::size_t d = 1; d <= k + 2; ++d) {
            out << "shard " << d << ": " << writers[d - 1].bytes_written() << " bytes written\n";
        }
    }
    return kExitOk;
}

// repair ---------------------------------------------------------------------

int cmd_repair(const Common& c, const fs::path& dir, std::size_t requested, std::ostream& out, std::ostream& err) {
    const ShardSet set = scan_shards(dir);
    if (set.missing.size() > 1) {
        err << "error: " << set.missing.size() << " shards are missing; repair rebuilds exactly one, use decode\n";
        return kExitUnrecoverable;
    }
    if (set.missing.empty()) {
        err << "error: no shard is missing\n";
        return kExitUsage;
    }
    const std::size_t failed = set.missing.front();
    if (requested != 0 && requested != failed) {
        err << "error: shard " << requested << " is present; the missing shard is " << failed << '\n';
        return kExitUsage;
    }
    const ShardHeader& ref = set.reference;
    const MdrCode code = code_for_shards(c, ref);
    const std::size_t k = code.k();
    const std::size_t r = code.r();
    const std::size_t bs = ref.block_size;
    const RepairPlan plan = code.has_strategies() || failed == code.q_disk() ? repair_plan(code, failed)
                                                                             : conventional_repair_plan(code, failed);

    std::vector<std::optional<ShardReader>> readers(k + 2);
    for (std::size_t d = 1; d <= k + 2; ++d) {
        if (d != failed) readers[d - 1].emplace(shard_path(dir, d));
    }
    ShardWriter writer(shard_path(dir, failed), header_for(ref, failed));
    std::vector<std::size_t> tracked(k + 2, 0);

    for (std::uint64_t first = 0; first < ref.stripe_count; first += kBatchStripes) {
        const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kBatchStripes, ref.stripe_count - first));
        std::vector<Stripe> batch;
        for (std::size_t s = 0; s < count; ++s) {
            Stripe st(k, r, bs);
            for (std::size_t d = 1; d <= k + 2; ++d) st.set_present(d, d != failed);
            for (const BlockRef& b : plan.reads) readers[b.disk - 1]->read_block(first + s, b.row, st.block(b.disk, b.row));
            st.enable_tracking();
            batch.push_back(std::move(st));
        }
        const auto strips = repair_batch_parallel(code, plan, batch);
        for (std::size_t s = 0; s < count; ++s) {
            writer.write_strip(strips[s]);
            for (std::size_t d = 1; d <= k + 2; ++d) tracked[d - 1] += batch[s].reads_from(d);
        }
    }
    writer.close();

    std::size_t total_blocks = 0;
    for (std::size_t v : tracked) total_blocks += v;
    if (c.as_json) {
        json j{{"repaired", failed}, {"stripes", ref.stripe_count}, {"blocks_read", total_blocks},
               {"bytes_read", total_blocks * bs}};
        json per = json::array();
        for (std::size_t d = 1; d <= k + 2; ++d) {
            per.push_back({{"disk", d}, {"blocks", tracked[d - 1]}, {"bytes", tracked[d - 1] * bs},
                           {"file_bytes", readers[d - 1] ? readers[d - 1]->bytes_read() : 0}});
        }
        j["meter"] = per;
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "repaired shard " << failed << ": " << ref.stripe_count << " stripes, " << total_blocks << " blocks read ("
        << total_blocks * bs << " bytes)\n";
    if (c.meter) {
        for (std::size_t d = 1; d <= k + 2; ++d) {
            if (d == failed) continue;
            out << "shard " << d << ": " << tracked[d - 1] << " blocks, " << tracked[d - 1] * bs << " bytes read\n";
        }
    }
    return kExitOk;
}

// decode ---------------------------------------------------------------------

int cmd_decode(const Common& c, const fs::path& dir, const fs::path& output, bool restore, std::ostream& out,
               std::ostream& err) {
    const ShardSet set = scan_shards(dir);
    if (set.missing.size() > 2) {
        err << "error: " << set.missing.size() << " shards are missing; at most two can be recovered\n";
        return kExitUnrecoverable;
    }
    const ShardHeader& ref = set.reference;
    const MdrCode code = code_for_shards(c, ref);
    const std::size_t k = code.k();
    const std::size_t r = code.r();
    const std::size_t bs = ref.block_size;
    const ErasurePattern erased(set.missing);

    std::vector<std::optional<ShardReader>> readers(k + 2);
    for (std::size_t d = 1; d <= k + 2; ++d) {
        if (!erased.contains(d)) readers[d - 1].emplace(shard_path(dir, d));
    }
    std::vector<ShardWriter> restored;
    if (restore) {
        for (std::size_t d : set.missing) restored.emplace_back(shard_path(dir, d), header_for(ref, d));
    }
    std::ofstream sink(output, std::ios::binary | std::ios::trunc);
    if (!sink) throw Error(Errc::io, "cannot create " + output.string());

    std::uint64_t remaining = ref.payload_length;
    for (std::uint64_t first = 0; first < ref.stripe_count; first += kBatchStripes) {
        const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kBatchStripes, ref.stripe_count - first));
        std::vector<Stripe> batch;
        for (std::size_t s = 0; s < count; ++s) {
            Stripe st(k, r, bs);
            for (std::size_t d = 1; d <= k + 2; ++d) {
                if (erased.contains(d)) continue;
                st.set_present(d, true);
                readers[d - 1]->read_strip(first + s, st.strip(d));
            }
            batch.push_back(std::move(st));
        }
        FirstError failure;
        const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t s = 0; s < n; ++s) {
            failure.run([&] {
                auto& st = batch[static_cast<std::size_t>(s)];
                st = decode(code, st, erased);
            });
        }
        failure.rethrow();
        for (const auto& st : batch) {
            for (std::size_t d = 1; d <= k && remaining > 0; ++d) {
                const auto strip = st.strip(d);
                const auto len = static_cast<std::size_t>(std::min<std::uint64_t>(strip.size(), remaining));
                sink.write(reinterpret_cast<const char*>(strip.data()), static_cast<std::streamsize>(len));
                remaining -= len;
            }
            for (std::size_t i = 0; i < restored.size(); ++i) restored[i].write_strip(st.strip(set.missing[i]));
        }
    }
    sink.close();
    if (!sink) throw Error(Errc::io, "write failed: " + output.string());
    for (auto& w : restored) w.close();

    if (c.as_json) {
        json j{{"output", output.string()}, {"bytes", ref.payload_length}, {"erased", set.missing},
               {"restored", restore}};
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "decoded " << ref.payload_length << " bytes from " << k + 2 - set.missing.size() << " of " << k + 2
        << " shards";
    if (!set.missing.empty()) {
        out << " (missing:";
        for (std::size_t d : set.missing) out << ' ' << d;
        out << ')';
    }
    out << '\n';
    if (c.meter) {
        for (std::size_t d = 1; d <= k + 2; ++d) {
            if (readers[d - 1]) out << "shard " << d << ": " << readers[d - 1]->bytes_read() << " bytes read\n";
        }
    }
    return kExitOk;
}

// analyze --------------------------------------------------------------------

struct AnalyzeOptions {
    bool oracle = false;
    bool allow_large = false;
    bool search = false;
    std::size_t search_r = 2;
    std::uint64_t limit = 100'000'000;
};

int cmd_search(const Common& c, const AnalyzeOptions& a, std::ostream& out) {
    const auto res = search_repair_optimal(c.k, a.search_r, a.limit);
    if (c.as_json) {
        json j = to_json(res);
        j["space_log2"] = search_space_log2(c.k, a.search_r);
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "search k=" << c.k << " r=" << a.search_r << ": ";
    if (res.codes.empty() && res.exhausted) {
        out << "no repair-optimal code exists";
    } else {
        out << res.codes.size() << " repair-optimal code" << (res.codes.size() == 1 ? "" : "s") << " found";
    }
    out << " (" << (res.exhausted ? "exhaustive" : "budget reached, not exhaustive") << ", " << res.candidates
        << " MDS candidates examined)\n";
    return kExitOk;
}

int cmd_analyze(const Common& c, const AnalyzeOptions& a, std::ostream& out) {
    if (a.search) return cmd_search(c, a, out);
    const MdrCode code = code_for(c);
    const std::size_t k = code.k();
    const std::size_t r = code.r();
    json j{{"k", k}, {"r", r}};
    std::ostringstream text;
    text << "code: k=" << k << " r=" << r << '\n';

    const Rational upd = update_io(code);
    j["update_io"] = to_json(upd);
    text << "update I/O: " << rational_text(upd) << '\n';

    const bool recursive = is_recursive_mdr(code);
    if (recursive) {
        const auto enc = count_schedule_xors(build_encode_schedule(code), code);
        j["encode_xors"] = to_json(enc);
        text << "encode XORs: P " << enc.p_total << " (" << rational_text(enc.p_per_block) << " per block), Q "
             << enc.q_total << " (" << rational_text(enc.q_per_block) << " per block)\n";
    }

    json plans = json::array();
    text << "repair reads (minimum-read plan / row parity):\n";
    for (std::size_t d = 1; d <= code.disk_count(); ++d) {
        json p{{"disk", d}};
        const bool planned = code.has_strategies() || d == code.q_disk();
        if (planned) p["reads"] = repair_plan(code, d).reads.size();
        if (code.is_basic(d)) p["conventional_reads"] = conventional_repair_plan(code, d).reads.size();
        text << "  disk " << d << ": ";
        text << (planned ? std::to_string(repair_plan(code, d).reads.size()) : std::string("-"));
        if (code.is_basic(d)) text << " / " << conventional_repair_plan(code, d).reads.size();
        if (recursive && code.is_basic(d)) {
            const auto rep = count_schedule_xors(build_repair_schedule(code, d), code);
            p["repair_xors"] = to_json(rep);
            text << ", " << rep.repair_total << " XORs (" << rational_text(rep.repair_per_block) << " per block)";
        }
        text << '\n';
        plans.push_back(p);
    }
    j["repair"] = plans;
    if (code.has_strategies()) {
        const bool bounds = check_lower_bounds(code);
        j["meets_lower_bounds"] = bounds;
        text << "lower bounds met with equality: " << (bounds ? "yes" : "no") << '\n';
    }

    if (a.oracle) {
        json oracle = json::array();
        text << "minimum repair I/O (exhaustive over 2^" << r * r << " X):\n";
        for (std::size_t d = 1; d <= code.disk_count(); ++d) {
            const auto rep = min_io_bruteforce(code, d, a.allow_large);
            oracle.push_back(to_json(rep));
            text << "  disk " << d << ": " << rep.total_reads << '\n';
        }
        j["min_io"] = oracle;
    }
    if (c.as_json) {
        out << j.dump(2) << '\n';
    } else {
        out << text.str();
    }
    return kExitOk;
}

// simulate -------------------------------------------------------------------

struct SimulateOptions {
    std::size_t stripes = 64;
    std::string strategy = "both";
    double rate = 0;
    std::size_t failed_disk = 1;
    bool rotate = false;
    std::string trace_file;
    DiskModel model;
};

void print_report(std::ostream& out, const SimReport& rep) {
    out << to_string(rep.strategy) << ": recovery " << std::fixed << std::setprecision(3) << rep.recovery_time_ms
        << " ms, mean access " << rep.mean_access_time_ms << " ms, blocks read " << rep.total_blocks_read;
    out << " [";
    for (std::size_t d = 0; d < rep.blocks_read.size(); ++d) out << (d ? " " : "") << rep.blocks_read[d];
    out << "]";
    if (rep.background_requests) out << ", background requests " << rep.background_requests;
    out << '\n';
    out.unsetf(std::ios::floatfield);
}

int cmd_simulate(const Common& c, const SimulateOptions& o, std::ostream& out) {
    SimConfig cfg;
    cfg.k = c.k;
    cfg.block_size = c.block_size;
    cfg.stripe_count = o.stripes;
    cfg.failed_disk = o.failed_disk;
    cfg.background_rate = o.rate;
    cfg.seed = c.seed;
    cfg.rotate_layout = o.rotate;
    cfg.record_trace = !o.trace_file.empty();

    auto save_trace = [&](const SimReport& rep) {
        if (o.trace_file.empty()) return;
        std::ofstream f(o.trace_file);
        write_trace_csv(f, rep);
        if (!f) throw Error(Errc::io, "cannot write " + o.trace_file);
    };

    if (o.strategy == "both") {
        SimConfig base = cfg;
        base.strategy = RecoveryStrategy::conventional;
        cfg.strategy = RecoveryStrategy::mdr;
        const auto cmp = compare(base, cfg, o.model);
        save_trace(cmp.candidate);
        if (c.as_json) {
            out << to_json(cmp).dump(2) << '\n';
            return kExitOk;
        }
        out << "# " << cmp.candidate.model_note << '\n';
        print_report(out, cmp.baseline);
        print_report(out, cmp.candidate);
        out << std::setprecision(4) << "read ratio " << cmp.read_ratio << ", access time ratio " << cmp.access_time_ratio
            << ", recovery time ratio " << cmp.recovery_time_ratio << '\n';
        return kExitOk;
    }
    cfg.strategy = o.strategy == "mdr" ? RecoveryStrategy::mdr : RecoveryStrategy::conventional;
    const auto rep = simulate(cfg, o.model);
    save_trace(rep);
    if (c.as_json) {
        out << to_json(rep).dump(2) << '\n';
    } else {
        out << "# " << rep.model_note << '\n';
        print_report(out, rep);
        out << std::setprecision(4) << "read ratio " << rep.read_ratio << '\n';
    }
    return kExitOk;
}

int exit_code_for(Errc e) {
    switch (e) {
        case Errc::integrity: return kExitIntegrity;
        case Errc::unrecoverable: return kExitUnrecoverable;
        default: return kExitUsage;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"MDR RAID-6 code toolkit", "mdr"};
    app.require_subcommand(1);

    Common common;

    std::size_t gen_k = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Print the code description document for construct(k)");
    gen->add_option("k", gen_k, "Number of data disks")->required();
    gen->add_option("-o,--output", gen_out, "Write to a file instead of stdout");

    std::string enc_in;
    std::string enc_dir;
    auto* enc = app.add_subcommand("encode", "Split a file into k+2 shard files");
    enc->add_option("input", enc_in, "Input file")->required();
    enc->add_option("outdir", enc_dir, "Directory for shard-<i>.mdr files")->required();
    add_common(enc, common);

    std::string rep_dir;
    std::size_t rep_disk = 0;
    auto* rep = app.add_subcommand("repair", "Rebuild the one missing shard with minimum reads");
    rep->add_option("dir", rep_dir, "Shard directory")->required();
    rep->add_option("--disk", rep_disk, "Index of the missing shard (checked against the directory)");
    add_common(rep, common);

    std::string dec_dir;
    std::string dec_out;
    bool dec_restore = false;
    auto* dec = app.add_subcommand("decode", "Reassemble the file from shards, tolerating two missing");
    dec->add_option("dir", dec_dir, "Shard directory")->required();
    dec->add_option("output", dec_out, "Output file")->required();
    dec->add_flag("--restore", dec_restore, "Also rewrite the missing shards");
    add_common(dec, common);

    AnalyzeOptions an_opts;
    auto* an = app.add_subcommand("analyze", "Report repair I/O, update I/O and XOR counts");
    add_common(an, common);
    an->add_flag("--oracle", an_opts.oracle, "Exhaustive minimum-I/O search over every X (r <= 4)");
    an->add_flag("--allow-large", an_opts.allow_large, "Permit the oracle beyond r = 4");
    an->add_flag("--search", an_opts.search, "Exhaustive search for repair-optimal codes with parameters --k, --r");
    an->add_option("--r", an_opts.search_r, "Strip size for --search");
    an->add_option("--limit", an_opts.limit, "Candidate budget for --search");

    SimulateOptions sim_opts;
    auto* sim = app.add_subcommand("simulate", "Simulate a rebuild under a parametric disk model");
    add_common(sim, common);
    sim->add_option("--stripes", sim_opts.stripes, "Stripes to rebuild");
    sim->add_option("--strategy", sim_opts.strategy, "conventional, mdr or both")
        ->check(CLI::IsMember({"conventional", "mdr", "both"}));
    sim->add_option("--rate", sim_opts.rate, "Background reads per second (0 = offline)");
    sim->add_option("--failed-disk", sim_opts.failed_disk, "Failed disk, 1..k+2");
    sim->add_flag("--rotate", sim_opts.rotate, "Rotate the logical layout across stripes");
    sim->add_option("--seek", sim_opts.model.seek_time_ms, "Seek time (ms)");
    sim->add_option("--latency", sim_opts.model.rotational_latency_ms, "Mean rotational latency (ms)");
    sim->add_option("--transfer", sim_opts.model.transfer_rate, "Transfer rate (bytes/ms)");
    sim->add_option("--window", sim_opts.model.sequential_window, "Sequential detection window (blocks)");
    sim->add_option("--trace", sim_opts.trace_file, "Write a per-request CSV trace");

    std::vector<std::string> argv_store{"mdr"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (gen->parsed()) return cmd_gen(gen_k, gen_out, out);
        if (enc->parsed()) return cmd_encode(common, enc_in, enc_dir, out);
        if (rep->parsed()) return cmd_repair(common, rep_dir, rep_disk, out, err);
        if (dec->parsed()) return cmd_decode(common, dec_dir, dec_out, dec_restore, out, err);
        if (an->parsed()) return cmd_analyze(common, an_opts, out);
        if (sim->parsed()) return cmd_simulate(common, sim_opts, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace mdr::cli
