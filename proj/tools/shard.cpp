// SPDX-License-Identifier: Apache-2.0

#include "shard.hpp"

#include <cstring>

#include "mdr/error.hpp"

namespace mdr::cli {

namespace {

constexpr char kMagic[4] = {'M', 'D', 'R', '1'};

template <typename T>
void put(std::uint8_t* p, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) p[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

template <typename T>
T get(const std::uint8_t* p) {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(p[i]) << (8 * i);
    return v;
}

}  // namespace

std::array<std::uint8_t, kShardHeaderSize> ShardHeader::encode() const {
    std::array<std::uint8_t, kShardHeaderSize> b{};
    std::memcpy(b.data(), kMagic, 4);
    put(b.data() + 4, version);
    put(b.data() + 8, k);
    put(b.data() + 12, r);
    put(b.data() + 16, disk_index);
    put(b.data() + 20, block_size);
    put(b.data() + 24, stripe_count);
    put(b.data() + 32, payload_length);
    return b;
}

ShardHeader ShardHeader::decode(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kShardHeaderSize || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw Error(Errc::integrity, "shard header: bad magic");
    }
    ShardHeader h;
    h.version = get<std::uint32_t>(bytes.data() + 4);
    h.k = get<std::uint32_t>(bytes.data() + 8);
    h.r = get<std::uint32_t>(bytes.data() + 12);
    h.disk_index = get<std::uint32_t>(bytes.data() + 16);
    h.block_size = get<std::uint32_t>(bytes.data() + 20);
    h.stripe_count = get<std::uint64_t>(bytes.data() + 24);
    h.payload_length = get<std::uint64_t>(bytes.data() + 32);
    if (h.version != kShardVersion) throw Error(Errc::integrity, "shard header: unsupported version");
    if (h.k == 0 || h.k > 30 || h.r != (std::uint32_t{1} << h.k) || h.block_size == 0) {
        throw Error(Errc::integrity, "shard header: invalid code parameters");
    }
    if (h.disk_index < 1 || h.disk_index > h.k + 2) throw Error(Errc::integrity, "shard header: invalid disk index");
    if (h.stripe_count > (std::uint64_t{1} << 40)) throw Error(Errc::integrity, "shard header: stripe count too large");
    if (h.payload_length > h.stripe_count * h.strip_bytes() * h.k) {
        throw Error(Errc::integrity, "shard header: payload length exceeds capacity");
    }
    return h;
}

bool ShardHeader::sibling_of(const ShardHeader& o) const {
    return version == o.version && k == o.k && r == o.r && block_size == o.block_size &&
           stripe_count == o.stripe_count && payload_length == o.payload_length;
}

std::filesystem::path shard_path(const std::filesystem::path& dir, std::size_t disk) {
    return dir / ("shard-" + std::to_string(disk) + ".mdr");
}

std::optional<ShardHeader> read_shard_header(const std::filesystem::path& file) {
    if (!std::filesystem::exists(file)) return std::nullopt;
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open " + file.string());
    std::array<std::uint8_t, kShardHeaderSize> b{};
    in.read(reinterpret_cast<char*>(b.data()), b.size());
    if (in.gcount() != static_cast<std::streamsize>(b.size())) {
        throw Error(Errc::integrity, file.string() + ": truncated header");
    }
    const auto h = ShardHeader::decode(b);
    if (std::filesystem::file_size(file) != h.file_size()) {
        throw Error(Errc::integrity, file.string() + ": size does not match its header");
    }
    return h;
}

ShardReader::ShardReader(const std::filesystem::path& file) : file_(file), in_(file, std::ios::binary) {
    auto h = read_shard_header(file);
    if (!h || !in_) throw Error(Errc::io, "cannot open " + file.string());
    header_ = *h;
}

void ShardReader::read_at(std::uint64_t offset, std::span<std::uint8_t> out) {
    in_.seekg(static_cast<std::streamoff>(offset));
    in_.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(out.size()));
    if (in_.gcount() != static_cast<std::streamsize>(out.size())) throw Error(Errc::io, file_.string() + ": short read");
    bytes_read_ += out.size();
}

void ShardReader::read_block(std::uint64_t stripe, std::size_t row, std::span<std::uint8_t> out) {
    read_at(kShardHeaderSize + stripe * header_.strip_bytes() + (row - 1) * header_.block_size, out);
}

void ShardReader::read_strip(std::uint64_t stripe, std::span<std::uint8_t> out) {
    read_at(kShardHeaderSize + stripe * header_.strip_bytes(), out);
}

ShardWriter::ShardWriter(const std::filesystem::path& file, const ShardHeader& header)
    : file_(file), out_(file, std::ios::binary | std::ios::trunc) {
    if (!out_) throw Error(Errc::io, "cannot create " + file.string());
    const auto h = header.encode();
    out_.write(reinterpret_cast<const char*>(h.data()), h.size());
}

void ShardWriter::write_strip(std::span<const std::uint8_t> strip) {
    out_.write(reinterpret_cast<const char*>(strip.data()), static_cast<std::streamsize>(strip.size()));
    bytes_written_ += strip.size();
}

void ShardWriter::close() {
    out_.close();
    if (!out_) throw Error(Errc::io, "write failed: " + file_.string());
}

}  // namespace mdr::cli
