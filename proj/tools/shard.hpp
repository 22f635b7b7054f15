// SPDX-License-Identifier: Apache-2.0
//
// Shard files: a 40-byte little-endian header followed by r * stripe_count
// blocks of one disk, stripe after stripe.
//
//   0  magic "MDR1"        20 block_size
//   4  format version      24 stripe_count (u64)
//   8  k                   32 payload_length (u64)
//  12  r
//  16  disk_index

#ifndef MDR_TOOLS_SHARD_HPP
#define MDR_TOOLS_SHARD_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>

namespace mdr::cli {

inline constexpr std::uint32_t kShardVersion = 1;
inline constexpr std::size_t kShardHeaderSize = 40;

struct ShardHeader {
    std::uint32_t version = kShardVersion;
    std::uint32_t k = 0;
    std::uint32_t r = 0;
    std::uint32_t disk_index = 0;
    std::uint32_t block_size = 0;
    std::uint64_t stripe_count = 0;
    std::uint64_t payload_length = 0;

    std::array<std::uint8_t, kShardHeaderSize> encode() const;
    /// Throws Errc::integrity on a bad magic, version or inconsistent fields.
    static ShardHeader decode(std::span<const std::uint8_t> bytes);

    std::uint64_t strip_bytes() const { return std::uint64_t{r} * block_size; }
    std::uint64_t file_size() const { return kShardHeaderSize + stripe_count * strip_bytes(); }
    /// Equal in every field except disk_index.
    bool sibling_of(const ShardHeader& other) const;
};

std::filesystem::path shard_path(const std::filesystem::path& dir, std::size_t disk);

/// Reads and checks the header of one shard; nullopt if the file is absent.
std::optional<ShardHeader> read_shard_header(const std::filesystem::path& file);

/// Random-access reader over one shard with a byte counter.
class ShardReader {
public:
    explicit ShardReader(const std::filesystem::path& file);
    const ShardHeader& header() const noexcept { return header_; }
    /// Block `row` (1-based) of stripe s into `out`.
    void read_block(std::uint64_t stripe, std::size_t row, std::span<std::uint8_t> out);
    /// The whole strip of stripe s.
    void read_strip(std::uint64_t stripe, std::span<std::uint8_t> out);
    std::uint64_t bytes_read() const noexcept { return bytes_read_; }

private:
    void read_at(std::uint64_t offset, std::span<std::uint8_t> out);

    std::filesystem::path file_;
    std::ifstream in_;
    ShardHeader header_;
    std::uint64_t bytes_read_ = 0;
};

/// Writes the header, then strips in order.
class ShardWriter {
public:
    ShardWriter(const std::filesystem::path& file, const ShardHeader& header);
    void write_strip(std::span<const std::uint8_t> strip);
    void close();
    std::uint64_t bytes_written() const noexcept { return bytes_written_; }

private:
    std::filesystem::path file_;
    std::ofstream out_;
    std::uint64_t bytes_written_ = 0;
};

}  // namespace mdr::cli

#endif
