#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "cmsr/codeword.hpp"

namespace cmsr {

// --- params file ----------------------------------------------------------
//
// Key-value text, one `key value` pair per line, fixed key order, LF line
// endings. Regenerating CodeParams from the file is bit-deterministic:
//
//   format_version 1
//   n 6
//   k 3
//   h 2
//   d 4
//   field_width 4
//   reduction_polynomial 0x13
//   lambda_seed canonical
//
// lambda_seed is either the literal `canonical` or a decimal 64-bit seed.

inline constexpr int kParamsFormatVersion = 1;

std::string params_canonical_text(const CodeParams& p);
CodeParams parse_params_text(const std::string& text,
                             std::int64_t symbol_guard = kDefaultSymbolGuard);

void write_params_file(const std::filesystem::path& path, const CodeParams& p);
CodeParams read_params_file(const std::filesystem::path& path,
                            std::int64_t symbol_guard = kDefaultSymbolGuard);

/// FNV-1a 64 of the canonical params text; embedded in every shard header
/// so shards cannot silently pair with the wrong params file.
std::uint64_t params_digest(const CodeParams& p);

// --- shard file -------------------------------------------------------------
//
// Binary, little-endian, 22-byte header then the payload:
//
//   offset 0   "CMSR"                      4 bytes
//          4   format version              1 byte
//          5   field width                 1 byte
//          6   node index (1-based)        2 bytes LE
//          8   m (planes per node)         2 bytes LE
//         10   n (digit count)             2 bytes LE
//         12   s (digit radix)             2 bytes LE
//         14   params digest               8 bytes LE
//         22   payload: l symbols, ceil(width/8) bytes each LE,
//               plane-major (plane outer, index a inner)

inline constexpr int kShardFormatVersion = 1;
inline constexpr std::size_t kShardHeaderSize = 22;

int shard_symbol_bytes(const CodeParams& p);

/// Atomic (write-then-rename); node is 0-based in memory, stored 1-based.
void write_shard(const std::filesystem::path& path, const CodeParams& p, int node,
                 const NodeVector& content);

struct ShardData {
    int node = 0;  // 0-based
    NodeVector content;
};

/// Validates magic, version, geometry, digest, payload length, and symbol
/// range. expected_node >= 0 additionally pins the node index.
ShardData read_shard(const std::filesystem::path& path, const CodeParams& p,
                     int expected_node = -1);

}  // namespace cmsr
