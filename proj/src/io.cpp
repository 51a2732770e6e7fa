#include "cmsr/io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cmsr {

namespace {

std::string hex_string(std::uint32_t v) {
    std::ostringstream out;
    out << "0x" << std::hex << v;
    return out.str();
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

[[noreturn]] void bad_file(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error(path.string() + ": " + what);
}

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(char(v & 0xff));
    out.push_back(char(v >> 8));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(char((v >> (8 * i)) & 0xff));
}

std::uint16_t get_u16(const std::string& in, std::size_t off) {
    return std::uint16_t(std::uint8_t(in[off])) | std::uint16_t(std::uint8_t(in[off + 1])) << 8;
}

std::uint64_t get_u64(const std::string& in, std::size_t off) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = v << 8 | std::uint8_t(in[off + std::size_t(i)]);
    return v;
}

void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) bad_file(tmp, "cannot open for writing");
        out.write(bytes.data(), std::streamsize(bytes.size()));
        if (!out) bad_file(tmp, "write failed");
    }
    std::filesystem::rename(tmp, path);
}

std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad_file(path, "cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

}  // namespace

std::string params_canonical_text(const CodeParams& p) {
    std::ostringstream out;
    out << "format_version " << kParamsFormatVersion << "\n";
    out << "n " << p.n << "\n";
    out << "k " << p.k << "\n";
    out << "h " << p.h << "\n";
    out << "d " << p.d << "\n";
    out << "field_width " << p.field.width() << "\n";
    out << "reduction_polynomial " << hex_string(p.field.reduction_poly()) << "\n";
    out << "lambda_seed ";
    if (p.lambda_seed)
        out << *p.lambda_seed;
    else
        out << "canonical";
    out << "\n";
    return out.str();
}

CodeParams parse_params_text(const std::string& text, std::int64_t symbol_guard) {
    std::istringstream in(text);
    std::string line;
    std::map<std::string, std::string> kv;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::size_t sp = line.find(' ');
        if (sp == std::string::npos)
            throw std::runtime_error("params file: malformed line '" + line + "'");
        kv[line.substr(0, sp)] = line.substr(sp + 1);
    }
    auto need = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::runtime_error("params file: missing key '" + key + "'");
        return it->second;
    };
    auto to_int = [](const std::string& v, const std::string& key) {
        std::size_t used = 0;
        const long parsed = std::stol(v, &used);
        if (used != v.size()) throw std::runtime_error("params file: bad integer for '" + key + "'");
        return int(parsed);
    };

    if (to_int(need("format_version"), "format_version") != kParamsFormatVersion)
        throw std::runtime_error("params file: unsupported format_version");
    const int n = to_int(need("n"), "n");
    const int k = to_int(need("k"), "k");
    const int h = to_int(need("h"), "h");
    const int d = to_int(need("d"), "d");
    const int width = to_int(need("field_width"), "field_width");

    std::optional<std::uint64_t> seed;
    const std::string& seed_text = need("lambda_seed");
    if (seed_text != "canonical") {
        std::size_t used = 0;
        seed = std::stoull(seed_text, &used);
        if (used != seed_text.size())
            throw std::runtime_error("params file: bad lambda_seed");
    }

    CodeParams p = make_params(n, k, h, d, width, seed, symbol_guard);

    const std::string& poly_text = need("reduction_polynomial");
    if (poly_text != hex_string(p.field.reduction_poly()))
        throw std::runtime_error("params file: reduction_polynomial " + poly_text +
                                 " does not match this build's polynomial for width " +
                                 std::to_string(width) + " (" +
                                 hex_string(p.field.reduction_poly()) + ")");
    return p;
}

void write_params_file(const std::filesystem::path& path, const CodeParams& p) {
    atomic_write(path, params_canonical_text(p));
}

CodeParams read_params_file(const std::filesystem::path& path, std::int64_t symbol_guard) {
    try {
        return parse_params_text(read_all(path), symbol_guard);
    } catch (const std::invalid_argument& e) {
        bad_file(path, e.what());
    }
}

std::uint64_t params_digest(const CodeParams& p) {
    return fnv1a64(params_canonical_text(p));
}

int shard_symbol_bytes(const CodeParams& p) { return (p.field.width() + 7) / 8; }

void write_shard(const std::filesystem::path& path, const CodeParams& p, int node,
                 const NodeVector& content) {
    if (node < 0 || node >= p.n) throw std::invalid_argument("node id out of range");
    if (std::int64_t(content.size()) != p.l)
        throw std::invalid_argument("shard content must hold l symbols");

    const int sym_bytes = shard_symbol_bytes(p);
    std::string bytes;
    bytes.reserve(kShardHeaderSize + content.size() * std::size_t(sym_bytes));
    bytes += "CMSR";
    bytes.push_back(char(kShardFormatVersion));
    bytes.push_back(char(p.field.width()));
    put_u16(bytes, std::uint16_t(node + 1));
    put_u16(bytes, std::uint16_t(p.m));
    put_u16(bytes, std::uint16_t(p.n));
    put_u16(bytes, std::uint16_t(p.s));
    put_u64(bytes, params_digest(p));
    for (Symbol v : content) {
        bytes.push_back(char(v & 0xff));
        if (sym_bytes == 2) bytes.push_back(char(v >> 8));
    }
    atomic_write(path, bytes);
}

ShardData read_shard(const std::filesystem::path& path, const CodeParams& p, int expected_node) {
    const std::string bytes = read_all(path);
    if (bytes.size() < kShardHeaderSize) bad_file(path, "truncated header");
    if (bytes.compare(0, 4, "CMSR") != 0) bad_file(path, "bad magic (not a shard file)");
    if (bytes[4] != char(kShardFormatVersion)) bad_file(path, "unsupported shard format version");
    if (std::uint8_t(bytes[5]) != std::uint8_t(p.field.width()))
        bad_file(path, "field width mismatch against params");
    const int node_1based = get_u16(bytes, 6);
    if (node_1based < 1 || node_1based > p.n) bad_file(path, "node index out of range");
    if (get_u16(bytes, 8) != std::uint16_t(p.m)) bad_file(path, "plane count mismatch");
    if (get_u16(bytes, 10) != std::uint16_t(p.n)) bad_file(path, "digit count mismatch");
    if (get_u16(bytes, 12) != std::uint16_t(p.s)) bad_file(path, "digit radix mismatch");
    if (get_u64(bytes, 14) != params_digest(p))
        bad_file(path, "params digest mismatch: shard was written under different parameters");
    if (expected_node >= 0 && node_1based != expected_node + 1)
        bad_file(path, "unexpected node index " + std::to_string(node_1based));

    const int sym_bytes = shard_symbol_bytes(p);
    const std::size_t want = kShardHeaderSize + std::size_t(p.l) * std::size_t(sym_bytes);
    if (bytes.size() != want)
        bad_file(path, "payload length " + std::to_string(bytes.size() - kShardHeaderSize) +
                           " != l*" + std::to_string(sym_bytes));

    ShardData shard;
    shard.node = node_1based - 1;
    shard.content.resize(std::size_t(p.l));
    const std::uint32_t order = p.field.order();
    for (std::int64_t i = 0; i < p.l; ++i) {
        const std::size_t off = kShardHeaderSize + std::size_t(i) * std::size_t(sym_bytes);
        Symbol v = Symbol(std::uint8_t(bytes[off]));
        if (sym_bytes == 2) v |= Symbol(std::uint16_t(std::uint8_t(bytes[off + 1])) << 8);
        if (std::uint32_t(v) >= order)
            bad_file(path, "symbol value " + std::to_string(v) + " outside the field");
        shard.content[std::size_t(i)] = v;
    }
    return shard;
}

}  // namespace cmsr
