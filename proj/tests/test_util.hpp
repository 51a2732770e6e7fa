#pragma once

#include <filesystem>
#include <unistd.h>
#include <string>
#include <vector>

#include "cmsr/codeword.hpp"
#include "cmsr/rng.hpp"

namespace cmsr::test {

inline std::vector<Symbol> random_message(const CodeParams& p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Symbol> msg(std::size_t(p.k) * std::size_t(p.l));
    for (auto& v : msg) v = Symbol(rng.below(p.field.order()));
    return msg;
}

inline bool all_zero(const std::vector<Symbol>& v) {
    for (Symbol s : v)
        if (s != 0) return false;
    return true;
}

/// Scratch directory under the system temp root, removed on destruction.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("cmsr_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

}  // namespace cmsr::test
