#pragma once

#include "gcorner/error.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>

namespace gcorner::detail {

/// Raw little-endian float64 dump.
inline void write_f64_le(const std::filesystem::path& path, std::span<const double> values) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    for (double v : values) {
        std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
        if constexpr (std::endian::native == std::endian::big) {
            bits = __builtin_bswap64(bits);
        }
        char bytes[8];
        std::memcpy(bytes, &bits, sizeof bytes);
        out.write(bytes, sizeof bytes);
    }
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

inline void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create directory " + dir.string());
    }
}

}  // namespace gcorner::detail
