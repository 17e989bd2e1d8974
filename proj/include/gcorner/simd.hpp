/**
 * @file simd.hpp
 * @brief Runtime-dispatched data-parallel kernels (scalar reference + AVX2).
 *
 * Every vector variant computes each output element with the same sequence of
 * IEEE operations as the scalar reference (no FMA, identical accumulation order),
 * so the variants are bit-identical.
 */
#pragma once

#include <cstddef>
#include <string_view>

namespace gcorner::simd {

enum class Level { Scalar, Avx2 };

std::string_view to_string(Level level) noexcept;

/// Best level supported by the running CPU and compiled into the binary.
Level detected_level() noexcept;

/// Level currently used by the dispatchers. Starts at detected_level() unless
/// the environment variable GCORNER_SIMD=scalar is set.
Level active_level() noexcept;

/// Forces a level. Requests above detected_level() are clamped. Returns the level set.
Level set_active_level(Level level) noexcept;

/// Strided 2-D view over a row-major block of doubles.
struct ConstPlane {
    const double* data;
    std::size_t stride;  ///< elements between row starts
};

struct MutPlane {
    double* data;
    std::size_t stride;
};

/// out(x, y) = sum_{b, a} weights[b * side + a] * src(x + a, y + b), b outer, a inner,
/// for x < width, y < height. src must cover (width + side - 1) x (height + side - 1).
void correlate_valid(ConstPlane src, std::size_t width, std::size_t height,
                     const double* weights, int side, MutPlane out) noexcept;

/// out[i] = a[i] * b[i].
void multiply(const double* a, const double* b, double* out, std::size_t count) noexcept;

/// Disc-window sum over a zero-padded plane of radius r:
/// out(x, y) = sum_{w=-r..r} sum_{v=-run[w+r]..run[w+r]} src(x + r + v, y + r + w),
/// w outer, v inner. runs has 2r + 1 entries, each in [0, r].
void masked_window_sum(ConstPlane src, std::size_t width, std::size_t height,
                       const int* runs, int radius, MutPlane out) noexcept;

namespace scalar {
void correlate_valid(ConstPlane src, std::size_t width, std::size_t height,
                     const double* weights, int side, MutPlane out) noexcept;
void multiply(const double* a, const double* b, double* out, std::size_t count) noexcept;
void masked_window_sum(ConstPlane src, std::size_t width, std::size_t height,
                       const int* runs, int radius, MutPlane out) noexcept;
}  // namespace scalar

namespace avx2 {
/// False when the AVX2 translation unit was built without AVX2 support.
bool compiled() noexcept;
void correlate_valid(ConstPlane src, std::size_t width, std::size_t height,
                     const double* weights, int side, MutPlane out) noexcept;
void multiply(const double* a, const double* b, double* out, std::size_t count) noexcept;
void masked_window_sum(ConstPlane src, std::size_t width, std::size_t height,
                       const int* runs, int radius, MutPlane out) noexcept;
}  // namespace avx2

}  // namespace gcorner::simd
