// Scalar reference kernels. The AVX2 variants must reproduce these
// per-element operation sequences exactly.

#include "gcorner/simd.hpp"

#include <algorithm>

namespace gcorner::simd::scalar {

void correlate_valid(ConstPlane src, std::size_t width, std::size_t height,
                     const double* weights, int side, MutPlane out) noexcept {
    for (std::size_t y = 0; y < height; ++y) {
        double* dst = out.data + y * out.stride;
        std::fill(dst, dst + width, 0.0);
        for (int b = 0; b < side; ++b) {
            const double* row = src.data + (y + static_cast<std::size_t>(b)) * src.stride;
            for (int a = 0; a < side; ++a) {
                const double w = weights[b * side + a];
                const double* s = row + a;
                for (std::size_t x = 0; x < width; ++x) {
                    dst[x] += w * s[x];
                }
            }
        }
    }
}

void multiply(const double* a, const double* b, double* out, std::size_t count) noexcept {
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = a[i] * b[i];
    }
}

void masked_window_sum(ConstPlane src, std::size_t width, std::size_t height,
                       const int* runs, int radius, MutPlane out) noexcept {
    for (std::size_t y = 0; y < height; ++y) {
        double* dst = out.data + y * out.stride;
        std::fill(dst, dst + width, 0.0);
        for (int w = -radius; w <= radius; ++w) {
            const double* row =
                src.data + (y + static_cast<std::size_t>(radius + w)) * src.stride;
            const int run = runs[w + radius];
            for (int v = -run; v <= run; ++v) {
                const double* s = row + (radius + v);
                for (std::size_t x = 0; x < width; ++x) {
                    dst[x] += s[x];
                }
            }
        }
    }
}

}  // namespace gcorner::simd::scalar
