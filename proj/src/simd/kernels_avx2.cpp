// AVX2 variants, vectorized across output columns. Built with -mavx2 and
// without FMA so every lane performs the scalar reference's mul/add sequence.

#include "gcorner/simd.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

#include <algorithm>

namespace gcorner::simd::avx2 {

#if defined(__AVX2__)

bool compiled() noexcept { return true; }

void correlate_valid(ConstPlane src, std::size_t width, std::size_t height,
                     const double* weights, int side, MutPlane out) noexcept {
    const std::size_t vec_end = width & ~std::size_t{3};
    for (std::size_t y = 0; y < height; ++y) {
        double* dst = out.data + y * out.stride;
        std::fill(dst, dst + width, 0.0);
        for (int b = 0; b < side; ++b) {
            const double* row = src.data + (y + static_cast<std::size_t>(b)) * src.stride;
            for (int a = 0; a < side; ++a) {
                const double w = weights[b * side + a];
                const __m256d wv = _mm256_set1_pd(w);
                const double* s = row + a;
                std::size_t x = 0;
                for (; x < vec_end; x += 4) {
                    __m256d acc = _mm256_loadu_pd(dst + x);
                    const __m256d prod = _mm256_mul_pd(wv, _mm256_loadu_pd(s + x));
                    _mm256_storeu_pd(dst + x, _mm256_add_pd(acc, prod));
                }
                for (; x < width; ++x) {
                    dst[x] += w * s[x];
                }
            }
        }
    }
}

void multiply(const double* a, const double* b, double* out, std::size_t count) noexcept {
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    for (; i < count; ++i) {
        out[i] = a[i] * b[i];
    }
}

void masked_window_sum(ConstPlane src, std::size_t width, std::size_t height,
                       const int* runs, int radius, MutPlane out) noexcept {
    const std::size_t vec_end = width & ~std::size_t{3};
    for (std::size_t y = 0; y < height; ++y) {
        double* dst = out.data + y * out.stride;
        std::fill(dst, dst + width, 0.0);
        for (int w = -radius; w <= radius; ++w) {
            const double* row =
                src.data + (y + static_cast<std::size_t>(radius + w)) * src.stride;
            const int run = runs[w + radius];
            for (int v = -run; v <= run; ++v) {
                const double* s = row + (radius + v);
                std::size_t x = 0;
                for (; x < vec_end; x += 4) {
                    _mm256_storeu_pd(dst + x,
                                     _mm256_add_pd(_mm256_loadu_pd(dst + x), _mm256_loadu_pd(s + x)));
                }
                for (; x < width; ++x) {
                    dst[x] += s[x];
                }
            }
        }
    }
}

#else

bool compiled() noexcept { return false; }

void correlate_valid(ConstPlane src, std::size_t width, std::size_t height,
                     const double* weights, int side, MutPlane out) noexcept {
    scalar::correlate_valid(src, width, height, weights, side, out);
}

void multiply(const double* a, const double* b, double* out, std::size_t count) noexcept {
    scalar::multiply(a, b, out, count);
}

void masked_window_sum(ConstPlane src, std::size_t width, std::size_t height,
                       const int* runs, int radius, MutPlane out) noexcept {
    scalar::masked_window_sum(src, width, height, runs, radius, out);
}

#endif

}  // namespace gcorner::simd::avx2
