#include "gcorner/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace gcorner::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Level initial_level() noexcept {
    const char* env = std::getenv("GCORNER_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) {
        return Level::Scalar;
    }
    return detected_level();
}

std::atomic<Level>& current() noexcept {
    static std::atomic<Level> level{initial_level()};
    return level;
}

}  // namespace

std::string_view to_string(Level level) noexcept {
    switch (level) {
        case Level::Scalar: return "scalar";
        case Level::Avx2: return "avx2";
    }
    return "unknown";
}

Level detected_level() noexcept {
    static const Level level = (avx2::compiled() && cpu_has_avx2()) ? Level::Avx2 : Level::Scalar;
    return level;
}

Level active_level() noexcept { return current().load(std::memory_order_relaxed); }

Level set_active_level(Level level) noexcept {
    if (level == Level::Avx2 && detected_level() != Level::Avx2) {
        level = Level::Scalar;
    }
    current().store(level, std::memory_order_relaxed);
    return level;
}

void correlate_valid(ConstPlane src, std::size_t width, std::size_t height,
                     const double* weights, int side, MutPlane out) noexcept {
    if (active_level() == Level::Avx2) {
        avx2::correlate_valid(src, width, height, weights, side, out);
    } else {
        scalar::correlate_valid(src, width, height, weights, side, out);
    }
}

void multiply(const double* a, const double* b, double* out, std::size_t count) noexcept {
    if (active_level() == Level::Avx2) {
        avx2::multiply(a, b, out, count);
    } else {
        scalar::multiply(a, b, out, count);
    }
}

void masked_window_sum(ConstPlane src, std::size_t width, std::size_t height,
                       const int* runs, int radius, MutPlane out) noexcept {
    if (active_level() == Level::Avx2) {
        avx2::masked_window_sum(src, width, height, runs, radius, out);
    } else {
        scalar::masked_window_sum(src, width, height, runs, radius, out);
    }
}

}  // namespace gcorner::simd
