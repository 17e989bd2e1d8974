#include "fft_convolve.hpp"

#include "gcorner/error.hpp"

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <memory>
#include <mutex>

namespace gcorner::detail {

namespace {

// Planner calls are not thread-safe in FFTW; execution on distinct arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> allocate(std::size_t count) {
    auto* p = static_cast<T*>(fftw_malloc(sizeof(T) * count));
    if (p == nullptr) {
        throw std::bad_alloc();
    }
    return FftwBuffer<T>(p);
}

class Plan {
public:
    explicit Plan(fftw_plan p) : plan_(p) {
        if (plan_ == nullptr) {
            throw NumericError("FFTW could not create a plan");
        }
    }
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    fftw_plan get() const noexcept { return plan_; }

private:
    fftw_plan plan_;
};

bool is_smooth(std::size_t n) {
    for (std::size_t p : {2u, 3u, 5u, 7u}) {
        while (n % p == 0) {
            n /= p;
        }
    }
    return n == 1;
}

std::size_t good_size(std::size_t n) {
    while (!is_smooth(n)) {
        ++n;
    }
    return n;
}

}  // namespace

std::vector<Image> fft_convolve_padded(const Image& padded, int half_width,
                                       std::span<const KernelGrid* const> kernels) {
    const std::size_t side = static_cast<std::size_t>(2 * half_width + 1);
    const std::size_t out_w = padded.width() - 2 * static_cast<std::size_t>(half_width);
    const std::size_t out_h = padded.height() - 2 * static_cast<std::size_t>(half_width);
    const std::size_t nx = good_size(padded.width());
    const std::size_t ny = good_size(padded.height());
    const std::size_t ncx = nx / 2 + 1;
    const std::size_t real_count = nx * ny;
    const std::size_t spec_count = ny * ncx;

    auto real = allocate<double>(real_count);
    auto image_spec = allocate<fftw_complex>(spec_count);
    auto kernel_spec = allocate<fftw_complex>(spec_count);

    std::unique_ptr<Plan> forward;
    std::unique_ptr<Plan> backward;
    {
        std::lock_guard lock(planner_mutex());
        forward = std::make_unique<Plan>(fftw_plan_dft_r2c_2d(
            static_cast<int>(ny), static_cast<int>(nx), real.get(), image_spec.get(), FFTW_ESTIMATE));
        backward = std::make_unique<Plan>(fftw_plan_dft_c2r_2d(
            static_cast<int>(ny), static_cast<int>(nx), kernel_spec.get(), real.get(), FFTW_ESTIMATE));
    }

    std::fill(real.get(), real.get() + real_count, 0.0);
    for (std::size_t y = 0; y < padded.height(); ++y) {
        std::copy(padded.row(y).begin(), padded.row(y).end(), real.get() + y * nx);
    }
    fftw_execute_dft_r2c(forward->get(), real.get(), image_spec.get());

    const double scale = 1.0 / static_cast<double>(real_count);
    const std::size_t offset = 2 * static_cast<std::size_t>(half_width);
    std::vector<Image> outputs;
    outputs.reserve(kernels.size());
    for (const KernelGrid* kernel : kernels) {
        if (kernel->side() != static_cast<int>(side)) {
            throw SizeError("kernels in one FFT batch must share a size");
        }
        std::fill(real.get(), real.get() + real_count, 0.0);
        const auto taps = kernel->taps();
        for (std::size_t b = 0; b < side; ++b) {
            std::copy_n(taps.data() + b * side, side, real.get() + b * nx);
        }
        fftw_execute_dft_r2c(forward->get(), real.get(), kernel_spec.get());

        for (std::size_t i = 0; i < spec_count; ++i) {
            const double ar = image_spec[i][0], ai = image_spec[i][1];
            const double br = kernel_spec[i][0], bi = kernel_spec[i][1];
            kernel_spec[i][0] = ar * br - ai * bi;
            kernel_spec[i][1] = ar * bi + ai * br;
        }
        fftw_execute_dft_c2r(backward->get(), kernel_spec.get(), real.get());

        Image out(out_w, out_h);
        for (std::size_t y = 0; y < out_h; ++y) {
            const double* src = real.get() + (y + offset) * nx + offset;
            auto dst = out.row(y);
            for (std::size_t x = 0; x < out_w; ++x) {
                dst[x] = src[x] * scale;
            }
        }
        outputs.push_back(std::move(out));
    }
    return outputs;
}

}  // namespace gcorner::detail
