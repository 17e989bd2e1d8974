#include "gcorner/filter.hpp"

#include "binary_io.hpp"
#include "fft_convolve.hpp"
#include "gcorner/error.hpp"
#include "gcorner/parallel.hpp"
#include "gcorner/simd.hpp"

#include <algorithm>
#include <fstream>
#include <string>

namespace gcorner {

namespace {

// Kernels at or above this side length go through the FFT in Auto mode.
constexpr int kFftMinSide = 9;

std::ptrdiff_t fold_index(std::ptrdiff_t i, std::ptrdiff_t n, Boundary boundary) {
    if (boundary == Boundary::Replicate) {
        return std::clamp<std::ptrdiff_t>(i, 0, n - 1);
    }
    // Symmetric reflection has period 2n.
    const std::ptrdiff_t period = 2 * n;
    i %= period;
    if (i < 0) {
        i += period;
    }
    return i < n ? i : period - 1 - i;
}

bool use_fft(ConvEngine engine, const KernelGrid& kernel) {
    return engine == ConvEngine::Fft ||
           (engine == ConvEngine::Auto && kernel.side() >= kFftMinSide);
}

Image convolve_direct(const Image& padded, const KernelGrid& kernel, std::size_t width,
                      std::size_t height) {
    const int side = kernel.side();
    const auto taps = kernel.taps();
    std::vector<double> flipped(taps.rbegin(), taps.rend());
    Image out(width, height);
    simd::correlate_valid({padded.data(), padded.width()}, width, height, flipped.data(), side,
                          {out.data(), out.width()});
    return out;
}

}  // namespace

Boundary parse_boundary(std::string_view name) {
    if (name == "reflect") return Boundary::Reflect;
    if (name == "replicate") return Boundary::Replicate;
    if (name == "zero") return Boundary::Zero;
    throw ConfigError("unknown boundary mode '" + std::string(name) + "'");
}

std::string_view to_string(Boundary boundary) noexcept {
    switch (boundary) {
        case Boundary::Reflect: return "reflect";
        case Boundary::Replicate: return "replicate";
        case Boundary::Zero: return "zero";
    }
    return "reflect";
}

ConvEngine parse_engine(std::string_view name) {
    if (name == "auto") return ConvEngine::Auto;
    if (name == "direct") return ConvEngine::Direct;
    if (name == "fft") return ConvEngine::Fft;
    throw ConfigError("unknown convolution engine '" + std::string(name) + "'");
}

std::string_view to_string(ConvEngine engine) noexcept {
    switch (engine) {
        case ConvEngine::Auto: return "auto";
        case ConvEngine::Direct: return "direct";
        case ConvEngine::Fft: return "fft";
    }
    return "auto";
}

Image pad_image(const Image& image, int pad, Boundary boundary) {
    if (pad < 0) {
        throw SizeError("padding must be non-negative");
    }
    const auto w = static_cast<std::ptrdiff_t>(image.width());
    const auto h = static_cast<std::ptrdiff_t>(image.height());
    Image out(image.width() + 2 * static_cast<std::size_t>(pad),
              image.height() + 2 * static_cast<std::size_t>(pad));
    for (std::ptrdiff_t y = 0; y < h + 2 * pad; ++y) {
        const std::ptrdiff_t sy = y - pad;
        const bool row_inside = sy >= 0 && sy < h;
        for (std::ptrdiff_t x = 0; x < w + 2 * pad; ++x) {
            const std::ptrdiff_t sx = x - pad;
            double v = 0.0;
            if (row_inside && sx >= 0 && sx < w) {
                v = image.at(static_cast<std::size_t>(sx), static_cast<std::size_t>(sy));
            } else if (boundary != Boundary::Zero) {
                v = image.at(static_cast<std::size_t>(fold_index(sx, w, boundary)),
                             static_cast<std::size_t>(fold_index(sy, h, boundary)));
            }
            out.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = v;
        }
    }
    return out;
}

Image convolve(const Image& image, const KernelGrid& kernel, Boundary boundary,
               ConvEngine engine) {
    const Image padded = pad_image(image, kernel.half_width(), boundary);
    if (use_fft(engine, kernel)) {
        const KernelGrid* batch[] = {&kernel};
        return std::move(detail::fft_convolve_padded(padded, kernel.half_width(), batch).front());
    }
    return convolve_direct(padded, kernel, image.width(), image.height());
}

ResponseStack::ResponseStack(std::size_t scales, std::size_t directions, std::size_t width,
                             std::size_t height)
    : scales_(scales), directions_(directions), width_(width), height_(height) {
    planes_.reserve(scales * directions);
    for (std::size_t i = 0; i < scales * directions; ++i) {
        planes_.emplace_back(width, height);
    }
}

ResponseStack apply_bank(const Image& image, const KernelBank& bank, Boundary boundary,
                         ConvEngine engine) {
    const auto directions = static_cast<std::size_t>(bank.directions());
    ResponseStack stack(bank.scale_count(), directions, image.width(), image.height());

    // One task per scale for the FFT path (the padded spectrum is shared by the
    // directions), one per plane for the direct path.
    parallel_for(bank.scale_count(), [&](std::size_t s) {
        const KernelGrid& first = bank.kernel(s, 0);
        const Image padded = pad_image(image, first.half_width(), boundary);
        if (use_fft(engine, first)) {
            std::vector<const KernelGrid*> batch;
            for (std::size_t k = 0; k < directions; ++k) {
                batch.push_back(&bank.kernel(s, k));
            }
            auto planes = detail::fft_convolve_padded(padded, first.half_width(), batch);
            for (std::size_t k = 0; k < directions; ++k) {
                stack.plane(s, k) = std::move(planes[k]);
            }
        } else {
            for (std::size_t k = 0; k < directions; ++k) {
                stack.plane(s, k) =
                    convolve_direct(padded, bank.kernel(s, k), image.width(), image.height());
            }
        }
    });
    return stack;
}

void dump_responses(const ResponseStack& stack, const KernelBank& bank,
                    const std::filesystem::path& directory) {
    detail::ensure_directory(directory);
    for (std::size_t s = 0; s < stack.scales(); ++s) {
        for (std::size_t k = 0; k < stack.directions(); ++k) {
            const auto stem = "response_s" + std::to_string(s) + "_k" + std::to_string(k);
            detail::write_f64_le(directory / (stem + ".f64"), stack.plane(s, k).pixels());
            std::ofstream header(directory / (stem + ".txt"));
            header.precision(17);
            header << "width " << stack.width() << '\n'
                   << "height " << stack.height() << '\n'
                   << "f " << bank.scales().at(s) << '\n'
                   << "theta " << bank.angles().at(k) << '\n';
            if (!header) {
                throw IoError("cannot write response header in " + directory.string());
            }
        }
    }
}

}  // namespace gcorner
