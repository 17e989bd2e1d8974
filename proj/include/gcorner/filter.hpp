/**
 * @file filter.hpp
 * @brief Same-size 2-D convolution and Gabor bank response stacks.
 */
#pragma once

#include "gcorner/gabor.hpp"
#include "gcorner/image.hpp"

#include <filesystem>
#include <string_view>
#include <vector>

namespace gcorner {

enum class Boundary {
    Reflect,    ///< symmetric padding: ... c b a | a b c ...
    Replicate,  ///< edge value repeated
    Zero,
};

enum class ConvEngine {
    Auto,    ///< FFT for large kernels, direct otherwise
    Direct,  ///< double sum through the dispatched SIMD kernel
    Fft,
};

Boundary parse_boundary(std::string_view name);
std::string_view to_string(Boundary boundary) noexcept;
ConvEngine parse_engine(std::string_view name);
std::string_view to_string(ConvEngine engine) noexcept;

/// Pads the image by `pad` pixels on every side.
Image pad_image(const Image& image, int pad, Boundary boundary);

/// True convolution (kernel flipped), output has the input's size.
/// Kernels may be larger than the image; padding folds as often as needed.
Image convolve(const Image& image, const KernelGrid& kernel,
               Boundary boundary = Boundary::Reflect, ConvEngine engine = ConvEngine::Auto);

/// Filtered planes indexed [scale][direction], in bank order.
class ResponseStack {
public:
    ResponseStack() = default;
    ResponseStack(std::size_t scales, std::size_t directions, std::size_t width,
                  std::size_t height);

    std::size_t scales() const noexcept { return scales_; }
    std::size_t directions() const noexcept { return directions_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }

    Image& plane(std::size_t scale, std::size_t direction) {
        return planes_.at(scale * directions_ + direction);
    }
    const Image& plane(std::size_t scale, std::size_t direction) const {
        return planes_.at(scale * directions_ + direction);
    }

private:
    std::size_t scales_ = 0;
    std::size_t directions_ = 0;
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<Image> planes_;
};

ResponseStack apply_bank(const Image& image, const KernelBank& bank,
                         Boundary boundary = Boundary::Reflect,
                         ConvEngine engine = ConvEngine::Auto);

/// Writes each plane as raw little-endian float64 plus a text sidecar
/// (dims, f, theta_k). Files: response_s<s>_k<k>.f64 / .txt. Throws IoError.
void dump_responses(const ResponseStack& stack, const KernelBank& bank,
                    const std::filesystem::path& directory);

}  // namespace gcorner
