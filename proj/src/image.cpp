#include "gcorner/image.hpp"

#include "gcorner/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gcorner {

Image::Image(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height) {
    if (width == 0 || height == 0) {
        throw SizeError("image dimensions must be positive");
    }
    data_.assign(width * height, fill);
}

Image::Image(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width == 0 || height == 0) {
        throw SizeError("image dimensions must be positive");
    }
    if (data_.size() != width * height) {
        throw SizeError("image data holds " + std::to_string(data_.size()) +
                        " values, expected " + std::to_string(width * height));
    }
}

bool Image::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace gcorner
