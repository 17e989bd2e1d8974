/**
 * @file image.hpp
 * @brief Row-major grayscale raster of double intensities.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gcorner {

class Image {
public:
    Image() = default;
    /// Throws SizeError if either dimension is zero.
    Image(std::size_t width, std::size_t height, double fill = 0.0);
    Image(std::size_t width, std::size_t height, std::vector<double> data);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& at(std::size_t x, std::size_t y) noexcept { return data_[y * width_ + x]; }
    double at(std::size_t x, std::size_t y) const noexcept { return data_[y * width_ + x]; }

    std::span<double> row(std::size_t y) noexcept { return {data_.data() + y * width_, width_}; }
    std::span<const double> row(std::size_t y) const noexcept {
        return {data_.data() + y * width_, width_};
    }

    std::span<double> pixels() noexcept { return data_; }
    std::span<const double> pixels() const noexcept { return data_; }
    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }

    bool all_finite() const noexcept;

    friend bool operator==(const Image&, const Image&) = default;

private:
    std::size_t width_ = 0;
    std::size_t height_ = 0;
    std::vector<double> data_;
};

/// Integer pixel location, x = column, y = row, origin top-left.
struct Pixel {
    int x = 0;
    int y = 0;
    friend bool operator==(const Pixel&, const Pixel&) = default;
};

/// Real-valued image-plane point in the same convention as Pixel.
struct Point2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Point2&, const Point2&) = default;
};

}  // namespace gcorner
