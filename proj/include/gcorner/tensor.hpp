/**
 * @file tensor.hpp
 * @brief Multi-directional structure tensor built from Gabor responses.
 *
 * For scale s and pixel (x, y):
 *
 *     M[i][j] = sum_{v,w} r(v, w) R_i(x + v, y + w) R_j(x + v, y + w)
 *
 * where R_k is the response to the k-th direction and r is a binary disc.
 * Window entries falling outside the image are dropped.
 */
#pragma once

#include "gcorner/filter.hpp"

#include <cstddef>
#include <vector>

namespace gcorner {

/// Binary disc on an (n+1) x (n+1) grid: weight(v, w) = 1 iff v^2 + w^2 <= (n/2)^2.
class CircularMask {
public:
    /// Throws ConfigError unless n is even and >= 2.
    explicit CircularMask(int n);

    int n() const noexcept { return n_; }
    int radius() const noexcept { return n_ / 2; }
    int side() const noexcept { return n_ + 1; }
    bool weight(int v, int w) const noexcept;

    /// Half extent of the disc on row w, indexed w + radius.
    const std::vector<int>& runs() const noexcept { return runs_; }
    int count() const noexcept;

private:
    int n_;
    std::vector<int> runs_;
};

/// Dense K x K symmetric matrix, row-major.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(std::size_t order) : order_(order), data_(order * order, 0.0) {}

    std::size_t order() const noexcept { return order_; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * order_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * order_ + j];
    }
    double trace() const noexcept;
    const std::vector<double>& data() const noexcept { return data_; }

    friend bool operator==(const SymmetricMatrix&, const SymmetricMatrix&) = default;

private:
    std::size_t order_ = 0;
    std::vector<double> data_;
};

/// Tensor at a single pixel, summed w outer, v inner. Throws IndexError.
SymmetricMatrix structure_tensor(const ResponseStack& stack, std::size_t scale, int x, int y,
                                 const CircularMask& mask);

/// Dense tensor field of one scale: one plane per upper-triangle entry (i <= j).
class TensorField {
public:
    TensorField(std::size_t order, std::size_t width, std::size_t height);

    std::size_t order() const noexcept { return order_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }

    Image& entry(std::size_t i, std::size_t j);
    const Image& entry(std::size_t i, std::size_t j) const;

    SymmetricMatrix at(std::size_t x, std::size_t y) const;

private:
    std::size_t index(std::size_t i, std::size_t j) const noexcept;

    std::size_t order_;
    std::size_t width_;
    std::size_t height_;
    std::vector<Image> entries_;
};

/// Computes every pixel's tensor for one scale with the dispatched SIMD kernels.
/// Each entry is bit-identical to structure_tensor() at that pixel.
TensorField tensor_field(const ResponseStack& stack, std::size_t scale, const CircularMask& mask);

}  // namespace gcorner
