#include "gcorner/tensor.hpp"

#include "gcorner/error.hpp"
#include "gcorner/simd.hpp"

#include <numeric>
#include <string>

namespace gcorner {

CircularMask::CircularMask(int n) : n_(n) {
    if (n < 2 || n % 2 != 0) {
        throw ConfigError("tensor window n must be even and >= 2, got " + std::to_string(n));
    }
    const int r = radius();
    runs_.reserve(static_cast<std::size_t>(2 * r + 1));
    for (int w = -r; w <= r; ++w) {
        int run = 0;
        while ((run + 1) * (run + 1) + w * w <= r * r) {
            ++run;
        }
        runs_.push_back(run);
    }
}

bool CircularMask::weight(int v, int w) const noexcept {
    const int r = radius();
    return v * v + w * w <= r * r;
}

int CircularMask::count() const noexcept {
    return std::accumulate(runs_.begin(), runs_.end(), 0,
                           [](int acc, int run) { return acc + 2 * run + 1; });
}

double SymmetricMatrix::trace() const noexcept {
    double t = 0.0;
    for (std::size_t i = 0; i < order_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

SymmetricMatrix structure_tensor(const ResponseStack& stack, std::size_t scale, int x, int y,
                                 const CircularMask& mask) {
    if (scale >= stack.scales()) {
        throw IndexError("scale index " + std::to_string(scale) + " out of range");
    }
    const auto width = static_cast<int>(stack.width());
    const auto height = static_cast<int>(stack.height());
    if (x < 0 || y < 0 || x >= width || y >= height) {
        throw IndexError("pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                         ") outside the image");
    }

    const std::size_t k = stack.directions();
    const int r = mask.radius();
    SymmetricMatrix m(k);
    for (std::size_t i = 0; i < k; ++i) {
        const Image& ri = stack.plane(scale, i);
        for (std::size_t j = i; j < k; ++j) {
            const Image& rj = stack.plane(scale, j);
            double acc = 0.0;
            for (int w = -r; w <= r; ++w) {
                const int yy = y + w;
                if (yy < 0 || yy >= height) {
                    continue;
                }
                const int run = mask.runs()[static_cast<std::size_t>(w + r)];
                for (int v = -run; v <= run; ++v) {
                    const int xx = x + v;
                    if (xx < 0 || xx >= width) {
                        continue;
                    }
                    const auto px = static_cast<std::size_t>(xx);
                    const auto py = static_cast<std::size_t>(yy);
                    acc += ri.at(px, py) * rj.at(px, py);
                }
            }
            m(i, j) = acc;
            m(j, i) = acc;
        }
    }
    return m;
}

TensorField::TensorField(std::size_t order, std::size_t width, std::size_t height)
    : order_(order), width_(width), height_(height) {
    entries_.reserve(order * (order + 1) / 2);
    for (std::size_t i = 0; i < order * (order + 1) / 2; ++i) {
        entries_.emplace_back(width, height);
    }
}

std::size_t TensorField::index(std::size_t i, std::size_t j) const noexcept {
    if (i > j) {
        std::swap(i, j);
    }
    // Row-major upper triangle.
    return i * order_ - i * (i + 1) / 2 + j;
}

Image& TensorField::entry(std::size_t i, std::size_t j) { return entries_.at(index(i, j)); }

const Image& TensorField::entry(std::size_t i, std::size_t j) const {
    return entries_.at(index(i, j));
}

SymmetricMatrix TensorField::at(std::size_t x, std::size_t y) const {
    SymmetricMatrix m(order_);
    for (std::size_t i = 0; i < order_; ++i) {
        for (std::size_t j = i; j < order_; ++j) {
            const double v = entry(i, j).at(x, y);
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

TensorField tensor_field(const ResponseStack& stack, std::size_t scale, const CircularMask& mask) {
    if (scale >= stack.scales()) {
        throw IndexError("scale index " + std::to_string(scale) + " out of range");
    }
    const std::size_t k = stack.directions();
    const std::size_t width = stack.width();
    const std::size_t height = stack.height();
    const auto r = static_cast<std::size_t>(mask.radius());
    const std::size_t padded_w = width + 2 * r;

    TensorField field(k, width, height);
    // Zero border: dropped window entries contribute +0.0, which leaves every
    // partial sum unchanged, so this matches structure_tensor() bit-for-bit.
    std::vector<double> product(padded_w * (height + 2 * r), 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        const Image& ri = stack.plane(scale, i);
        for (std::size_t j = i; j < k; ++j) {
            const Image& rj = stack.plane(scale, j);
            for (std::size_t y = 0; y < height; ++y) {
                simd::multiply(ri.row(y).data(), rj.row(y).data(),
                               product.data() + (y + r) * padded_w + r, width);
            }
            Image& out = field.entry(i, j);
            simd::masked_window_sum({product.data(), padded_w}, width, height,
                                    mask.runs().data(), mask.radius(), {out.data(), width});
        }
    }
    return field;
}

}  // namespace gcorner
