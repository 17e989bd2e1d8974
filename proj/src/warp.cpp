#include "gcorner/warp.hpp"

#include "gcorner/error.hpp"

#include <algorithm>
#include <cmath>

namespace gcorner {

namespace {

constexpr double kSnap = 1e-15;
constexpr double kCoordSnap = 1e-9;

double snap_unit(double v) noexcept {
    for (double target : {-1.0, 0.0, 1.0}) {
        if (std::abs(v - target) < kSnap) {
            return target;
        }
    }
    return v;
}

double snap_integer(double v) noexcept {
    const double r = std::round(v);
    return std::abs(v - r) < kCoordSnap ? r : v;
}

}  // namespace

Affine2D Affine2D::inverse() const {
    const double det = determinant();
    if (!std::isfinite(det) || std::abs(det) < 1e-12) {
        throw TransformError("affine map is singular");
    }
    Affine2D inv;
    inv.a11 = a22 / det;
    inv.a12 = -a12 / det;
    inv.a21 = -a21 / det;
    inv.a22 = a11 / det;
    inv.tx = -(inv.a11 * tx + inv.a12 * ty);
    inv.ty = -(inv.a21 * tx + inv.a22 * ty);
    return inv;
}

Affine2D Affine2D::compose(const Affine2D& inner) const noexcept {
    Affine2D out;
    out.a11 = a11 * inner.a11 + a12 * inner.a21;
    out.a12 = a11 * inner.a12 + a12 * inner.a22;
    out.a21 = a21 * inner.a11 + a22 * inner.a21;
    out.a22 = a21 * inner.a12 + a22 * inner.a22;
    out.tx = a11 * inner.tx + a12 * inner.ty + tx;
    out.ty = a21 * inner.tx + a22 * inner.ty + ty;
    return out;
}

Affine2D AffineSpec::matrix() const {
    if (!(scale_x > 0.0) || !(scale_y > 0.0) || !std::isfinite(scale_x) ||
        !std::isfinite(scale_y) || !std::isfinite(rotation) || !std::isfinite(shear)) {
        throw TransformError("scale factors must be positive and all parameters finite");
    }
    const double c = snap_unit(std::cos(rotation));
    const double s = snap_unit(std::sin(rotation));
    // R = [[c, s], [-s, c]], S = diag(sx, sy), H = [[1, p], [0, 1]]; M = R S H.
    Affine2D m;
    m.a11 = c * scale_x;
    m.a12 = c * scale_x * shear + s * scale_y;
    m.a21 = -s * scale_x;
    m.a22 = -s * scale_x * shear + c * scale_y;
    if (std::abs(m.determinant()) < 1e-12) {
        throw TransformError("affine transform is degenerate");
    }
    return m;
}

double sample_bilinear(const Image& image, double x, double y) noexcept {
    const double max_x = static_cast<double>(image.width() - 1);
    const double max_y = static_cast<double>(image.height() - 1);
    x = std::clamp(x, 0.0, max_x);
    y = std::clamp(y, 0.0, max_y);

    auto x0 = static_cast<std::size_t>(std::floor(x));
    auto y0 = static_cast<std::size_t>(std::floor(y));
    if (x0 + 1 >= image.width() && x0 > 0) --x0;
    if (y0 + 1 >= image.height() && y0 > 0) --y0;
    const std::size_t x1 = std::min(x0 + 1, image.width() - 1);
    const std::size_t y1 = std::min(y0 + 1, image.height() - 1);
    const double fx = x - static_cast<double>(x0);
    const double fy = y - static_cast<double>(y0);

    const double top = (1.0 - fx) * image.at(x0, y0) + fx * image.at(x1, y0);
    const double bottom = (1.0 - fx) * image.at(x0, y1) + fx * image.at(x1, y1);
    return (1.0 - fy) * top + fy * bottom;
}

WarpResult warp_linear(const Image& image, const Affine2D& linear, WarpFill fill) {
    Affine2D forward = linear;
    forward.tx = 0.0;
    forward.ty = 0.0;
    if (!std::isfinite(forward.determinant()) || std::abs(forward.determinant()) < 1e-12) {
        throw TransformError("affine map is singular");
    }

    const double w1 = static_cast<double>(image.width() - 1);
    const double h1 = static_cast<double>(image.height() - 1);
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
    bool first = true;
    for (Point2 corner : {Point2{0, 0}, Point2{w1, 0}, Point2{0, h1}, Point2{w1, h1}}) {
        const Point2 p = forward.apply(corner);
        if (first) {
            min_x = max_x = p.x;
            min_y = max_y = p.y;
            first = false;
        } else {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    min_x = snap_integer(min_x);
    min_y = snap_integer(min_y);
    max_x = snap_integer(max_x);
    max_y = snap_integer(max_y);

    const auto out_w = static_cast<std::size_t>(std::ceil(max_x - min_x - kCoordSnap)) + 1;
    const auto out_h = static_cast<std::size_t>(std::ceil(max_y - min_y - kCoordSnap)) + 1;
    forward.tx = -min_x;
    forward.ty = -min_y;
    const Affine2D backward = forward.inverse();

    Image out(out_w, out_h);
    for (std::size_t v = 0; v < out_h; ++v) {
        for (std::size_t u = 0; u < out_w; ++u) {
            const Point2 src =
                backward.apply({static_cast<double>(u), static_cast<double>(v)});
            const double sx = snap_integer(src.x);
            const double sy = snap_integer(src.y);
            const bool inside = sx >= -kCoordSnap && sx <= w1 + kCoordSnap &&
                                sy >= -kCoordSnap && sy <= h1 + kCoordSnap;
            double value;
            if (inside || fill.mode == WarpFill::Mode::Replicate) {
                value = sample_bilinear(image, sx, sy);
            } else {
                value = fill.value;
            }
            out.at(u, v) = value;
        }
    }
    return {std::move(out), forward};
}

WarpResult affine_warp(const Image& image, const AffineSpec& spec, WarpFill fill) {
    return warp_linear(image, spec.matrix(), fill);
}

}  // namespace gcorner
