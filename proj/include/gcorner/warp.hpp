/**
 * @file warp.hpp
 * @brief Affine warps with bilinear inverse mapping and exact coordinate maps.
 */
#pragma once

#include "gcorner/image.hpp"

namespace gcorner {

/// x' = a11 x + a12 y + tx, y' = a21 x + a22 y + ty.
struct Affine2D {
    double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;
    double tx = 0.0, ty = 0.0;

    static Affine2D identity() noexcept { return {}; }

    Point2 apply(Point2 p) const noexcept {
        return {a11 * p.x + a12 * p.y + tx, a21 * p.x + a22 * p.y + ty};
    }
    double determinant() const noexcept { return a11 * a22 - a12 * a21; }
    /// Throws TransformError if singular.
    Affine2D inverse() const;
    /// (this ∘ inner)(p) = this(inner(p)).
    Affine2D compose(const Affine2D& inner) const noexcept;
};

/// Forward transform = Rotation * Scale * Shear, applied to raster coordinates.
/// Positive rotation turns the image counter-clockwise on screen.
struct AffineSpec {
    double rotation = 0.0;  ///< radians
    double scale_x = 1.0;
    double scale_y = 1.0;
    double shear = 0.0;  ///< p in [[1, p], [0, 1]]

    /// Linear part; entries within 1e-15 of 0 or +-1 are snapped so that
    /// quarter-turn rotations are exact permutations. Throws TransformError.
    Affine2D matrix() const;
    Affine2D inverse_matrix() const { return matrix().inverse(); }
};

/// Output samples whose pre-image lies outside the source take this value.
struct WarpFill {
    enum class Mode { Replicate, Constant };
    Mode mode = Mode::Replicate;
    double value = 0.0;
};

struct WarpResult {
    Image image;
    Affine2D map;  ///< source raster coordinates -> output raster coordinates
};

/// Warps by a linear map; the canvas is the bounding box of the transformed
/// pixel centres, so nothing is cropped. Throws TransformError if singular.
WarpResult warp_linear(const Image& image, const Affine2D& linear, WarpFill fill = {});

WarpResult affine_warp(const Image& image, const AffineSpec& spec, WarpFill fill = {});

/// Bilinear sample at a real position; positions are clamped to the image.
double sample_bilinear(const Image& image, double x, double y) noexcept;

}  // namespace gcorner
