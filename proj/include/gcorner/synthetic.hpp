/**
 * @file synthetic.hpp
 * @brief Polar wedge corner models with exact vertex ground truth.
 *
 * A model is a partition of the plane around the vertex into s angular
 * sectors [beta_i, beta_{i+1}) of constant gray T_i, with beta_{s+1} = beta_1 + 2 pi.
 * Angles are measured counter-clockwise as seen on screen, i.e. atan2(-dy, dx)
 * for a pixel offset (dx, dy) in raster coordinates.
 */
#pragma once

#include "gcorner/image.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gcorner {

enum class ModelKind { StepEdge, L, YorT, X, Star };

std::string_view to_string(ModelKind kind) noexcept;

struct ModelRegion {
    double gray = 0.0;   ///< T_i in [0, 255]
    double start = 0.0;  ///< beta_i, radians
};

class CornerModel {
public:
    /// Throws ModelError unless s >= 2, the start angles are strictly increasing
    /// and span less than 2 pi, and every gray value lies in [0, 255].
    explicit CornerModel(std::vector<ModelRegion> regions);

    const std::vector<ModelRegion>& regions() const noexcept { return regions_; }
    std::size_t region_count() const noexcept { return regions_.size(); }

    /// End angle of region i (start of the next one, wrapping by 2 pi).
    double region_end(std::size_t i) const noexcept;

    /// Region containing the direction of offset (dx, dy); the vertex itself is region 0.
    std::size_t region_of(double dx, double dy) const noexcept;

private:
    std::vector<ModelRegion> regions_;
};

/// Throws ModelError for s < 2 or s > 5.
ModelKind classify_model(const CornerModel& model);

/// Gray values used when none are given: 50, 100, 150, 200, 120.
std::vector<double> default_grays();

/// Named preset: "step", "L", "Y", "T", "X", "star". Optional overrides for grays
/// and start angles (radians); counts must match the preset's region count
/// unless angles are given, in which case they define it. Throws ModelError.
CornerModel make_model(std::string_view name, const std::optional<std::vector<double>>& grays = {},
                       const std::optional<std::vector<double>>& angles = {});

struct RasterSpec {
    int side = 129;             ///< odd, >= 65
    bool supersample = false;  ///< 2x2 supersampled rendering instead of pixel-centre membership

    void validate() const;  ///< throws ModelError
};

struct RenderedModel {
    Image image;
    Pixel vertex;
};

RenderedModel render_model(const CornerModel& model, const RasterSpec& raster = {});

/// Per-direction response of the odd Gabor kernel at the rendered vertex,
/// one value per theta_k = k pi / K. Throws SizeError if the kernel does not fit.
std::vector<double> model_filter_response(const CornerModel& model, double frequency,
                                          int directions, const RasterSpec& raster = {},
                                          double gamma = 0.6, double eta = 1.2);

}  // namespace gcorner
