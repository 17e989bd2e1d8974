/**
 * @file eval.hpp
 * @brief Ground-truth matching, localization error, repeatability and the transform suite.
 */
#pragma once

#include "gcorner/image.hpp"
#include "gcorner/warp.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace gcorner {

struct GroundTruth {
    std::vector<Point2> corners;

    /// Throws ConfigError if a corner is out of bounds or two corners lie within 1 px.
    void validate(std::size_t width, std::size_t height) const;
};

struct MatchedPair {
    Point2 detected;
    Point2 truth;
    double distance = 0.0;
    std::size_t detected_index = 0;
    std::size_t truth_index = 0;
};

struct MatchResult {
    std::vector<MatchedPair> pairs;
    std::size_t missed = 0;
    std::size_t false_count = 0;
    std::optional<double> localization_error;  ///< absent when nothing matched
};

/// Greedy one-to-one assignment in ascending distance; pairs closer than tau match.
MatchResult match_corners(std::span<const Point2> detected, std::span<const Point2> truth,
                          double tau = 4.0);

/// Root mean squared pair distance; absent for an empty set.
std::optional<double> localization_error(std::span<const MatchedPair> pairs);

struct RepeatabilityResult {
    std::size_t original = 0;     ///< D_ip
    std::size_t transformed = 0;  ///< D_it
    std::size_t repeated = 0;     ///< D_r
    std::optional<double> omega;  ///< absent if either count is zero
};

/// (D_r / 2) (1 / D_ip + 1 / D_it).
std::optional<double> average_repeatability(std::size_t original, std::size_t transformed,
                                            std::size_t repeated) noexcept;

/// Maps `original` through `map` and matches one-to-one against `transformed`
/// within `radius` (inclusive).
RepeatabilityResult repeatability(std::span<const Point2> original,
                                  std::span<const Point2> transformed, const Affine2D& map,
                                  double radius = 2.0);

enum class TransformFamily { Rotation, UniformScale, NonUniformScale, Shear, Jpeg, Noise };

std::string_view to_string(TransformFamily family) noexcept;
/// Accepts the short CLI names rot, scale, nscale, shear, jpeg, noise as well as to_string().
TransformFamily parse_family(std::string_view name);
std::vector<TransformFamily> all_families();

struct TransformCase {
    TransformFamily family = TransformFamily::Rotation;
    double value = 0.0;   ///< degrees, scale, shear p, JPEG quality or noise sigma
    double value_y = 0.0;  ///< y scale for non-uniform scaling, else unused
    std::size_t index = 0;  ///< position in the suite
};

/// Case list in suite order: rotation (18), uniform scale (15), non-uniform
/// scale (125), shear (20), JPEG (20), noise (15).
std::vector<TransformCase> transform_cases(std::span<const TransformFamily> families);

struct TransformedImage {
    TransformCase transform;
    Image image;
    Affine2D map;  ///< identity for JPEG and noise
};

/// Counter-based 64-bit generator: value(i) = mix(seed, i). Stateless per draw.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}
    std::uint64_t bits(std::uint64_t counter) const noexcept;
    /// Uniform in (0, 1).
    double uniform(std::uint64_t counter) const noexcept;
    /// Standard normal via Box-Muller on draws 2i and 2i+1.
    double normal(std::uint64_t counter) const noexcept;

private:
    std::uint64_t seed_;
};

/// Adds zero-mean noise, rounds and clamps to [0, 255].
Image add_gaussian_noise(const Image& image, double sigma, std::uint64_t seed);

/// Encodes to JPEG at the given quality (1..100) and decodes back.
Image jpeg_roundtrip(const Image& image, int quality);

/// Seed for case i is base_seed XOR i.
TransformedImage apply_transform(const Image& image, const TransformCase& transform,
                                 std::uint64_t base_seed, WarpFill fill = {});

std::vector<TransformedImage> generate_transform_suite(const Image& image, std::uint64_t seed,
                                                       std::span<const TransformFamily> families,
                                                       WarpFill fill = {});

}  // namespace gcorner
