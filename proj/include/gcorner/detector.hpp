/**
 * @file detector.hpp
 * @brief Multi-scale corner measure and the full detection pipeline.
 */
#pragma once

#include "gcorner/filter.hpp"
#include "gcorner/image.hpp"
#include "gcorner/tensor.hpp"

#include <span>
#include <string>
#include <vector>

namespace gcorner {

/// Which scale's measure plane drives the local-maximum test.
struct NmsAnchor {
    enum class Kind { Finest, Coarsest, MinOverScales, Index };
    Kind kind = Kind::Finest;
    std::size_t index = 0;

    static NmsAnchor parse(const std::string& text);
    std::string to_string() const;
    friend bool operator==(const NmsAnchor&, const NmsAnchor&) = default;
};

struct DetectorConfig {
    std::vector<double> scales = {0.15, 0.2, 0.25};
    int directions = 6;
    double gamma = 0.6;
    double eta = 1.2;
    int window_n = 8;        ///< tensor window parameter, disc radius n/2
    int nms_p = 14;          ///< NMS region width is p + 1
    int nms_q = 14;          ///< NMS region height is q + 1
    double threshold = 2e8;  ///< T_h
    double rho = 2.22e-16;   ///< denominator guard
    Boundary boundary = Boundary::Reflect;
    ConvEngine engine = ConvEngine::Auto;
    NmsAnchor anchor{};

    /// Throws ConfigError / ParameterError.
    void validate() const;
    KernelBank bank() const;
    int max_half_width() const;

    friend bool operator==(const DetectorConfig&, const DetectorConfig&) = default;
};

/// prod(lambda) / (sum(lambda) + rho).
double corner_measure(std::span<const double> lambdas, double rho) noexcept;

struct Corner {
    int x = 0;
    int y = 0;
    std::vector<double> measures;  ///< one per scale, in config order
    double score = 0.0;            ///< minimum of measures
};

/// Per-scale measure planes, config scale order.
using MeasureMaps = std::vector<Image>;

MeasureMaps measure_map(const ResponseStack& stack, const DetectorConfig& config);

/// Throws SizeError if the image is smaller than the largest kernel.
MeasureMaps measure_map(const Image& image, const DetectorConfig& config);

/// Local-maximum test on the anchor plane plus threshold on every scale.
/// Ties on a plateau go to the lexicographically smallest (y, x).
/// Result sorted by descending score, then (y, x).
std::vector<Corner> select_corners(const MeasureMaps& maps, const DetectorConfig& config);

std::vector<Corner> detect(const Image& image, const DetectorConfig& config);

}  // namespace gcorner
