#include "gcorner/detector.hpp"

#include "gcorner/eigen.hpp"
#include "gcorner/error.hpp"
#include "gcorner/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace gcorner {

NmsAnchor NmsAnchor::parse(const std::string& text) {
    if (text == "finest") return {Kind::Finest, 0};
    if (text == "coarsest") return {Kind::Coarsest, 0};
    if (text == "min") return {Kind::MinOverScales, 0};
    std::size_t index = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("nms_scale must be finest, coarsest, min or a scale index, got '" +
                          text + "'");
    }
    return {Kind::Index, index};
}

std::string NmsAnchor::to_string() const {
    switch (kind) {
        case Kind::Finest: return "finest";
        case Kind::Coarsest: return "coarsest";
        case Kind::MinOverScales: return "min";
        case Kind::Index: return std::to_string(index);
    }
    return "finest";
}

void DetectorConfig::validate() const {
    if (scales.empty()) {
        throw ConfigError("at least one scale is required");
    }
    for (double f : scales) {
        if (!std::isfinite(f) || f <= 0.0) {
            throw ParameterError("scale frequencies must be positive");
        }
    }
    if (directions < 2) {
        throw ConfigError("at least two directions are required");
    }
    if (!(gamma > 0.0) || !(eta > 0.0) || !std::isfinite(gamma) || !std::isfinite(eta)) {
        throw ParameterError("gamma and eta must be positive");
    }
    if (window_n < 2 || window_n % 2 != 0) {
        throw ConfigError("window_n must be even and >= 2");
    }
    if (nms_p < 2 || nms_q < 2 || nms_p % 2 != 0 || nms_q % 2 != 0) {
        throw ConfigError("NMS region (p+1)x(q+1) must be at least 3x3 with even p, q");
    }
    if (!(threshold > 0.0) || !std::isfinite(threshold)) {
        throw ConfigError("threshold must be positive");
    }
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw ConfigError("rho must be positive");
    }
    if (anchor.kind == NmsAnchor::Kind::Index && anchor.index >= scales.size()) {
        throw ConfigError("nms_scale index out of range");
    }
}

KernelBank DetectorConfig::bank() const { return KernelBank(scales, directions, gamma, eta); }

int DetectorConfig::max_half_width() const {
    int h = 0;
    for (double f : scales) {
        h = std::max(h, kernel_half_width(f, gamma, eta));
    }
    return h;
}

double corner_measure(std::span<const double> lambdas, double rho) noexcept {
    double product = 1.0;
    double sum = 0.0;
    for (double l : lambdas) {
        product *= l;
        sum += l;
    }
    return product / (sum + rho);
}

MeasureMaps measure_map(const ResponseStack& stack, const DetectorConfig& config) {
    config.validate();
    if (stack.scales() != config.scales.size() ||
        stack.directions() != static_cast<std::size_t>(config.directions)) {
        throw ConfigError("response stack does not match the detector configuration");
    }
    const CircularMask mask(config.window_n);
    const std::size_t width = stack.width();
    const std::size_t height = stack.height();
    const std::size_t k = stack.directions();

    MeasureMaps maps(stack.scales(), Image(width, height));
    parallel_for(stack.scales(), [&](std::size_t s) {
        const TensorField field = tensor_field(stack, s, mask);
        Image& out = maps[s];
        for (std::size_t y = 0; y < height; ++y) {
            for (std::size_t x = 0; x < width; ++x) {
                bool any = false;
                for (std::size_t i = 0; i < k && !any; ++i) {
                    any = field.entry(i, i).at(x, y) != 0.0;
                }
                if (!any) {
                    out.at(x, y) = 0.0;  // zero diagonal => zero PSD tensor
                    continue;
                }
                const auto lambdas = eigenvalues(field.at(x, y));
                out.at(x, y) = corner_measure(lambdas, config.rho);
            }
        }
    });
    return maps;
}

MeasureMaps measure_map(const Image& image, const DetectorConfig& config) {
    config.validate();
    const auto side = static_cast<std::size_t>(2 * config.max_half_width() + 1);
    if (image.width() < side || image.height() < side) {
        throw SizeError("image " + std::to_string(image.width()) + "x" +
                        std::to_string(image.height()) + " is smaller than the largest kernel (" +
                        std::to_string(side) + ")");
    }
    if (!image.all_finite()) {
        throw NumericError("image contains non-finite values");
    }
    const ResponseStack stack = apply_bank(image, config.bank(), config.boundary, config.engine);
    return measure_map(stack, config);
}

namespace {

Image anchor_plane(const MeasureMaps& maps, const DetectorConfig& config) {
    switch (config.anchor.kind) {
        case NmsAnchor::Kind::Index:
            return maps.at(config.anchor.index);
        case NmsAnchor::Kind::Finest:
        case NmsAnchor::Kind::Coarsest: {
            const auto& f = config.scales;
            const auto it = config.anchor.kind == NmsAnchor::Kind::Finest
                                ? std::max_element(f.begin(), f.end())
                                : std::min_element(f.begin(), f.end());
            return maps.at(static_cast<std::size_t>(it - f.begin()));
        }
        case NmsAnchor::Kind::MinOverScales: {
            Image out = maps.front();
            for (std::size_t s = 1; s < maps.size(); ++s) {
                for (std::size_t i = 0; i < out.size(); ++i) {
                    out.pixels()[i] = std::min(out.pixels()[i], maps[s].pixels()[i]);
                }
            }
            return out;
        }
    }
    return maps.front();
}

}  // namespace

std::vector<Corner> select_corners(const MeasureMaps& maps, const DetectorConfig& config) {
    config.validate();
    if (maps.size() != config.scales.size()) {
        throw ConfigError("measure maps do not match the configured scales");
    }
    const Image anchor = anchor_plane(maps, config);
    const auto width = static_cast<int>(anchor.width());
    const auto height = static_cast<int>(anchor.height());
    const int rx = config.nms_p / 2;
    const int ry = config.nms_q / 2;

    std::vector<Corner> corners;
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const auto px = static_cast<std::size_t>(x);
            const auto py = static_cast<std::size_t>(y);
            double score = maps.front().at(px, py);
            for (const auto& m : maps) {
                score = std::min(score, m.at(px, py));
            }
            if (!(score > config.threshold)) {
                continue;
            }

            const double centre = anchor.at(px, py);
            bool is_max = true;
            for (int yy = std::max(0, y - ry); is_max && yy <= std::min(height - 1, y + ry); ++yy) {
                for (int xx = std::max(0, x - rx); xx <= std::min(width - 1, x + rx); ++xx) {
                    if (xx == x && yy == y) {
                        continue;
                    }
                    const double v =
                        anchor.at(static_cast<std::size_t>(xx), static_cast<std::size_t>(yy));
                    // Plateau ties go to the lexicographically smallest (y, x).
                    const bool earlier = yy < y || (yy == y && xx < x);
                    if (v > centre || (v == centre && earlier)) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (!is_max) {
                continue;
            }

            Corner c;
            c.x = x;
            c.y = y;
            c.score = score;
            for (const auto& m : maps) {
                c.measures.push_back(m.at(px, py));
            }
            corners.push_back(std::move(c));
        }
    }

    std::stable_sort(corners.begin(), corners.end(), [](const Corner& a, const Corner& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    });
    return corners;
}

std::vector<Corner> detect(const Image& image, const DetectorConfig& config) {
    return select_corners(measure_map(image, config), config);
}

}  // namespace gcorner
