#pragma once

#include "gcorner/detector.hpp"
#include "gcorner/io.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace gcorner {

struct OverlayStyle {
    enum class Shape { Cross, Circle };
    int radius = 3;
    Shape shape = Shape::Cross;
    bool annotate = false;  ///< adds a one-pixel dot offset by (radius + 1, -(radius + 1))
    std::array<std::uint8_t, 3> color = {255, 0, 0};
};

/// Pixels recoloured for a marker centred at (x, y), before clipping.
std::vector<Pixel> marker_stencil(int x, int y, const OverlayStyle& style);

/// Composites markers onto a grayscale copy; out-of-bounds marker pixels are skipped.
RgbImage render_overlay(const Image& image, const std::vector<Corner>& corners,
                        const OverlayStyle& style);

/// Throws ConfigError for radius < 1 and IoError for unwritable paths.
void save_overlay(const Image& image, const std::vector<Corner>& corners,
                  const OverlayStyle& style, const std::filesystem::path& path);

}  // namespace gcorner
