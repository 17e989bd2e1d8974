#include "gcorner/overlay.hpp"

#include "gcorner/error.hpp"

#include <cmath>

namespace gcorner {

std::vector<Pixel> marker_stencil(int x, int y, const OverlayStyle& style) {
    std::vector<Pixel> out;
    const int r = style.radius;
    if (style.shape == OverlayStyle::Shape::Cross) {
        out.push_back({x, y});
        for (int d = 1; d <= r; ++d) {
            out.push_back({x - d, y});
            out.push_back({x + d, y});
            out.push_back({x, y - d});
            out.push_back({x, y + d});
        }
    } else {
        // Ring of pixels whose distance rounds to r.
        for (int dy = -r - 1; dy <= r + 1; ++dy) {
            for (int dx = -r - 1; dx <= r + 1; ++dx) {
                if (std::lround(std::hypot(dx, dy)) == r) {
                    out.push_back({x + dx, y + dy});
                }
            }
        }
    }
    if (style.annotate) {
        out.push_back({x + r + 1, y - r - 1});
    }
    return out;
}

RgbImage render_overlay(const Image& image, const std::vector<Corner>& corners,
                        const OverlayStyle& style) {
    if (style.radius < 1) {
        throw ConfigError("marker radius must be >= 1");
    }
    RgbImage out = to_rgb(image);
    const auto w = static_cast<int>(out.width);
    const auto h = static_cast<int>(out.height);
    for (const auto& c : corners) {
        for (Pixel p : marker_stencil(c.x, c.y, style)) {
            if (p.x < 0 || p.y < 0 || p.x >= w || p.y >= h) {
                continue;
            }
            std::uint8_t* px = out.pixel(static_cast<std::size_t>(p.x), static_cast<std::size_t>(p.y));
            px[0] = style.color[0];
            px[1] = style.color[1];
            px[2] = style.color[2];
        }
    }
    return out;
}

void save_overlay(const Image& image, const std::vector<Corner>& corners,
                  const OverlayStyle& style, const std::filesystem::path& path) {
    save_png(render_overlay(image, corners, style), path);
}

}  // namespace gcorner
