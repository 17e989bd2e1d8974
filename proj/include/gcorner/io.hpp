/**
 * @file io.hpp
 * @brief Raster, ground-truth and corner-list file formats.
 */
#pragma once

#include "gcorner/detector.hpp"
#include "gcorner/eval.hpp"
#include "gcorner/image.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace gcorner {

struct RgbImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> data;  ///< interleaved RGB

    std::uint8_t* pixel(std::size_t x, std::size_t y) noexcept {
        return data.data() + 3 * (y * width + x);
    }
    const std::uint8_t* pixel(std::size_t x, std::size_t y) const noexcept {
        return data.data() + 3 * (y * width + x);
    }
    friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// 0.299 R + 0.587 G + 0.114 B, rounded half-up.
std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept;

/// PGM (P2 / P5, 8 or 16 bit) or PNG, detected by content. 16-bit data and
/// maxval != 255 are rescaled to [0, 255]. Throws IoError.
Image load_image(const std::filesystem::path& path);

/// Rounds and clamps to 8 bits.
void save_pgm(const Image& image, const std::filesystem::path& path);
void save_png(const Image& image, const std::filesystem::path& path);
void save_png(const RgbImage& image, const std::filesystem::path& path);
/// Chooses PNG or PGM from the extension (.pgm -> PGM, otherwise PNG).
void save_image(const Image& image, const std::filesystem::path& path);

RgbImage load_png_rgb(const std::filesystem::path& path);
RgbImage to_rgb(const Image& image);

GroundTruth load_ground_truth(const std::filesystem::path& path);
void save_ground_truth(const GroundTruth& truth, const std::filesystem::path& path);

std::string corners_to_json(const std::vector<Corner>& corners, const DetectorConfig& config,
                            const std::string& image_id);
std::string corners_to_csv(const std::vector<Corner>& corners);
/// Reads either corner export back as points (x, y).
std::vector<Point2> load_corner_points(const std::filesystem::path& path);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace gcorner
