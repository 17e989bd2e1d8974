#include "gcorner/io.hpp"

#include "gcorner/config.hpp"
#include "gcorner/error.hpp"

#include <json.hpp>
#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace gcorner {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<unsigned char> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint8_t to_byte(double v) noexcept {
    return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

/// Minimal PNM tokenizer: whitespace separated, '#' comments to end of line.
class PnmReader {
public:
    PnmReader(const std::vector<unsigned char>& bytes, const fs::path& path)
        : bytes_(bytes), path_(path) {}

    unsigned long next_number() {
        skip_space();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            throw IoError("malformed PGM header in " + path_.string());
        }
        unsigned long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_++] - '0');
            if (v > 1'000'000'000ul) {
                throw IoError("PGM value too large in " + path_.string());
            }
        }
        return v;
    }

    /// Consumes the single whitespace byte that ends a binary header.
    void end_header() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw IoError("malformed PGM header in " + path_.string());
        }
        ++pos_;
    }

    std::size_t position() const noexcept { return pos_; }

private:
    void skip_space() {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& bytes_;
    const fs::path& path_;
    std::size_t pos_ = 2;
};

Image load_pgm(const std::vector<unsigned char>& bytes, const fs::path& path) {
    const bool binary = bytes[1] == '5';
    PnmReader reader(bytes, path);
    const auto width = reader.next_number();
    const auto height = reader.next_number();
    const auto maxval = reader.next_number();
    if (width == 0 || height == 0) {
        throw IoError("PGM has zero dimensions: " + path.string());
    }
    if (maxval == 0 || maxval > 65535) {
        throw IoError("PGM maxval out of range: " + path.string());
    }
    const double scale = maxval == 255 ? 1.0 : 255.0 / static_cast<double>(maxval);
    Image image(width, height);
    auto px = image.pixels();
    if (binary) {
        reader.end_header();
        const std::size_t bytes_per = maxval > 255 ? 2 : 1;
        const std::size_t start = reader.position();
        if (bytes.size() < start + px.size() * bytes_per) {
            throw IoError("truncated PGM data in " + path.string());
        }
        for (std::size_t i = 0; i < px.size(); ++i) {
            unsigned v = bytes[start + i * bytes_per];
            if (bytes_per == 2) {
                v = (v << 8) | bytes[start + i * 2 + 1];
            }
            if (v > maxval) {
                throw IoError("PGM sample exceeds maxval in " + path.string());
            }
            px[i] = scale == 1.0 ? v : v * scale;
        }
    } else {
        for (std::size_t i = 0; i < px.size(); ++i) {
            const auto v = reader.next_number();
            if (v > maxval) {
                throw IoError("PGM sample exceeds maxval in " + path.string());
            }
            px[i] = scale == 1.0 ? static_cast<double>(v) : static_cast<double>(v) * scale;
        }
    }
    return image;
}

struct PngImage {
    png_image info{};
    PngImage() { info.version = PNG_IMAGE_VERSION; }
    ~PngImage() { png_image_free(&info); }
};

void write_png(const fs::path& path, std::uint32_t format, std::size_t width, std::size_t height,
               const std::uint8_t* data) {
    PngImage png;
    png.info.width = static_cast<png_uint_32>(width);
    png.info.height = static_cast<png_uint_32>(height);
    png.info.format = format;
    if (!png_image_write_to_file(&png.info, path.string().c_str(), 0, data, 0, nullptr)) {
        throw IoError("cannot write PNG " + path.string() + ": " + png.info.message);
    }
}

}  // namespace

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
    // Integer form of 0.299 R + 0.587 G + 0.114 B with round-half-up.
    return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b + 500u) / 1000u);
}

RgbImage load_png_rgb(const fs::path& path) {
    PngImage png;
    if (!png_image_begin_read_from_file(&png.info, path.string().c_str())) {
        throw IoError("cannot read PNG " + path.string() + ": " + png.info.message);
    }
    if (png.info.width == 0 || png.info.height == 0) {
        throw IoError("PNG has zero dimensions: " + path.string());
    }
    png.info.format = PNG_FORMAT_RGB;
    RgbImage out{png.info.width, png.info.height, {}};
    out.data.resize(PNG_IMAGE_SIZE(png.info));
    if (!png_image_finish_read(&png.info, nullptr, out.data.data(), 0, nullptr)) {
        throw IoError("cannot decode PNG " + path.string() + ": " + png.info.message);
    }
    return out;
}

Image load_image(const fs::path& path) {
    const auto bytes = read_file(path);
    if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '2' || bytes[1] == '5')) {
        return load_pgm(bytes, path);
    }
    static constexpr unsigned char kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    if (bytes.size() < 8 || !std::equal(std::begin(kPngMagic), std::end(kPngMagic), bytes.begin())) {
        throw IoError("unsupported image format: " + path.string());
    }

    PngImage png;
    if (!png_image_begin_read_from_memory(&png.info, bytes.data(), bytes.size())) {
        throw IoError("cannot read PNG " + path.string() + ": " + png.info.message);
    }
    if (png.info.width == 0 || png.info.height == 0) {
        throw IoError("PNG has zero dimensions: " + path.string());
    }
    const bool color = (png.info.format & PNG_FORMAT_FLAG_COLOR) != 0;
    png.info.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png.info));
    if (!png_image_finish_read(&png.info, nullptr, buffer.data(), 0, nullptr)) {
        throw IoError("cannot decode PNG " + path.string() + ": " + png.info.message);
    }
    Image image(png.info.width, png.info.height);
    auto px = image.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        px[i] = color ? luma(buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]) : buffer[i];
    }
    return image;
}

void save_pgm(const Image& image, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
    std::vector<char> bytes(image.size());
    std::transform(image.pixels().begin(), image.pixels().end(), bytes.begin(),
                   [](double v) { return static_cast<char>(to_byte(v)); });
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

void save_png(const Image& image, const fs::path& path) {
    std::vector<std::uint8_t> bytes(image.size());
    std::transform(image.pixels().begin(), image.pixels().end(), bytes.begin(), to_byte);
    write_png(path, PNG_FORMAT_GRAY, image.width(), image.height(), bytes.data());
}

void save_png(const RgbImage& image, const fs::path& path) {
    write_png(path, PNG_FORMAT_RGB, image.width, image.height, image.data.data());
}

void save_image(const Image& image, const fs::path& path) {
    auto ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".pgm") {
        save_pgm(image, path);
    } else {
        save_png(image, path);
    }
}

RgbImage to_rgb(const Image& image) {
    RgbImage out{image.width(), image.height(), std::vector<std::uint8_t>(3 * image.size())};
    for (std::size_t i = 0; i < image.size(); ++i) {
        const auto v = to_byte(image.pixels()[i]);
        out.data[3 * i] = out.data[3 * i + 1] = out.data[3 * i + 2] = v;
    }
    return out;
}

GroundTruth load_ground_truth(const fs::path& path) {
    const auto bytes = read_file(path);
    GroundTruth truth;
    try {
        const json doc = json::parse(bytes.begin(), bytes.end());
        for (const auto& c : doc.at("corners")) {
            if (!c.is_array() || c.size() != 2) {
                throw IoError("ground-truth corners must be [x, y] pairs in " + path.string());
            }
            truth.corners.push_back({c[0].get<double>(), c[1].get<double>()});
        }
    } catch (const json::exception& e) {
        throw IoError("invalid ground-truth JSON " + path.string() + ": " + e.what());
    }
    return truth;
}

void save_ground_truth(const GroundTruth& truth, const fs::path& path) {
    json doc;
    doc["corners"] = json::array();
    for (Point2 p : truth.corners) {
        doc["corners"].push_back({p.x, p.y});
    }
    write_text(path, doc.dump(2) + "\n");
}

std::string corners_to_json(const std::vector<Corner>& corners, const DetectorConfig& config,
                            const std::string& image_id) {
    json doc;
    doc["convention"] = "x = column, y = row, origin top-left";
    doc["image"] = image_id;
    doc["config"] = json::object();
    for (const auto& [key, value] : detector_fields(config)) {
        doc["config"][key] = value;
    }
    doc["config_hash"] = config_hash(config);
    doc["corners"] = json::array();
    for (const auto& c : corners) {
        doc["corners"].push_back(
            {{"x", c.x}, {"y", c.y}, {"score", c.score}, {"measures", c.measures}});
    }
    return doc.dump(2) + "\n";
}

std::string corners_to_csv(const std::vector<Corner>& corners) {
    std::ostringstream os;
    os << "x,y,score\n";
    char buf[64];
    for (const auto& c : corners) {
        std::snprintf(buf, sizeof buf, "%.17g", c.score);
        os << c.x << ',' << c.y << ',' << buf << '\n';
    }
    return os.str();
}

std::vector<Point2> load_corner_points(const fs::path& path) {
    const auto bytes = read_file(path);
    std::vector<Point2> points;
    const auto first = std::find_if(bytes.begin(), bytes.end(),
                                    [](unsigned char c) { return !std::isspace(c); });
    if (first != bytes.end() && (*first == '{' || *first == '[')) {
        try {
            const json doc = json::parse(bytes.begin(), bytes.end());
            const json& list = doc.is_array() ? doc : doc.at("corners");
            for (const auto& c : list) {
                if (c.is_array()) {
                    points.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
                } else {
                    points.push_back({c.at("x").get<double>(), c.at("y").get<double>()});
                }
            }
        } catch (const json::exception& e) {
            throw IoError("invalid corner JSON " + path.string() + ": " + e.what());
        }
        return points;
    }

    std::istringstream in(std::string(bytes.begin(), bytes.end()));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double x = 0, y = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf", &x, &y) != 2) {
            throw IoError("malformed corner CSV line in " + path.string());
        }
        points.push_back({x, y});
    }
    return points;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

}  // namespace gcorner
