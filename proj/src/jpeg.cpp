// In-memory JPEG round trip through libjpeg.

#include "gcorner/error.hpp"
#include "gcorner/eval.hpp"

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <jpeglib.h>

namespace gcorner {

namespace {

struct ErrorManager {
    jpeg_error_mgr base;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX];
};

void on_error(j_common_ptr info) {
    auto* err = reinterpret_cast<ErrorManager*>(info->err);
    (*info->err->format_message)(info, err->message);
    std::longjmp(err->jump, 1);
}

}  // namespace

Image jpeg_roundtrip(const Image& image, int quality) {
    if (quality < 1 || quality > 100) {
        throw ConfigError("JPEG quality must be in [1, 100]");
    }
    const auto width = static_cast<JDIMENSION>(image.width());
    const auto height = static_cast<JDIMENSION>(image.height());
    std::vector<unsigned char> gray(image.size());
    std::transform(image.pixels().begin(), image.pixels().end(), gray.begin(), [](double v) {
        return static_cast<unsigned char>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
    });

    unsigned char* encoded = nullptr;
    unsigned long encoded_size = 0;
    {
        jpeg_compress_struct cinfo{};
        ErrorManager err{};
        cinfo.err = jpeg_std_error(&err.base);
        err.base.error_exit = on_error;
        if (setjmp(err.jump)) {
            jpeg_destroy_compress(&cinfo);
            std::free(encoded);
            throw IoError(std::string("JPEG encode failed: ") + err.message);
        }
        jpeg_create_compress(&cinfo);
        jpeg_mem_dest(&cinfo, &encoded, &encoded_size);
        cinfo.image_width = width;
        cinfo.image_height = height;
        cinfo.input_components = 1;
        cinfo.in_color_space = JCS_GRAYSCALE;
        jpeg_set_defaults(&cinfo);
        jpeg_set_quality(&cinfo, quality, TRUE);
        jpeg_start_compress(&cinfo, TRUE);
        while (cinfo.next_scanline < cinfo.image_height) {
            JSAMPROW row = gray.data() + static_cast<std::size_t>(cinfo.next_scanline) * width;
            jpeg_write_scanlines(&cinfo, &row, 1);
        }
        jpeg_finish_compress(&cinfo);
        jpeg_destroy_compress(&cinfo);
    }

    Image out(image.width(), image.height());
    // Allocated before setjmp: longjmp must not skip a destructor.
    std::vector<unsigned char> row(width);
    {
        jpeg_decompress_struct dinfo{};
        ErrorManager err{};
        dinfo.err = jpeg_std_error(&err.base);
        err.base.error_exit = on_error;
        if (setjmp(err.jump)) {
            jpeg_destroy_decompress(&dinfo);
            std::free(encoded);
            throw IoError(std::string("JPEG decode failed: ") + err.message);
        }
        jpeg_create_decompress(&dinfo);
        jpeg_mem_src(&dinfo, encoded, encoded_size);
        jpeg_read_header(&dinfo, TRUE);
        dinfo.out_color_space = JCS_GRAYSCALE;
        jpeg_start_decompress(&dinfo);
        while (dinfo.output_scanline < dinfo.output_height) {
            const std::size_t y = dinfo.output_scanline;
            JSAMPROW ptr = row.data();
            jpeg_read_scanlines(&dinfo, &ptr, 1);
            for (std::size_t x = 0; x < width; ++x) {
                out.at(x, y) = row[x];
            }
        }
        jpeg_finish_decompress(&dinfo);
        jpeg_destroy_decompress(&dinfo);
    }
    std::free(encoded);
    return out;
}

}  // namespace gcorner
