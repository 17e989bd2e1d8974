#pragma once

#include "gcorner/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace gcorner::testing {

inline Image random_image(std::size_t w, std::size_t h, std::uint64_t seed, double lo = 0.0,
                          double hi = 255.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Image img(w, h);
    for (double& v : img.pixels()) v = dist(rng);
    return img;
}

// Exactly rounded sum (Shewchuk partials), independent of summation order.
template <typename Range>
double exact_sum(const Range& values) {
    std::vector<double> partials;
    for (double x : values) {
        std::size_t i = 0;
        for (double y : partials) {
            if (std::abs(x) < std::abs(y)) std::swap(x, y);
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0) partials[i++] = lo;
            x = hi;
        }
        partials.resize(i);
        partials.push_back(x);
    }
    double total = 0.0;
    for (double p : partials) total += p;
    return total;
}

inline double max_abs(const Image& img) {
    double m = 0.0;
    for (double v : img.pixels()) m = std::max(m, std::abs(v));
    return m;
}

inline double max_abs_diff(const Image& a, const Image& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a.pixels()[i] - b.pixels()[i]));
    }
    return m;
}

// Rotates a raster 90 degrees counter-clockwise on screen: (x, y) -> (y, W - 1 - x).
inline Image rot90(const Image& img) {
    Image out(img.height(), img.width());
    for (std::size_t y = 0; y < img.height(); ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            out.at(y, img.width() - 1 - x) = img.at(x, y);
        }
    }
    return out;
}

}  // namespace gcorner::testing
