#include "gcorner/eval.hpp"

#include "gcorner/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

namespace gcorner {

namespace {

struct Candidate {
    double distance;
    std::size_t a;
    std::size_t b;
};

bool lex_less(Point2 p, Point2 q) noexcept { return std::tie(p.x, p.y) < std::tie(q.x, q.y); }

/// One-to-one greedy matching in ascending distance. Ties are ordered by the
/// unordered pair of coordinates, so swapping the two sets yields the same pairs.
template <typename Accept>
std::vector<Candidate> greedy_match(std::span<const Point2> first, std::span<const Point2> second,
                                    Accept accept) {
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < first.size(); ++i) {
        for (std::size_t j = 0; j < second.size(); ++j) {
            const double d = std::hypot(first[i].x - second[j].x, first[i].y - second[j].y);
            if (accept(d)) {
                candidates.push_back({d, i, j});
            }
        }
    }
    auto key = [&](const Candidate& c) {
        const Point2 p = first[c.a];
        const Point2 q = second[c.b];
        const Point2 lo = lex_less(q, p) ? q : p;
        const Point2 hi = lex_less(q, p) ? p : q;
        return std::make_tuple(c.distance, lo.x, lo.y, hi.x, hi.y);
    };
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](const Candidate& l, const Candidate& r) { return key(l) < key(r); });

    std::vector<bool> used_first(first.size(), false);
    std::vector<bool> used_second(second.size(), false);
    std::vector<Candidate> chosen;
    for (const auto& c : candidates) {
        if (!used_first[c.a] && !used_second[c.b]) {
            used_first[c.a] = true;
            used_second[c.b] = true;
            chosen.push_back(c);
        }
    }
    return chosen;
}

std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

void GroundTruth::validate(std::size_t width, std::size_t height) const {
    for (std::size_t i = 0; i < corners.size(); ++i) {
        const Point2 p = corners[i];
        if (!(p.x >= 0.0) || !(p.y >= 0.0) || p.x > static_cast<double>(width - 1) ||
            p.y > static_cast<double>(height - 1)) {
            throw ConfigError("ground-truth corner " + std::to_string(i) + " lies outside the image");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (std::hypot(p.x - corners[j].x, p.y - corners[j].y) < 1.0) {
                throw ConfigError("ground-truth corners " + std::to_string(j) + " and " +
                                  std::to_string(i) + " are closer than 1 px");
            }
        }
    }
}

MatchResult match_corners(std::span<const Point2> detected, std::span<const Point2> truth,
                          double tau) {
    if (!(tau > 0.0)) {
        throw ConfigError("match distance tau must be positive");
    }
    const auto chosen = greedy_match(detected, truth, [tau](double d) { return d < tau; });
    MatchResult result;
    for (const auto& c : chosen) {
        result.pairs.push_back({detected[c.a], truth[c.b], c.distance, c.a, c.b});
    }
    result.missed = truth.size() - result.pairs.size();
    result.false_count = detected.size() - result.pairs.size();
    result.localization_error = localization_error(result.pairs);
    return result;
}

std::optional<double> localization_error(std::span<const MatchedPair> pairs) {
    if (pairs.empty()) {
        return std::nullopt;
    }
    double sum = 0.0;
    for (const auto& p : pairs) {
        const double dx = p.detected.x - p.truth.x;
        const double dy = p.detected.y - p.truth.y;
        sum += dx * dx + dy * dy;
    }
    return std::sqrt(sum / static_cast<double>(pairs.size()));
}

std::optional<double> average_repeatability(std::size_t original, std::size_t transformed,
                                            std::size_t repeated) noexcept {
    if (original == 0 || transformed == 0) {
        return std::nullopt;
    }
    // D_r (D_ip + D_it) / (2 D_ip D_it): exact integers, one rounding.
    const auto num = static_cast<double>(repeated * (original + transformed));
    const auto den = static_cast<double>(2 * original * transformed);
    return num / den;
}

RepeatabilityResult repeatability(std::span<const Point2> original,
                                  std::span<const Point2> transformed, const Affine2D& map,
                                  double radius) {
    std::vector<Point2> mapped;
    mapped.reserve(original.size());
    for (Point2 p : original) {
        mapped.push_back(map.apply(p));
    }
    const auto chosen =
        greedy_match(mapped, transformed, [radius](double d) { return d <= radius; });
    RepeatabilityResult r;
    r.original = original.size();
    r.transformed = transformed.size();
    r.repeated = chosen.size();
    r.omega = average_repeatability(r.original, r.transformed, r.repeated);
    return r;
}

std::string_view to_string(TransformFamily family) noexcept {
    switch (family) {
        case TransformFamily::Rotation: return "rotation";
        case TransformFamily::UniformScale: return "uniform-scale";
        case TransformFamily::NonUniformScale: return "non-uniform-scale";
        case TransformFamily::Shear: return "shear";
        case TransformFamily::Jpeg: return "jpeg";
        case TransformFamily::Noise: return "gaussian-noise";
    }
    return "unknown";
}

TransformFamily parse_family(std::string_view name) {
    if (name == "rot" || name == "rotation") return TransformFamily::Rotation;
    if (name == "scale" || name == "uniform-scale") return TransformFamily::UniformScale;
    if (name == "nscale" || name == "non-uniform-scale") return TransformFamily::NonUniformScale;
    if (name == "shear") return TransformFamily::Shear;
    if (name == "jpeg") return TransformFamily::Jpeg;
    if (name == "noise" || name == "gaussian-noise") return TransformFamily::Noise;
    throw ConfigError("unknown transform family '" + std::string(name) + "'");
}

std::vector<TransformFamily> all_families() {
    return {TransformFamily::Rotation, TransformFamily::UniformScale,
            TransformFamily::NonUniformScale, TransformFamily::Shear,
            TransformFamily::Jpeg, TransformFamily::Noise};
}

std::vector<TransformCase> transform_cases(std::span<const TransformFamily> families) {
    std::vector<TransformCase> cases;
    auto add = [&](TransformFamily f, double v, double vy = 0.0) {
        cases.push_back({f, v, vy, cases.size()});
    };
    // Parameters are built from integers so that 0.1 steps are exact decimal values.
    for (TransformFamily family : all_families()) {
        if (std::find(families.begin(), families.end(), family) == families.end()) {
            continue;
        }
        switch (family) {
            case TransformFamily::Rotation:
                for (int d = -90; d <= 90; d += 10) {
                    if (d != 0) add(family, d);
                }
                break;
            case TransformFamily::UniformScale:
                for (int s = 5; s <= 20; ++s) {
                    if (s != 10) add(family, s / 10.0);
                }
                break;
            case TransformFamily::NonUniformScale:
                for (int sx = 7; sx <= 15; ++sx) {
                    for (int sy = 5; sy <= 18; ++sy) {
                        if (sx != 10 || sy != 10) add(family, sx / 10.0, sy / 10.0);
                    }
                }
                break;
            case TransformFamily::Shear:
                for (int p = -10; p <= 10; ++p) {
                    if (p != 0) add(family, p / 10.0);
                }
                break;
            case TransformFamily::Jpeg:
                for (int q = 5; q <= 100; q += 5) {
                    add(family, q);
                }
                break;
            case TransformFamily::Noise:
                for (int s = 1; s <= 15; ++s) {
                    add(family, s);
                }
                break;
        }
    }
    return cases;
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
    return splitmix64(splitmix64(seed_) ^ counter);
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t counter) const noexcept {
    const double u1 = uniform(2 * counter);
    const double u2 = uniform(2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Image add_gaussian_noise(const Image& image, double sigma, std::uint64_t seed) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw ConfigError("noise sigma must be non-negative");
    }
    const CounterRng rng(seed);
    Image out = image;
    auto px = out.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) {
        const double v = px[i] + sigma * rng.normal(i);
        px[i] = std::clamp(std::floor(v + 0.5), 0.0, 255.0);
    }
    return out;
}

TransformedImage apply_transform(const Image& image, const TransformCase& transform,
                                 std::uint64_t base_seed, WarpFill fill) {
    TransformedImage out{transform, {}, Affine2D::identity()};
    auto warp = [&](const AffineSpec& spec) {
        WarpResult w = affine_warp(image, spec, fill);
        out.image = std::move(w.image);
        out.map = w.map;
    };
    switch (transform.family) {
        case TransformFamily::Rotation:
            warp({transform.value * std::numbers::pi / 180.0, 1.0, 1.0, 0.0});
            break;
        case TransformFamily::UniformScale:
            warp({0.0, transform.value, transform.value, 0.0});
            break;
        case TransformFamily::NonUniformScale:
            warp({0.0, transform.value, transform.value_y, 0.0});
            break;
        case TransformFamily::Shear:
            warp({0.0, 1.0, 1.0, transform.value});
            break;
        case TransformFamily::Jpeg:
            out.image = jpeg_roundtrip(image, static_cast<int>(transform.value));
            break;
        case TransformFamily::Noise:
            out.image = add_gaussian_noise(image, transform.value, base_seed ^ transform.index);
            break;
    }
    return out;
}

std::vector<TransformedImage> generate_transform_suite(const Image& image, std::uint64_t seed,
                                                       std::span<const TransformFamily> families,
                                                       WarpFill fill) {
    std::vector<TransformedImage> suite;
    for (const auto& c : transform_cases(families)) {
        suite.push_back(apply_transform(image, c, seed, fill));
    }
    return suite;
}

}  // namespace gcorner
