// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.
#include "gcorner/cli.hpp"
#include "gcorner/detector.hpp"
#include "gcorner/eigen.hpp"
#include "gcorner/eval.hpp"
#include "gcorner/filter.hpp"
#include "gcorner/gabor.hpp"
#include "gcorner/synthetic.hpp"
#include "gcorner/tensor.hpp"
#include "gcorner/warp.hpp"
#include "support.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace gcorner;
using gcorner::testing::max_abs;
using gcorner::testing::random_image;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

int failures = 0;

void report(const char* name, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s%s%s\n", o.pass ? "PASS" : "FAIL", name, o.detail.empty() ? "" : " :: ",
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<Point2> points(const std::vector<Corner>& corners) {
    std::vector<Point2> out;
    for (const auto& c : corners) out.push_back({double(c.x), double(c.y)});
    return out;
}

// Convex polygon filled where every edge cross product is >= 0 (raster coordinates).
void fill_polygon(Image& img, const std::vector<Point2>& poly, double gray) {
    for (std::size_t y = 0; y < img.height(); ++y) {
        for (std::size_t x = 0; x < img.width(); ++x) {
            bool inside = true;
            for (std::size_t i = 0; i < poly.size() && inside; ++i) {
                const Point2 a = poly[i];
                const Point2 b = poly[(i + 1) % poly.size()];
                const double cross = (b.x - a.x) * (double(y) - a.y) - (b.y - a.y) * (double(x) - a.x);
                inside = cross >= 0;
            }
            if (inside) img.at(x, y) = gray;
        }
    }
}

struct Scene {
    Image image;
    std::size_t vertices = 0;
};

Scene composite_scene() {
    Scene s{Image(257, 257, 50.0), 0};
    const std::vector<std::pair<std::vector<Point2>, double>> shapes = {
        {{{40, 40}, {100, 40}, {100, 100}, {40, 100}}, 150.0},
        {{{150, 40}, {215, 40}, {215, 100}, {150, 100}}, 200.0},
        {{{70, 150}, {120, 215}, {30, 215}}, 170.0},
        {{{180, 140}, {220, 180}, {180, 220}, {140, 180}}, 120.0},
    };
    for (const auto& [poly, gray] : shapes) {
        fill_polygon(s.image, poly, gray);
        s.vertices += poly.size();
    }
    return s;
}

Outcome synthetic_suite() {
    Outcome o;
    const DetectorConfig cfg;
    const auto start = std::chrono::steady_clock::now();
    for (const char* name : {"L", "Y", "T", "X", "star"}) {
        const RenderedModel m = render_model(make_model(name));
        const auto corners = detect(m.image, cfg);
        const std::vector<Point2> truth{{double(m.vertex.x), double(m.vertex.y)}};
        const MatchResult r = match_corners(points(corners), truth, 4.0);
        o.require(corners.size() == 1, std::string(name) + " reported " + std::to_string(corners.size()));
        o.require(r.pairs.size() == 1, std::string(name) + " vertex not matched");
        if (r.localization_error) {
            o.require(*r.localization_error <= 2.0,
                      std::string(name) + " L_ce " + fmt(*r.localization_error));
            o.detail += std::string(o.detail.empty() ? "" : ", ") + name + " L_ce=" + fmt(*r.localization_error);
        }
    }
    const RenderedModel step = render_model(make_model("step"));
    const auto edge = detect(step.image, cfg);
    o.require(edge.empty(), "step edge reported " + std::to_string(edge.size()));
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < 10.0, "runtime " + fmt(secs) + " s");
    o.detail += ", runtime=" + fmt(secs) + "s";
    return o;
}

Outcome affine_robustness() {
    Outcome o;
    const DetectorConfig cfg;
    const Scene scene = composite_scene();
    o.require(scene.vertices >= 8, "scene has " + std::to_string(scene.vertices) + " vertices");
    const auto base = points(detect(scene.image, cfg));
    o.detail = "vertices=" + std::to_string(scene.vertices) + " detected=" + std::to_string(base.size());
    struct Case {
        const char* name;
        AffineSpec spec;
        double bound;
    };
    const Case cases[] = {
        {"rot90", {std::numbers::pi / 2}, 0.95},
        {"rot10", {10 * std::numbers::pi / 180}, 0.70},
        {"scale1.2", {0.0, 1.2, 1.2}, 0.70},
    };
    for (const Case& c : cases) {
        const WarpResult w = affine_warp(scene.image, c.spec);
        const auto found = points(detect(w.image, cfg));
        const RepeatabilityResult r = repeatability(base, found, w.map, 2.0);
        const double omega = r.omega.value_or(0.0);
        o.require(omega >= c.bound, std::string(c.name) + " omega " + fmt(omega));
        o.detail += std::string(", ") + c.name + "=" + fmt(omega);
    }
    return o;
}

Outcome oracle_equivalences() {
    Outcome o;
    // (a) FFT path vs literal double sum.
    const KernelGrid k = imaginary_kernel({0.2, 0.0, 0.6, 1.2});
    double worst_a = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Image img = random_image(33, 33, seed);
        const Image padded = pad_image(img, k.half_width(), Boundary::Reflect);
        const Image fast = convolve(img, k, Boundary::Reflect, ConvEngine::Fft);
        const int h = k.half_width();
        double num = 0.0;
        double den = 0.0;
        for (int y = 0; y < 33; ++y) {
            for (int x = 0; x < 33; ++x) {
                double acc = 0.0;
                for (int b = -h; b <= h; ++b) {
                    for (int a = -h; a <= h; ++a) {
                        acc += k.at(a, b) * padded.at(x - a + h, y - b + h);
                    }
                }
                num = std::max(num, std::abs(fast.at(x, y) - acc));
                den = std::max(den, std::abs(acc));
            }
        }
        worst_a = std::max(worst_a, num / den);
    }
    o.require(worst_a <= 1e-8, "(a) " + fmt(worst_a));

    // (b) structure tensor vs brute-force sums.
    const ResponseStack stack = apply_bank(random_image(64, 64, 9), default_bank());
    const CircularMask mask(DetectorConfig{}.window_n);
    const int r = mask.radius();
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> coord(0, 63);
    double worst_b = 0.0;
    for (int t = 0; t < 20; ++t) {
        const int x = coord(rng);
        const int y = coord(rng);
        const SymmetricMatrix m = structure_tensor(stack, 1, x, y, mask);
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                double acc = 0.0;
                for (int w = -r; w <= r; ++w) {
                    for (int v = -r; v <= r; ++v) {
                        if (v * v + w * w > r * r || x + v < 0 || y + w < 0 || x + v > 63 || y + w > 63) continue;
                        acc += stack.plane(1, i).at(x + v, y + w) * stack.plane(1, j).at(x + v, y + w);
                    }
                }
                worst_b = std::max(worst_b, std::abs(m(i, j) - acc) / std::max(std::abs(acc), 1e-300));
            }
        }
    }
    o.require(worst_b <= 1e-10, "(b) " + fmt(worst_b));

    // (c) Q Lambda Q^T reconstruction.
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double worst_c = 0.0;
    for (int t = 0; t < 1000; ++t) {
        SymmetricMatrix m(6);
        double norm = 0.0;
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = i; j < 6; ++j) m(i, j) = m(j, i) = dist(rng);
        }
        for (double v : m.data()) norm += v * v;
        const EigenDecomposition e = jacobi_eigen(m);
        double err = 0.0;
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                double acc = 0.0;
                for (std::size_t c = 0; c < 6; ++c) acc += e.vectors[i * 6 + c] * e.values[c] * e.vectors[j * 6 + c];
                err = std::max(err, std::abs(acc - m(i, j)));
            }
        }
        worst_c = std::max(worst_c, err / std::sqrt(norm));
    }
    o.require(worst_c <= 1e-9, "(c) " + fmt(worst_c));

    // (d) measure for lambda = 1..6.
    const double rho = DetectorConfig{}.rho;
    const std::vector<double> lam{1, 2, 3, 4, 5, 6};
    const double d = std::abs(corner_measure(lam, rho) - 720.0 / (21.0 + rho));
    o.require(d <= 1e-12, "(d) " + fmt(d));
    o.detail += "fft=" + fmt(worst_a) + " tensor=" + fmt(worst_b) + " eigen=" + fmt(worst_c) +
                " measure=" + fmt(d);
    return o;
}

Outcome kernel_identities() {
    Outcome o;
    const KernelBank bank = default_bank();
    o.require(bank.size() == 18, "bank size " + std::to_string(bank.size()));
    double worst_ratio = 0.0;
    for (std::size_t s = 0; s < bank.scale_count(); ++s) {
        for (std::size_t d = 0; d < 6; ++d) {
            const KernelGrid& k = bank.kernel(s, d);
            const int h = k.half_width();
            double peak = 0.0;
            double border = 0.0;
            bool antisym = true;
            for (int y = -h; y <= h; ++y) {
                for (int x = -h; x <= h; ++x) {
                    antisym = antisym && k.at(x, y) == -k.at(-x, -y);
                    peak = std::max(peak, std::abs(k.at(x, y)));
                    if (std::abs(x) == h || std::abs(y) == h) border = std::max(border, std::abs(k.at(x, y)));
                }
            }
            const double sum = gcorner::testing::exact_sum(k.taps());
            const std::string id = "s" + std::to_string(s) + "k" + std::to_string(d);
            o.require(k.at(0, 0) == 0.0, id + " centre tap");
            o.require(antisym, id + " antisymmetry");
            o.require(sum == 0.0, id + " tap sum " + fmt(sum));
            o.require(border / peak < 1e-4, id + " border ratio " + fmt(border / peak));
            worst_ratio = std::max(worst_ratio, border / peak);
        }
    }
    o.detail += "kernels=18 worst_border_ratio=" + fmt(worst_ratio);
    return o;
}

Outcome null_responses() {
    Outcome o;
    const DetectorConfig cfg;
    for (double c : {0.0, 100.0, 255.0}) {
        const Image img(129, 129, c);
        double worst = 0.0;
        for (const Image& m : measure_map(img, cfg)) worst = std::max(worst, max_abs(m));
        o.require(worst < 1e-9, "value " + fmt(c) + " measure " + fmt(worst));
        const auto corners = detect(img, cfg);
        o.require(corners.empty(), "value " + fmt(c) + " corners " + std::to_string(corners.size()));
    }
    return o;
}

Outcome metric_arithmetic() {
    Outcome o;
    const std::vector<Point2> gt{{10, 10}, {40, 5}};
    const MatchResult same = match_corners(gt, gt);
    o.require(same.missed == 0 && same.false_count == 0 && same.localization_error == 0.0,
              "identical sets");
    const MatchResult none = match_corners({}, gt);
    o.require(none.missed == 2 && none.false_count == 0 && !none.localization_error, "empty detections");
    const MatchResult one = match_corners(std::vector<Point2>{{13, 10}}, std::vector<Point2>{{10, 10}}, 4.0);
    o.require(one.pairs.size() == 1 && one.localization_error == 3.0, "single pair L_ce");
    auto pair = [](Point2 d, Point2 t) { return MatchedPair{d, t, std::hypot(d.x - t.x, d.y - t.y), 0, 0}; };
    o.require(localization_error(std::vector{pair({0, 0}, {0, 0})}) == 0.0, "L_ce zero");
    o.require(localization_error(std::vector{pair({0, 0}, {3, 4})}) == 5.0, "L_ce 3-4-5");
    const auto two = localization_error(std::vector{pair({0, 0}, {1, 0}), pair({0, 0}, {0, 2})});
    o.require(two && *two == std::sqrt(2.5), "L_ce two pairs");
    const std::vector<Point2> pts{{10, 10}, {20, 30}};
    o.require(repeatability(pts, pts, Affine2D::identity()).omega == 1.0, "omega identity");
    o.require(repeatability(pts, std::vector<Point2>{{200, 200}}, Affine2D::identity()).omega == 0.0,
              "omega no match");
    const auto omega = average_repeatability(10, 20, 8);
    o.require(omega == 0.6, "omega(10,20,8) = " + fmt(omega.value_or(-1)));
    o.detail = "omega(10,20,8)=" + fmt(omega.value_or(-1));
    return o;
}

Outcome transform_suite_shape() {
    Outcome o;
    const std::pair<TransformFamily, std::size_t> expected[] = {
        {TransformFamily::Rotation, 18}, {TransformFamily::UniformScale, 15},
        {TransformFamily::NonUniformScale, 125}, {TransformFamily::Shear, 20},
        {TransformFamily::Jpeg, 20}, {TransformFamily::Noise, 15},
    };
    for (const auto& [family, count] : expected) {
        const TransformFamily one[] = {family};
        const std::size_t got = transform_cases(one).size();
        o.require(got == count, std::string(to_string(family)) + " " + std::to_string(got));
        o.detail += std::string(o.detail.empty() ? "" : "/") + std::to_string(got);
    }
    const Image base = random_image(96, 96, 3);
    const TransformFamily noise[] = {TransformFamily::Noise};
    const auto a = generate_transform_suite(base, 1234, noise);
    const auto b = generate_transform_suite(base, 1234, noise);
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].image == b[i].image;
    o.require(same, "noise cases not reproducible");

    const Image flat(256, 256, 128.0);
    const Image noisy = add_gaussian_noise(flat, 15.0, 1234);
    double sum = 0.0;
    double sq = 0.0;
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        const double d = noisy.pixels()[i] - 128.0;
        sum += d;
        sq += d * d;
    }
    const double n = static_cast<double>(noisy.size());
    const double sd = std::sqrt(sq / n - (sum / n) * (sum / n));
    o.require(std::abs(sd - 15.0) <= 0.75, "noise std " + fmt(sd));
    o.detail += " noise_std=" + fmt(sd);
    return o;
}

Outcome end_to_end_cli() {
    Outcome o;
    const fs::path dir = fs::temp_directory_path() / "gcorner_acceptance_cli";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string img = (dir / "L.png").string();
    const std::string gt = (dir / "gt.json").string();
    const std::string corners = (dir / "corners.json").string();
    const std::string rep = (dir / "report.json").string();
    std::ostringstream out;
    std::ostringstream err;
    const int synth = run_cli({"synth", "--model", "L", "--size", "129", "--out", img, "--gt", gt}, out, err);
    const int det = run_cli({"detect", img, "--out", corners}, out, err);
    const int bench = run_cli({"bench", img, "--gt", gt, "--report", rep}, out, err);
    o.require(synth == 0 && det == 0 && bench == 0,
              "exit codes " + std::to_string(synth) + "/" + std::to_string(det) + "/" +
                  std::to_string(bench) + " " + err.str());
    if (bench == 0) {
        std::ifstream in(rep);
        const auto doc = nlohmann::json::parse(in);
        const auto missed = doc.at("missed").get<int>();
        const auto false_count = doc.at("false").get<int>();
        o.require(missed == 0 && false_count == 0,
                  "missed=" + std::to_string(missed) + " false=" + std::to_string(false_count));
        o.detail = "missed=" + std::to_string(missed) + " false=" + std::to_string(false_count);
    }
    fs::remove_all(dir);
    return o;
}

}  // namespace

int main() {
    report("synthetic-corner-model-suite", synthetic_suite);
    report("affine-robustness-composite-scene", affine_robustness);
    report("oracle-equivalences", oracle_equivalences);
    report("kernel-identities", kernel_identities);
    report("null-responses", null_responses);
    report("metric-arithmetic", metric_arithmetic);
    report("transform-suite-shape", transform_suite_shape);
    report("end-to-end-cli", end_to_end_cli);
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
