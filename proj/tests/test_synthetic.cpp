#include "gcorner/error.hpp"
#include "gcorner/synthetic.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

using namespace gcorner;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Direct angular membership test, independent of CornerModel::region_of.
std::size_t region_oracle(const CornerModel& m, int dx, int dy) {
    if (dx == 0 && dy == 0) return 0;
    const double up = dy == 0 ? 0.0 : -static_cast<double>(dy);
    double angle = std::atan2(up, static_cast<double>(dx));
    if (angle < 0) angle += kTwoPi;
    const auto& r = m.regions();
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double lo = r[i].start;
        const double hi = i + 1 < r.size() ? r[i + 1].start : r.front().start + kTwoPi;
        for (double a : {angle, angle + kTwoPi}) {
            if (a >= lo && a < hi) return i;
        }
    }
    return r.size();
}

const char* const kModels[] = {"step", "L", "Y", "T", "X", "star"};

}  // namespace

TEST(Synthetic, RenderMatchesBruteForce) {
    for (const char* name : kModels) {
        const CornerModel m = make_model(name);
        const RenderedModel r = render_model(m);
        ASSERT_EQ(r.image.width(), 129u);
        ASSERT_EQ(r.vertex, (Pixel{64, 64}));
        for (int y = 0; y < 129; ++y) {
            for (int x = 0; x < 129; ++x) {
                const std::size_t region = region_oracle(m, x - 64, y - 64);
                ASSERT_LT(region, m.region_count());
                ASSERT_EQ(r.image.at(x, y), m.regions()[region].gray) << name << " " << x << "," << y;
            }
        }
    }
}

TEST(Synthetic, RegionsTileAndKeepGrays) {
    for (const char* name : kModels) {
        const CornerModel m = make_model(name);
        const RenderedModel r = render_model(m, RasterSpec{101});
        std::vector<std::size_t> counts(m.region_count(), 0);
        for (int y = 0; y < 101; ++y) {
            for (int x = 0; x < 101; ++x) {
                ++counts[m.region_of(x - 50, y - 50)];
            }
        }
        std::size_t total = 0;
        for (std::size_t c : counts) {
            EXPECT_GT(c, 0u);
            total += c;
        }
        EXPECT_EQ(total, 101u * 101u);
        const std::set<double> seen(r.image.pixels().begin(), r.image.pixels().end());
        std::set<double> expected;
        for (const auto& reg : m.regions()) expected.insert(reg.gray);
        EXPECT_EQ(seen, expected) << name;
    }
}

TEST(Synthetic, StepEdgeRowsAreConstant) {
    const RenderedModel r = render_model(make_model("step", std::vector<double>{50, 100}));
    for (std::size_t y = 0; y < 129; ++y) {
        if (y == 64) continue;
        for (std::size_t x = 1; x < 129; ++x) {
            ASSERT_EQ(r.image.at(x, y), r.image.at(0, y));
        }
        EXPECT_EQ(r.image.at(0, y), y < 64 ? 50.0 : 100.0);
    }
}

TEST(Synthetic, Classification) {
    EXPECT_EQ(classify_model(make_model("step")), ModelKind::StepEdge);
    EXPECT_EQ(classify_model(make_model("L")), ModelKind::L);
    EXPECT_EQ(classify_model(make_model("Y")), ModelKind::YorT);
    EXPECT_EQ(classify_model(make_model("T")), ModelKind::YorT);
    EXPECT_EQ(classify_model(make_model("X")), ModelKind::X);
    EXPECT_EQ(classify_model(make_model("star")), ModelKind::Star);
    const CornerModel six({{10, 0}, {20, 1}, {30, 2}, {40, 3}, {50, 4}, {60, 5}});
    EXPECT_THROW(classify_model(six), ModelError);
}

TEST(Synthetic, Validation) {
    EXPECT_THROW(CornerModel({{50, 0}}), ModelError);
    EXPECT_THROW(CornerModel({{50, 1}, {100, 0.5}}), ModelError);
    EXPECT_THROW(CornerModel({{50, 0}, {300, 1}}), ModelError);
    EXPECT_THROW(CornerModel({{50, 0}, {100, kTwoPi}}), ModelError);
    EXPECT_THROW(make_model("Z"), ModelError);
    EXPECT_THROW(make_model("L", std::vector<double>{1, 2, 3}), ModelError);
    EXPECT_THROW(render_model(make_model("L"), RasterSpec{64}), ModelError);
    EXPECT_THROW(render_model(make_model("L"), RasterSpec{63}), ModelError);
}

TEST(Synthetic, SupersampleOnlyTouchesBoundaries) {
    const CornerModel m = make_model("Y");
    const RenderedModel hard = render_model(m);
    const RenderedModel soft = render_model(m, RasterSpec{129, true});
    std::size_t changed = 0;
    for (std::size_t i = 0; i < hard.image.size(); ++i) {
        if (hard.image.pixels()[i] != soft.image.pixels()[i]) ++changed;
    }
    EXPECT_GT(changed, 0u);
    EXPECT_LT(changed, 3u * 129u);
    EXPECT_EQ(soft.image.at(0, 64), hard.image.at(0, 64));
}

TEST(ModelResponse, ConstantModelIsNull) {
    const CornerModel flat = make_model("L", std::vector<double>{200, 200});
    for (double f : {0.15, 0.2, 0.25}) {
        for (double v : model_filter_response(flat, f, 6)) {
            EXPECT_LT(std::abs(v), 1e-9 * 200);
        }
    }
}

TEST(ModelResponse, ModelsAreDistinguishable) {
    const std::vector<const char*> names = {"step", "L", "Y", "X", "star"};
    const CornerModel flat = make_model("L", std::vector<double>{200, 200});
    double floor = 0.0;
    for (double v : model_filter_response(flat, 0.2, 6)) floor = std::max(floor, std::abs(v));
    std::vector<std::vector<double>> resp;
    for (const char* n : names) resp.push_back(model_filter_response(make_model(n), 0.2, 6));
    for (std::size_t a = 0; a < resp.size(); ++a) {
        for (std::size_t b = a + 1; b < resp.size(); ++b) {
            double d = 0.0;
            for (std::size_t k = 0; k < 6; ++k) d = std::max(d, std::abs(resp[a][k] - resp[b][k]));
            EXPECT_GT(d, 0.0);
            EXPECT_GT(d, 10 * floor) << names[a] << " vs " << names[b];
        }
    }
}

TEST(ModelResponse, QuarterTurnPermutesResponses) {
    const double half = std::numbers::pi / 2;
    const CornerModel l = make_model("L");
    const CornerModel turned = make_model("L", std::nullopt, std::vector<double>{half, 2 * half});
    const auto a = model_filter_response(l, 0.2, 6);
    const auto b = model_filter_response(turned, 0.2, 6);
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    // A quarter turn advances the direction by three steps; passing pi negates the odd kernel.
    for (std::size_t k = 0; k < 6; ++k) {
        const double expected = k < 3 ? a[k + 3] : -a[k - 3];
        EXPECT_NEAR(b[k], expected, 1e-9 * scale) << k;
    }
}

TEST(ModelResponse, KernelMustFit) {
    EXPECT_THROW(model_filter_response(make_model("L"), 0.05, 6, RasterSpec{65}), SizeError);
}
