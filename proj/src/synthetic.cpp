#include "gcorner/synthetic.hpp"

#include "gcorner/error.hpp"
#include "gcorner/gabor.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gcorner {

namespace {

using std::numbers::pi;
constexpr double kTwoPi = 2.0 * pi;
// Angle gaps within this of pi count as a straight step edge.
constexpr double kStraightTolerance = 1e-12;

double wrap_positive(double a) noexcept {
    a = std::fmod(a, kTwoPi);
    return a < 0.0 ? a + kTwoPi : a;
}

std::vector<double> preset_angles(std::string_view name) {
    if (name == "step") return {0.0, pi};
    if (name == "L") return {0.0, pi / 2};
    if (name == "Y") return {pi / 2, 7 * pi / 6, 11 * pi / 6};
    if (name == "T") return {0.0, pi / 2, pi};
    if (name == "X") return {0.0, pi / 2, pi, 3 * pi / 2};
    if (name == "star") return {0.0, 2 * pi / 5, 4 * pi / 5, 6 * pi / 5, 8 * pi / 5};
    throw ModelError("unknown model '" + std::string(name) + "' (step, L, Y, T, X, star)");
}

}  // namespace

std::string_view to_string(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::StepEdge: return "step-edge";
        case ModelKind::L: return "L";
        case ModelKind::YorT: return "Y-or-T";
        case ModelKind::X: return "X";
        case ModelKind::Star: return "star";
    }
    return "unknown";
}

CornerModel::CornerModel(std::vector<ModelRegion> regions) : regions_(std::move(regions)) {
    if (regions_.size() < 2) {
        throw ModelError("a corner model needs at least two regions");
    }
    for (std::size_t i = 0; i < regions_.size(); ++i) {
        const auto& r = regions_[i];
        if (!std::isfinite(r.gray) || r.gray < 0.0 || r.gray > 255.0) {
            throw ModelError("region gray values must lie in [0, 255]");
        }
        if (!std::isfinite(r.start)) {
            throw ModelError("region angles must be finite");
        }
        if (i > 0 && !(r.start > regions_[i - 1].start)) {
            throw ModelError("region start angles must be strictly increasing");
        }
    }
    if (!(regions_.back().start < regions_.front().start + kTwoPi)) {
        throw ModelError("region angles must span less than 2 pi");
    }
}

double CornerModel::region_end(std::size_t i) const noexcept {
    return i + 1 < regions_.size() ? regions_[i + 1].start : regions_.front().start + kTwoPi;
}

std::size_t CornerModel::region_of(double dx, double dy) const noexcept {
    if (dx == 0.0 && dy == 0.0) {
        return 0;
    }
    const double base = regions_.front().start;
    const double rel = wrap_positive(wrap_positive(std::atan2(-dy, dx)) - base);
    std::size_t region = 0;
    for (std::size_t i = 1; i < regions_.size(); ++i) {
        if (regions_[i].start - base <= rel) {
            region = i;
        }
    }
    return region;
}

ModelKind classify_model(const CornerModel& model) {
    switch (model.region_count()) {
        case 2: {
            const double gap = model.regions()[1].start - model.regions()[0].start;
            return std::abs(gap - pi) <= kStraightTolerance ? ModelKind::StepEdge : ModelKind::L;
        }
        case 3: return ModelKind::YorT;
        case 4: return ModelKind::X;
        case 5: return ModelKind::Star;
        default:
            throw ModelError("unsupported model with " + std::to_string(model.region_count()) +
                             " regions (2..5)");
    }
}

std::vector<double> default_grays() { return {50.0, 100.0, 150.0, 200.0, 120.0}; }

CornerModel make_model(std::string_view name, const std::optional<std::vector<double>>& grays,
                       const std::optional<std::vector<double>>& angles) {
    std::vector<double> beta = preset_angles(name);  // also validates the name
    if (angles) {
        beta = *angles;
    }
    std::vector<double> t;
    if (grays) {
        t = *grays;
    } else {
        t = default_grays();
        if (beta.size() > t.size()) {
            throw ModelError("no default gray values for more than 5 regions");
        }
        t.resize(beta.size());
    }
    if (t.size() != beta.size()) {
        throw ModelError("model '" + std::string(name) + "' needs " + std::to_string(beta.size()) +
                         " gray values, got " + std::to_string(t.size()));
    }
    std::vector<ModelRegion> regions;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        regions.push_back({t[i], beta[i]});
    }
    return CornerModel(std::move(regions));
}

void RasterSpec::validate() const {
    if (side < 65 || side % 2 == 0) {
        throw ModelError("raster side must be odd and >= 65, got " + std::to_string(side));
    }
}

RenderedModel render_model(const CornerModel& model, const RasterSpec& raster) {
    raster.validate();
    const auto side = static_cast<std::size_t>(raster.side);
    const int c = raster.side / 2;
    Image image(side, side);
    const auto& regions = model.regions();
    for (int y = 0; y < raster.side; ++y) {
        for (int x = 0; x < raster.side; ++x) {
            const double dx = x - c;
            const double dy = y - c;
            double v;
            if (raster.supersample && !(x == c && y == c)) {
                v = 0.0;
                for (double oy : {-0.25, 0.25}) {
                    for (double ox : {-0.25, 0.25}) {
                        v += regions[model.region_of(dx + ox, dy + oy)].gray;
                    }
                }
                v *= 0.25;
            } else {
                v = regions[model.region_of(dx, dy)].gray;
            }
            image.at(static_cast<std::size_t>(x), static_cast<std::size_t>(y)) = v;
        }
    }
    return {std::move(image), Pixel{c, c}};
}

std::vector<double> model_filter_response(const CornerModel& model, double frequency,
                                          int directions, const RasterSpec& raster, double gamma,
                                          double eta) {
    const KernelBank bank({frequency}, directions, gamma, eta);
    raster.validate();
    const int h = bank.max_half_width();
    const int c = raster.side / 2;
    if (h > c) {
        throw SizeError("raster side " + std::to_string(raster.side) +
                        " too small for kernel half width " + std::to_string(h));
    }
    const RenderedModel rendered = render_model(model, raster);
    std::vector<double> out;
    for (int k = 0; k < directions; ++k) {
        const KernelGrid& kernel = bank.kernel(0, static_cast<std::size_t>(k));
        double acc = 0.0;
        for (int v = -h; v <= h; ++v) {
            for (int u = -h; u <= h; ++u) {
                acc += kernel.at(u, v) * rendered.image.at(static_cast<std::size_t>(c - u),
                                                           static_cast<std::size_t>(c - v));
            }
        }
        out.push_back(acc);
    }
    return out;
}

}  // namespace gcorner
