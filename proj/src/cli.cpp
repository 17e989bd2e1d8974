#include "gcorner/cli.hpp"

#include "gcorner/config.hpp"
#include "gcorner/detector.hpp"
#include "gcorner/error.hpp"
#include "gcorner/eval.hpp"
#include "gcorner/io.hpp"
#include "gcorner/overlay.hpp"
#include "gcorner/parallel.hpp"
#include "gcorner/synthetic.hpp"
#include "gcorner/warp.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>

namespace gcorner {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

// Command-line overrides keyed by config name; applied after --config.
struct Overrides {
    std::map<std::string, std::string> values;

    void add_detector_flags(CLI::App& app) {
        const std::pair<const char*, const char*> flags[] = {
            {"scales", "comma-separated frequencies"},
            {"directions", "directions per scale (K)"},
            {"gamma", "along-direction bandwidth"},
            {"eta", "cross-direction bandwidth"},
            {"window_n", "tensor window parameter (even)"},
            {"nms_p", "NMS region width minus one"},
            {"nms_q", "NMS region height minus one"},
            {"threshold", "corner threshold T_h"},
            {"rho", "measure denominator guard"},
            {"boundary", "reflect | replicate | zero"},
            {"engine", "auto | direct | fft"},
            {"nms_scale", "finest | coarsest | min | scale index"},
        };
        for (const auto& [key, help] : flags) {
            add(app, key, help);
        }
    }

    void add(CLI::App& app, const std::string& key, const std::string& help) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        app.add_option_function<std::string>(
            flag, [this, key](const std::string& v) { values[key] = v; }, help);
    }

    RunConfig resolve(const std::string& config_path) const {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        for (const auto& [k, v] : values) {
            cfg.set(k, v);
        }
        cfg.validate();
        return cfg;
    }
};

std::vector<double> parse_doubles(const std::string& text, const char* what) {
    std::vector<double> out;
    std::string_view rest = text;
    while (true) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
            throw CLI::ValidationError(what, "expected comma-separated numbers, got '" + text + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

std::vector<Point2> to_points(const std::vector<Corner>& corners) {
    std::vector<Point2> out;
    out.reserve(corners.size());
    for (const auto& c : corners) {
        out.push_back({static_cast<double>(c.x), static_cast<double>(c.y)});
    }
    return out;
}

json config_json(const RunConfig& cfg) {
    json j = json::object();
    for (const auto& [k, v] : detector_fields(cfg.detector)) {
        j[k] = v;
    }
    j["seed"] = cfg.seed;
    j["format"] = cfg.format;
    j["tau"] = cfg.tau;
    j["repeat_radius"] = cfg.repeat_radius;
    return j;
}

json affine_json(const Affine2D& m) {
    return {{"a11", m.a11}, {"a12", m.a12}, {"a21", m.a21},
            {"a22", m.a22}, {"tx", m.tx},   {"ty", m.ty}};
}

json optional_number(const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
}

bool has_extension(const std::string& path, const char* ext) {
    std::string e = fs::path(path).extension().string();
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
    return e == ext;
}

struct DetectArgs {
    std::string image;
    std::string config;
    std::string out;
    std::string overlay;
    std::string dump_responses;
    std::string dump_kernels;
    Overrides overrides;
};

int run_detect(const DetectArgs& a, std::ostream& out) {
    const RunConfig cfg = a.overrides.resolve(a.config);
    const Image image = load_image(a.image);
    const DetectorConfig& d = cfg.detector;
    if (!a.dump_kernels.empty()) {
        dump_kernels(d.bank(), a.dump_kernels);
    }
    std::vector<Corner> corners;
    if (a.dump_responses.empty()) {
        corners = detect(image, d);
    } else {
        measure_map(image, d);  // size and finiteness checks
        const KernelBank bank = d.bank();
        const ResponseStack stack = apply_bank(image, bank, d.boundary, d.engine);
        dump_responses(stack, bank, a.dump_responses);
        corners = select_corners(measure_map(stack, d), d);
    }
    const bool csv = a.out.empty() ? cfg.format == "csv" : has_extension(a.out, ".csv");
    const std::string text =
        csv ? corners_to_csv(corners) : corners_to_json(corners, d, fs::path(a.image).filename().string());
    if (a.out.empty()) {
        out << text;
    } else {
        write_text(a.out, text);
    }
    if (!a.overlay.empty()) {
        save_overlay(image, corners, OverlayStyle{}, a.overlay);
    }
    return kExitOk;
}

struct SynthArgs {
    std::string model;
    std::string grays;
    std::string angles;
    int size = 129;
    bool supersample = false;
    std::string out;
    std::string gt;
};

int run_synth(const SynthArgs& a) {
    std::optional<std::vector<double>> grays;
    std::optional<std::vector<double>> angles;
    if (!a.grays.empty()) grays = parse_doubles(a.grays, "--grays");
    if (!a.angles.empty()) angles = parse_doubles(a.angles, "--angles");
    const CornerModel model = make_model(a.model, grays, angles);
    const ModelKind kind = classify_model(model);
    const RenderedModel rendered = render_model(model, RasterSpec{a.size, a.supersample});
    save_image(rendered.image, a.out);
    if (!a.gt.empty()) {
        json doc;
        doc["convention"] = "x = column, y = row, origin top-left";
        doc["model"] = std::string(to_string(kind));
        json regions = json::array();
        for (const auto& r : model.regions()) {
            regions.push_back({{"gray", r.gray}, {"start", r.start}});
        }
        doc["regions"] = regions;
        doc["vertex"] = {rendered.vertex.x, rendered.vertex.y};
        doc["corners"] = json::array();
        if (kind != ModelKind::StepEdge) {
            doc["corners"].push_back({rendered.vertex.x, rendered.vertex.y});
        }
        write_text(a.gt, doc.dump(2) + "\n");
    }
    return kExitOk;
}

struct WarpArgs {
    std::string image;
    std::optional<double> rotate;
    std::string scale;
    std::optional<double> shear;
    std::optional<double> fill;
    std::string out;
    std::string map;
};

int run_warp(const WarpArgs& a) {
    AffineSpec spec;
    if (a.rotate) spec.rotation = *a.rotate * std::numbers::pi / 180.0;
    if (!a.scale.empty()) {
        const auto s = parse_doubles(a.scale, "--scale");
        if (s.size() > 2) {
            throw CLI::ValidationError("--scale", "expected sx or sx,sy");
        }
        spec.scale_x = s[0];
        spec.scale_y = s.size() == 2 ? s[1] : s[0];
    }
    if (a.shear) spec.shear = *a.shear;
    WarpFill fill;
    if (a.fill) fill = {WarpFill::Mode::Constant, *a.fill};
    const Image image = load_image(a.image);
    const WarpResult warped = affine_warp(image, spec, fill);
    save_image(warped.image, a.out);
    if (!a.map.empty()) {
        json doc;
        doc["convention"] = "x' = a11 x + a12 y + tx, y' = a21 x + a22 y + ty";
        doc["source"] = {{"width", image.width()}, {"height", image.height()}};
        doc["target"] = {{"width", warped.image.width()}, {"height", warped.image.height()}};
        doc["map"] = affine_json(warped.map);
        write_text(a.map, doc.dump(2) + "\n");
    }
    return kExitOk;
}

struct BenchArgs {
    std::string image;
    std::string gt;
    std::string config;
    std::string report;
    Overrides overrides;
};

int run_bench(const BenchArgs& a, std::ostream& out) {
    const RunConfig cfg = a.overrides.resolve(a.config);
    const Image image = load_image(a.image);
    const GroundTruth truth = load_ground_truth(a.gt);
    truth.validate(image.width(), image.height());
    const auto corners = detect(image, cfg.detector);
    const auto points = to_points(corners);
    const MatchResult m = match_corners(points, truth.corners, cfg.tau);

    json doc;
    doc["image"] = fs::path(a.image).filename().string();
    doc["config"] = config_json(cfg);
    doc["config_hash"] = config_hash(cfg.detector);
    doc["detected"] = corners.size();
    doc["truth"] = truth.corners.size();
    doc["matched"] = m.pairs.size();
    doc["missed"] = m.missed;
    doc["false"] = m.false_count;
    doc["localization_error"] = optional_number(m.localization_error);
    json pairs = json::array();
    for (const auto& p : m.pairs) {
        pairs.push_back({{"detected", {p.detected.x, p.detected.y}},
                         {"truth", {p.truth.x, p.truth.y}},
                         {"distance", p.distance}});
    }
    doc["pairs"] = pairs;
    write_text(a.report, doc.dump(2) + "\n");
    out << "missed=" << m.missed << " false=" << m.false_count << " L_ce="
        << (m.localization_error ? format_double(*m.localization_error) : "n/a") << "\n";
    return kExitOk;
}

struct RepeatArgs {
    std::string image;
    std::string families;
    std::optional<std::uint64_t> seed;
    std::string config;
    std::string report;
    Overrides overrides;
};

int run_repeat(RepeatArgs a, std::ostream& out) {
    if (a.seed) a.overrides.values["seed"] = std::to_string(*a.seed);
    const RunConfig cfg = a.overrides.resolve(a.config);
    const Image image = load_image(a.image);

    std::vector<TransformFamily> families;
    if (a.families.empty()) {
        families = all_families();
    } else {
        std::string_view rest = a.families;
        while (true) {
            const auto comma = rest.find(',');
            families.push_back(parse_family(rest.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
    }
    const auto original = to_points(detect(image, cfg.detector));
    const auto cases = transform_cases(families);

    std::vector<RepeatabilityResult> results(cases.size());
    parallel_for(cases.size(), [&](std::size_t i) {
        const TransformedImage t = apply_transform(image, cases[i], cfg.seed);
        const auto found = to_points(detect(t.image, cfg.detector));
        results[i] = repeatability(original, found, t.map, cfg.repeat_radius);
    });

    json doc;
    doc["image"] = fs::path(a.image).filename().string();
    doc["config"] = config_json(cfg);
    doc["config_hash"] = config_hash(cfg.detector);
    doc["original_corners"] = original.size();
    json rows = json::array();
    std::map<TransformFamily, std::pair<double, std::size_t>> sums;
    double total = 0.0;
    std::size_t counted = 0;
    std::string csv = "index,family,value,value_y,d_ip,d_it,d_r,omega\n";
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        const auto& r = results[i];
        rows.push_back({{"index", c.index},
                        {"family", std::string(to_string(c.family))},
                        {"value", c.value},
                        {"value_y", c.value_y},
                        {"d_ip", r.original},
                        {"d_it", r.transformed},
                        {"d_r", r.repeated},
                        {"omega", optional_number(r.omega)}});
        csv += std::to_string(c.index) + "," + std::string(to_string(c.family)) + "," +
               format_double(c.value) + "," + format_double(c.value_y) + "," +
               std::to_string(r.original) + "," + std::to_string(r.transformed) + "," +
               std::to_string(r.repeated) + "," + (r.omega ? format_double(*r.omega) : "") + "\n";
        if (r.omega) {
            sums[c.family].first += *r.omega;
            sums[c.family].second += 1;
            total += *r.omega;
            ++counted;
        }
    }
    doc["cases"] = rows;
    json means = json::object();
    for (TransformFamily f : families) {
        const auto it = sums.find(f);
        means[std::string(to_string(f))] =
            it == sums.end() ? json(nullptr) : json(it->second.first / static_cast<double>(it->second.second));
    }
    doc["family_mean"] = means;
    std::optional<double> grand;
    if (counted > 0) grand = total / static_cast<double>(counted);
    doc["mean"] = optional_number(grand);

    write_text(a.report, has_extension(a.report, ".csv") ? csv : doc.dump(2) + "\n");
    out << "cases=" << cases.size() << " mean_omega=" << (counted > 0 ? format_double(total / static_cast<double>(counted)) : "n/a")
        << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-directional Gabor corner detector", "gcorner"};
    app.require_subcommand(1);

    DetectArgs detect_args;
    auto* detect_cmd = app.add_subcommand("detect", "Detect corners in an image");
    detect_cmd->add_option("image", detect_args.image, "PGM or PNG input")->required();
    detect_cmd->add_option("--config", detect_args.config, "key = value config file");
    detect_cmd->add_option("--out", detect_args.out, "corners.json or corners.csv (default stdout)");
    detect_cmd->add_option("--overlay", detect_args.overlay, "PNG with corner markers");
    detect_cmd->add_option("--dump-responses", detect_args.dump_responses, "directory for filter planes");
    detect_cmd->add_option("--dump-kernels", detect_args.dump_kernels, "directory for kernel grids");
    detect_args.overrides.add_detector_flags(*detect_cmd);
    detect_args.overrides.add(*detect_cmd, "format", "json | csv when writing to stdout");

    SynthArgs synth_args;
    auto* synth_cmd = app.add_subcommand("synth", "Render a synthetic corner model");
    synth_cmd->add_option("--model", synth_args.model, "step | L | Y | T | X | star")->required();
    synth_cmd->add_option("--grays", synth_args.grays, "region gray values t1,t2,...");
    synth_cmd->add_option("--angles", synth_args.angles, "region start angles in radians b1,b2,...");
    synth_cmd->add_option("--size", synth_args.size, "odd side length >= 65")->capture_default_str();
    synth_cmd->add_flag("--supersample", synth_args.supersample, "2x2 supersampled edges");
    synth_cmd->add_option("--out", synth_args.out, "output PNG or PGM")->required();
    synth_cmd->add_option("--gt", synth_args.gt, "ground-truth JSON sidecar");

    WarpArgs warp_args;
    auto* warp_cmd = app.add_subcommand("warp", "Apply an affine warp");
    warp_cmd->add_option("image", warp_args.image, "PGM or PNG input")->required();
    auto* rot = warp_cmd->add_option("--rotate", warp_args.rotate, "degrees, counter-clockwise");
    auto* scl = warp_cmd->add_option("--scale", warp_args.scale, "sx or sx,sy");
    auto* shr = warp_cmd->add_option("--shear", warp_args.shear, "p in [[1, p], [0, 1]]");
    rot->excludes(scl)->excludes(shr);
    scl->excludes(shr);
    warp_cmd->add_option("--fill", warp_args.fill, "constant fill value (default: replicate edge)");
    warp_cmd->add_option("--out", warp_args.out, "output PNG or PGM")->required();
    warp_cmd->add_option("--map", warp_args.map, "JSON file with the coordinate map");

    BenchArgs bench_args;
    auto* bench_cmd = app.add_subcommand("bench", "Score detections against ground truth");
    bench_cmd->add_option("image", bench_args.image, "PGM or PNG input")->required();
    bench_cmd->add_option("--gt", bench_args.gt, "ground-truth JSON")->required();
    bench_cmd->add_option("--config", bench_args.config, "key = value config file");
    bench_cmd->add_option("--report", bench_args.report, "report JSON")->required();
    bench_args.overrides.add_detector_flags(*bench_cmd);
    bench_args.overrides.add(*bench_cmd, "tau", "match distance in px");

    RepeatArgs repeat_args;
    auto* repeat_cmd = app.add_subcommand("repeat", "Repeatability over the transform suite");
    repeat_cmd->add_option("image", repeat_args.image, "PGM or PNG input")->required();
    repeat_cmd->add_option("--families", repeat_args.families, "rot,scale,nscale,shear,jpeg,noise");
    repeat_cmd->add_option("--seed", repeat_args.seed, "noise seed");
    repeat_cmd->add_option("--config", repeat_args.config, "key = value config file");
    repeat_cmd->add_option("--report", repeat_args.report, "report JSON (or .csv)")->required();
    repeat_args.overrides.add_detector_flags(*repeat_cmd);
    repeat_args.overrides.add(*repeat_cmd, "repeat_radius", "repeat match distance in px");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kExitUsage;
    }

    try {
        if (detect_cmd->parsed()) return run_detect(detect_args, out);
        if (synth_cmd->parsed()) return run_synth(synth_args);
        if (warp_cmd->parsed()) return run_warp(warp_args);
        if (bench_cmd->parsed()) return run_bench(bench_args, out);
        if (repeat_cmd->parsed()) return run_repeat(std::move(repeat_args), out);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}

}  // namespace gcorner
