#include "gcorner/cli.hpp"
#include "gcorner/detector.hpp"
#include "gcorner/io.hpp"
#include "gcorner/synthetic.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

using namespace gcorner;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("gcorner_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const char* name) const { return (dir_ / name).string(); }

    int run(std::vector<std::string> args) {
        out_.str("");
        err_.str("");
        return run_cli(args, out_, err_);
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

}  // namespace

TEST_F(CliTest, SynthDetectBench) {
    ASSERT_EQ(run({"synth", "--model", "L", "--size", "129", "--out", path("L.png"), "--gt",
                   path("gt.json")}),
              kExitOk)
        << err_.str();
    ASSERT_EQ(run({"detect", path("L.png"), "--out", path("c.json")}), kExitOk) << err_.str();
    const json corners = json::parse(slurp(path("c.json")));
    EXPECT_EQ(corners.at("corners").size(), 1u);
    ASSERT_EQ(run({"bench", path("L.png"), "--gt", path("gt.json"), "--report", path("r.json")}),
              kExitOk)
        << err_.str();
    const json report = json::parse(slurp(path("r.json")));
    EXPECT_EQ(report.at("missed"), 0);
    EXPECT_EQ(report.at("false"), 0);
    EXPECT_LE(report.at("localization_error").get<double>(), 2.0);
    EXPECT_EQ(report.at("config").at("threshold"), "2e+08");
}

TEST_F(CliTest, DetectMatchesInProcess) {
    ASSERT_EQ(run({"synth", "--model", "L", "--size", "129", "--out", path("L.png")}), kExitOk);
    ASSERT_EQ(run({"detect", path("L.png")}), kExitOk);
    const RenderedModel model = render_model(make_model("L"));
    const DetectorConfig cfg;
    EXPECT_EQ(out_.str(), corners_to_json(detect(model.image, cfg), cfg, "L.png"));
}

TEST_F(CliTest, OutputsAreDeterministic) {
    ASSERT_EQ(run({"synth", "--model", "star", "--out", path("s.pgm")}), kExitOk);
    ASSERT_EQ(run({"detect", path("s.pgm"), "--out", path("a.csv")}), kExitOk);
    ASSERT_EQ(run({"detect", path("s.pgm"), "--out", path("b.csv")}), kExitOk);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
    EXPECT_EQ(slurp(path("a.csv")).substr(0, 10), "x,y,score\n");
}

TEST_F(CliTest, UnknownFlagIsUsageError) {
    EXPECT_EQ(run({"detect", "x.png", "--frobnicate"}), kExitUsage);
    EXPECT_FALSE(err_.str().empty());
    EXPECT_TRUE(out_.str().empty());
    EXPECT_EQ(run({}), kExitUsage);
    EXPECT_EQ(run({"warp", "x.png", "--rotate", "10", "--shear", "0.2", "--out", "y.png"}),
              kExitUsage);
}

TEST_F(CliTest, HelpSucceeds) {
    EXPECT_EQ(run({"--help"}), kExitOk);
    EXPECT_NE(out_.str().find("detect"), std::string::npos);
}

TEST_F(CliTest, ErrorClassesMapToExitCodes) {
    EXPECT_EQ(run({"detect", path("missing.png")}), kExitIo);
    EXPECT_NE(err_.str().find("missing.png"), std::string::npos);
    ASSERT_EQ(run({"synth", "--model", "L", "--out", path("L.png")}), kExitOk);
    std::ofstream(path("bad.cfg")) << "window_n = 5\n";
    EXPECT_EQ(run({"detect", path("L.png"), "--config", path("bad.cfg")}), kExitNumeric);
    std::ofstream(path("unknown.cfg")) << "colour = red\n";
    EXPECT_EQ(run({"detect", path("L.png"), "--config", path("unknown.cfg")}), kExitNumeric);
    EXPECT_EQ(run({"synth", "--model", "L", "--size", "64", "--out", path("x.png")}), kExitNumeric);
}

TEST_F(CliTest, FlagsOverrideConfigFile) {
    ASSERT_EQ(run({"synth", "--model", "L", "--out", path("L.png")}), kExitOk);
    std::ofstream(path("c.cfg")) << "threshold = 1e12\n";
    ASSERT_EQ(run({"detect", path("L.png"), "--config", path("c.cfg")}), kExitOk);
    EXPECT_EQ(json::parse(out_.str()).at("corners").size(), 0u);
    ASSERT_EQ(run({"detect", path("L.png"), "--config", path("c.cfg"), "--threshold", "2e8"}),
              kExitOk);
    EXPECT_EQ(json::parse(out_.str()).at("corners").size(), 1u);
}

TEST_F(CliTest, WarpWritesMap) {
    ASSERT_EQ(run({"synth", "--model", "X", "--size", "65", "--out", path("x.png")}), kExitOk);
    ASSERT_EQ(run({"warp", path("x.png"), "--rotate", "90", "--out", path("r.png"), "--map",
                   path("m.json")}),
              kExitOk)
        << err_.str();
    const json map = json::parse(slurp(path("m.json"))).at("map");
    EXPECT_EQ(map.at("a11"), 0.0);
    EXPECT_EQ(map.at("a12"), 1.0);
    EXPECT_EQ(map.at("ty"), 64.0);
    ASSERT_EQ(run({"warp", path("x.png"), "--scale", "1.5,0.5", "--out", path("s.png")}), kExitOk);
    const Image s = load_image(path("s.png"));
    EXPECT_EQ(s.width(), 97u);
    EXPECT_EQ(s.height(), 33u);
}

TEST_F(CliTest, RepeatReport) {
    ASSERT_EQ(run({"synth", "--model", "X", "--out", path("x.png")}), kExitOk);
    ASSERT_EQ(run({"repeat", path("x.png"), "--families", "rot,noise", "--seed", "3", "--report",
                   path("r.json")}),
              kExitOk)
        << err_.str();
    const json report = json::parse(slurp(path("r.json")));
    EXPECT_EQ(report.at("cases").size(), 33u);
    EXPECT_EQ(report.at("config").at("seed"), 3);
    EXPECT_TRUE(report.at("family_mean").contains("rotation"));
    const double rot90 = report.at("cases")[17].at("omega");
    EXPECT_EQ(report.at("cases")[17].at("value"), 90.0);
    EXPECT_EQ(rot90, 1.0);
    ASSERT_EQ(run({"repeat", path("x.png"), "--families", "noise", "--report", path("r.csv")}),
              kExitOk);
    const std::string csv = slurp(path("r.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "index,family,value,value_y,d_ip,d_it,d_r,omega");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 16);
}

TEST_F(CliTest, DumpsKernelsAndResponses) {
    ASSERT_EQ(run({"synth", "--model", "L", "--size", "65", "--out", path("L.png")}), kExitOk);
    ASSERT_EQ(run({"detect", path("L.png"), "--out", path("c.json"), "--dump-kernels", path("k"),
                   "--dump-responses", path("r"), "--overlay", path("o.png")}),
              kExitOk)
        << err_.str();
    EXPECT_EQ(fs::file_size(path("k/gabor_f0.2_k3.f64")), 39u * 39u * 8u);
    EXPECT_TRUE(fs::exists(path("k/gabor_f0.2_k3.txt")));
    EXPECT_EQ(fs::file_size(path("r/response_s0_k0.f64")), 65u * 65u * 8u);
    EXPECT_TRUE(fs::exists(path("o.png")));
}
