#include "catch_amalgamated.hpp"

#include "vmdlinear/cli.hpp"
#include "vmdlinear/io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <random>
#include <sstream>

using namespace vmdl;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = VMDLINEAR_FIXTURE_DIR;
const fs::path kGolden = VMDLINEAR_GOLDEN_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("vmdlinear_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::vector<double>> numeric_columns(const fs::path& csv) {
    const auto table = io::read_csv(csv);
    return table.columns;
}

}  // namespace

TEST_CASE("help exits 0 everywhere", "[cli]") {
    CHECK(run({"--help"}).code == cli::kOk);
    for (const char* sub : {"decompose", "train", "predict", "bench"}) {
        const auto r = run({sub, "--help"});
        CHECK(r.code == cli::kOk);
        CHECK(r.out.find(sub) != std::string::npos);
    }
}

TEST_CASE("bad invocations exit 2", "[cli]") {
    CHECK(run({}).code == cli::kInputError);
    CHECK(run({"frobnicate"}).code == cli::kInputError);
    CHECK(run({"--model", "lstm", "bench", "x.csv"}).code == cli::kInputError);
    CHECK(run({"--k", "0", "decompose", (kFixtures / "two_tone.csv").string(), "--column", "value"}).code ==
          cli::kInputError);
    const auto out = scratch_dir("missing");
    const auto r = run({"--out", out.string(), "decompose", (kFixtures / "two_tone.csv").string(), "--column", "nope"});
    CHECK(r.code == cli::kInputError);
    CHECK(r.err.find("available columns: value") != std::string::npos);
    CHECK(run({"--out", out.string(), "decompose", "/no/such.csv", "--column", "v"}).code == cli::kInputError);
}

TEST_CASE("decompose writes modes and metadata", "[cli][decompose]") {
    const auto out = scratch_dir("decompose");
    const auto r = run({"--k", "2", "--out", out.string(), "decompose", (kFixtures / "two_tone.csv").string(),
                        "--column", "value"});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.out.find("omegas") != std::string::npos);
    CHECK(r.out.find("reconstruction error") != std::string::npos);
    const auto meta = nlohmann::json::parse(io::read_file(out / "modes.json"));
    CHECK(std::abs(meta["omegas"][0].get<double>() - 0.04) <= 0.005);
    CHECK(std::abs(meta["omegas"][1].get<double>() - 0.20) <= 0.005);
    CHECK(numeric_columns(out / "modes.csv").size() == 2);
    CHECK(fs::exists(out / "manifest.conf"));
}

namespace {

double k1_reconstruction_error(const fs::path& input, const std::string& name) {
    const auto out = scratch_dir(name);
    REQUIRE(run({"--k", "1", "--tau", "0.5", "--out", out.string(), "decompose", input.string(), "--column", "value"})
                .code == cli::kOk);
    const auto x = numeric_columns(input)[0];
    const auto u = numeric_columns(out / "modes.csv")[0];
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - u[i]) * (x[i] - u[i]);
        den += x[i] * x[i];
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("one mode with tau reconstructs a narrow-band input", "[cli][decompose]") {
    const auto dir = scratch_dir("k1_input");
    std::string csv = "t,value\n";
    for (int t = 0; t < 512; ++t) {
        const double v = (1.0 + 0.3 * std::sin(0.01 * t)) * std::cos(0.6 * t);
        csv += std::to_string(t) + "," + io::format_double(v) + "\n";
    }
    io::write_file_atomic(dir / "am.csv", csv);
    CHECK(k1_reconstruction_error(dir / "am.csv", "k1_am") < 0.05);
}

// Dual ascent closes the gap at bin f only by a factor 1 - tau / (2 (1 + 2 alpha (f - w)^2))
// per iteration, so broadband noise far from w is still far off after 500 iterations.
TEST_CASE("one mode with tau reconstructs a broadband input", "[cli][decompose][!shouldfail]") {
    CHECK(k1_reconstruction_error(kFixtures / "sines_a.csv", "k1_broad") < 0.05);
}

TEST_CASE("strict decompose exits 3 without convergence", "[cli][decompose]") {
    const auto out = scratch_dir("strict");
    const std::vector<std::string> base{"--max-iters", "2", "--out", out.string(), "decompose",
                                        (kFixtures / "two_tone.csv").string(), "--column", "value"};
    CHECK(run(base).code == cli::kOk);
    auto strict = base;
    strict.push_back("--strict");
    CHECK(run(strict).code == cli::kNumericError);
}

TEST_CASE("train then predict reproduces the golden forecast", "[cli][golden]") {
    const auto bundle = scratch_dir("bundle");
    const auto pred = scratch_dir("predict");
    const auto input = (kFixtures / "sines_c.csv").string();
    REQUIRE(run({"--seed", "7", "--epochs", "30", "--model", "dlinear", "--out", bundle.string(), "train", input})
                .code == cli::kOk);
    for (const char* f : {"pipeline.conf", "channel_0.scaler", "channel_0_model_2.txt", "manifest.conf"}) {
        CHECK(fs::exists(bundle / f));
    }
    const auto r = run({"--out", pred.string(), "predict", bundle.string(), input, "--origin", "456"});
    REQUIRE(r.code == cli::kOk);
    const auto produced = io::read_file(pred / "forecast.csv");
    CHECK(produced == io::read_file(kGolden / "forecast_sines_c.csv"));
    CHECK(produced.rfind("step,t,value\n1,456,", 0) == 0);

    // Predicting past the available rows is an input error.
    CHECK(run({"--out", pred.string(), "predict", bundle.string(), input, "--origin", "9999"}).code ==
          cli::kInputError);
}

TEST_CASE("manifest replays to the same resolved config", "[cli][manifest]") {
    const auto out = scratch_dir("manifest");
    const auto input = (kFixtures / "sines_c.csv").string();
    const std::vector<std::string> args{"--k", "2", "--alpha", "750.5", "--lookback", "48", "--epochs", "3",
                                        "--no-vmd", "--seed", "11", "--out", out.string(), "train", input};
    REQUIRE(run(args).code == cli::kOk);
    const auto first = cli::resolve(args);
    const auto replay = cli::resolve({"--config", (out / "manifest.conf").string(), "train", input});
    CHECK(cli::to_config_text(replay) == cli::to_config_text(first));
    CHECK(replay.pipeline == first.pipeline);
}

TEST_CASE("config precedence: defaults < file < flags", "[cli][config][property]") {
    struct Key {
        const char* name;
        std::vector<std::string> values;
    };
    const std::vector<Key> keys{{"k", {"1", "2", "5"}},
                                {"alpha", {"10", "2500.5", "0.25"}},
                                {"lookback", {"12", "48", "200"}},
                                {"model", {"nlinear", "dlinear", "linear"}},
                                {"epochs", {"1", "7", "300"}},
                                {"seed", {"0", "3", "123456789"}}};
    const auto dir = scratch_dir("precedence");
    const cli::RunConfig defaults = cli::resolve({"bench", "x.csv"});
    std::mt19937_64 rng(50);
    for (int trial = 0; trial < 60; ++trial) {
        std::string file;
        std::vector<std::string> args;
        std::vector<std::string> expect;
        for (const auto& key : keys) {
            const auto pick = [&] { return key.values[rng() % key.values.size()]; };
            const bool in_file = rng() % 2, in_flag = rng() % 2;
            std::string want;
            if (in_file) {
                want = pick();
                file += std::string(key.name) + " = " + want + "\n";
            }
            if (in_flag) {
                want = pick();
                args.push_back(std::string("--") + key.name);
                args.push_back(want);
            }
            expect.push_back(want);
        }
        const auto path = dir / ("t" + std::to_string(trial) + ".conf");
        io::write_file_atomic(path, file);
        args.insert(args.begin(), {"--config", path.string()});
        args.push_back("bench");
        args.push_back("x.csv");
        const auto cfg = cli::resolve(args);

        const auto& p = cfg.pipeline;
        const std::vector<std::string> got{std::to_string(p.vmd.modes), io::format_double(p.vmd.alpha),
                                           std::to_string(p.model.lookback), std::string(to_string(p.model.kind)),
                                           std::to_string(p.model.epochs), std::to_string(cfg.seed)};
        const auto& d = defaults.pipeline;
        const std::vector<std::string> def{std::to_string(d.vmd.modes), io::format_double(d.vmd.alpha),
                                           std::to_string(d.model.lookback), std::string(to_string(d.model.kind)),
                                           std::to_string(d.model.epochs), std::to_string(defaults.seed)};
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const std::string want = expect[i].empty() ? def[i] : expect[i];
            INFO("trial " << trial << " key " << keys[i].name);
            CHECK(got[i] == want);
        }
        CHECK(cfg.pipeline.vmd.seed == cfg.seed);
        CHECK(cfg.pipeline.model.seed == cfg.seed);
    }
}

TEST_CASE("bench writes reports and honours grid filters", "[cli][bench]") {
    const auto data = scratch_dir("bench_data");
    std::string csv = "t,value\n";
    for (int t = 0; t < 300; ++t) csv += std::to_string(t) + "," + io::format_double(std::sin(0.5 * t) + 0.01 * t) + "\n";
    io::write_file_atomic(data / "toy.csv", csv);
    const std::vector<std::string> common{"--lookback", "12", "--horizon", "4", "--ma-kernel", "5",
                                          "--epochs", "3", "--k", "2"};

    const auto out = scratch_dir("bench_half");
    auto args = common;
    const auto toy = (data / "toy.csv").string();
    args.insert(args.end(), {"--out", out.string(), "bench", toy, "--no-vmd-only"});
    REQUIRE(run(args).code == cli::kOk);
    const auto rows = io::read_file(out / "report.csv");
    std::size_t cells = 0;
    std::istringstream in(rows);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("toy,", 0) == 0) {
            ++cells;
            CHECK(line.find(",false,") != std::string::npos);
        }
    }
    CHECK(cells == 3);
    CHECK(fs::exists(out / "report.txt"));
    CHECK(fs::exists(out / "plots" / "toy_linear.csv"));

    const auto fail_out = scratch_dir("bench_fail");
    args = common;
    args[1] = "100";  // VMD context 400 > 270 train rows
    args.insert(args.end(), {"--out", fail_out.string(), "bench", toy});
    const auto r = run(args);
    CHECK(r.code == cli::kPartialFailure);
    CHECK(io::read_file(fail_out / "report.txt").find("FAIL(") != std::string::npos);

    CHECK(run({"bench", "x.csv", "--no-vmd-only", "--vmd-only"}).code == cli::kInputError);
}

TEST_CASE("jobs setting does not change outputs", "[cli][property]") {
    const auto input = (kFixtures / "sines_c.csv").string();
    std::string first;
    for (const char* jobs : {"1", "3"}) {
        const auto out = scratch_dir(std::string("jobs") + jobs);
        REQUIRE(run({"--jobs", jobs, "--epochs", "5", "--out", out.string(), "train", input}).code == cli::kOk);
        const auto model = io::read_file(out / "channel_0_model_1.txt");
        if (first.empty()) {
            first = model;
        } else {
            CHECK(model == first);
        }
    }
}
