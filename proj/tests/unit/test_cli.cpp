// Copyright 2026 The unruh-sim Authors
// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "unruh_cli/config.hpp"
#include "unruh_cli/output.hpp"
#include "unruh_cli/run_config.hpp"
#include "unruh_cli/runner.hpp"
#include "unruh/units.hpp"

namespace unruh::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(fs::path const& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

// Fresh scratch directory per test.
class Scratch : public ::testing::Test
{
  protected:
    void SetUp() override
    {
        auto const* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("unruh-cli-" + std::string(info->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        unsetenv(kOutputDirVariable);
    }
    void TearDown() override
    {
        unsetenv(kOutputDirVariable);
        fs::remove_all(dir_);
    }

    fs::path write(std::string const& name, std::string const& text)
    {
        auto const p = dir_ / name;
        std::ofstream(p, std::ios::binary) << text;
        return p;
    }

    int run_cli(std::string const& sub, fs::path const& config, std::optional<fs::path> out = {})
    {
        RunRequest req{sub, config, std::move(out), 1, 1.0};
        log_.str("");
        err_.str("");
        return run(req, log_, err_);
    }

    fs::path dir_;
    std::ostringstream log_, err_;
};

constexpr char const* kTrajectory = R"([pulse]
shape = "gaussian"
gamma_max = 2.0
length = "0.3 as"

[trajectory]
samples = 50
)";

// ---------------------------------------------------------------- parser

TEST(ConfigParser, ValuesAndComments)
{
    auto const doc = parse_config(R"(top = 1
# comment
[a]
int = 1_000
flt = -2.5e3  # trailing
str = "x \"y\"\n"
yes = true
arr = [1, 2.5,
       3]
"quoted key" = "v"
)");
    ASSERT_TRUE(doc.has("a"));
    ASSERT_TRUE(doc.has(""));
    auto const& a = doc.sections.at("a").entries;
    EXPECT_EQ(std::get<std::int64_t>(a.at("int").data), 1000);
    EXPECT_EQ(std::get<double>(a.at("flt").data), -2500.0);
    EXPECT_EQ(std::get<std::string>(a.at("str").data), "x \"y\"\n");
    EXPECT_TRUE(std::get<bool>(a.at("yes").data));
    EXPECT_EQ(std::get<ConfigArray>(a.at("arr").data).size(), 3u);
    EXPECT_EQ(a.at("arr").line, 8);
    EXPECT_TRUE(a.count("quoted key"));
}

TEST(ConfigParser, ErrorsCarryLineNumbers)
{
    struct Case
    {
        char const* text;
        int line;
    };
    Case const cases[] = {
        {"[a]\nx = 1\nx = 2\n", 3},           // duplicate key
        {"[a]\n[a]\n", 2},                    // duplicate section
        {"[a]\ny = unquoted\n", 2},           // bare string
        {"[a]\n\nz = [1, \"s\"]\n", 3},       // mixed array
        {"[[tables]]\n", 1},                  // array of tables
        {"[a]\nb.c = 1\n", 2},                // dotted key
        {"[a]\nv = nan\n", 2},                // non-finite
        {"[a]\ns = \"open\n", 2},             // unterminated string
        {"[a]\nno_equals\n", 2},
        {"[a]\narr = [1, 2\n", 2},            // unterminated array
    };
    for (auto const& c : cases)
    {
        try
        {
            parse_config(c.text);
            ADD_FAILURE() << "accepted: " << c.text;
        }
        catch (ConfigError const& e)
        {
            EXPECT_EQ(e.line(), c.line) << c.text << " -> " << e.what();
            EXPECT_NE(std::string(e.what()).find("line " + std::to_string(c.line)), std::string::npos);
        }
    }
}

// ---------------------------------------------------------------- schema

int schema_error_line(std::string const& text)
{
    try
    {
        load_run_config_text(text);
    }
    catch (ConfigError const& e)
    {
        return e.line();
    }
    return -1;
}

TEST(RunConfigSchema, ConvertsUnits)
{
    auto const cfg = load_run_config_text(R"([pulse]
shape = "rectangular"
peak_field = "0.01 E_S"
length = "2 as"
[map]
k_min = "1 keV"
k_max = "2 keV"
k_points = 3
theta_points = 5
)");
    EXPECT_EQ(cfg.pulse.shape, PulseShape::rectangular);
    EXPECT_DOUBLE_EQ(*cfg.pulse.peak_field, 0.01 * Constants::codata().schwinger_field);
    EXPECT_DOUBLE_EQ(cfg.pulse.length, to_natural(2, Unit::attosecond));
    ASSERT_TRUE(cfg.map);
    EXPECT_EQ(cfg.map->k_min, 1000.0);
    EXPECT_EQ(cfg.trajectory.samples, 1000u);
    EXPECT_TRUE(cfg.output.csv);
}

TEST(RunConfigSchema, RejectsWithOffendingLine)
{
    // Unknown key.
    EXPECT_EQ(schema_error_line("[pulse]\nshape = \"gaussian\"\ngamma_max = 2.0\nlength = \"1 as\"\ncolour = 1\n"), 5);
    // Unknown section.
    EXPECT_EQ(schema_error_line(std::string(kTrajectory) + "\n[extras]\n"), 9);
    // Wrong dimension.
    EXPECT_EQ(schema_error_line("[pulse]\nshape = \"gaussian\"\ngamma_max = 2.0\nlength = \"1 keV\"\n"), 4);
    // Both amplitude settings.
    EXPECT_GT(schema_error_line("[pulse]\nshape = \"gaussian\"\ngamma_max = 2.0\npeak_field = 1.0\nlength = 1.0\n"), 0);
    // Empty sweep.
    EXPECT_EQ(schema_error_line(std::string(kTrajectory) + "[sweep]\nparameter = \"gamma_max\"\nvalues = []\n"), 10);
    // Bad enum value.
    EXPECT_EQ(schema_error_line("[pulse]\nshape = \"square\"\ngamma_max = 2.0\nlength = 1.0\n"), 2);
    // Missing pulse.
    EXPECT_NE(schema_error_line("[trajectory]\nsamples = 10\n"), -1);
}

// ---------------------------------------------------------------- output

TEST(Output, NumbersRoundTrip)
{
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23})
        EXPECT_EQ(std::stod(format_number(v)), v);
    EXPECT_EQ(format_number(NAN), "nan");
    EXPECT_EQ(format_number(-INFINITY), "-inf");
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Output, CsvLayout)
{
    CsvTable t({{"k", "keV"}, {"ratio", ""}, {"note", ""}});
    t.add_comment("test table");
    t.add_row({1.5, 2LL, std::string("x,y")});
    auto const s = t.render("abc");
    EXPECT_EQ(s, "# test table\r\n# config_sha256: abc\r\n# units: k[keV] ratio[1] note[1]\r\n"
                 "k,ratio,note\r\n1.5,2,\"x,y\"\r\n");
    EXPECT_THROW(t.add_row({1.0}), std::logic_error);
}

TEST(Output, PgmLayout)
{
    std::vector<double> const v{1, 10, 100, 0, INFINITY, 1000};
    auto const s = render_pgm(v, 2, 3, "demo");
    std::istringstream in(s);
    std::string magic, line;
    in >> magic;
    EXPECT_EQ(magic, "P2");
    std::getline(in, line);
    std::getline(in, line);
    EXPECT_EQ(line, "# demo");
    std::getline(in, line);
    EXPECT_EQ(line, "# log10 range 0 .. 3");
    int w, h, maxv;
    in >> w >> h >> maxv;
    EXPECT_EQ(w, 3);
    EXPECT_EQ(h, 2);
    EXPECT_EQ(maxv, 255);
    std::vector<int> px(6);
    for (auto& p : px)
        in >> p;
    // Second row printed first.
    EXPECT_EQ(px, (std::vector<int>{0, 255, 255, 0, 85, 170}));
}

TEST(Output, Sha256KnownVector)
{
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

// ---------------------------------------------------------------- runs

TEST_F(Scratch, TrajectoryRunWritesManifestWithChecksums)
{
    auto const cfg = write("t.toml", kTrajectory);
    ASSERT_EQ(run_cli("trajectory", cfg, dir_ / "out"), kExitOk) << err_.str();
    auto const manifest = nlohmann::json::parse(slurp(dir_ / "out" / "manifest.json"));
    EXPECT_EQ(manifest["config_sha256"], sha256_hex(kTrajectory));
    EXPECT_EQ(manifest["subcommand"], "trajectory");
    ASSERT_FALSE(manifest["files"].empty());
    for (auto const& f : manifest["files"])
    {
        auto const content = slurp(dir_ / "out" / f["path"].get<std::string>());
        EXPECT_EQ(f["sha256"], sha256_hex(content));
        EXPECT_EQ(f["bytes"], content.size());
    }
    auto const csv = slurp(dir_ / "out" / "trajectory.csv");
    EXPECT_NE(csv.find("# config_sha256: " + sha256_hex(kTrajectory) + "\r\n"), std::string::npos);
    EXPECT_NE(csv.find("# units:"), std::string::npos);
}

TEST_F(Scratch, RunsAreByteIdentical)
{
    auto const cfg = write("t.toml", kTrajectory);
    ASSERT_EQ(run_cli("trajectory", cfg, dir_ / "a"), kExitOk);
    ASSERT_EQ(run_cli("trajectory", cfg, dir_ / "b"), kExitOk);
    for (auto const& e : fs::directory_iterator(dir_ / "a"))
        EXPECT_EQ(slurp(e.path()), slurp(dir_ / "b" / e.path().filename())) << e.path();
}

TEST_F(Scratch, MapIsIndependentOfThreadCount)
{
    auto const cfg = write("m.toml", std::string(kTrajectory) + R"(
[map]
k_min = "1 keV"
k_max = "20 keV"
k_points = 4
k_spacing = "log"
theta_points = 7
theta_spacing = "axis_refined"
)");
    RunRequest one{"map", cfg, dir_ / "one", 1, 1.0};
    RunRequest three{"map", cfg, dir_ / "three", 3, 1.0};
    ASSERT_EQ(run(one, log_, err_), kExitOk) << err_.str();
    ASSERT_EQ(run(three, log_, err_), kExitOk) << err_.str();
    for (auto const* name : {"map_quantum.csv", "map_classical.csv", "map_ratio.csv", "map_ratio.pgm"})
        EXPECT_EQ(slurp(dir_ / "one" / name), slurp(dir_ / "three" / name)) << name;
    EXPECT_EQ(slurp(dir_ / "one" / "map_ratio.pgm").substr(0, 2), "P2");
}

TEST_F(Scratch, OutputDirectoryPrecedence)
{
    auto const cfg = write("t.toml", std::string(kTrajectory) + "[output]\ndirectory = \"" +
                                         (dir_ / "from-config").string() + "\"\n");
    ASSERT_EQ(run_cli("trajectory", cfg), kExitOk);
    EXPECT_TRUE(fs::exists(dir_ / "from-config" / "manifest.json"));
    setenv(kOutputDirVariable, (dir_ / "from-env").c_str(), 1);
    ASSERT_EQ(run_cli("trajectory", cfg), kExitOk);
    EXPECT_TRUE(fs::exists(dir_ / "from-env" / "manifest.json"));
    ASSERT_EQ(run_cli("trajectory", cfg, dir_ / "from-flag"), kExitOk);
    EXPECT_TRUE(fs::exists(dir_ / "from-flag" / "manifest.json"));
}

TEST_F(Scratch, ConfigErrorsExitTwoWithLocation)
{
    auto const cfg = write("bad.toml", std::string(kTrajectory) + "[sweep]\nparameter = \"gamma_max\"\nvalues = []\n");
    EXPECT_EQ(run_cli("sweep", cfg, dir_ / "o"), kExitConfig);
    EXPECT_NE(err_.str().find(cfg.string() + ":10: error:"), std::string::npos) << err_.str();
    // An unreadable config is an I/O failure.
    EXPECT_EQ(run_cli("trajectory", dir_ / "missing.toml", dir_ / "o"), kExitIo);
    // A subcommand without its section.
    auto const plain = write("t.toml", kTrajectory);
    EXPECT_EQ(run_cli("map", plain, dir_ / "o"), kExitConfig);
}

TEST_F(Scratch, UnwritableOutputExitsFour)
{
    auto const cfg = write("t.toml", kTrajectory);
    write("blocker", "not a directory");
    EXPECT_EQ(run_cli("trajectory", cfg, dir_ / "blocker" / "sub"), kExitIo);
}

TEST_F(Scratch, StaticFixtureMatchesClosedForm)
{
    auto const cfg = fs::path(UNRUH_CONFIG_DIR) / "static-fixture.toml";
    ASSERT_EQ(run_cli("map", cfg, dir_ / "fx"), kExitOk) << err_.str();
    auto const manifest = nlohmann::json::parse(slurp(dir_ / "fx" / "manifest.json"));
    EXPECT_LT(manifest["fixture.max_relative_error"].get<double>(), 1e-8);
    // The grid must sit where the closed form is far from underflow.
    std::istringstream csv(slurp(dir_ / "fx" / "static_fixture.csv"));
    std::string line;
    std::vector<double> analytic;
    while (std::getline(csv, line))
    {
        if (line.empty() || line[0] == '#' || line[0] == 'k')
            continue;
        std::vector<double> f;
        std::istringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');)
            f.push_back(std::stod(cell));
        ASSERT_EQ(f.size(), 7u);
        analytic.push_back(std::hypot(f[4], f[5]));
    }
    ASSERT_EQ(analytic.size(), 400u);
    auto const [lo, hi] = std::minmax_element(analytic.begin(), analytic.end());
    EXPECT_GT(*lo, 1e-6 * *hi);
}

TEST_F(Scratch, VacuumRun)
{
    auto const cfg = fs::path(UNRUH_CONFIG_DIR) / "vacuum.toml";
    ASSERT_EQ(run_cli("vacuum", cfg, dir_ / "v"), kExitOk) << err_.str();
    EXPECT_TRUE(fs::exists(dir_ / "v" / "vacuum.csv"));
}

TEST_F(Scratch, ShippedConfigsParse)
{
    for (auto const& e : fs::directory_iterator(UNRUH_CONFIG_DIR))
    {
        if (e.path().extension() != ".toml")
            continue;
        EXPECT_NO_THROW(load_run_config_text(slurp(e.path()))) << e.path();
    }
}

TEST_F(Scratch, ExecutableExitCodes)
{
    std::string const exe = UNRUH_CLI_PATH;
    auto status = [](std::string const& cmd) {
        int const s = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status(exe + " --help"), 0);
    EXPECT_EQ(status(exe + " trajectory --help"), 0);
    EXPECT_EQ(status(exe + " frobnicate"), kExitConfig);
    EXPECT_EQ(status(exe + " trajectory"), kExitConfig);  // --config is required
    auto const cfg = write("t.toml", kTrajectory);
    EXPECT_EQ(status(exe + " trajectory -c " + cfg.string() + " -o " + (dir_ / "x").string()), 0);
    EXPECT_TRUE(fs::exists(dir_ / "x" / "trajectory.csv"));
    auto const bad = write("bad.toml", "[pulse]\nshape = 3\n");
    EXPECT_EQ(status(exe + " trajectory -c " + bad.string() + " -o " + (dir_ / "y").string()), kExitConfig);
}

}  // namespace
}  // namespace unruh::cli
