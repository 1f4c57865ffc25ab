#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "tfz/analytic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "tfzeros");
    std::ostringstream out, err;
    Run r;
    r.code = tfz::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / ("tfz_cli_" + std::string(info->name()));
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string out(const std::string& sub) const { return (dir_ / sub).string(); }

    fs::path dir_;
};

std::vector<std::vector<std::string>> csv_rows(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) {
            cells.push_back(c);
        }
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST_F(CliTest, ValidateDefaultsPass)
{
    const auto r = cli({"validate", "--out", out("v")});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    const json doc = json::parse(slurp(dir_ / "v" / "validate.json"));
    EXPECT_TRUE(doc.contains("meta"));
}

TEST_F(CliTest, ValidateTightToleranceFails)
{
    const auto r = cli({"validate", "--tol", "1e-16", "--family", "hermite", "--out", out("v")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, ValidateFamilyFilter)
{
    const auto r = cli({"validate", "--family", "chirp", "--out", out("v")});
    ASSERT_EQ(r.code, 0) << r.err;
    const json doc = json::parse(slurp(dir_ / "v" / "validate.json"));
    std::size_t n = 0;
    for (const auto& c : doc["validation"]["checks"]) {
        EXPECT_EQ(c["family"], "chirp");
        ++n;
    }
    EXPECT_GT(n, 0u);
}

TEST_F(CliTest, ZerosRepeatable)
{
    const std::vector<std::string> args = {"zeros", "--signal", "hermite", "--k", "2", "--gamma", "20",
                                           "--domain", "-1.5,-1.5,1.5,1.5", "--seed", "5"};
    auto a = args, b = args;
    a.insert(a.end(), {"--out", out("a"), "--threads", "1"});
    b.insert(b.end(), {"--out", out("b"), "--threads", "3"});
    ASSERT_EQ(cli(a).code, 0);
    ASSERT_EQ(cli(b).code, 0);
    for (const char* f : {"zeros.csv", "zeros.json", "spectrogram.csv", "noise.json", "config.ini"}) {
        EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
    }
}

TEST_F(CliTest, ZerosNoiselessPairLattice)
{
    const auto r = cli({"zeros", "--signal", "pair", "--gamma1", "100", "--gamma2", "40", "--a1", "-1",
                        "--a2", "0", "--b", "0.4", "--noiseless", "--domain", "-1,-2,1,1", "--out", out("z")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = csv_rows(slurp(dir_ / "z" / "zeros.csv"));
    ASSERT_GT(rows.size(), 1u);
    const auto lattice = tfz::analytic::pair_zero_lattice(tfz::make_chirp_pair(-1, 0, 0.4, 100, 40), -10, 10);
    std::size_t inside = 0;
    for (const auto& p : lattice) {
        inside += (p.tau > -1 && p.tau < 1 && p.omega > -2 && p.omega < 1) ? 1 : 0;
    }
    EXPECT_EQ(rows.size() - 1, inside);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double tau = std::stod(rows[i][0]), omega = std::stod(rows[i][1]);
        double best = 1e9;
        for (const auto& p : lattice) {
            best = std::min(best, std::hypot(p.tau - tau, p.omega - omega));
        }
        EXPECT_LT(best, 1e-8);
        EXPECT_EQ(rows[i][2], "1");
    }
}

TEST_F(CliTest, ZerosPureNoiseCount)
{
    const auto r = cli({"zeros", "--signal", "hermite", "--k", "1", "--gamma", "0", "--domain", "-2,-2,2,2",
                        "--out", out("z")});
    ASSERT_EQ(r.code, 0) << r.err;
    const json doc = json::parse(slurp(dir_ / "z" / "zeros.json"));
    const int count = doc["zeros"]["total_count"];
    // 16 expected; a Poisson-like spread is far narrower than this window
    EXPECT_GT(count, 4);
    EXPECT_LT(count, 32);
    EXPECT_NE(r.out.find("zeros"), std::string::npos);
}

TEST_F(CliTest, TrapRejectsLargeEpsilon)
{
    const auto r = cli({"trap", "--signal", "hermite", "--k", "1", "--eps", "0.3", "--out", out("t")});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(fs::exists(dir_ / "t" / "trap.json"));
}

TEST_F(CliTest, TrapNotApplicable)
{
    // |log g1 - log g2| = 3 > 2 pi a^2 for a = 0.5
    const auto r = cli({"trap", "--signal", "pair", "--a1", "0", "--a2", "0.5", "--b", "0", "--gamma1", "1",
                        "--gamma2", "20.0855", "--n", "50", "--m-samples", "500", "--out", out("t")});
    EXPECT_EQ(r.code, 3) << r.err;
    const json doc = json::parse(slurp(dir_ / "t" / "trap.json"));
    EXPECT_EQ(doc["trapping"]["verdict"], "not-applicable");
}

TEST_F(CliTest, TrapHermiteAutoGamma)
{
    const auto r = cli({"trap", "--signal", "hermite", "--k", "1", "--n", "1000", "--m-samples", "5000",
                        "--out", out("t")});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    const json doc = json::parse(slurp(dir_ / "t" / "trap.json"));
    EXPECT_EQ(doc["trapping"]["verdict"], "pass");
    EXPECT_DOUBLE_EQ(doc["trapping"]["signal"]["gamma"].get<double>(), doc["trapping"]["gamma_threshold"].get<double>());
}

TEST_F(CliTest, IntensityAnalyticOnly)
{
    const auto r = cli({"intensity", "--signal", "hermite", "--k", "10", "--gamma", "400", "--n", "0",
                        "--out", out("i")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir_ / "i" / "analytic.csv"));
    EXPECT_FALSE(fs::exists(dir_ / "i" / "histogram.csv"));
    EXPECT_EQ(csv_rows(slurp(dir_ / "i" / "analytic.csv")).size(), 1u + 24u * 24u);

    const auto c = cli({"intensity", "--signal", "chirp", "--gamma", "100", "--a", "-5", "--b", "0.4", "--n", "0",
                        "--out", out("c")});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(csv_rows(slurp(dir_ / "c" / "analytic.csv")).size(), 1u + 24u * 24u);
}

TEST_F(CliTest, IntensityThreadIndependent)
{
    const std::vector<std::string> args = {"intensity", "--signal", "chirp", "--gamma", "10", "--b", "0.4",
                                           "--domain", "-1,-1,1,1", "--n", "60", "--seed", "3"};
    auto a = args, b = args;
    a.insert(a.end(), {"--out", out("a"), "--threads", "1"});
    b.insert(b.end(), {"--out", out("b"), "--threads", "4"});
    ASSERT_EQ(cli(a).code, 0);
    ASSERT_EQ(cli(b).code, 0);
    for (const char* f : {"histogram.csv", "analytic.csv", "summary.json"}) {
        EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
    }
}

TEST_F(CliTest, ConfigPrecedence)
{
    fs::create_directories(dir_);
    {
        std::ofstream cfg(dir_ / "run.ini");
        cfg << "# comment\nsignal = \"hermite\"\nk = 2\ngamma = 5\nn = 0\n";
    }
    const auto r = cli({"intensity", "--config", (dir_ / "run.ini").string(), "--k", "3", "--out", out("o")});
    ASSERT_EQ(r.code, 0) << r.err;
    const std::string echoed = slurp(dir_ / "o" / "config.ini");
    EXPECT_NE(echoed.find("k=3"), std::string::npos) << echoed;
    EXPECT_NE(echoed.find("gamma=5"), std::string::npos) << echoed;
}

TEST_F(CliTest, UsageErrors)
{
    EXPECT_EQ(cli({"bogus"}).code, 1);
    EXPECT_EQ(cli({}).code, 1);
    EXPECT_EQ(cli({"zeros", "--domain", "1,2,3"}).code, 1);
    EXPECT_EQ(cli({"zeros", "--signal", "hermite", "--k", "-1"}).code, 1);
}

TEST_F(CliTest, OutputsCarryProvenance)
{
    const auto r = cli({"counts", "--signal", "hermite", "--k", "1", "--gamma", "20", "--n", "200", "--seed", "12",
                        "--out", out("c")});
    ASSERT_EQ(r.code, 0) << r.err;
    const json doc = json::parse(slurp(dir_ / "c" / "counts.json"));
    EXPECT_EQ(doc["meta"]["master_seed"], 12);
    EXPECT_EQ(doc["meta"]["config_hash"].get<std::string>().size(), 16u);
    EXPECT_EQ(doc["meta"]["version"], TFZ_VERSION);
    for (const auto& entry : fs::directory_iterator(dir_ / "c")) {
        if (entry.path().extension() == ".csv") {
            EXPECT_EQ(slurp(entry.path()).rfind("# tfzeros ", 0), 0u) << entry.path();
        }
    }
}

TEST_F(CliTest, SupTable)
{
    const auto r = cli({"sup", "--n", "2000", "--out", out("s")});
    EXPECT_EQ(r.code, 0) << r.err;
    const json doc = json::parse(slurp(dir_ / "s" / "sup.json"));
    EXPECT_EQ(doc["sup"]["rows"].size(), 10u);
}

TEST_F(CliTest, ShippedConfigsReproduce)
{
    int n = 0;
    for (const auto& entry : fs::directory_iterator(TFZ_CONFIG_DIR)) {
        const std::string stem = entry.path().stem().string();
        const std::string cmd = stem.substr(0, stem.find('_'));
        const std::string cfg = entry.path().string();
        ASSERT_EQ(cli({cmd, "--config", cfg, "--out", out(stem + "_a")}).code, 0) << stem;
        ASSERT_EQ(cli({cmd, "--config", cfg, "--out", out(stem + "_b"), "--threads", "2"}).code, 0) << stem;
        // the echoed configuration reproduces the run on its own
        const std::string echoed = (dir_ / (stem + "_a") / "config.ini").string();
        ASSERT_EQ(cli({cmd, "--config", echoed, "--out", out(stem + "_c")}).code, 0) << stem;
        for (const auto& f : fs::directory_iterator(dir_ / (stem + "_a"))) {
            const std::string name = f.path().filename().string();
            const std::string ref = slurp(f.path());
            EXPECT_EQ(ref, slurp(dir_ / (stem + "_b") / name)) << stem << "/" << name;
            EXPECT_EQ(ref, slurp(dir_ / (stem + "_c") / name)) << stem << "/" << name;
        }
        ++n;
    }
    EXPECT_GE(n, 9);
}
