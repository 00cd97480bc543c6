// Runs the built `polar` binary and checks exit codes and JSON output.

#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::json;

struct Run {
    int exit_code = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string(POLAR_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "polar_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(Cli, NoSubcommandIsUsageError) { EXPECT_EQ(run("").exit_code, 2); }

TEST(Cli, UnknownFlagIsUsageError) { EXPECT_EQ(run("golay check --bogus").exit_code, 2); }

TEST(Cli, HelpAndVersion) {
    EXPECT_EQ(run("--help").exit_code, 0);
    auto v = run("--version");
    EXPECT_EQ(v.exit_code, 0);
    EXPECT_FALSE(v.out.empty());
}

TEST(Cli, GolayCheck) {
    auto r = run("golay check --steiner --patterns --span");
    ASSERT_EQ(r.exit_code, 0) << r.out;
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["weights"]["distribution"], Json({1, 759, 2576, 759, 1}));
    EXPECT_EQ(j["steiner"]["five_sets"], 42504);
    std::vector<int> counts;
    for (const auto& row : j["patterns"]["rows"]) counts.push_back(row["count"].get<int>());
    EXPECT_EQ(counts, (std::vector<int>{253, 77, 21, 5, 176, 56}));
    EXPECT_EQ(j["span"]["octads_10_01"], 352);
    EXPECT_EQ(j["span"]["rank"], 12);
}

TEST(Cli, GolayBuildOctads) {
    auto r = run("golay build --octads");
    ASSERT_EQ(r.exit_code, 0);
    std::size_t lines = 0;
    for (char c : r.out) lines += c == '\n';
    EXPECT_EQ(lines, 759u);
}

TEST(Cli, LatticeGenAndSnf) {
    auto path = scratch_dir() / "e8_layer1.txt";
    ASSERT_EQ(run("lattice gen --lattice e8 --layer 1 --out " + path.string()).exit_code, 0);
    std::ifstream is(path);
    std::string header;
    std::getline(is, header);
    EXPECT_EQ(header.rfind("# dim=8 scale2=4 count=240", 0), 0u) << header;
    auto r = run("snf --in " + path.string() + " --ambient e8");
    ASSERT_EQ(r.exit_code, 0) << r.out;
    EXPECT_EQ(Json::parse(r.out)["index"], "1");
}

TEST(Cli, SnfPlainMatrix) {
    auto path = scratch_dir() / "matrix.txt";
    std::ofstream(path) << "2 4 4\n-6 6 12\n10 -4 -16\n";
    auto r = run("snf --in " + path.string());
    ASSERT_EQ(r.exit_code, 0);
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["compressed"], "2, 6, 12");
    EXPECT_EQ(j["reconstruction"], true);
    EXPECT_EQ(run("snf --in " + (scratch_dir() / "missing.txt").string()).exit_code, 2);
}

TEST(Cli, DesignStrengthOfRoots) {
    auto path = scratch_dir() / "e8_roots.txt";
    ASSERT_EQ(run("lattice gen --lattice e8 --layer 1 --out " + path.string()).exit_code, 0);
    auto r = run("design strength --code " + path.string());
    ASSERT_EQ(r.exit_code, 0);
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["strength"], 7);
    EXPECT_EQ(j["half_step"], true);
    auto d = run("design distribution --code " + path.string() + " --from 2,2,0,0,0,0,0,0");
    ASSERT_EQ(d.exit_code, 0) << d.out;
    auto dist = Json::parse(d.out)["distribution"];
    ASSERT_EQ(dist.size(), 5u);
    EXPECT_EQ(dist[2]["cosine"], "0");
    EXPECT_EQ(dist[2]["count"], 126);
}

TEST(Cli, QuadratureRules) {
    auto r = run("quadrature pulb --dim 23 --strength 7 --scale 4600");
    ASSERT_EQ(r.exit_code, 0);
    auto j = Json::parse(r.out);
    EXPECT_EQ(j["scaled_weights"]["values"], Json({"275", "2025", "2025", "275"}));
    EXPECT_EQ(j["nodes"][0], "-sqrt(5)/5");
    auto s = Json::parse(run("quadrature pulb2 --dim 24 --k 6 --scale 196560").out);
    EXPECT_EQ(s["scaled_weights"]["values"], Json({"552", "11178", "48600", "75900", "48600", "11178", "552"}));
    EXPECT_EQ(s["non_exact"], Json({12}));
    auto l = Json::parse(run("quadrature lev --dim 23 --strength 7 --s 1/3 --N 4600").out);
    EXPECT_EQ(l["weight_at_one"], "1/4600");
    EXPECT_EQ(l["scaled_weights"]["values"], Json({"1", "891", "2816", "891"}));
    EXPECT_EQ(run("quadrature pulb --dim 1 --strength 3").exit_code, 2);
}

TEST(Cli, PairListAndVerify) {
    auto list = run("pair list");
    ASSERT_EQ(list.exit_code, 0);
    EXPECT_NE(list.out.find("e8-240-2160"), std::string::npos);
    EXPECT_NE(list.out.find("leech-196560-16773120"), std::string::npos);
    auto report = scratch_dir() / "e8-27-27.json";
    auto v = run("pair verify e8-27-27 --no-probes --report " + report.string());
    EXPECT_EQ(v.exit_code, 0) << v.out;
    std::ifstream is(report);
    auto j = Json::parse(is);
    EXPECT_EQ(j["pair"], "e8-27-27");
    EXPECT_EQ(j["status"], "pass");
    EXPECT_EQ(run("pair verify no-such-pair").exit_code, 2);
}

TEST(Cli, CarveRecipe) {
    auto r = run("lattice carve --recipe leech-275-275.C275");
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.out.rfind("# dim=24", 0), 0u);
    EXPECT_NE(r.out.find("count=275"), std::string::npos);
    EXPECT_EQ(run("lattice carve --recipe leech-275-275.nope").exit_code, 2);
}
