#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

#include "test_data.hpp"
#include "wangbars/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int status;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string(WANGBARS_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    const int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir = fs::temp_directory_path() / ("wangbars_cli_" + std::to_string(::getpid()) + "_" +
                                           ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string tmp(const std::string& name) const { return (dir / name).string(); }
    std::string put(const std::string& name, const std::string& text) const {
        wangbars::write_file(tmp(name), text);
        return tmp(name);
    }
    fs::path dir;
};

} // namespace

TEST_F(Cli, ReduceFig1GivesTwentyNineBars) {
    const Result r = run("reduce " + data_path("fig1.tiles") + " -o " + tmp("b.bars") + " --manifest " + tmp("m.txt"));
    ASSERT_EQ(r.status, 0);
    const std::string bars = wangbars::read_file(tmp("b.bars"));
    EXPECT_EQ(std::count(bars.begin(), bars.end(), '\n'), 29);
    EXPECT_NO_THROW(wangbars::parse_manifest(wangbars::read_file(tmp("m.txt"))));
}

TEST_F(Cli, ReduceEmptyFileIsAParseError) {
    EXPECT_EQ(run("reduce " + put("e.tiles", "")).status, 2);
    EXPECT_EQ(run("reduce " + tmp("missing.tiles")).status, 2);
    EXPECT_EQ(run("reduce").status, 2);
    EXPECT_EQ(run("frobnicate").status, 2);
}

TEST_F(Cli, ReduceIsByteStable) {
    const Result a = run("reduce " + data_path("single_c.tiles"));
    const Result b = run("reduce " + data_path("single_c.tiles"));
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, wangbars::read_file(data_path("golden/single_c.bars")));
    ASSERT_EQ(run("reduce " + data_path("single_c.tiles") + " -o " + tmp("x.bars") + " --manifest " + tmp("x.manifest")).status, 0);
    EXPECT_EQ(wangbars::read_file(tmp("x.manifest")), wangbars::read_file(data_path("golden/single_c.manifest")));
}

TEST_F(Cli, SolveExitCodes) {
    EXPECT_EQ(run("solve " + data_path("single_c.tiles") + " --width 1 --height 1").status, 0);
    EXPECT_EQ(run("solve " + data_path("mismatch.tiles") + " --width 4 --height 4").status, 1);
    const Result r = run("solve " + data_path("fig1.tiles") + " --width 1 --height 3 --witness-out " + tmp("w.txt"));
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("verdict=sat"), std::string::npos);
    EXPECT_EQ(wangbars::read_file(tmp("w.txt")), "domain torus 1 3\nplace t1 0 0\nplace t3 0 1\nplace t2 0 2\n");

    ASSERT_EQ(run("reduce " + data_path("single_c.tiles") + " -o " + tmp("c.bars")).status, 0);
    EXPECT_EQ(run("solve " + tmp("c.bars") + " --width 6 --height 8 --budget 0").status, 3);
    EXPECT_EQ(run("solve " + tmp("c.bars") + " --width 2 --height 8").status, 2);
    EXPECT_EQ(run("solve " + tmp("c.bars") + " --width 6 --height 8 --mode hex").status, 2);
}

TEST_F(Cli, SolveWritesDimacsThatDpllAgreesWith) {
    ASSERT_EQ(run("solve " + data_path("fig1.tiles") + " --width 1 --height 3 --cnf-out " + tmp("f.cnf")).status, 0);
    const Result d = run("dpll " + tmp("f.cnf") + " --placements-out " + tmp("p.txt"));
    EXPECT_EQ(d.status, 0);
    EXPECT_EQ(d.out, "verdict=sat\n");
    ASSERT_EQ(run("solve " + data_path("mismatch.tiles") + " --width 2 --height 2 --cnf-out " + tmp("g.cnf")).status, 1);
    EXPECT_EQ(run("dpll " + tmp("g.cnf")).status, 1);
}

TEST_F(Cli, ColorDeficiency) {
    const Result r = run("cd " + data_path("fig1.tiles"));
    ASSERT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("\ncd=0\n"), std::string::npos);
}

TEST_F(Cli, CutFig1Reduction) {
    ASSERT_EQ(run("reduce " + data_path("fig1.tiles") + " -o " + tmp("b.bars")).status, 0);
    const Result r = run("cut " + tmp("b.bars") + " -o " + tmp("cut.tiles"));
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(r.out, "tiles=115 t=86 cd=25\n");
    EXPECT_EQ(wangbars::parse_tiles(wangbars::read_file(tmp("cut.tiles"))).size(), 115u);
}

TEST_F(Cli, PadRaisesDeficiency) {
    ASSERT_EQ(run("reduce " + data_path("single_c.tiles") + " -o " + tmp("b.bars")).status, 0);
    ASSERT_EQ(run("cut " + tmp("b.bars") + " -o " + tmp("cut.tiles")).status, 0);
    ASSERT_EQ(run("pad " + tmp("cut.tiles") + " --target 25 -o " + tmp("pad.tiles")).status, 0);
    EXPECT_NE(run("cd " + tmp("pad.tiles")).out.find("\ncd=25\n"), std::string::npos);
    EXPECT_EQ(run("pad " + data_path("fig1.tiles") + " --target 3").status, 2);
}

TEST_F(Cli, SimulateThenDecode) {
    ASSERT_EQ(run("reduce " + data_path("fig1.tiles") + " -o " + tmp("b.bars") + " --manifest " + tmp("m.txt")).status, 0);
    ASSERT_EQ(run("simulate " + tmp("m.txt") + " " + data_path("fig1_column.lattice") + " -o " + tmp("p.txt")).status, 0);
    const Result d = run("decode " + tmp("m.txt") + " " + tmp("p.txt"));
    ASSERT_EQ(d.status, 0);
    const auto g = wangbars::parse_lattice(d.out);
    EXPECT_EQ(g.width, 1);
    EXPECT_EQ(g.height, 3);
    EXPECT_TRUE(wangbars::validate_tile_tiling(fig1_tiles(), g).ok());
}

TEST_F(Cli, VerifyFacts) {
    const Result r = run("verify-facts " + data_path("single_c.tiles"));
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("failed=0\n"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, RenderIsDeterministic) {
    const std::string one = put("one.bars", "bar w left=l right=r top=a,b bottom=c,d\n");
    const Result a = run("render " + one);
    const Result b = run("render " + one);
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.rfind("<?xml", 0), 0u);
    EXPECT_EQ(run("render " + one + " --format ascii").out, "    0 | 00 ==\n00 w\n");

    ASSERT_EQ(run("reduce " + data_path("single_c.tiles") + " -o " + tmp("b.bars") + " --manifest " + tmp("m.txt")).status, 0);
    ASSERT_EQ(run("simulate " + tmp("m.txt") + " " + data_path("single_c.lattice") + " -o " + tmp("p.txt")).status, 0);
    const Result s = run("render " + tmp("p.txt") + " --manifest " + tmp("m.txt"));
    EXPECT_EQ(s.status, 0);
    EXPECT_NE(s.out.find("encoder"), std::string::npos);
    EXPECT_EQ(run("render " + tmp("p.txt")).status, 2);
    EXPECT_EQ(run("render " + data_path("fig1_column.lattice") + " --tiles " + data_path("fig1.tiles") + " --format ascii").status, 0);
}
