#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "crseq_cli.hpp"

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "crseq");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = crseq::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(Cli, RankSeq) {
    auto r = run({"rank-seq", "--coeffs", "5,-9,7,-2", "--init", "1,1,2,1", "--mmax", "5"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "4 9 16 25 36\n");
}

TEST(Cli, RankSeqJson) {
    auto r = run({"--format", "json", "rank-seq", "--coeffs", "0,-1", "--init", "1,1", "--mmax", "5", "--generic"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j.at("ranks"), nlohmann::json::parse("[2,1,2,1,2]"));
    EXPECT_EQ(j.at("classification"), "particular");
}

TEST(Cli, RejectsStrictFormViolation) {
    auto r = run({"rank-seq", "--coeffs", "0,0", "--init", "1,1", "--mmax", "3"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("c0 must be nonzero"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"rank-seq", "--coeffs", "1,1"}).code, 1);
    EXPECT_EQ(run({"--format", "xml", "fit", "--ranks", "1,1,1"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ComputationErrorExitsTwoWithHint) {
    auto r = run({"--guard", "2", "rank", "--terms", "1,2,4,8,16,33"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("hint:"), std::string::npos);
}

TEST(Cli, Snf) {
    auto r = run({"snf", "--matrix", "4,-1,-1,-1,-1;2,1,-2,1,-2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("diagonal 1 3"), std::string::npos);
    EXPECT_NE(r.out.find("free rank 3"), std::string::npos);
}

TEST(Cli, ClassesFromRoots) {
    auto r = run({"classes", "--roots", "1,-1", "--mmax", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("2 2 2 2"), std::string::npos) << r.out;
}

TEST(Cli, PowerAndProduct) {
    auto p = run({"--format", "json", "power", "--coeffs", "1,1", "--init", "0,1", "--M", "2"});
    ASSERT_EQ(p.code, 0) << p.err;
    auto j = nlohmann::json::parse(p.out);
    EXPECT_EQ(j.at("rank"), 3);
    auto q = run({"--format", "json", "product", "--a-coeffs", "0,2,0,-1", "--a-init", "1,1,2,1", "--b-coeffs",
                  "7,-16,12", "--b-init", "1,1,1"});
    ASSERT_EQ(q.code, 0) << q.err;
    EXPECT_EQ(nlohmann::json::parse(q.out).at("rank"), 10);
}

TEST(Cli, Fit) {
    auto r = run({"fit", "--ranks", "5,15,35,67,111,167,235,315"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("6M^2 - 10M + 11"), std::string::npos);
    EXPECT_EQ(run({"fit", "--ranks", "1,2,4,8,16,32"}).code, 2);
}

TEST(Cli, SearchIsByteIdenticalAcrossRuns) {
    std::vector<std::string> args{"--format", "tsv", "--seed", "3", "search", "--rank", "2", "--mmax", "6"};
    auto a = run(args);
    auto b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 6);
}

TEST(Cli, OutFile) {
    auto path = (std::filesystem::temp_directory_path() / "crseq_cli_out.txt").string();
    auto r = run({"--out", path, "rank-seq", "--coeffs", "1,1", "--init", "0,1", "--mmax", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "2 3 4 5");
    std::remove(path.c_str());
}

TEST(Cli, SequenceFile) {
    auto r = run({"rank-seq", "--seq", CRSEQ_DATA_DIR "/example_sequence.json", "--mmax", "3"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "4 9 16\n");
}

TEST(Cli, ReproduceTable2) {
    auto r = run({"reproduce", "table2"});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, ReproduceTable1) {
    auto r = run({"--format", "tsv", "reproduce", "table1"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.find("MISMATCH"), std::string::npos);
    EXPECT_EQ(r.out.find("partial"), std::string::npos);
}
