#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct Run {
    int code = -1;
    std::string out;
};

Run eodv(const std::string& args) {
    const std::string cmd = std::string(EOD_CLI_PATH) + " " + args + " 2>/dev/null";
    Run run;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return run;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) run.out.append(buf.data(), n);
    const int status = pclose(pipe);
    run.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return run;
}

std::string data(const char* name) { return std::string(EOD_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name, const std::string& content) {
    const fs::path p = fs::temp_directory_path() / ("eodv_test_" + std::to_string(::getpid()) + "_" + name);
    std::ofstream(p) << content;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

TEST(Cli, ValidateSampleRepairs) {
    const auto run = eodv("validate " + data("sample.csv") + " --lhs A --rhs B");
    EXPECT_EQ(run.code, 0);
    EXPECT_NE(run.out.find("valid with {A,B,D}"), std::string::npos) << run.out;

    const auto rec = eodv("validate " + data("sample.csv") + " --lhs A --rhs B --output records");
    ASSERT_EQ(rec.code, 0);
    const auto j = nlohmann::json::parse(rec.out);
    EXPECT_EQ(j.at("verdict"), "valid_with");
    EXPECT_EQ(j.at("embedding"), nlohmann::json({"A", "B", "D"}));
    EXPECT_EQ(j.at("ignored"), 1);
    EXPECT_EQ(j.at("iterations"), 2);
}

TEST(Cli, ValidateEmployeesHolds) {
    const auto run = eodv("validate " + data("employees.csv") + " --lhs Rank --rhs Salary --output records");
    EXPECT_EQ(run.code, 0);
    EXPECT_EQ(nlohmann::json::parse(run.out).at("verdict"), "valid");
}

TEST(Cli, AttributesByIndex) {
    const auto run = eodv("validate " + data("sample.csv") + " --lhs 1 --rhs 2 --output records");
    EXPECT_EQ(run.code, 0);
    EXPECT_EQ(nlohmann::json::parse(run.out).at("verdict"), "valid_with");
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(eodv("validate " + data("sample.csv") + " --lhs Nope --rhs B").code, 2);
    EXPECT_EQ(eodv("validate " + data("sample.csv") + " --lhs A --rhs B --op gt").code, 2);
    EXPECT_EQ(eodv("validate /nonexistent/file.csv --lhs A --rhs B").code, 2);
    EXPECT_EQ(eodv("frobnicate").code, 2);
    const auto ragged = scratch("ragged.csv", "A,B\n1,2\n3\n");
    EXPECT_EQ(eodv("inspect " + ragged.string()).code, 2);
    fs::remove(ragged);
}

TEST(Cli, NotValidExitsOne) {
    const auto f = scratch("swap.csv", "X,Y\n1,2\n2,1\n");
    const auto run = eodv("validate " + f.string() + " --lhs X --rhs Y --output records");
    EXPECT_EQ(run.code, 1);
    const auto j = nlohmann::json::parse(run.out);
    EXPECT_EQ(j.at("verdict"), "not_valid");
    EXPECT_EQ(j.at("witness").at("first"), "t1");
    EXPECT_EQ(j.at("witness").at("second"), "t2");
    EXPECT_EQ(j.at("witness").at("kind"), "swap");
    fs::remove(f);
}

TEST(Cli, InspectListsNullAttributes) {
    const auto run = eodv("inspect " + data("sample.csv") + " --output records");
    ASSERT_EQ(run.code, 0);
    const auto j = nlohmann::json::parse(run.out);
    EXPECT_EQ(j.at("attributes_with_nulls"), nlohmann::json({"D", "F", "G", "H"}));
    EXPECT_EQ(j.at("total_nulls"), 4);
    EXPECT_EQ(j.at("rows"), 4);
}

TEST(Cli, NullTokensFromFlagAndEnvironment) {
    const auto f = scratch("tokens.csv", "X,Y,Z\n1,1,n/a\n2,2,3\n");
    auto run = eodv("inspect " + f.string() + " --null-token n/a --output records");
    EXPECT_EQ(nlohmann::json::parse(run.out).at("total_nulls"), 1);
    run = eodv("inspect " + f.string() + " --output records");
    EXPECT_EQ(nlohmann::json::parse(run.out).at("total_nulls"), 0);
    const std::string cmd = "EOD_NULL_TOKENS='n/a,?' ";
    const std::string full = cmd + EOD_CLI_PATH + " inspect " + f.string() + " --output records";
    FILE* pipe = popen(full.c_str(), "r");
    ASSERT_NE(pipe, nullptr);
    std::array<char, 4096> buf{};
    std::string out(buf.data(), fread(buf.data(), 1, buf.size(), pipe));
    pclose(pipe);
    EXPECT_EQ(nlohmann::json::parse(out).at("total_nulls"), 1);
    fs::remove(f);
}

TEST(Cli, OracleRefusesWideSchema) {
    std::string header, row1, row2;
    for (int a = 0; a < 27; ++a) {
        const std::string sep = a ? "," : "";
        header += sep + "a" + std::to_string(a);
        row1 += sep + "1";
        row2 += sep + (a == 1 ? "0" : "2");
    }
    const auto f = scratch("wide.csv", header + "\n" + row1 + "\n" + row2 + "\n");
    EXPECT_EQ(eodv("oracle " + f.string() + " --lhs a0 --rhs a1").code, 3);
    fs::remove(f);
}

TEST(Cli, OracleReportsAllAlgorithms) {
    const auto run = eodv("oracle " + data("sample.csv") + " --lhs A --rhs B --output records");
    ASSERT_EQ(run.code, 0);
    std::istringstream in(run.out);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j.at("ignored"), 1) << line;
        ++lines;
    }
    EXPECT_EQ(lines, 4u);
}

TEST(Cli, GenIsDeterministic) {
    const fs::path a = fs::temp_directory_path() / ("eodv_gen_a_" + std::to_string(::getpid()) + ".csv");
    const fs::path b = fs::temp_directory_path() / ("eodv_gen_b_" + std::to_string(::getpid()) + ".csv");
    const std::string args = " --rows 300 --attrs 6 --null-rate 0.1 --swaps 2 --merges 1 --seed 9";
    ASSERT_EQ(eodv("gen" + args + " --out " + a.string()).code, 0);
    ASSERT_EQ(eodv("gen" + args + " --out " + b.string()).code, 0);
    const std::string text = slurp(a);
    EXPECT_FALSE(text.empty());
    EXPECT_EQ(text, slurp(b));
    const auto run = eodv("validate " + a.string() + " --lhs A1 --rhs A2 --output records");
    const auto j = nlohmann::json::parse(run.out);
    EXPECT_EQ(j.at("s_count"), 2);
    EXPECT_EQ(j.at("m_count"), 1);
    fs::remove(a);
    fs::remove(b);
}

TEST(Cli, BenchMarksNaiveTimeouts) {
    const fs::path csv = fs::temp_directory_path() / ("eodv_bench_" + std::to_string(::getpid()) + ".csv");
    const auto run = eodv("bench " + data("sample.csv") +
                          " --sizes 1,2 --reps 2 --algorithm both --timeout 0 --output records --csv " + csv.string());
    ASSERT_EQ(run.code, 0);
    std::istringstream in(run.out);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j.at("time_naive_us"), "timeout");
        ++rows;
    }
    EXPECT_EQ(rows, 4u);
    const std::string text = slurp(csv);
    EXPECT_EQ(text.rfind("size,rep,side,verdict,s_count,m_count,ignored,time_validEOD_us,time_naive_us\n", 0), 0u);
    EXPECT_NE(text.find(",timeout\n"), std::string::npos);
    fs::remove(csv);
}

}  // namespace
