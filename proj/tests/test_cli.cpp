#include "cbwb/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <sys/wait.h>

using namespace cbwb;
using cbwb::cli::JobSpec;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(JobSpec j)
{
    std::ostringstream out, err;
    int code = cli::run(j, out, err);
    return {code, out.str(), err.str()};
}

JobSpec job(std::string cmd, std::string cartan, std::string weight)
{
    JobSpec j;
    j.command = std::move(cmd);
    j.cartan = std::move(cartan);
    j.weight = std::move(weight);
    return j;
}

int exit_code_of(const std::string& args)
{
    const std::string cmd = std::string(CBWB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST(Cli, VerifyBwbPasses)
{
    auto j = job("verify-bwb", "A1", "1");
    j.N = 8;
    j.D = 8;
    auto o = run(j);
    EXPECT_EQ(o.code, 0) << o.err;
    auto js = Json::parse(o.out);
    EXPECT_TRUE(js.at("pass").get<bool>());
}

TEST(Cli, DenominatorA2)
{
    auto o = run(job("denominator", "A2", "1,1"));
    EXPECT_EQ(o.code, 0);
    auto js = Json::parse(o.out);
    EXPECT_TRUE(js.at("pass").get<bool>());
    EXPECT_EQ(js.at("alternating_sum").get<std::string>(), "1 - 2q^2 + 2q^6 - q^8");
    EXPECT_EQ(js.at("product").get<std::string>(), "1 - 2q^2 + 2q^6 - q^8");
}

TEST(Cli, NonRegularWeightIsInvalid)
{
    auto j = job("verify-bwb", "A1", "0");
    j.N = 4;
    auto o = run(j);
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find("error"), std::string::npos);
}

TEST(Cli, InvalidInputs)
{
    EXPECT_EQ(run(job("char", "A2", "1")).code, 2);          // rank mismatch
    EXPECT_EQ(run(job("char", "Z9", "1")).code, 2);          // unknown type
    EXPECT_EQ(run(job("char", "A1", "x")).code, 2);          // parse error
    EXPECT_EQ(run(job("char", "A1", "-1")).code, 2);         // not dominant
    EXPECT_EQ(run(job("frobnicate", "A1", "1")).code, 2);    // unknown command
    auto big = job("euler", "A1", "1");
    big.N = 100;
    EXPECT_EQ(run(big).code, 2);
    auto csv = job("shifts", "A1", "1");
    csv.output = "csv";
    EXPECT_EQ(run(csv).code, 2);
    auto bad_out = job("shifts", "A1", "1");
    bad_out.output = "xml";
    EXPECT_EQ(run(bad_out).code, 2);
    // e^alpha -> 1 needs every layer inside the depth window
    auto trunc = job("euler", "A1", "1");
    trunc.N = 4;
    trunc.D = 4;
    auto t = run(trunc);
    EXPECT_EQ(t.code, 0);
    EXPECT_TRUE(Json::parse(t.out).at("q_specialization").is_null());
}

TEST(Cli, JsonIsDeterministic)
{
    for (const char* cmd : {"verify-bwb", "genus", "euler", "irreducible", "kk"}) {
        auto j = job(cmd, "A2", "1,1");
        j.N = 2;
        j.D = 6;
        j.cutoff = 2;
        auto a = run(j), b = run(j);
        EXPECT_EQ(a.out, b.out) << cmd;
        EXPECT_EQ(a.code, b.code);
    }
    auto d = job("denominator", "B2", "");
    d.samples = 5;
    d.seed = 42;
    EXPECT_EQ(run(d).out, run(d).out);
    auto d2 = d;
    d2.seed = 43;
    EXPECT_EQ(run(d2).code, 0);
}

TEST(Cli, PassFieldAgreesWithExitCode)
{
    std::vector<JobSpec> jobs{job("verify-bwb", "B2", "1,1"), job("genus", "A1", "1"), job("denominator", "G2", "1,1"),
                              job("euler", "A2", "1,1")};
    auto ds = job("ds-verma", "A1", "0");
    ds.cutoff = 2;
    jobs.push_back(ds);
    auto dr = job("ds-restricted", "A1", "0");
    dr.cutoff = 2;
    jobs.push_back(dr);
    auto kk = job("kk", "A1", "-3");
    kk.cutoff = 2;
    jobs.push_back(kk);
    for (auto& j : jobs) {
        if (j.command != "ds-verma" && j.command != "ds-restricted" && j.command != "kk") {
            j.N = 2;
            j.D = 6;
        }
        auto o = run(j);
        auto js = Json::parse(o.out);
        ASSERT_TRUE(js.contains("pass")) << j.command;
        EXPECT_EQ(js.at("pass").get<bool>(), o.code == 0) << j.command;
        EXPECT_EQ(o.code, 0) << j.command << o.err;
    }
}

TEST(Cli, GenusCsv)
{
    auto j = job("genus", "A1", "1");
    j.output = "csv";
    auto o = run(j);
    EXPECT_EQ(o.code, 0);
    EXPECT_EQ(o.out, "degree,coefficient\n0,2\n1,4\n2,10\n3,20\n4,40\n");
}

TEST(Cli, TailIsIgnoredWithWarning)
{
    auto j = job("shifts", "A1", "1");
    auto base = run(j);
    j.tail = "3,1/2";
    auto o = run(j);
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.err.find("ignored"), std::string::npos);
    auto a = Json::parse(base.out), b = Json::parse(o.out);
    EXPECT_EQ(a.at("shifts"), b.at("shifts"));
    EXPECT_EQ(b.at("ignored_tail").get<std::string>(), "3,1/2");
}

TEST(Cli, KkReportsSingularVectors)
{
    auto j = job("kk", "A1", "-3");
    j.cutoff = 2;
    auto o = run(j);
    ASSERT_EQ(o.code, 0);
    auto js = Json::parse(o.out);
    ASSERT_EQ(js.at("solutions").size(), 1u);
    bool found = false;
    for (const auto& s : js.at("singular_vectors"))
        if (s.at("weight") == Json::array({"1"}) && s.at("delta_degree") == 2)
            found = true;
    EXPECT_TRUE(found) << js.dump();
}

TEST(Cli, BinaryExitCodes)
{
    EXPECT_EQ(exit_code_of("denominator --cartan A2 --weight 1,1"), 0);
    EXPECT_EQ(exit_code_of("verify-bwb --cartan A1 --weight 0 --N 4"), 2);
    EXPECT_EQ(exit_code_of("verify-bwb --cartan A1 --weight 1 --N notanumber"), 2);
    EXPECT_EQ(exit_code_of("nosuchcommand"), 2);
    EXPECT_EQ(exit_code_of("shifts --cartan A1 --weight 1 --output plain"), 0);
}
