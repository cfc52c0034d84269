#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pbk_cli/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run pbk_run(std::vector<std::string> args) {
    args.insert(args.begin(), "pbk");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = pbk::cli::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("pbk_cli_test_" + name);
}

TEST(Cli, DiagnoseHarmonicPasses) {
    const auto r = pbk_run({"diagnose", "--model", "harmonic", "--sigma", "0.2", "--r", "0.05", "--w", "0", "--nmax", "20"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["all_pass"].get<bool>());
    EXPECT_EQ(j["params_echo"]["knobs"]["n_max"], 20);
}

TEST(Cli, DiagnoseBarrierNotesBetaZero) {
    const auto path = temp_file("report.json");
    const auto r = pbk_run({"diagnose", "--model", "barrier", "--sigma", "0.2", "--r", "0.02", "--out", path.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    bool noted = false;
    for (const auto& n : j["notes"]) noted = noted || n.get<std::string>().find("beta = 0") != std::string::npos;
    EXPECT_TRUE(noted);
    std::filesystem::remove(path);
}

TEST(Cli, ParamsFileIsOverriddenByFlags) {
    const auto path = temp_file("params.json");
    {
        std::ofstream out(path);
        out << R"({"params_echo": {"model": "harmonic", "sigma": 0.25, "r": 0.04, "w": 0.3, "knobs": {"n_max": 6}}})";
    }
    const auto r = pbk_run({"diagnose", "--params", path.string(), "--r", "0.05"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto echo = nlohmann::json::parse(r.out)["params_echo"];
    EXPECT_EQ(echo["model"], "harmonic");
    EXPECT_DOUBLE_EQ(echo["sigma"].get<double>(), 0.25);
    EXPECT_DOUBLE_EQ(echo["r"].get<double>(), 0.05);
    EXPECT_DOUBLE_EQ(echo["w"].get<double>(), 0.3);
    EXPECT_EQ(echo["knobs"]["n_max"], 6);
    std::filesystem::remove(path);
}

TEST(Cli, InvalidParametersExitTwo) {
    EXPECT_EQ(pbk_run({"diagnose", "--sigma", "0"}).code, 2);
    EXPECT_EQ(pbk_run({"diagnose", "--nmax", "99"}).code, 2);
    EXPECT_EQ(pbk_run({"diagnose", "--params", "/nonexistent/params.json"}).code, 2);
    EXPECT_EQ(pbk_run({"kernel", "--model", "harmonic", "--tau", "0"}).code, 2);
    EXPECT_EQ(pbk_run({"price", "--strike", "-1"}).code, 2);
    EXPECT_EQ(pbk_run({"price", "--model", "harmonic", "--oracle", "mc"}).code, 2);
    EXPECT_EQ(pbk_run({"price", "--lower", "120", "--upper", "80"}).code, 2);
    EXPECT_EQ(pbk_run({"price", "--a", "4.4", "--lower", "80"}).code, 2);
    EXPECT_EQ(pbk_run({"price", "--payoff", "straddle"}).code, 2);
    EXPECT_EQ(pbk_run({}).code, 2);
    EXPECT_EQ(pbk_run({"--help"}).code, 0);
}

TEST(Cli, KernelSinglePointHasFourRows) {
    const auto r = pbk_run({"kernel", "--model", "barrier"});
    EXPECT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) ++lines;
    EXPECT_EQ(lines, 5);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "x,x_prime,tau,which,method,value,tail_estimate,agreement");
}

TEST(Cli, KernelGridAgreementInJson) {
    const auto r = pbk_run({"kernel", "--model", "harmonic", "--x=-0.2,-0.1,0,0.1,0.2", "--xprime=-0.2,-0.1,0,0.1,0.2",
                            "--tau", "0.5", "--format", "json"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["rows"].size(), 100u);
    EXPECT_LE(j["max_agreement"].get<double>(), 1e-8);
}

TEST(Cli, WhichP2EqualsFlippedP1) {
    const auto a = nlohmann::json::parse(pbk_run({"price", "--which", "p2"}).out);
    const auto b = nlohmann::json::parse(pbk_run({"price", "--which", "p1", "--flip-beta"}).out);
    EXPECT_EQ(a["price"]["value"].get<double>(), b["price"]["value"].get<double>());
}

TEST(Cli, WideBarrierAgainstBlackScholes) {
    const auto r = pbk_run({"price", "--lower", "20", "--upper", "500", "--oracle", "bs"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_LT(std::abs(j["difference"].get<double>()), 0.01);
    EXPECT_NEAR(j["oracle"]["value"].get<double>(), 6.889, 1e-3);
}

TEST(Cli, MonteCarloOracleReportsZScore) {
    const auto r = pbk_run({"price", "--oracle", "mc", "--paths", "20000", "--steps", "64"});
    EXPECT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_LT(std::abs(j["z_score"].get<double>()), 4.0);
    EXPECT_EQ(j["oracle"]["config_echo"]["paths"], 20000);
    EXPECT_TRUE(j["oracle"]["config_echo"]["bridge_correction"].get<bool>());
}

}  // namespace
