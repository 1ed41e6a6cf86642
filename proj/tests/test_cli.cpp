#include <gtest/gtest.h>
#include <sys/wait.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
};

CliRun ecfft(const std::string& args)
{
    const std::string cmd = std::string(ECFFT_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

class Cli : public ::testing::Test {
protected:
    static void SetUpTestSuite()
    {
        dir = fs::temp_directory_path() / ("ecfft_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        ASSERT_EQ(ecfft("build --p 4194319 --depth 8 --seed 3 --out " + path("t.json")).code, 0);
    }
    static void TearDownTestSuite() { fs::remove_all(dir); }

    static std::string path(const std::string& name) { return (dir / name).string(); }
    static void write(const std::string& name, const std::string& text) { std::ofstream(path(name)) << text; }

    static fs::path dir;
};

fs::path Cli::dir;

} // namespace

TEST_F(Cli, validate_and_inspect)
{
    EXPECT_EQ(ecfft("validate --tree " + path("t.json")).code, 0);
    const CliRun r = ecfft("inspect --format json --tree " + path("t.json"));
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["depth"], 8);
    EXPECT_EQ(j["layer_sizes"][0], 256);
}

TEST_F(Cli, same_seed_same_bytes)
{
    ASSERT_EQ(ecfft("build --p 4194319 --depth 8 --seed 3 --out " + path("t2.json")).code, 0);
    std::ifstream a(path("t.json")), b(path("t2.json"));
    const std::string sa((std::istreambuf_iterator<char>(a)), {}), sb((std::istreambuf_iterator<char>(b)), {});
    EXPECT_EQ(sa, sb);
}

TEST_F(Cli, enter_extend_exit)
{
    write("p.txt", "5\n0\n7\n1\n");
    ASSERT_EQ(ecfft("enter --tree " + path("t.json") + " --poly " + path("p.txt") + " --set U2 --out " + path("a.txt")).code, 0);
    ASSERT_EQ(ecfft("extend --tree " + path("t.json") + " --table " + path("a.txt") + " --to 0.R.L.L.L.L.L --format json --out " +
                    path("b.json"))
                  .code,
              0);
    const CliRun r = ecfft("exit --tree " + path("t.json") + " --table " + path("b.json"));
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "5\n0\n7\n1\n");
    EXPECT_EQ(ecfft("degree --tree " + path("t.json") + " --table " + path("b.json")).out, "3\n");
}

TEST_F(Cli, plain_values_need_set)
{
    write("v.txt", "1\n2\n3\n4\n");
    EXPECT_EQ(ecfft("degree --tree " + path("t.json") + " --table " + path("v.txt")).code, 2);
    EXPECT_EQ(ecfft("degree --tree " + path("t.json") + " --table " + path("v.txt") + " --set U2").code, 0);
    EXPECT_EQ(ecfft("degree --tree " + path("t.json") + " --table " + path("v.txt") + " --set U3").code, 2);
}

TEST_F(Cli, verify_passes)
{
    const CliRun r = ecfft("verify --format json --tree " + path("t.json") + " --sizes 2..16 --instances 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["pass"].get<bool>());
}

TEST_F(Cli, plan_eval_interp)
{
    write("pts.txt", "3\n1000\n77\n");
    write("poly.txt", "1\n2\n3\n");
    ASSERT_EQ(ecfft("plan --tree " + path("t.json") + " --points " + path("pts.txt") + " --out " + path("plan.json")).code, 0);
    const CliRun e = ecfft("eval --tree " + path("t.json") + " --plan " + path("plan.json") + " --poly " + path("poly.txt"));
    ASSERT_EQ(e.code, 0);
    EXPECT_EQ(e.out, "34\n3002001\n17942\n");
    write("vals.txt", e.out);
    const CliRun i = ecfft("interp --tree " + path("t.json") + " --plan " + path("plan.json") + " --table " + path("vals.txt"));
    EXPECT_EQ(i.out, "1\n2\n3\n");
}

TEST_F(Cli, exit_codes)
{
    EXPECT_EQ(ecfft("").code, 2);
    EXPECT_EQ(ecfft("build --p 13 --depth 5 --out " + path("x.json")).code, 2);
    EXPECT_EQ(ecfft("build --p 15 --depth 1 --out " + path("x.json")).code, 2);
    write("broken.json", "{\"format\": \"ecfft-tree\", \"version\": 1}");
    EXPECT_EQ(ecfft("validate --tree " + path("broken.json")).code, 1);
    EXPECT_EQ(ecfft("validate --tree " + path("missing.json")).code, 2);
}

TEST_F(Cli, seed_from_environment)
{
    const std::string a = "ECFFT_SEED=42 " + std::string(ECFFT_CLI_PATH) + " build --p 65537 --depth 4 --seed 1 --out " + path("e1.json");
    const std::string b = "ECFFT_SEED=42 " + std::string(ECFFT_CLI_PATH) + " build --p 65537 --depth 4 --seed 9 --out " + path("e2.json");
    ASSERT_EQ(std::system((a + " >/dev/null").c_str()), 0);
    ASSERT_EQ(std::system((b + " >/dev/null").c_str()), 0);
    std::ifstream x(path("e1.json")), y(path("e2.json"));
    EXPECT_EQ(std::string((std::istreambuf_iterator<char>(x)), {}), std::string((std::istreambuf_iterator<char>(y)), {}));
}
