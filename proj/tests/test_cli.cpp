#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args)
{
    std::string cmd = std::string(RDC_CLI) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t k = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), k);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

std::string temp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST(Cli, DumpReverseOnBoolean)
{
    auto r = run("dump --model rel --map r --alphabet 1 --degree 2");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "([],[a])\ta\t1\n")) << r.out;
    EXPECT_TRUE(has(r.out, "([a],[a,a])\ta\t1\n")) << r.out;
    EXPECT_EQ(run("dump --model rel --map r --alphabet 1 --degree 2").out, r.out);
}

TEST(Cli, DumpExterior)
{
    auto r = run("dump --model ext2 --map d --n 1");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "({},v1)\t{1}\t1\n");
}

TEST(Cli, DumpSymbolic)
{
    auto r = run("dump --model smooth --map R_of --expr 'x1*x2'");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "1\t")) << r.out;
    EXPECT_EQ(run("dump --model rel --map R_of --expr x1").code, 2);
    EXPECT_EQ(run("dump --model rel --map nonsense").code, 2);
}

TEST(Cli, ReverseDerivative)
{
    auto r = run("rderive --expr 'x1^2*x2 + sin(x2)'");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "R[f](x1, x2; x3) = ")) << r.out;
    auto v = run("rderive --expr 'x1^2*x2' --point 1,2 --cotangent 3");
    EXPECT_EQ(v.code, 0);
    EXPECT_TRUE(has(v.out, "(12, 3)")) << v.out;
    EXPECT_EQ(run("rderive --expr 'x1^2*x2' --point 1").code, 2);
    EXPECT_EQ(run("rderive --expr 'x1^2*x2' --point 1,2 --cotangent 1,1").code, 2);
    EXPECT_EQ(run("rderive --expr 'x1 +'").code, 2);
}

TEST(Cli, ExpressionFromFile)
{
    std::string path = temp_path("rdc_cli_expr.txt");
    std::ofstream(path) << "x1^2\n";
    auto r = run("rderive --expr " + path + " --point 3");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "(6)")) << r.out;
    std::filesystem::remove(path);
}

TEST(Cli, Descend)
{
    std::string path = temp_path("rdc_cli_traj.tsv");
    auto r = run("descend --expr '(x1 - 3)^2 + (x2 + 1)^2' --lr 0.1 --steps 500 --out " + path);
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "step 500")) << r.out;
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first, "0\t0\t0\t10");
    std::filesystem::remove(path);
    EXPECT_EQ(run("descend --expr 'x1^2' --lr -1").code, 2);
    auto z = run("descend --expr 'x1^2' --init 2 --steps 0");
    EXPECT_EQ(z.code, 0);
    EXPECT_TRUE(has(z.out, "step 0")) << z.out;
    EXPECT_EQ(run("descend --expr 'x1^4' --init 10 --lr 10 --steps 50").code, 3);
}

TEST(Cli, LawsExitCodes)
{
    EXPECT_EQ(run("laws --suite reverse --model rel").code, 0);
    auto bad = run("laws --suite bialgebra --model nat --policy both-multinomial --degree 2");
    EXPECT_EQ(bad.code, 1);
    EXPECT_TRUE(has(bad.out, "([a],[a])")) << bad.out;
    EXPECT_EQ(run("laws --suite differential --model nat --policy d-const-one").code, 1);
    EXPECT_EQ(run("laws --suite seely --model poly").code, 2);
    EXPECT_EQ(run("laws --model nosuch").code, 2);
    EXPECT_EQ(run("").code, 2);
}

TEST(Cli, StructuredReport)
{
    std::string path = temp_path("rdc_cli_report.json");
    auto r = run("laws --suite reverse --model rel --format structured --out " + path);
    EXPECT_EQ(r.code, 0);
    std::ifstream in(path);
    std::string body((std::istreambuf_iterator<char>(in)), {});
    EXPECT_TRUE(has(body, "rdc-law-report/1"));
    std::filesystem::remove(path);
}

TEST(Cli, Catalog)
{
    auto r = run("catalog");
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(has(r.out, "\tRD.5\t")) << r.out;
}
