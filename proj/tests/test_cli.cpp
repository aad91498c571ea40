#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "funspace/io.hpp"
#include "funspace_cli/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "funspace");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = funspace::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kThree = R"({"box":{"lower":[0],"upper":[2]},"cells":[8],"values":[3,3,3,3,0,0,0,0]})";

}  // namespace

TEST(Cli, NormExamples) {
  auto r = run({"norm", "--input", kThree, "--p", "2", "--q", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = funspace::io::json::parse(r.out);
  EXPECT_EQ(j["command"], "norm");
  EXPECT_NEAR(j["result"]["value"].get<double>(), 3.0, 1e-12);
  r = run({"norm", "--input", kThree, "--p", "2", "--q", "1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(funspace::io::json::parse(r.out)["result"]["value"].get<double>(), 6.0, 1e-12);
}

TEST(Cli, ValidationExitCodes) {
  EXPECT_EQ(run({"norm", "--input", kThree, "--p", "1", "--q", "1", "--a", "-1"}).code, 2);
  EXPECT_EQ(run({"norm", "--input", kThree, "--p", "-1"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"norm", "--input", kThree, "--tol-verdict", "1"}).code, 2);
  EXPECT_EQ(run({"rearrange", "--input", kThree, "--csv", "--json"}).code, 2);
}

TEST(Cli, ResolutionExitCode) {
  const auto r = run({"uac", "--family", R"({"kind":"ConcentratingSpike","params":{"k_max":64}})", "--lower", "0",
                      "--upper", "1", "--cells", "16", "--p", "2", "--q", "2"});
  EXPECT_EQ(r.code, 3) << r.out << r.err;
}

TEST(Cli, Classify) {
  auto r = run({"classify", "--s", "1/2", "--p", "1", "--q", "2", "--r", "1", "--u", "inf"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = funspace::io::json::parse(r.out);
  EXPECT_EQ(j["result"]["final_verdict"], "Compact");
  EXPECT_EQ(j["result"]["case"], "I");
  r = run({"classify", "--s", "1/2", "--p", "1", "--q", "2", "--r", "2", "--u", "2"});
  j = funspace::io::json::parse(r.out);
  EXPECT_EQ(j["result"]["symbolic_verdict"], "CriterionFails");
}

TEST(Cli, RearrangeCsv) {
  const auto r = run({"rearrange", "--input", kThree, "--csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 8), "t_break,");
}

TEST(Cli, Delta2Spikes) {
  const auto r = run({"delta2", "--spikes", "--p", "1", "--q", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = funspace::io::json::parse(r.out);
  EXPECT_EQ(j["result"]["holds"], false);
}

TEST(Cli, BesovNorm) {
  const std::string chi = R"({"box":{"lower":[-1],"upper":[3]},"cells":[512],"values":[)";
  std::string v;
  for (int i = 0; i < 512; ++i) v += (i ? "," : "") + std::string(i >= 128 && i < 256 ? "1" : "0");
  const auto r = run({"besov-norm", "--input", chi + v + "]}", "--s", "1/2", "--p", "1", "--q", "inf"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = funspace::io::json::parse(r.out);
  EXPECT_NEAR(j["result"]["value"].get<double>(), 3.0, 0.15);
  EXPECT_TRUE(j["result"].contains("probe_grid_J"));
}

TEST(Cli, SelftestDeterministic) {
  const auto a = run({"selftest", "--seed", "7"});
  const auto b = run({"selftest", "--seed", "7"});
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
}
