#include "cli.hpp"

#include <gtest/gtest.h>

#include <sstream>
#include <string>

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ptm::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  return std::string(PTM_DATA_DIR) + "/" + name;
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l == line) return true;
  }
  return false;
}

TEST(Cli, SpectralReport) {
  const CliRun r = run({"spectral", data("f1234.chain")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "command spectral"));
  EXPECT_NE(r.out.find("root 5.37228132326901"), std::string::npos) << r.out;
  EXPECT_TRUE(has_line(r.out, "in_W false"));
  EXPECT_TRUE(has_line(r.out, "status ok"));
}

TEST(Cli, ByteStable) {
  const std::vector<std::string> args = {"estimate", data("w_0.3_0.7_0.9_0.1.chain"),
                                         "--n", "20000", "--seed", "9"};
  const CliRun a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, JsonLines) {
  const CliRun r = run({"--format", "json-lines", "spectral", data("ones.chain")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  int lines = 0;
  for (std::string l; std::getline(in, l); ++lines) {
    EXPECT_EQ(l.front(), '{');
    EXPECT_EQ(l.back(), '}');
  }
  EXPECT_GT(lines, 3);
}

TEST(Cli, Divergence) {
  const CliRun r = run({"divergence", data("uniform_w.chain"),
                     data("w_0.3_0.7_0.9_0.1.chain"), "--generator", "kl"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("divergence 0.2990011586691"), std::string::npos) << r.out;
  EXPECT_EQ(run({"divergence", data("uniform_w.chain"), data("ones.chain"),
                 "--generator", "bogus"})
                .code,
            2);
}

TEST(Cli, PotentialAndProjection) {
  const CliRun p = run({"potential", data("eta_uniform.chain"), "--hessian", "--restricted"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_TRUE(has_line(p.out, "in_M true"));
  const CliRun q = run({"project", data("eta_off_M.chain")});
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_NE(q.out.find("point 0.25136814033"), std::string::npos) << q.out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"spectral"}).code, 2);
  EXPECT_EQ(run({"spectral", data("malformed.chain")}).code, 2);
  EXPECT_EQ(run({"spectral", data("missing.chain")}).code, 2);
  EXPECT_EQ(run({"sample", data("uniform_w.chain"), "--n", "10"}).code, 2);
  EXPECT_EQ(run({"project", data("eta_mass2.chain")}).code, 3);
  EXPECT_EQ(run({"sample", data("ones.chain"), "--n", "10", "--seed", "1"}).code, 3);
  EXPECT_EQ(run({"spectral", data("eta_uniform.chain")}).code, 2);
}

TEST(Cli, SampleCycle) {
  const CliRun r = run({"sample", data("two_cycle.chain"), "--n", "5", "--seed", "1",
                     "--initial", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "trajectory 0 1 0 1 0"));
}

TEST(Cli, VerifyAndNegativeControl) {
  const CliRun ok = run({"verify", "--seed", "1", "--cases", "3"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  EXPECT_TRUE(has_line(ok.out, "failed 0"));
  const CliRun bad = run({"verify", "--seed", "1", "--cases", "3", "--inject-fault",
                       "hessian-sign"});
  EXPECT_EQ(bad.code, 5);
  EXPECT_NE(bad.out.find("check.hessian_fd FAIL"), std::string::npos) << bad.out;
}

}  // namespace
