#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

const fs::path kCli = ZOSTEP_CLI_PATH;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("zostep_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Exit status of the CLI with `args`; stdout goes to `out.txt` in the scratch dir.
  int cli(const std::string& args) {
    const std::string cmd = "\"" + kCli.string() + "\" " + args + " > \"" + (dir_ / "out.txt").string() +
                            "\" 2> \"" + (dir_ / "err.txt").string() + "\"";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  }

  std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  std::string out() { return slurp(dir_ / "out.txt"); }
  std::string err() { return slurp(dir_ / "err.txt"); }

  fs::path only_problem(const fs::path& d) {
    for (const auto& e : fs::directory_iterator(d))
      if (e.path().extension() == ".problem") return e.path();
    return {};
  }

  // Trace text with the trailing elapsed column removed.
  std::string strip_elapsed(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, res;
    while (std::getline(in, line)) res += line.substr(0, line.rfind(',')) + "\n";
    return res;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenerateIsByteIdentical) {
  ASSERT_EQ(cli("--seed 7 --out-dir \"" + (dir_ / "a").string() + "\" generate --family quad --dim 3"), 0);
  ASSERT_EQ(cli("--seed 7 --out-dir \"" + (dir_ / "b").string() + "\" generate --family quad --dim 3"), 0);
  const fs::path a = only_problem(dir_ / "a"), b = only_problem(dir_ / "b");
  ASSERT_FALSE(a.empty());
  EXPECT_EQ(a.filename(), b.filename());
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST_F(CliTest, UnknownFamilyIsUsageError) {
  EXPECT_EQ(cli("--out-dir \"" + dir_.string() + "\" generate --family circle"), 2);
  EXPECT_NE(err().find("circle"), std::string::npos);
}

TEST_F(CliTest, MaxcutMetadataRoundTrips) {
  ASSERT_EQ(cli("--out-dir \"" + dir_.string() + "\" generate --family maxcut --dim 10 --eps 1e-5 --eta 0.01"), 0);
  const fs::path p = only_problem(dir_);
  ASSERT_EQ(cli("describe \"" + p.string() + "\""), 0);
  const std::string d = out();
  EXPECT_NE(d.find("maxcut"), std::string::npos);
  EXPECT_NE(d.find("1.0000000000000001e-05"), std::string::npos) << d;
  EXPECT_NE(d.find("0.01"), std::string::npos);
}

TEST_F(CliTest, RunIsDeterministicAndGated) {
  ASSERT_EQ(cli("--out-dir \"" + dir_.string() + "\" generate --family l1ls --dim 5"), 0);
  const fs::path p = only_problem(dir_);
  ASSERT_EQ(cli("reference \"" + p.string() + "\" --budget 300"), 0);
  ASSERT_EQ(cli("run \"" + p.string() + "\" --solver alg2 --max-iter 50 -o -"), 0);
  const std::string first = out();
  ASSERT_EQ(cli("run \"" + p.string() + "\" --solver alg2 --max-iter 50 -o -"), 0);
  EXPECT_EQ(strip_elapsed(first), strip_elapsed(out()));
  EXPECT_EQ(first.rfind("iter,f_value,gap,stepsize,grad_evals,f_evals,prox_evals,elapsed\n", 0), 0u);
  EXPECT_EQ(cli("run \"" + p.string() + "\" --solver gd"), 2);
  EXPECT_EQ(cli("run \"" + p.string() + "\" --solver newton"), 2);
}

TEST_F(CliTest, MissingFileIsIoError) {
  EXPECT_EQ(cli("run \"" + (dir_ / "nope.problem").string() + "\" --solver alg1"), 3);
  EXPECT_EQ(cli("describe \"" + (dir_ / "nope.problem").string() + "\""), 3);
}

TEST_F(CliTest, CheckExitCodes) {
  ASSERT_EQ(cli("--out-dir \"" + dir_.string() + "\" generate --family l1logreg --dim 6"), 0);
  const fs::path p = only_problem(dir_);
  EXPECT_EQ(cli("check \"" + p.string() + "\""), 0);
  EXPECT_NE(out().find("prox.lemma1_ii"), std::string::npos);
  EXPECT_EQ(cli("check \"" + p.string() + "\" --corrupt-prox 1e-3"), 1);
  EXPECT_EQ(cli("check"), 0);
}

TEST_F(CliTest, SuiteBadConfigIsUsageError) {
  std::ofstream(dir_ / "bad.cfg") << "families = quad\nsolvers =\n";
  EXPECT_EQ(cli("--out-dir \"" + dir_.string() + "\" suite \"" + (dir_ / "bad.cfg").string() + "\""), 2);
  std::ofstream(dir_ / "typo.cfg") << "families = quad\nsolvers = alg1\nmaxiter = 3\n";
  EXPECT_EQ(cli("--out-dir \"" + dir_.string() + "\" suite \"" + (dir_ / "typo.cfg").string() + "\""), 2);
  EXPECT_NE(err().find("maxiter"), std::string::npos);
}

TEST_F(CliTest, SuiteWritesSummary) {
  std::ofstream(dir_ / "s.cfg") << "families = quad, l1ls\nsolvers = alg1, fista\ndim = 5\nmax_iter = 20\n"
                                   "reference_budget = 100\n";
  ASSERT_EQ(cli("--seed 2 --format json --out-dir \"" + (dir_ / "out").string() + "\" suite \"" +
                (dir_ / "s.cfg").string() + "\""),
            0);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "summary.csv"));
  bool json = false;
  for (const auto& e : fs::directory_iterator(dir_ / "out" / "traces")) json |= e.path().extension() == ".json";
  EXPECT_TRUE(json);
}

TEST_F(CliTest, NoVerbIsUsageError) { EXPECT_EQ(cli(""), 2); }

TEST_F(CliTest, DescribeListsFamilies) {
  ASSERT_EQ(cli("describe"), 0);
  EXPECT_NE(out().find("l1logreg"), std::string::npos);
  EXPECT_NE(out().find("adgd-accel"), std::string::npos);
}
