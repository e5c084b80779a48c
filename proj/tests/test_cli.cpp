#include <json.hpp>

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

bool update_golden = false;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(QT_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path tmp(const std::string& name) {
  fs::path dir = fs::path(QT_TMP_DIR) / "cli";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

} // namespace

TEST(Cli, ClassifyWritesReport) {
  auto out = tmp("r.json");
  auto r = run("classify --group preset:S3 --side functions --out " + out.string());
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["calculi"].size(), 2U);
  EXPECT_EQ(j["status"], "pass");
}

TEST(Cli, GroupSideInstantiation) {
  auto r = run("classify --group preset:S3 --side group_algebra");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["calculi"].size(), 2U);
  EXPECT_EQ(j["calculi"][0]["dimension"], 1);
  EXPECT_EQ(j["calculi"][0]["parameter_space"], "CP^0");
  EXPECT_EQ(j["calculi"][1]["dimension"], 2);
  EXPECT_EQ(j["calculi"][1]["parameter_space"], "CP^1");
  const auto& support = j["calculi"][1]["instantiation"]["lambda_support"];
  ASSERT_EQ(support.size(), 2U);
  EXPECT_EQ(support[0]["element"], "()");
  EXPECT_EQ(support[1]["element"], "(1,2)");
}

TEST(Cli, UserLambda) {
  auto r = run("classify --group preset:S3 --side group_algebra --lambda \"2:1*e\"");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["calculi"][1]["instantiation"]["rank"], 2);
  EXPECT_EQ(j["calculi"][1]["instantiation"]["coirreducible"], false);
  EXPECT_EQ(run("classify --group preset:S3 --side functions --lambda \"2:1*e\"").code, 1);
  EXPECT_EQ(run("classify --group preset:S3 --side group_algebra --lambda \"2:1*(1,4)\"").code, 1);
  EXPECT_EQ(run("classify --group preset:S3 --side group_algebra --lambda \"nocolon\"").code, 1);
  // lambda in the kernel of chi: the report records an empty tangent and fails
  auto k = run("classify --group preset:Z2 --side group_algebra --lambda \"1:e; (1,2)\"");
  EXPECT_EQ(k.code, 2) << k.out;
}

TEST(Cli, InputErrorsExitOne) {
  auto missing = run("classify --group /nonexistent/spec.json");
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.out.find("cannot open"), std::string::npos);
  EXPECT_EQ(run("classify --group preset:S3 --seed-free").code, 1);
  EXPECT_EQ(run("classify --group preset:S3 --format xml").code, 1);
  EXPECT_EQ(run("classify --group preset:S3 --side neither").code, 1);
  EXPECT_EQ(run("classify --group preset:S5 --cap 100").code, 1);
  EXPECT_EQ(run("classify --group preset:X9").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("").code, 1);
  auto bad = tmp("bad_spec.json");
  write(bad, "{\"degree\": 3, \"generators\": [[[1,2]]");
  EXPECT_EQ(run("classify --group " + bad.string()).code, 1);
  EXPECT_EQ(run("verify --group preset:S3 --checks leibniz,nope").code, 1);
}

TEST(Cli, GroupSpecFile) {
  auto spec = tmp("s3_gens.json");
  write(spec, R"({"degree": 3, "generators": [[[1,2]], [[1,2,3]]]})");
  auto r = run("classify --group " + spec.string() + " --format csv");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("conjugacy-class,3,CP^0"), std::string::npos);
  auto preset = tmp("s3_preset.json");
  write(preset, R"({"preset": {"family": "symmetric", "n": 3}})");
  EXPECT_EQ(run("classify --group " + preset.string()).code, 0);
}

TEST(Cli, VerifyFullSuiteS4) {
  auto r = run("verify --group preset:S4 --side functions");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["cross_checks"].empty());
  EXPECT_EQ(j["status"], "pass");
}

TEST(Cli, VerifyUnstableTangentFile) {
  auto f = tmp("unstable.json");
  write(f, R"({"side": "functions", "elements": ["(1,2); -1*e"]})");
  auto r = run("verify --group preset:S3 --tangent-file " + f.string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("FAIL stability"), std::string::npos);
  EXPECT_NE(r.out.find("is not in L"), std::string::npos);

  auto good = tmp("stable.json");
  write(good, R"({"side": "functions", "elements": ["(1,2); -1*e", "(1,3); -1*e", "(2,3); -1*e"]})");
  EXPECT_EQ(run("verify --group preset:S3 --tangent-file " + good.string()).code, 0);
  EXPECT_EQ(run("verify --group preset:S3 --tangent-file " + tmp("absent.json").string()).code, 1);
}

TEST(Cli, CheckSubsetHonored) {
  auto r = run("verify --group preset:S3 --side functions --checks leibniz,ybe");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  const auto& v = j["calculi"][0]["verification"];
  EXPECT_EQ(v.size(), 2U);
  EXPECT_EQ(v["leibniz"], "pass");
  EXPECT_EQ(v["ybe"], "pass");
}

TEST(Cli, QSuite) {
  auto r = run("qsuite");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["checks"].size(), 8U);
  EXPECT_EQ(j["status"], "pass");

  auto d2 = run("qsuite --check qtrace --max-degree 2");
  ASSERT_EQ(d2.code, 0) << d2.out;
  EXPECT_NE(d2.out.find("degree <= 2"), std::string::npos);

  auto one = run("qsuite --check qlier");
  ASSERT_EQ(one.code, 0);
  auto jo = nlohmann::json::parse(one.out);
  ASSERT_EQ(jo["checks"].size(), 1U);
  EXPECT_EQ(jo["checks"][0]["check"], "qlier");
  EXPECT_EQ(run("qsuite --check nope").code, 1);
}

TEST(Cli, ByteIdenticalReruns) {
  for (std::string args : {"classify --group preset:D5 --side group_algebra", "verify --group preset:A4 --side functions",
                           "qsuite --format text"}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out) << args;
  }
}

class Golden : public ::testing::TestWithParam<std::tuple<const char*, const char*>> {};

TEST_P(Golden, MatchesStoredReport) {
  auto [group, side] = GetParam();
  fs::path file = fs::path(QT_GOLDEN_DIR) / (std::string(group) + "_" + side + ".json");
  auto r = run(std::string("classify --group preset:") + group + " --side " + side);
  ASSERT_EQ(r.code, 0) << r.out;
  if (update_golden) {
    fs::create_directories(file.parent_path());
    write(file, r.out);
    return;
  }
  ASSERT_TRUE(fs::exists(file)) << file << " missing; rerun with --update-golden";
  EXPECT_EQ(r.out, slurp(file));
}

INSTANTIATE_TEST_SUITE_P(Corpus, Golden,
                         ::testing::Combine(::testing::Values("Z2", "Z4", "Z6", "S3", "S4", "A4", "D4", "D5", "Q8", "klein-4"),
                                            ::testing::Values("functions", "group_algebra")),
                         [](const auto& info) {
                           std::string n = std::string(std::get<0>(info.param)) + "_" + std::get<1>(info.param);
                           for (auto& c : n)
                             if (c == '-') c = '_';
                           return n;
                         });

int main(int argc, char** argv) {
  ::testing::InitGoogleTest(&argc, argv);
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--update-golden") update_golden = true;
  return RUN_ALL_TESTS();
}
