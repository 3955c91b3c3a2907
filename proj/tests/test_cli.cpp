#include "qbcurv/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace qbcurv;

namespace {

struct Ran {
  int code;
  std::string text;
  Json json;
};

Ran run_cfg(const RunConfig& cfg) {
  std::ostringstream os;
  const int code = run(cfg, os);
  Ran r{code, os.str(), {}};
  if (cfg.format == Format::kJson) r.json = Json::parse(r.text);
  return r;
}

RunConfig cfg_for(Command c) {
  RunConfig cfg;
  cfg.command = c;
  return cfg;
}

int shell(const std::string& args) {
  const std::string cmd = std::string(QBCURV_TOOL) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST(Report, FloatsUseSeventeenDigits) {
  Json j;
  j["x"] = 0.1;
  j["zero"] = 0.0;
  j["n"] = 3;
  j["s"] = "1/2";
  const std::string s = dump_json(j, 0);
  EXPECT_EQ(s, "{\"x\":0.10000000000000001,\"zero\":0,\"n\":3,\"s\":\"1/2\"}\n");
  EXPECT_EQ(Json::parse(s)["x"].get<double>(), 0.1);
  EXPECT_EQ(format_double(std::nan("")), "null");
}

TEST(Cli, TableCsv) {
  RunConfig cfg = cfg_for(Command::kTable);
  cfg.format = Format::kCsv;
  const auto r = run_cfg(cfg);
  EXPECT_EQ(r.code, 0);
  std::istringstream is(r.text);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "i,j,k,l,num,den");
  std::getline(is, line);
  EXPECT_EQ(line, "1,1,1,1,2,1");
  int rows = 1;
  bool saw_witness = false, saw_uuuu = false;
  std::string last;
  while (std::getline(is, line)) {
    ++rows;
    last = line;
    saw_witness = saw_witness || line == "1,1,6,6,-1,2";
    saw_uuuu = saw_uuuu || line == "7,7,7,7,1,1";
  }
  EXPECT_EQ(rows, 2401);
  EXPECT_TRUE(saw_witness);
  EXPECT_TRUE(saw_uuuu);
  EXPECT_EQ(last, "7,7,7,7,1,1");
}

TEST(Cli, TableJson) {
  const auto r = run_cfg(cfg_for(Command::kTable));
  EXPECT_EQ(r.code, 0);
  ASSERT_EQ(r.json["entries"].size(), 2401u);
  EXPECT_EQ(r.json["entries"][0]["value"], "2");
  EXPECT_EQ(r.json["entries"][2400]["value"], "1");
  EXPECT_TRUE(r.json.contains("tolerances"));
}

TEST(Cli, Ricci) {
  const auto r = run_cfg(cfg_for(Command::kRicci));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json["ricci_constant"], "4");
  EXPECT_EQ(r.json["einstein"], true);
  EXPECT_EQ(r.json["scalar_curvature"], "28");
  EXPECT_EQ(r.json["tolerances"]["unitary"].get<double>(), 1e-12);
}

TEST(Cli, VerifyExact) {
  const auto r = run_cfg(cfg_for(Command::kVerifyExact));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json["schur_diag"], Json::array({"7/8", "63/16", "0"}));
  EXPECT_EQ(r.json["d_eigen"], Json::array({"0", "1/2", "3/2", "7/2", "7/2", "9/2"}));
  EXPECT_EQ(r.json["overall"], true);
  ASSERT_EQ(r.json["links"].size(), 4u);
  for (const auto& l : r.json["links"]) {
    EXPECT_TRUE(l.contains("name"));
    EXPECT_TRUE(l["lhs"].is_string());
    EXPECT_TRUE(l["rhs"].is_string());
    EXPECT_EQ(l["pass"], true);
  }
  EXPECT_EQ(r.json["draws_passed"], kExactDraws);
  for (const auto& s : r.json["structural"]) EXPECT_EQ(s["psd"], true) << s["name"];
}

TEST(Cli, GramPsd) {
  const auto r = run_cfg(cfg_for(Command::kGramPsd));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json["psd"], true);
  EXPECT_EQ(r.json["identity_in_kernel"], true);
  EXPECT_GE(r.json["kernel_dim"].get<int>(), 1);
  EXPECT_LE(std::abs(r.json["min_eig_float"].get<double>()), kMinEigTol);
  EXPECT_EQ(r.json["pivots"].size(), r.json["rank"].get<std::size_t>());
}

TEST(Cli, VerifySampleIsDeterministic) {
  RunConfig cfg = cfg_for(Command::kVerifySample);
  cfg.count = 10;
  cfg.seed = 7;
  const auto a = run_cfg(cfg);
  const auto b = run_cfg(cfg);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.text, b.text);
  cfg.workers = 4;
  EXPECT_EQ(run_cfg(cfg).text, a.text);
  EXPECT_EQ(a.json["count"], 10);
  EXPECT_EQ(a.json["argmin_x"].size(), 7u);
  EXPECT_GE(a.json["min_value"].get<double>(), kSampleFloor);
  cfg.seed = 8;
  EXPECT_NE(run_cfg(cfg).text, a.text);
}

TEST(Cli, Minimize) {
  RunConfig cfg = cfg_for(Command::kMinimize);
  cfg.starts = 3;
  const auto r = run_cfg(cfg);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json["runs"].size(), 3u);
  EXPECT_LE(r.json["max_abs_final"].get<double>(), kDescentTol);
  EXPECT_LE(r.json["gradient_rel_error"].get<double>(), kGradientTol);
  // Zero steps cannot reach the minimum from a random start.
  cfg.steps = 0;
  EXPECT_EQ(run_cfg(cfg).code, 1);
}

TEST(Cli, AllComposite) {
  RunConfig cfg = cfg_for(Command::kAll);
  cfg.count = 2000;
  const auto r = run_cfg(cfg);
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json["overall"], true);
  EXPECT_EQ(r.json["cross_validation"]["cases"], 2401);
  EXPECT_EQ(r.json["cross_validation"]["mismatches"], 0);
  for (const char* k : {"ricci", "verify_exact", "gram_psd", "verify_sample"}) EXPECT_TRUE(r.json.contains(k)) << k;
}

TEST(Cli, InvalidConfigurations) {
  std::ostringstream os;
  RunConfig cfg = cfg_for(Command::kRicci);
  cfg.format = Format::kCsv;
  EXPECT_THROW(run(cfg, os), std::invalid_argument);
  cfg = cfg_for(Command::kVerifySample);
  cfg.count = 0;
  EXPECT_THROW(run(cfg, os), std::invalid_argument);
  EXPECT_TRUE(os.str().empty());
}

TEST(CliBinary, ExitCodes) {
  EXPECT_EQ(shell("ricci"), 0);
  EXPECT_EQ(shell("verify-sample --count 5 --seed 3"), 0);
  EXPECT_EQ(shell("minimize --starts 2 --steps 0"), 1);
  EXPECT_EQ(shell(""), 2);
  EXPECT_EQ(shell("frobnicate"), 2);
  EXPECT_EQ(shell("ricci --bogus"), 2);
  EXPECT_EQ(shell("ricci --format csv"), 2);
  EXPECT_EQ(shell("verify-sample --count 0"), 2);
  EXPECT_EQ(shell("ricci --out /nonexistent-dir/x.json"), 2);
}

TEST(CliBinary, UsageGoesToStderrAndOutFileWorks) {
  const std::string err = ::testing::TempDir() + "qbcurv_err.txt";
  const std::string out = ::testing::TempDir() + "qbcurv_out.json";
  (void)!std::system((std::string(QBCURV_TOOL) + " frobnicate >/dev/null 2>" + err).c_str());
  std::ifstream e(err);
  std::string text((std::istreambuf_iterator<char>(e)), {});
  EXPECT_NE(text.find("Usage:"), std::string::npos);

  ASSERT_EQ(WEXITSTATUS(std::system((std::string(QBCURV_TOOL) + " ricci --out " + out + " >/dev/null").c_str())), 0);
  std::ifstream o(out);
  const Json j = Json::parse(o);
  EXPECT_EQ(j["ricci_constant"], "4");
}
