#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>

#include <sys/wait.h>

#include "causal/model_config.hpp"
#include "causal/oracle.hpp"
#include "causal/verify.hpp"

using namespace causal;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun run(const std::string& args, const std::string& env = {}) {
  const std::string err_path = ::testing::TempDir() + "causal_kernel_stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + CAUSAL_KERNEL_PATH + " " + args + " 2>" + err_path;
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream err(err_path);
  r.err.assign(std::istreambuf_iterator<char>(err), {});
  return r;
}

std::string model(const std::string& name) { return std::string(CAUSAL_MODELS_DIR) + "/" + name + ".json"; }

std::string write_temp(const std::string& name, const nlohmann::json& j) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << j.dump();
  return path;
}

}  // namespace

TEST(ModelConfig, BundledFilesLoadAndMatchBuiltins) {
  for (Family f : {Family::sequential, Family::switch_, Family::fuzz, Family::superspacetime}) {
    const ModelConfig cfg = load_model_file(model(to_string(f)));
    EXPECT_EQ(cfg.family(), f);
    EXPECT_EQ(to_json(cfg).dump(), to_json(builtin_model(f)).dump());
  }
}

TEST(ModelConfig, RoundTrip) {
  for (Family f : {Family::sequential, Family::switch_, Family::fuzz, Family::superspacetime}) {
    const auto j = to_json(builtin_model(f));
    EXPECT_EQ(to_json(load_model(j)).dump(), j.dump());
  }
}

TEST(ModelConfig, RejectsBadInput) {
  auto j = to_json(builtin_model(Family::sequential));
  auto bad = j;
  bad["version"] = 2;
  EXPECT_THROW(load_model(bad), ModelError);
  bad = j;
  bad["family"] = "wormhole";
  EXPECT_THROW(load_model(bad), ModelError);
  bad = j;
  bad["phiBasis"] = "sampled";
  EXPECT_THROW(load_model(bad), ModelError);
  bad = j;
  bad.erase("psi");
  EXPECT_THROW(load_model(bad), ModelError);
  bad = j;
  bad["unitary"] = {{{2, 0}, {0, 0}}, {{0, 0}, {2, 0}}};
  EXPECT_THROW(load_model(bad), ModelError);
  EXPECT_THROW(load_model_file("/nonexistent/model.json"), ModelError);
}

TEST(ModelConfig, SymbolsIncludeGenerators) {
  const ModelConfig cfg = builtin_model(Family::switch_);
  const auto state = make_state(cfg);
  const auto symbols = make_symbols(cfg, state->algebra());
  EXPECT_TRUE(symbols.contains("x"));
  EXPECT_TRUE(symbols.contains("x1"));
  EXPECT_TRUE(symbols.contains("y3"));
  EXPECT_TRUE(symbols.contains("u15"));
  EXPECT_TRUE(symbols.contains("v1"));
  EXPECT_FALSE(symbols.contains("u16"));
  EXPECT_EQ(symbols.at("x2").terms().begin()->first, (Word{{1, 1}}));
}

TEST(Verify, BuiltinsPassAndAreSeeded) {
  for (Family f : {Family::sequential, Family::switch_, Family::fuzz, Family::superspacetime}) {
    const auto a = run_verify(builtin_model(f));
    EXPECT_TRUE(a.passed()) << a.to_json().dump();
    EXPECT_EQ(a.to_json().dump(), run_verify(builtin_model(f)).to_json().dump());
  }
  VerifyOptions other;
  other.seed = 7;
  EXPECT_NE(run_verify(builtin_model(Family::switch_)).to_json().dump(),
            run_verify(builtin_model(Family::switch_), other).to_json().dump());
}

TEST(Demos, SwitchAndFuzzMatchReferences) {
  const SwitchDemo s = run_demo_switch();
  ASSERT_EQ(s.rows.size(), 3u);
  EXPECT_LE(s.max_error, 1e-10);
  EXPECT_LE(s.linearity_error, 1e-10);
  const FuzzDemo f = run_demo_fuzz();
  EXPECT_FALSE(f.rows.empty());
  EXPECT_LE(f.max_error, 1e-10);
}

TEST(Cli, EvalUnit) {
  const CliRun r = run("eval --model " + model("sequential") + " --b I --a I");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "{\"re\":1.0,\"im\":0.0}\n");
}

TEST(Cli, EvalSequentialMatchesOracle) {
  const CliRun r = run("eval --model " + model("sequential") + " --b I --a 'x*y'");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const ModelConfig cfg = load_model_file(model("sequential"));
  const auto& m = std::get<SequentialModel>(cfg.model);
  const Scalar ref = oracle::heisenberg_correlator(m.psi2, m.u12, Matrix::Identity(2, 2), cfg.symbols[0].matrix,
                                                   cfg.symbols[1].matrix);
  EXPECT_NEAR(j["re"].get<double>(), ref.real(), 1e-10);
  EXPECT_NEAR(j["im"].get<double>(), ref.imag(), 1e-10);
}

TEST(Cli, EvalFormats) {
  const CliRun csv = run("eval --model " + model("switch") + " --b 'adj(x)' --a x --format csv");
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind("re,im\n", 0), 0u);
  const CliRun pretty = run("eval --model " + model("switch") + " --format pretty");
  EXPECT_EQ(pretty.code, 0);
  EXPECT_NE(pretty.out.find("omega(I, I) = 1"), std::string::npos) << pretty.out;
}

TEST(Cli, ExitCodeParseAndUnbound) {
  CliRun r = run("eval --model " + model("sequential") + " --b I --a z");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unbound symbol z"), std::string::npos) << r.err;
  r = run("eval --model " + model("sequential") + " --b I --a 'x +'");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("1:4: "), std::string::npos) << r.err;
}

TEST(Cli, ExitCodeModelValidation) {
  auto j = to_json(builtin_model(Family::sequential));
  j["unitary"] = {{{1, 0}, {1, 0}}, {{0, 0}, {1, 0}}};
  const CliRun r = run("verify --model " + write_temp("nonunitary.json", j));
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("unitary"), std::string::npos) << r.err;
  EXPECT_EQ(run("eval --model /nonexistent.json").code, 3);
  EXPECT_EQ(run("eval").code, 3);
}

TEST(Cli, ExitCodeDimension) {
  const CliRun r = run("gns --model " + model("switch") + " --max-len 3");
  EXPECT_EQ(r.code, 4);
  EXPECT_NE(r.err.find("dimension"), std::string::npos) << r.err;
}

TEST(Cli, ExitCodeVerifyFailure) {
  const CliRun r = run("verify --model " + model("fuzz") + " --tol 1e-300");
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["passed"].get<bool>());
}

TEST(Cli, VerifyIsDeterministic) {
  const CliRun a = run("verify --seed 42");
  const CliRun b = run("verify --seed 42");
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["reports"].size(), 4u);
  EXPECT_TRUE(j["passed"].get<bool>());
}

TEST(Cli, GramCsvAndJson) {
  const CliRun csv = run("gram --model " + model("sequential") + " --max-len 1");
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv.out.rfind("row,col,re,im\ne,e,1.0,0.0\n", 0), 0u) << csv.out.substr(0, 80);
  const CliRun js = run("gram --model " + model("sequential") + " --max-len 1 --format json --jobs 2");
  ASSERT_EQ(js.code, 0);
  const auto j = nlohmann::json::parse(js.out);
  EXPECT_EQ(j["words"].size(), 7u);
}

TEST(Cli, GnsReportShape) {
  const CliRun r = run("gns --model " + model("sequential") + " --max-len 2");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["basisSize"].get<int>(), 25);
  for (const char* k : {"nullRank", "minEigenvalue", "leftIdealMaxViolation", "reconstructionMaxError"})
    EXPECT_TRUE(j.contains(k)) << k;
}

TEST(Cli, Demos) {
  const CliRun s = run("demo-switch");
  EXPECT_EQ(s.code, 0);
  EXPECT_NE(s.out.find("control |+>"), std::string::npos);
  const CliRun f = run("demo-fuzz --format json");
  EXPECT_EQ(f.code, 0);
  EXPECT_LE(nlohmann::json::parse(f.out)["maxError"].get<double>(), 1e-10);
}

TEST(Cli, LogVerbosityGoesToStderr) {
  const CliRun quiet = run("eval --model " + model("sequential"));
  const CliRun loud = run("eval --model " + model("sequential"), "CAUSAL_KERNEL_LOG=debug");
  EXPECT_EQ(quiet.out, loud.out);
  EXPECT_TRUE(quiet.err.empty());
  EXPECT_NE(loud.err.find("loading model"), std::string::npos);
}
