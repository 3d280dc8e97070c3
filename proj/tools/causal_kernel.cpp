// causal-kernel: command-line front end for model evaluation, verification
// suites and GNS reports.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "causal/gns.hpp"
#include "causal/model_config.hpp"
#include "causal/verify.hpp"

namespace {

using namespace causal;
// Keys print in insertion order.
using Json = nlohmann::ordered_json;

enum Exit : int { ok = 0, failure = 1, parse_error = 2, model_error = 3, dimension_error = 4 };

int log_level() {
  const char* env = std::getenv("CAUSAL_KERNEL_LOG");
  if (env == nullptr) return 0;
  const std::string v(env);
  if (v == "debug" || v == "2") return 2;
  if (v == "info" || v == "1") return 1;
  return 0;
}

void log(int level, const std::string& msg) {
  if (log_level() >= level) std::cerr << "[causal-kernel] " << msg << "\n";
}

struct RunSpec {
  std::string model_path;
  std::string b = "I";
  std::string a = "I";
  std::string format = "json";
  std::uint64_t seed = 42;
  std::optional<double> tol;
  std::size_t max_len = 3;
  unsigned jobs = 1;
};

std::string format_pretty(Scalar c) {
  std::ostringstream os;
  os.precision(12);
  os << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i";
  return os.str();
}

Json complex_json(Scalar c) { return {{"re", c.real()}, {"im", c.imag()}}; }

ModelConfig require_model(const RunSpec& spec) {
  if (spec.model_path.empty()) throw ModelError("--model is required");
  log(1, "loading model " + spec.model_path);
  return load_model_file(spec.model_path);
}

FreeElement parse_element(const FreeProduct& alg, const SymbolTable& symbols, const std::string& text) {
  return eval_expr(alg, parse(text), symbols);
}

int run_eval(const RunSpec& spec) {
  const ModelConfig cfg = require_model(spec);
  const auto state = make_state(cfg);
  const auto symbols = make_symbols(cfg, state->algebra());
  const FreeElement b = parse_element(state->algebra(), symbols, spec.b);
  const FreeElement a = parse_element(state->algebra(), symbols, spec.a);
  log(2, "b has " + std::to_string(b.size()) + " terms, a has " + std::to_string(a.size()));
  const Scalar omega = eval_bilinear(*state, b, a);
  if (spec.format == "pretty")
    std::cout << "omega(" << spec.b << ", " << spec.a << ") = " << format_pretty(omega) << "\n";
  else if (spec.format == "csv")
    std::cout << "re,im\n" << nlohmann::json(omega.real()).dump() << "," << nlohmann::json(omega.imag()).dump() << "\n";
  else
    std::cout << complex_json(omega).dump() << "\n";
  return ok;
}

WordBasis bounded_basis(const FreeProduct& alg, std::size_t max_len) {
  constexpr std::size_t limit = 4000;
  const auto n = WordBasis::expected_size(alg, max_len);
  if (n > limit)
    throw DimensionError("word basis of length <= " + std::to_string(max_len) + " has " + std::to_string(n) +
                         " words (limit " + std::to_string(limit) + "); lower --max-len");
  return WordBasis::build(alg, max_len);
}

std::string word_label(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (const auto& l : w.letters) out += "(" + std::to_string(l.factor) + "," + std::to_string(l.index) + ")";
  return out;
}

int run_gram(const RunSpec& spec) {
  const ModelConfig cfg = require_model(spec);
  const auto state = make_state(cfg);
  const WordBasis basis = bounded_basis(state->algebra(), spec.max_len);
  const Matrix g = gram(*state, basis, spec.jobs);
  if (spec.format == "json") {
    auto words = Json::array();
    for (const auto& w : basis.words()) words.push_back(word_label(w));
    std::cout << Json{{"words", words}, {"gram", matrix_to_json(g)}}.dump() << "\n";
  } else {
    std::cout << "row,col,re,im\n";
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index k = 0; k < g.cols(); ++k)
        std::cout << word_label(basis[static_cast<std::size_t>(i)]) << ","
                  << word_label(basis[static_cast<std::size_t>(k)]) << "," << nlohmann::json(g(i, k).real()).dump()
                  << "," << nlohmann::json(g(i, k).imag()).dump() << "\n";
  }
  return ok;
}

int run_gns(const RunSpec& spec) {
  const ModelConfig cfg = require_model(spec);
  const auto state = make_state(cfg);
  const WordBasis basis = bounded_basis(state->algebra(), spec.max_len);
  GnsOptions opts;
  opts.jobs = spec.jobs;
  if (spec.tol) opts.tolerance = *spec.tol;
  const GnsResult res = build_gns(*state, basis, opts);
  Json report{{"basisSize", basis.size()},
                        {"nullRank", res.quotient.null_rank},
                        {"minEigenvalue", res.quotient.min_eigenvalue},
                        {"leftIdealMaxViolation", res.left_ideal.max_violation}};
  if (res.left_ideal.passed(opts.tolerance)) {
    report["reconstructionMaxError"] = reconstruct_check(*state, basis, res);
  } else {
    report["reconstructionMaxError"] = nullptr;
    std::cerr << "representation refused: null space is not a left ideal (max violation "
              << res.left_ideal.max_violation << ")\n";
  }
  if (spec.format == "pretty")
    std::cout << report.dump(2) << "\n";
  else
    std::cout << report.dump() << "\n";
  return ok;
}

int run_verify_cmd(const RunSpec& spec) {
  VerifyOptions opts;
  opts.seed = spec.seed;
  opts.max_len = spec.max_len;
  if (spec.tol) opts.tolerance = *spec.tol;
  std::vector<ModelConfig> models;
  if (spec.model_path.empty()) {
    for (Family f : {Family::sequential, Family::switch_, Family::fuzz, Family::superspacetime})
      models.push_back(builtin_model(f));
  } else {
    models.push_back(require_model(spec));
  }
  auto reports = Json::array();
  const PropertyResult* failed = nullptr;
  std::vector<VerifyReport> results;
  results.reserve(models.size());
  for (const auto& cfg : models) {
    log(1, "verifying " + to_string(cfg.family()));
    results.push_back(run_verify(cfg, opts));
    reports.push_back(results.back().to_json());
    if (!failed) failed = results.back().failing();
  }
  const Json out{{"reports", reports}, {"passed", failed == nullptr}};
  std::cout << (spec.format == "pretty" ? out.dump(2) : out.dump()) << "\n";
  if (failed) {
    std::cerr << "verify failed: " << failed->name << " max violation " << failed->max_violation << " > "
              << failed->tolerance << "\n";
    return failure;
  }
  return ok;
}

void print_rows(const std::vector<DemoRow>& rows, std::ostream& os) {
  for (const auto& r : rows)
    os << "  " << r.label << "\n    omega     = " << format_pretty(r.omega)
       << "\n    reference = " << format_pretty(r.reference) << "\n";
}

Json rows_json(const std::vector<DemoRow>& rows) {
  auto out = Json::array();
  for (const auto& r : rows)
    out.push_back({{"label", r.label}, {"omega", complex_json(r.omega)}, {"reference", complex_json(r.reference)}});
  return out;
}

int run_demo_switch_cmd(const RunSpec& spec) {
  const SwitchDemo d = run_demo_switch();
  if (spec.format == "json") {
    std::cout << Json{{"rows", rows_json(d.rows)},
                                {"amplitude0", complex_json(d.amplitude0)},
                                {"amplitude1", complex_json(d.amplitude1)},
                                {"amplitudeSuperposed", complex_json(d.amplitude_superposed)},
                                {"linearityError", d.linearity_error},
                                {"maxError", d.max_error}}
                     .dump()
              << "\n";
    return ok;
  }
  std::cout << "quantum switch, qubit control and qubit target\n"
            << "omega(e, x*y) with x = sigma_x in slot x, y = sigma_z in slot y:\n";
  print_rows(d.rows, std::cout);
  std::cout << "amplitude <phi|...|psi> for phi = (|0> + |1>)/sqrt2 (x) |1>:\n"
            << "  control |0>: " << format_pretty(d.amplitude0) << "\n"
            << "  control |1>: " << format_pretty(d.amplitude1) << "\n"
            << "  control |+>: " << format_pretty(d.amplitude_superposed) << "\n"
            << "  branch linearity error |A+ - (A0 + A1)/sqrt2| = " << d.linearity_error << "\n";
  return ok;
}

int run_demo_fuzz_cmd(const RunSpec& spec) {
  const FuzzDemo d = run_demo_fuzz();
  if (spec.format == "json") {
    std::cout << Json{{"rows", rows_json(d.rows)}, {"maxError", d.max_error}}.dump() << "\n";
    return ok;
  }
  std::cout << "quantum fuzz reductions (reference = switch value)\n";
  print_rows(d.rows, std::cout);
  std::cout << "max error = " << d.max_error << "\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-product algebra and generalized-state kernel"};
  app.require_subcommand(1);
  RunSpec spec;

  auto common = [&](CLI::App* sub, bool exprs) {
    sub->add_option("--model", spec.model_path, "Model JSON file");
    sub->add_option("--format", spec.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
    sub->add_option("--seed", spec.seed, "Seed for randomized suites");
    sub->add_option("--tol", spec.tol, "Tolerance override");
    sub->add_option("--max-len", spec.max_len, "Word length (GNS truncation / random elements)");
    sub->add_option("--jobs", spec.jobs, "Worker threads for Gram evaluation")->check(CLI::PositiveNumber);
    if (exprs) {
      sub->add_option("--b", spec.b, "First argument of omega");
      sub->add_option("--a", spec.a, "Second argument of omega");
    }
  };

  auto* eval = app.add_subcommand("eval", "Evaluate omega(b, a)");
  common(eval, true);
  auto* gram_cmd = app.add_subcommand("gram", "Gram matrix over the truncated word basis");
  common(gram_cmd, false);
  auto* gns = app.add_subcommand("gns", "GNS construction report");
  common(gns, false);
  auto* verify = app.add_subcommand("verify", "Property and oracle suites");
  common(verify, false);
  auto* demo_switch = app.add_subcommand("demo-switch", "Quantum switch walkthrough");
  common(demo_switch, false);
  auto* demo_fuzz = app.add_subcommand("demo-fuzz", "Quantum fuzz walkthrough");
  common(demo_fuzz, false);

  CLI11_PARSE(app, argc, argv);
  if (gram_cmd->parsed() && spec.format == "json" && gram_cmd->count("--format") == 0) spec.format = "csv";
  if ((demo_switch->parsed() || demo_fuzz->parsed()) && demo_switch->count("--format") + demo_fuzz->count("--format") == 0)
    spec.format = "pretty";

  try {
    if (eval->parsed()) return run_eval(spec);
    if (gram_cmd->parsed()) return run_gram(spec);
    if (gns->parsed()) return run_gns(spec);
    if (verify->parsed()) return run_verify_cmd(spec);
    if (demo_switch->parsed()) return run_demo_switch_cmd(spec);
    if (demo_fuzz->parsed()) return run_demo_fuzz_cmd(spec);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return parse_error;
  } catch (const UnboundSymbolError& e) {
    std::cerr << e.what() << "\n";
    return parse_error;
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return model_error;
  } catch (const DimensionError& e) {
    std::cerr << "dimension mismatch: " << e.what() << "\n";
    return dimension_error;
  } catch (const UnknownFactorError& e) {
    std::cerr << "dimension mismatch: " << e.what() << "\n";
    return dimension_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failure;
  }
  return failure;
}
