#include "causal/verify.hpp"

#include <algorithm>
#include <random>

#include "causal/oracle.hpp"
#include "causal/random.hpp"

namespace causal {

namespace {

oracle::OracleModel oracle_model(const ModelConfig& cfg) {
  return std::visit(
      [](const auto& m) -> oracle::OracleModel {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SuperspacetimeModel>)
          return from_superspacetime(m);
        else
          return m;
      },
      cfg.model);
}

void track(PropertyResult& p, double v) { p.max_violation = std::max(p.max_violation, v); }

}  // namespace

bool VerifyReport::passed() const { return failing() == nullptr; }

const PropertyResult* VerifyReport::failing() const {
  for (const auto& p : properties)
    if (!p.passed()) return &p;
  return nullptr;
}

nlohmann::ordered_json VerifyReport::to_json() const {
  auto props = nlohmann::ordered_json::array();
  for (const auto& p : properties)
    props.push_back(
        {{"name", p.name}, {"maxViolation", p.max_violation}, {"tolerance", p.tolerance}, {"passed", p.passed()}});
  return {{"family", family}, {"seed", seed}, {"properties", std::move(props)}, {"passed", passed()}};
}

VerifyReport run_verify(const ModelConfig& cfg, const VerifyOptions& opts) {
  const auto state = make_state(cfg);
  const auto& alg = state->algebra();
  std::mt19937_64 rng(opts.seed);

  VerifyReport report;
  report.family = to_string(cfg.family());
  report.seed = opts.seed;

  PropertyResult norm{"normalization", 0.0, tol::equality};
  track(norm, std::abs(eval_bilinear(*state, alg.unit(), alg.unit()) - 1.0));

  PropertyResult pos{"positivity", 0.0, opts.tolerance};
  PropertyResult herm{"hermiticity", 0.0, opts.tolerance};
  PropertyResult cs{"cauchySchwarz", 0.0, opts.tolerance};
  for (std::size_t i = 0; i < opts.samples; ++i) {
    const FreeElement a = random_element(alg, 3, opts.max_len, rng);
    const FreeElement b = random_element(alg, 3, opts.max_len, rng);
    const Scalar aa = eval_bilinear(*state, star(a), a);
    const Scalar bb = eval_bilinear(*state, star(b), b);
    const Scalar ab = eval_bilinear(*state, star(a), b);
    const Scalar ba = eval_bilinear(*state, star(b), a);
    // omega(a*, a) must be real and nonnegative.
    track(pos, std::max(-aa.real(), 0.0) + std::abs(aa.imag()));
    track(herm, std::abs(ab - std::conj(ba)));
    track(cs, std::max(0.0, std::norm(ab) - aa.real() * bb.real()));
  }

  PropertyResult agree{"oracleAgreement", 0.0, opts.oracle_tolerance};
  const auto om = oracle_model(cfg);
  for (std::size_t i = 0; i < opts.oracle_pairs; ++i) {
    const Word b = random_word(alg, opts.max_len, rng);
    const Word a = random_word(alg, opts.max_len, rng);
    track(agree, std::abs(state->kernel(b, a) - oracle::state_kernel_bruteforce(alg, om, b, a)));
  }

  report.properties = {norm, pos, herm, cs, agree};

  if (const auto* seq = std::get_if<SequentialModel>(&cfg.model)) {
    // U2 = 1 and U1 = U12 reproduce the model's psi2 and U12.
    PropertyResult rec{"heisenbergRecovery", 0.0, opts.oracle_tolerance};
    const Matrix id = Matrix::Identity(seq->dim, seq->dim);
    for (std::size_t i = 0; i < opts.oracle_pairs; ++i) {
      const Matrix x = random_ginibre(seq->dim, seq->dim, rng);
      const Matrix y = random_ginibre(seq->dim, seq->dim, rng);
      const FreeElement xy = alg.multiply(alg.embed(1, x), alg.embed(2, y));
      const Scalar omega = eval_bilinear(*state, alg.unit(), xy);
      track(rec, std::abs(omega - oracle::heisenberg_correlator(seq->psi2, seq->u12, id, x, y)));
    }
    report.properties.push_back(rec);
  }
  return report;
}

SwitchDemo run_demo_switch() {
  const ModelConfig base = builtin_model(Family::switch_);
  const auto& sw = std::get<SwitchModel>(base.model);
  const Vector target = sw.psi.segment(0, 2) / sw.psi.segment(0, 2).norm();
  const double r = std::sqrt(0.5);

  const FreeProduct alg = switch_algebra(2);
  const auto symbols = make_symbols(base, alg);
  const FreeElement xy = alg.multiply(symbols.at("x"), symbols.at("y"));
  const Matrix& sx = base.symbols[0].matrix;
  const Matrix& sz = base.symbols[1].matrix;
  const Matrix id2 = Matrix::Identity(2, 2);

  SwitchDemo demo;
  Vector controls[3];
  controls[0] = Vector::Zero(2), controls[0](0) = 1.0;
  controls[1] = Vector::Zero(2), controls[1](1) = 1.0;
  controls[2] = Vector::Constant(2, r);
  const char* labels[3] = {"control |0>", "control |1>", "control |+>"};
  Vector amplitude_phi = Vector::Zero(4);
  amplitude_phi(1) = r;  // (|0> + |1>)/sqrt2 (x) |1>
  amplitude_phi(3) = r;
  Scalar amps[3];
  for (int c = 0; c < 3; ++c) {
    const SwitchModel m = SwitchModel::create(product_state(controls[c], target), sw.v_x0, sw.x_y0, sw.y_u0, sw.v_y1,
                                              sw.y_x1, sw.x_u1);
    const SwitchState state(m);
    const Scalar omega = eval_bilinear(state, alg.unit(), xy);
    Scalar reference;
    if (c == 0)
      reference = oracle::fixed_order_correlation(sw.v_x0, sw.x_y0, sw.y_u0, Order::y_then_x, target, id2, id2, id2,
                                                  id2, sx, sz, id2, id2);
    else if (c == 1)
      reference = oracle::fixed_order_correlation(sw.v_y1, sw.y_x1, sw.x_u1, Order::x_then_y, target, id2, id2, id2,
                                                  id2, sx, sz, id2, id2);
    else
      reference = oracle::state_kernel_bruteforce(alg, m, Word{}, Word{{1, 0}, {2, 2}});
    demo.rows.push_back({labels[c], omega, reference});
    demo.max_error = std::max(demo.max_error, std::abs(omega - reference));
    const Matrix id4 = Matrix::Identity(4, 4);
    amps[c] = amplitude_switch(m, amplitude_phi, sx, sz, id4, id4);
  }
  demo.c0 = r;
  demo.c1 = r;
  demo.amplitude0 = amps[0];
  demo.amplitude1 = amps[1];
  demo.amplitude_superposed = amps[2];
  demo.linearity_error = std::abs(amps[2] - (demo.c0 * amps[0] + demo.c1 * amps[1]));
  return demo;
}

FuzzDemo run_demo_fuzz() {
  const ModelConfig base = builtin_model(Family::switch_);
  const auto& sw = std::get<SwitchModel>(base.model);
  const Vector target = sw.psi.segment(0, 2) / sw.psi.segment(0, 2).norm();
  Vector zero = Vector::Zero(2);
  zero(0) = 1.0;
  Vector one = Vector::Zero(1);
  one(0) = 1.0;

  // Switch with control |0> versus the single alpha branch carrying U^(0).
  const SwitchState fixed(SwitchModel::create(product_state(zero, target), sw.v_x0, sw.x_y0, sw.y_u0, sw.v_y1,
                                              sw.y_x1, sw.x_u1));
  const FuzzState single(FuzzModel::create(2, {{1.0, Order::y_then_x, sw.y_u0, sw.x_y0, sw.v_x0}},
                                           product_state(one, target)));
  // The full switch as a two-branch fuzz with unit weights.
  const SwitchState full(sw);
  const FuzzState twin(FuzzModel::create(
      2, {{1.0, Order::y_then_x, sw.y_u0, sw.x_y0, sw.v_x0}, {1.0, Order::x_then_y, sw.x_u1, sw.y_x1, sw.v_y1}},
      sw.psi));

  const auto& salg = fixed.algebra();
  const auto& falg = single.algebra();
  // u, v letters of the one-branch fuzz act on the target; on the switch side
  // they become 1 (x) m on control (x) target.
  const auto lift = [](const Matrix& m) { return oracle::kron(Matrix::Identity(2, 2), m); };
  const auto same = [](const Matrix& m) { return m; };
  const std::map<int, FactorMap> maps{{1, {1, same}}, {2, {2, same}}, {3, {3, lift}}, {4, {4, lift}}};

  FuzzDemo demo;
  const char* exprs[][2] = {{"I", "I"}, {"I", "x1*y3"}, {"y3*x1", "u2*x1"}, {"v1*x2", "y1*u3*x1"}};
  for (const auto& [bs, as] : exprs) {
    const FreeElement b = eval_expr(falg, bs, make_symbols(base, falg));
    const FreeElement a = eval_expr(falg, as, make_symbols(base, falg));
    const Scalar f = eval_bilinear(single, b, a);
    const Scalar s = eval_bilinear(fixed, pushforward(falg, b, salg, maps), pushforward(falg, a, salg, maps));
    demo.rows.push_back({std::string("single-branch fuzz vs switch |0>: omega(") + bs + ", " + as + ")", f, s});
    demo.max_error = std::max(demo.max_error, std::abs(f - s));

    const Scalar t = eval_bilinear(twin, pushforward(falg, b, salg, maps), pushforward(falg, a, salg, maps));
    const Scalar w = eval_bilinear(full, pushforward(falg, b, salg, maps), pushforward(falg, a, salg, maps));
    demo.rows.push_back({std::string("two-branch fuzz vs switch: omega(") + bs + ", " + as + ")", t, w});
    demo.max_error = std::max(demo.max_error, std::abs(t - w));
  }
  return demo;
}

}  // namespace causal
