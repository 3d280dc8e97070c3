#include "causal/model_config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

namespace causal {

namespace {

Scalar entry_from_json(const nlohmann::json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2) return {e.at(0).get<double>(), e.at(1).get<double>()};
  throw ModelError("complex entry must be a number or [re, im]");
}

nlohmann::json entry_to_json(Scalar c) { return nlohmann::json::array({c.real(), c.imag()}); }

const char* slot_name(int factor) {
  switch (factor) {
    case 1: return "x";
    case 2: return "y";
    case 3: return "u";
    case 4: return "v";
    default: return "f";
  }
}

std::array<Matrix, 3> matrix_triple(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw ModelError(std::string(what) + " must list three matrices");
  return {matrix_from_json(j[0]), matrix_from_json(j[1]), matrix_from_json(j[2])};
}

int target_dim(const nlohmann::json& j) {
  const int d = j.at("dims").at("target").get<int>();
  if (d < 1) throw ModelError("dims.target must be positive");
  return d;
}

ModelConfig::Model parse_family(const nlohmann::json& j) {
  const auto family = j.at("family").get<std::string>();
  const int d = target_dim(j);
  if (family == "sequential") {
    auto m = SequentialModel::create(vector_from_json(j.at("psi")), matrix_from_json(j.at("unitary")));
    if (m.dim != d) throw ModelError("psi length does not match dims.target");
    return m;
  }
  if (family == "switch") {
    const auto& u = j.at("unitaries");
    auto m = SwitchModel::create(vector_from_json(j.at("psi")), matrix_from_json(u.at("v_x0")),
                                 matrix_from_json(u.at("x_y0")), matrix_from_json(u.at("y_u0")),
                                 matrix_from_json(u.at("v_y1")), matrix_from_json(u.at("y_x1")),
                                 matrix_from_json(u.at("x_u1")));
    if (m.dim != d) throw ModelError("unitary size does not match dims.target");
    return m;
  }
  if (family == "fuzz") {
    std::vector<FuzzBranch> branches;
    for (const auto& b : j.at("branches")) {
      auto us = matrix_triple(b.at("unitaries"), "branch unitaries");
      branches.push_back({b.at("weight").get<double>(), order_from_string(b.at("order").get<std::string>()),
                          std::move(us[0]), std::move(us[1]), std::move(us[2])});
    }
    return FuzzModel::create(d, std::move(branches), vector_from_json(j.at("psi")));
  }
  if (family == "superspacetime") {
    const auto reference = j.at("reference").get<std::vector<std::string>>();
    std::vector<SuperspacetimeBranch> branches;
    for (const auto& b : j.at("branches")) {
      SuperspacetimeBranch br;
      // "map" lists the reference labels in the order the branch visits them.
      const auto order = b.at("map").get<std::vector<std::string>>();
      if (order.size() != reference.size()) throw ModelError("identification map has the wrong size");
      br.identification.assign(reference.size(), -1);
      for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const auto it = std::find(reference.begin(), reference.end(), order[pos]);
        if (it == reference.end()) throw ModelError("identification map names unknown label '" + order[pos] + "'");
        br.identification[static_cast<std::size_t>(it - reference.begin())] = static_cast<int>(pos);
      }
      br.hamiltonians = matrix_triple(b.at("hamiltonians"), "branch hamiltonians");
      const auto times = b.at("times").get<std::vector<double>>();
      if (times.size() != 3) throw ModelError("branch times must list three durations");
      std::copy(times.begin(), times.end(), br.times.begin());
      br.amplitude = entry_from_json(b.at("amplitude"));
      branches.push_back(std::move(br));
    }
    return SuperspacetimeModel::create(d, reference, std::move(branches), vector_from_json(j.at("psi")));
  }
  throw ModelError("unknown family '" + family + "'");
}

}  // namespace

nlohmann::json matrix_to_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(entry_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ModelError("matrix must be a non-empty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.at(0).size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ModelError("ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = entry_from_json(row.at(static_cast<std::size_t>(k)));
  }
  return m;
}

nlohmann::json vector_to_json(const Vector& v) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(entry_to_json(v(i)));
  return out;
}

Vector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw ModelError("vector must be a non-empty list");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = entry_from_json(j[i]);
  return v;
}

Family ModelConfig::family() const {
  return std::visit(
      [](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SequentialModel>) return Family::sequential;
        if constexpr (std::is_same_v<T, SwitchModel>) return Family::switch_;
        if constexpr (std::is_same_v<T, FuzzModel>) return Family::fuzz;
        return Family::superspacetime;
      },
      model);
}

ModelConfig load_model(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ModelError("model must be a JSON object");
    if (j.at("version").get<int>() != 1) throw ModelError("unsupported model version");
    if (j.contains("phiBasis") && j.at("phiBasis").get<std::string>() != "full")
      throw ModelError("only phiBasis \"full\" is supported");
    ModelConfig cfg{parse_family(j), {}};
    if (j.contains("symbols"))
      for (const auto& s : j.at("symbols"))
        cfg.symbols.push_back({s.at("name").get<std::string>(), s.at("factor").get<int>(),
                               matrix_from_json(s.at("matrix"))});
    return cfg;
  } catch (const ModelError&) {
    throw;
  } catch (const Error& e) {
    throw ModelError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("model schema: ") + e.what());
  }
}

ModelConfig load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file " + path);
  try {
    return load_model(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(std::string("model file is not valid JSON: ") + e.what());
  }
}

nlohmann::json to_json(const ModelConfig& cfg) {
  nlohmann::json j;
  j["version"] = 1;
  j["family"] = to_string(cfg.family());
  j["phiBasis"] = "full";
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        j["dims"] = {{"target", m.dim}};
        if constexpr (std::is_same_v<T, SequentialModel>) {
          j["psi"] = vector_to_json(m.psi2);
          j["unitary"] = matrix_to_json(m.u12);
        } else if constexpr (std::is_same_v<T, SwitchModel>) {
          j["psi"] = vector_to_json(m.psi);
          j["unitaries"] = {{"v_x0", matrix_to_json(m.v_x0)}, {"x_y0", matrix_to_json(m.x_y0)},
                            {"y_u0", matrix_to_json(m.y_u0)}, {"v_y1", matrix_to_json(m.v_y1)},
                            {"y_x1", matrix_to_json(m.y_x1)}, {"x_u1", matrix_to_json(m.x_u1)}};
        } else if constexpr (std::is_same_v<T, FuzzModel>) {
          j["psi"] = vector_to_json(m.psi);
          auto branches = nlohmann::json::array();
          for (const auto& b : m.branches)
            branches.push_back({{"weight", b.weight},
                                {"order", to_string(b.order)},
                                {"unitaries", {matrix_to_json(b.in), matrix_to_json(b.mid), matrix_to_json(b.out)}}});
          j["branches"] = std::move(branches);
        } else {
          j["psi"] = vector_to_json(m.target_psi);
          j["reference"] = m.reference;
          auto branches = nlohmann::json::array();
          for (const auto& b : m.branches) {
            std::vector<std::string> order(m.reference.size());
            for (std::size_t k = 0; k < m.reference.size(); ++k)
              order[static_cast<std::size_t>(b.identification[k])] = m.reference[k];
            branches.push_back({{"map", order},
                                {"hamiltonians",
                                 {matrix_to_json(b.hamiltonians[0]), matrix_to_json(b.hamiltonians[1]),
                                  matrix_to_json(b.hamiltonians[2])}},
                                {"times", b.times},
                                {"amplitude", entry_to_json(b.amplitude)}});
          }
          j["branches"] = std::move(branches);
        }
      },
      cfg.model);
  if (!cfg.symbols.empty()) {
    auto syms = nlohmann::json::array();
    for (const auto& s : cfg.symbols)
      syms.push_back({{"name", s.name}, {"factor", s.factor}, {"matrix", matrix_to_json(s.matrix)}});
    j["symbols"] = std::move(syms);
  }
  return j;
}

std::unique_ptr<GeneralizedState> make_state(const ModelConfig& cfg) {
  return std::visit(
      [](const auto& m) -> std::unique_ptr<GeneralizedState> {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, SequentialModel>) return std::make_unique<SequentialState>(m);
        if constexpr (std::is_same_v<T, SwitchModel>) return std::make_unique<SwitchState>(m);
        if constexpr (std::is_same_v<T, FuzzModel>) return std::make_unique<FuzzState>(m);
        if constexpr (std::is_same_v<T, SuperspacetimeModel>) return std::make_unique<SuperspacetimeState>(m);
      },
      cfg.model);
}

SymbolTable make_symbols(const ModelConfig& cfg, const FreeProduct& alg) {
  SymbolTable table;
  for (const auto& [f, spec] : alg.factors())
    for (int k = 0; k < spec.basis_size(); ++k)
      table.insert_or_assign(slot_name(f) + std::to_string(k + 1), alg.letter(f, k));
  for (const auto& s : cfg.symbols) table.insert_or_assign(s.name, alg.embed(s.factor, s.matrix));
  return table;
}

ModelConfig builtin_model(Family f) {
  using namespace std::complex_literals;
  const double r = std::numbers::sqrt2 / 2.0;
  Matrix h(2, 2), s(2, 2), x(2, 2), t(2, 2);
  h << r, r, r, -r;
  s << 1.0, 0.0, 0.0, 1i;
  x << 0.0, 1.0, 1.0, 0.0;
  t << 1.0, 0.0, 0.0, std::exp(1i * std::numbers::pi / 4.0);
  Matrix ry(2, 2);  // rotation about y by 0.7
  ry << std::cos(0.35), -std::sin(0.35), std::sin(0.35), std::cos(0.35);
  Vector zero(2), plus(2), tilted(2);
  zero << 1.0, 0.0;
  plus << r, r;
  tilted << std::cos(0.3), std::exp(0.4i) * std::sin(0.3);
  Matrix sx(2, 2), sz(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  std::vector<SymbolSpec> symbols{{"x", 1, sx}, {"y", 2, sz}};

  switch (f) {
    case Family::sequential:
      return {SequentialModel::create(tilted, Matrix(h * s)), symbols};
    case Family::switch_:
      return {SwitchModel::create(product_state(plus, tilted), h, s, ry, t, Matrix(h * t), x), symbols};
    case Family::fuzz: {
      // Weights 0.5 and ~1.32 with control amplitudes 0.6, 0.8.
      const double w1 = 0.5;
      const double w2 = std::sqrt((1.0 - 0.36 * w1 * w1) / 0.64);
      Vector control(2);
      control << 0.6, 0.8i;
      std::vector<FuzzBranch> branches{{w1, Order::y_then_x, ry, s, h}, {w2, Order::x_then_y, x, Matrix(h * t), t}};
      return {FuzzModel::create(2, std::move(branches), product_state(control, tilted)), symbols};
    }
    case Family::superspacetime: {
      Matrix h0(2, 2), h1(2, 2);
      h0 << 1.0, 0.5, 0.5, -1.0;
      h1 << 0.2, -0.3i, 0.3i, 0.7;
      SuperspacetimeBranch a{{1, 0}, {h0, h1, sx}, {0.4, 1.1, 0.3}, {0.8, 0.0}};
      SuperspacetimeBranch b{{0, 1}, {h1, sz, h0}, {0.9, 0.2, 0.6}, {0.0, 0.6}};
      return {SuperspacetimeModel::create(2, {"p", "q"}, {a, b}, tilted), symbols};
    }
    case Family::custom: break;
  }
  throw ModelError("no builtin model for this family");
}

}  // namespace causal
