#pragma once

#include <memory>
#include <string>
#include <variant>

#include <json.hpp>

#include "causal/expr.hpp"
#include "causal/states.hpp"

namespace causal {

/// Named element bound in a model file: embed(factor, matrix).
struct SymbolSpec {
  std::string name;
  int factor = 0;
  Matrix matrix;
};

/// Deserialized state family plus its symbol table. Schema version 1:
///
///   {"version": 1, "family": "sequential" | "switch" | "fuzz" | "superspacetime",
///    "dims": {"target": d}, "psi": [[re, im], ...], "phiBasis": "full",
///    "symbols": [{"name": ..., "factor": ..., "matrix": ...}], ...family fields}
///
/// Matrices are row lists of [re, im] pairs (a bare number is a real entry).
struct ModelConfig {
  using Model = std::variant<SequentialModel, SwitchModel, FuzzModel, SuperspacetimeModel>;

  Model model;
  std::vector<SymbolSpec> symbols;

  Family family() const;
};

/// Throws ModelError for any schema or validation failure.
ModelConfig load_model(const nlohmann::json& j);
ModelConfig load_model_file(const std::string& path);
nlohmann::json to_json(const ModelConfig& cfg);

std::unique_ptr<GeneralizedState> make_state(const ModelConfig& cfg);

/// Generator names <slot><k> (x1, y2, u15, ...; k is 1-based) for every
/// basis letter, plus the model's own symbols.
SymbolTable make_symbols(const ModelConfig& cfg, const FreeProduct& alg);

/// Deterministic example models, one per family (qubit target).
ModelConfig builtin_model(Family f);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);

}  // namespace causal
