#pragma once

#include <cstdint>

#include <json.hpp>

#include "causal/model_config.hpp"

namespace causal {

struct VerifyOptions {
  std::uint64_t seed = 42;
  std::size_t samples = 200;       // random elements / pairs per property
  std::size_t oracle_pairs = 50;   // random word pairs for the oracle check
  std::size_t max_len = 3;         // word length of random elements
  double tolerance = 1e-9;         // axioms, hermiticity, Cauchy-Schwarz
  double oracle_tolerance = 1e-10;
};

struct PropertyResult {
  std::string name;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_violation <= tolerance; }
};

struct VerifyReport {
  std::string family;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;

  bool passed() const;
  const PropertyResult* failing() const;
  nlohmann::ordered_json to_json() const;
};

/// Normalization, positivity, hermiticity, Cauchy-Schwarz and oracle
/// agreement on seeded random data. Sequential models also check recovery
/// of the Heisenberg-picture correlator.
VerifyReport run_verify(const ModelConfig& cfg, const VerifyOptions& opts = {});

struct DemoRow {
  std::string label;
  Scalar omega;
  Scalar reference;
};

struct SwitchDemo {
  std::vector<DemoRow> rows;
  Scalar amplitude0, amplitude1, amplitude_superposed;
  Scalar c0, c1;
  double linearity_error = 0.0;
  double max_error = 0.0;
};

/// Qubit control, qubit target: omega(e, x*y) for control |0>, |1> and
/// (|0> + |1>)/sqrt 2 against fixed-order chains, plus branch linearity of
/// the amplitude.
SwitchDemo run_demo_switch();

struct FuzzDemo {
  std::vector<DemoRow> rows;
  double max_error = 0.0;
};

/// Single-branch fuzz against the matching switch branch and a two-branch
/// fuzz against the full switch.
FuzzDemo run_demo_fuzz();

}  // namespace causal
