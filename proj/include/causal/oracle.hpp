#pragma once

// Brute-force reference calculator. Deliberately independent of the states
// module: no shared grouping, caching or propagation code. Slow is fine.

#include <span>
#include <variant>

#include "causal/free_product.hpp"
#include "causal/models.hpp"

namespace causal::oracle {

/// <psi| (U1^dagger x U1)(U2^dagger y U2) |psi>, one matrix-vector product at a time.
template <typename DerivedV, typename DerivedU1, typename DerivedU2, typename DerivedX, typename DerivedY>
Scalar heisenberg_correlator(const Eigen::MatrixBase<DerivedV>& psi, const Eigen::MatrixBase<DerivedU1>& u1,
                             const Eigen::MatrixBase<DerivedU2>& u2, const Eigen::MatrixBase<DerivedX>& x,
                             const Eigen::MatrixBase<DerivedY>& y) {
  const auto n = psi.size();
  if (u1.rows() != n || u1.cols() != n || u2.rows() != n || u2.cols() != n || x.rows() != n || x.cols() != n ||
      y.rows() != n || y.cols() != n)
    throw DimensionError("heisenberg_correlator: inconsistent dimensions");
  Vector v = psi;
  v = u2 * v;
  v = y * v;
  v = u2.adjoint() * v;
  v = u1 * v;
  v = x * v;
  v = u1.adjoint() * v;
  return psi.dot(v);
}

/// <phi| ops[0] ops[1] ... ops[n-1] |psi>, applying the bra left to right.
Scalar chain_amplitude(std::span<const Matrix> ops, const Vector& psi, const Vector& phi);

/// Explicit operators and vectors for one amplitude.
struct OracleScenario {
  std::vector<Matrix> ops;
  Vector psi;
  Vector phi;

  Scalar evaluate() const { return chain_amplitude(ops, psi, phi); }
};

/// Dense Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);

using OracleModel = std::variant<SequentialModel, SwitchModel, FuzzModel>;

/// omega(b, a) recomputed from scratch: its own per-factor grouping, dense
/// control (x) target operators, and an explicit loop over the orthonormal
/// basis of the state space.
Scalar state_kernel_bruteforce(const FreeProduct& alg, const OracleModel& model, const Word& b, const Word& a);

/// Fixed-order chains on the target alone: the amplitude of one switch
/// branch with control-diagonal u = |c><c| (x) u_c and v likewise.
/// Returns sum_phi'' conj(<phi''| v_b C(b) u_b |psi''>) <phi''| v_a C(a) u_a |psi''>.
Scalar fixed_order_correlation(const Matrix& out, const Matrix& mid, const Matrix& in, Order order,
                               const Vector& target_psi, const Matrix& xb, const Matrix& yb, const Matrix& ub,
                               const Matrix& vb, const Matrix& xa, const Matrix& ya, const Matrix& ua,
                               const Matrix& va);

}  // namespace causal::oracle
