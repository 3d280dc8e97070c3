#pragma once

#include <vector>

#include "causal/types.hpp"

namespace causal {

/// Generalized Gell-Mann matrices for M_d(C): d^2 - 1 traceless hermitian
/// matrices normalized to tr(a b) = 2 delta_ab. For d = 2 the order is
/// sigma_x, sigma_y, sigma_z.
std::vector<Matrix> gell_mann_basis(int dim);

/// Identity part and traceless-basis coordinates of a matrix.
struct FactorSplit {
  Scalar identity;
  Eigen::VectorXcd coords;
};

/// One factor algebra M_d(C) with a chosen traceless hermitian basis.
class FactorSpec {
 public:
  /// Uses the generalized Gell-Mann basis.
  FactorSpec(int index, int dim);

  /// Custom basis; validated (traceless, hermitian, independent of identity).
  FactorSpec(int index, int dim, std::vector<Matrix> basis);

  int index() const { return index_; }
  int dim() const { return dim_; }
  int basis_size() const { return static_cast<int>(basis_.size()); }
  const Matrix& basis(int k) const;
  const std::vector<Matrix>& basis() const { return basis_; }

  /// m = identity * I + sum_k coords[k] * basis(k).
  FactorSplit split(const Matrix& m) const;

 private:
  void validate() const;

  int index_;
  int dim_;
  std::vector<Matrix> basis_;
  // Hilbert-Schmidt Gram of the basis, factorized once for coordinate solves.
  Eigen::LDLT<Matrix> gram_;
};

}  // namespace causal
