#include "causal/factor.hpp"

#include <cmath>
#include <string>

namespace causal {

std::vector<Matrix> gell_mann_basis(int dim) {
  if (dim < 1) throw DimensionError("factor dimension must be positive");
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(dim * dim - 1));
  const Scalar i{0.0, 1.0};
  for (int k = 1; k < dim; ++k) {
    for (int j = 0; j < k; ++j) {
      Matrix sym = Matrix::Zero(dim, dim);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      out.push_back(std::move(sym));

      Matrix anti = Matrix::Zero(dim, dim);
      anti(j, k) = -i;
      anti(k, j) = i;
      out.push_back(std::move(anti));
    }
    Matrix diag = Matrix::Zero(dim, dim);
    const double norm = std::sqrt(2.0 / (k * (k + 1.0)));
    for (int l = 0; l < k; ++l) diag(l, l) = norm;
    diag(k, k) = -k * norm;
    out.push_back(std::move(diag));
  }
  return out;
}

FactorSpec::FactorSpec(int index, int dim) : FactorSpec(index, dim, gell_mann_basis(dim)) {}

FactorSpec::FactorSpec(int index, int dim, std::vector<Matrix> basis)
    : index_(index), dim_(dim), basis_(std::move(basis)) {
  if (dim_ < 1) throw DimensionError("factor " + std::to_string(index) + ": dimension must be positive");
  validate();
  const auto n = basis_.size();
  Matrix gram(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) gram(a, b) = (basis_[a].adjoint() * basis_[b]).trace();
  gram_.compute(gram);
}

void FactorSpec::validate() const {
  const auto tag = "factor " + std::to_string(index_) + ": ";
  if (basis_.size() != static_cast<std::size_t>(dim_ * dim_ - 1))
    throw DimensionError(tag + "basis must have d^2 - 1 matrices");
  for (const auto& m : basis_) {
    if (m.rows() != dim_ || m.cols() != dim_) throw DimensionError(tag + "basis matrix has wrong size");
    if (std::abs(m.trace()) > tol::structural) throw ModelError(tag + "basis matrix is not traceless");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol::structural)
      throw ModelError(tag + "basis matrix is not hermitian");
  }
  if (basis_.empty()) return;
  // Traceless matrices are HS-orthogonal to the identity, so independence of
  // basis + identity reduces to a nonsingular Gram of the basis alone.
  const auto n = static_cast<Eigen::Index>(basis_.size());
  Matrix stacked(dim_ * dim_, n);
  for (Eigen::Index k = 0; k < n; ++k)
    stacked.col(k) = basis_[static_cast<std::size_t>(k)].reshaped();
  Eigen::ColPivHouseholderQR<Matrix> qr(stacked);
  qr.setThreshold(1e-10);
  if (qr.rank() != n) throw ModelError(tag + "basis matrices are linearly dependent");
}

const Matrix& FactorSpec::basis(int k) const {
  if (k < 0 || k >= basis_size())
    throw DimensionError("factor " + std::to_string(index_) + ": basis index out of range");
  return basis_[static_cast<std::size_t>(k)];
}

FactorSplit FactorSpec::split(const Matrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_)
    throw DimensionError("factor " + std::to_string(index_) + ": expected " + std::to_string(dim_) + "x" +
                         std::to_string(dim_) + " matrix");
  FactorSplit out;
  out.identity = m.trace() / static_cast<double>(dim_);
  const auto n = static_cast<Eigen::Index>(basis_.size());
  out.coords.resize(n);
  if (n == 0) return out;
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index k = 0; k < n; ++k)
    rhs(k) = (basis_[static_cast<std::size_t>(k)].adjoint() * m).trace();
  out.coords = gram_.solve(rhs);
  return out;
}

}  // namespace causal
