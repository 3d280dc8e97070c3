#include "causal/models.hpp"

#include <algorithm>
#include <cmath>

namespace causal {

namespace {

void require_square(const Matrix& m, int dim, const std::string& what) {
  if (m.rows() != dim || m.cols() != dim)
    throw DimensionError(what + " must be " + std::to_string(dim) + "x" + std::to_string(dim));
}

void require_unitary(const Matrix& m, int dim, const std::string& what) {
  require_square(m, dim, what);
  if (!is_unitary(m)) throw ModelError(what + " is not unitary");
}

void require_unit_vector(const Vector& v, Eigen::Index size, const std::string& what) {
  if (v.size() != size) throw DimensionError(what + " must have length " + std::to_string(size));
  if (std::abs(v.norm() - 1.0) > tol::structural) throw ModelError(what + " is not normalized");
}

}  // namespace

bool is_unitary(const Matrix& u, double tolerance) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tolerance;
}

bool is_hermitian(const Matrix& h, double tolerance) {
  if (h.rows() != h.cols()) return false;
  return h.size() == 0 || (h - h.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

SequentialModel SequentialModel::create(Vector psi2, Matrix u12) {
  SequentialModel m;
  m.dim = static_cast<int>(psi2.size());
  if (m.dim < 1) throw DimensionError("sequential model: empty state vector");
  require_unit_vector(psi2, m.dim, "psi2");
  require_unitary(u12, m.dim, "U_{1,2}");
  m.psi2 = std::move(psi2);
  m.u12 = std::move(u12);
  return m;
}

SequentialChainModel SequentialChainModel::create(Vector psi, std::vector<Matrix> links) {
  SequentialChainModel m;
  m.dim = static_cast<int>(psi.size());
  if (m.dim < 1) throw DimensionError("sequential chain: empty state vector");
  require_unit_vector(psi, m.dim, "psi");
  for (std::size_t k = 0; k < links.size(); ++k) require_unitary(links[k], m.dim, "link " + std::to_string(k + 1));
  m.psi = std::move(psi);
  m.links = std::move(links);
  return m;
}

SwitchModel SwitchModel::create(Vector psi, Matrix v_x0, Matrix x_y0, Matrix y_u0, Matrix v_y1, Matrix y_x1,
                                Matrix x_u1) {
  SwitchModel m;
  m.dim = static_cast<int>(v_x0.rows());
  if (m.dim < 1) throw DimensionError("switch model: empty unitaries");
  require_unitary(v_x0, m.dim, "U_{v,x}^(0)");
  require_unitary(x_y0, m.dim, "U_{x,y}^(0)");
  require_unitary(y_u0, m.dim, "U_{y,u}^(0)");
  require_unitary(v_y1, m.dim, "U_{v,y}^(1)");
  require_unitary(y_x1, m.dim, "U_{y,x}^(1)");
  require_unitary(x_u1, m.dim, "U_{x,u}^(1)");
  require_unit_vector(psi, 2 * m.dim, "psi");
  m.psi = std::move(psi);
  m.v_x0 = std::move(v_x0);
  m.x_y0 = std::move(x_y0);
  m.y_u0 = std::move(y_u0);
  m.v_y1 = std::move(v_y1);
  m.y_x1 = std::move(y_x1);
  m.x_u1 = std::move(x_u1);
  return m;
}

std::string to_string(Order o) { return o == Order::y_then_x ? "y-then-x" : "x-then-y"; }

Order order_from_string(const std::string& s) {
  if (s == "y-then-x" || s == "alpha") return Order::y_then_x;
  if (s == "x-then-y" || s == "beta") return Order::x_then_y;
  throw ModelError("unknown branch order '" + s + "'");
}

FuzzModel FuzzModel::create(int dim, std::vector<FuzzBranch> branches, Vector psi) {
  if (dim < 1) throw DimensionError("fuzz model: target dimension must be positive");
  if (branches.empty()) throw ModelError("fuzz model needs at least one branch");
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const auto tag = "branch " + std::to_string(b) + ": ";
    const auto& br = branches[b];
    if (!(br.weight > 0.0) || !std::isfinite(br.weight)) throw ModelError(tag + "weight must be positive");
    require_unitary(br.in, dim, tag + "input unitary");
    require_unitary(br.mid, dim, tag + "middle unitary");
    require_unitary(br.out, dim, tag + "output unitary");
  }
  const auto n = static_cast<Eigen::Index>(branches.size());
  require_unit_vector(psi, n * dim, "psi");
  // omega(e, e) = || sum_b w_b (|b><b| (x) C_b) psi ||^2 = sum_b w_b^2 ||psi_b||^2
  // since every chain C_b is unitary.
  double norm = 0.0;
  for (Eigen::Index b = 0; b < n; ++b) {
    const double w = branches[static_cast<std::size_t>(b)].weight;
    norm += w * w * psi.segment(b * dim, dim).squaredNorm();
  }
  if (std::abs(norm - 1.0) > tol::equality)
    throw ModelError("fuzz weights do not preserve the normalization: omega(e,e) = " + std::to_string(norm));
  FuzzModel m;
  m.dim = dim;
  m.branches = std::move(branches);
  m.psi = std::move(psi);
  return m;
}

SuperspacetimeModel SuperspacetimeModel::create(int dim, std::vector<std::string> reference,
                                                std::vector<SuperspacetimeBranch> branches, Vector target_psi) {
  if (dim < 1) throw DimensionError("superspacetime: target dimension must be positive");
  if (reference.size() != 2)
    throw ModelError("superspacetime: the reference set must have exactly two labels (x and y slots)");
  if (reference[0] == reference[1]) throw ModelError("superspacetime: reference labels must be distinct");
  if (branches.empty()) throw ModelError("superspacetime needs at least one branch");
  double amp_norm = 0.0;
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const auto tag = "superspacetime branch " + std::to_string(b) + ": ";
    const auto& br = branches[b];
    auto sorted = br.identification;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::vector<int>{0, 1}) throw ModelError(tag + "identification map is not a bijection");
    for (std::size_t s = 0; s < 3; ++s) {
      require_square(br.hamiltonians[s], dim, tag + "hamiltonian");
      if (!is_hermitian(br.hamiltonians[s])) throw ModelError(tag + "hamiltonian is not hermitian");
      if (!std::isfinite(br.times[s])) throw ModelError(tag + "segment time is not finite");
    }
    amp_norm += std::norm(br.amplitude);
  }
  if (!(amp_norm > 0.0) || !std::isfinite(amp_norm))
    throw ModelError("superspacetime: branch amplitudes are not normalizable");
  require_unit_vector(target_psi, dim, "target psi");
  SuperspacetimeModel m;
  m.dim = dim;
  m.reference = std::move(reference);
  m.branches = std::move(branches);
  m.target_psi = std::move(target_psi);
  return m;
}

Matrix evolution(const Matrix& hamiltonian, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian);
  const Vector phases = (es.eigenvalues().cast<Scalar>() * Scalar(0.0, -t)).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

FuzzModel from_superspacetime(const SuperspacetimeModel& s) {
  std::vector<FuzzBranch> branches;
  Vector control(static_cast<Eigen::Index>(s.branches.size()));
  double amp_norm = 0.0;
  for (const auto& br : s.branches) amp_norm += std::norm(br.amplitude);
  amp_norm = std::sqrt(amp_norm);
  for (std::size_t b = 0; b < s.branches.size(); ++b) {
    const auto& br = s.branches[b];
    FuzzBranch fb;
    // Reference label 0 is the x slot; visiting it first is the beta class.
    fb.order = br.identification[0] == 0 ? Order::x_then_y : Order::y_then_x;
    fb.weight = 1.0;
    fb.in = evolution(br.hamiltonians[0], br.times[0]);
    fb.mid = evolution(br.hamiltonians[1], br.times[1]);
    fb.out = evolution(br.hamiltonians[2], br.times[2]);
    for (const Matrix* u : {&fb.in, &fb.mid, &fb.out})
      if (!is_unitary(*u, 1e-9)) throw ModelError("superspacetime: segment evolution is not unitary");
    branches.push_back(std::move(fb));
    control(static_cast<Eigen::Index>(b)) = br.amplitude / amp_norm;
  }
  return FuzzModel::create(s.dim, std::move(branches), product_state(control, s.target_psi));
}

Vector product_state(const Vector& control, const Vector& target) {
  Vector out(control.size() * target.size());
  for (Eigen::Index c = 0; c < control.size(); ++c) out.segment(c * target.size(), target.size()) = control(c) * target;
  return out;
}

}  // namespace causal
