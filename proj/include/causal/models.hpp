#pragma once

#include <array>
#include <string>
#include <vector>

#include "causal/types.hpp"

namespace causal {

// Parameter sets of the four state families. Each create() validates its
// invariants and throws ModelError on violation. Composite vectors on
// control (x) target are laid out control-major: index = c * dim + t.

bool is_unitary(const Matrix& u, double tolerance = tol::unitary);
bool is_hermitian(const Matrix& h, double tolerance = tol::equality);

/// Two-slot sequential process: factor 1 is the x slot, factor 2 the y slot.
/// U_{2,1} is U_{1,2}^dagger.
struct SequentialModel {
  int dim = 0;
  Vector psi2;
  Matrix u12;

  static SequentialModel create(Vector psi2, Matrix u12);
};

/// n-slot generalization: factor k is slot k, one unitary links[k-1]
/// between slots k and k+1, state on the last slot. With two slots this is
/// SequentialModel (links = {U_{1,2}}).
struct SequentialChainModel {
  int dim = 0;
  Vector psi;
  std::vector<Matrix> links;

  static SequentialChainModel create(Vector psi, std::vector<Matrix> links);
  int slots() const { return static_cast<int>(links.size()) + 1; }
};

/// Quantum switch on C^2 (x) C^d. Factors: 1 = x (d), 2 = y (d),
/// 3 = u (2d), 4 = v (2d).
///
/// Control |0> runs y then x:  U_vx0 x U_xy0 y U_yu0.
/// Control |1> runs x then y:  U_vy1 y U_yx1 x U_xu1.
struct SwitchModel {
  int dim = 0;
  Vector psi;
  Matrix v_x0, x_y0, y_u0;
  Matrix v_y1, y_x1, x_u1;

  static SwitchModel create(Vector psi, Matrix v_x0, Matrix x_y0, Matrix y_u0, Matrix v_y1, Matrix y_x1,
                            Matrix x_u1);
  int control_dim() const { return 2; }
};

/// Order class of a fuzz branch. The alpha class runs y first, the beta class x first.
enum class Order { y_then_x, x_then_y };

std::string to_string(Order o);
Order order_from_string(const std::string& s);

/// One branch of a discrete measure: weight and three unitaries in the order
/// they act (input -> first slot, first -> second, second -> output).
///
/// y_then_x: in = U_{y,u}, mid = U_{x,y}, out = U_{v,x}
/// x_then_y: in = U_{x,u}, mid = U_{y,x}, out = U_{v,y}
struct FuzzBranch {
  double weight = 1.0;
  Order order = Order::y_then_x;
  Matrix in, mid, out;
};

/// Quantum fuzz with one orthonormal control label per branch. Factors as in
/// SwitchModel with u, v in M_{n d} for n branches. create() checks that the
/// weights keep omega(e, e) = 1.
struct FuzzModel {
  int dim = 0;
  std::vector<FuzzBranch> branches;
  Vector psi;

  static FuzzModel create(int dim, std::vector<FuzzBranch> branches, Vector psi);
  int control_dim() const { return static_cast<int>(branches.size()); }
};

/// Superposition of two-point spacetimes over a reference set of two labels.
/// Label 0 lands on the x slot, label 1 on the y slot.
struct SuperspacetimeBranch {
  // identification[k] = position of reference label k along the branch's
  // evolution (0 = visited first).
  std::vector<int> identification;
  std::array<Matrix, 3> hamiltonians;
  std::array<double, 3> times{};
  Scalar amplitude{1.0, 0.0};
};

struct SuperspacetimeModel {
  int dim = 0;
  std::vector<std::string> reference;
  std::vector<SuperspacetimeBranch> branches;
  Vector target_psi;

  static SuperspacetimeModel create(int dim, std::vector<std::string> reference,
                                    std::vector<SuperspacetimeBranch> branches, Vector target_psi);
};

/// exp(-i H t) for hermitian H via its eigendecomposition.
Matrix evolution(const Matrix& hamiltonian, double t);

/// Per branch: segment unitaries exp(-i H t), ordered by the identification
/// map, unit weight; branch amplitudes (normalized) fill the control factor.
FuzzModel from_superspacetime(const SuperspacetimeModel& s);

/// psi' (x) psi''.
Vector product_state(const Vector& control, const Vector& target);

}  // namespace causal
