#include "causal/oracle.hpp"

namespace causal::oracle {

namespace {

// Per-factor products in order of appearance, from the raw word.
std::map<int, Matrix> collect(const FreeProduct& alg, const std::vector<std::pair<int, Matrix>>& letters,
                              std::initializer_list<int> factors) {
  std::map<int, Matrix> out;
  for (int f : factors) {
    const int d = alg.factor(f).dim();
    out[f] = Matrix::Identity(d, d);
  }
  for (const auto& [f, m] : letters) {
    auto it = out.find(f);
    if (it == out.end()) throw UnknownFactorError("oracle: letter outside the model's factors");
    it->second = Matrix(it->second * m);
  }
  return out;
}

std::vector<std::pair<int, Matrix>> letters_of(const FreeProduct& alg, const Word& w) {
  std::vector<std::pair<int, Matrix>> out;
  for (const auto& l : w.letters) out.emplace_back(l.factor, alg.letter_matrix(l));
  return out;
}

// (x_1 ... x_n)^* = x_n^* ... x_1^*, letter by letter.
std::vector<std::pair<int, Matrix>> adjoint_letters(std::vector<std::pair<int, Matrix>> letters) {
  std::vector<std::pair<int, Matrix>> out;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.emplace_back(it->first, it->second.adjoint());
  return out;
}

Vector basis_vector(Eigen::Index n, Eigen::Index k) {
  Vector e = Vector::Zero(n);
  e(k) = 1.0;
  return e;
}

Matrix projector(Eigen::Index n, Eigen::Index k) {
  Matrix p = Matrix::Zero(n, n);
  p(k, k) = 1.0;
  return p;
}

struct Branch {
  double weight;
  Order order;
  Matrix in, mid, out;
};

// Dense middle operator sum_c w_c |c><c| (x) chain_c.
Matrix middle_operator(const std::vector<Branch>& branches, const Matrix& x, const Matrix& y) {
  const auto n = static_cast<Eigen::Index>(branches.size());
  const auto d = x.rows();
  Matrix m = Matrix::Zero(n * d, n * d);
  for (Eigen::Index c = 0; c < n; ++c) {
    const auto& b = branches[static_cast<std::size_t>(c)];
    const std::vector<Matrix> ops = b.order == Order::y_then_x ? std::vector<Matrix>{b.out, x, b.mid, y, b.in}
                                                               : std::vector<Matrix>{b.out, y, b.mid, x, b.in};
    Matrix chain = Matrix::Identity(d, d);
    for (const auto& op : ops) chain = chain * op;
    m += kron(projector(n, c), b.weight * chain);
  }
  return m;
}

Scalar switch_like(const FreeProduct& alg, const std::vector<Branch>& branches, const Vector& psi, const Word& b,
                   const Word& a) {
  const auto gb = collect(alg, adjoint_letters(letters_of(alg, b)), {1, 2, 3, 4});
  const auto ga = collect(alg, letters_of(alg, a), {1, 2, 3, 4});
  const std::vector<Matrix> ops_b{gb.at(4), middle_operator(branches, gb.at(1), gb.at(2)), gb.at(3)};
  const std::vector<Matrix> ops_a{ga.at(4), middle_operator(branches, ga.at(1), ga.at(2)), ga.at(3)};
  Scalar sum{};
  for (Eigen::Index k = 0; k < psi.size(); ++k) {
    const Vector phi = basis_vector(psi.size(), k);
    sum += std::conj(chain_amplitude(ops_b, psi, phi)) * chain_amplitude(ops_a, psi, phi);
  }
  return sum;
}

}  // namespace

Scalar chain_amplitude(std::span<const Matrix> ops, const Vector& psi, const Vector& phi) {
  Eigen::RowVectorXcd bra = phi.adjoint();
  for (const auto& op : ops) {
    if (op.rows() != bra.size()) throw DimensionError("chain_amplitude: operator does not match the chain");
    bra = bra * op;
  }
  if (bra.size() != psi.size()) throw DimensionError("chain_amplitude: state does not match the chain");
  return (bra * psi)(0, 0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Scalar state_kernel_bruteforce(const FreeProduct& alg, const OracleModel& model, const Word& b, const Word& a) {
  if (const auto* seq = std::get_if<SequentialModel>(&model)) {
    const auto gb = collect(alg, letters_of(alg, b), {1, 2});
    const auto ga = collect(alg, letters_of(alg, a), {1, 2});
    const std::vector<Matrix> left{gb.at(2), seq->u12.adjoint(), gb.at(1)};
    const std::vector<Matrix> right{ga.at(1), seq->u12, ga.at(2)};
    Scalar sum{};
    for (Eigen::Index k = 0; k < seq->dim; ++k) {
      const Vector psi1 = basis_vector(seq->dim, k);
      // <psi2| left |psi1> <psi1| right |psi2>
      sum += chain_amplitude(left, psi1, seq->psi2) * chain_amplitude(right, seq->psi2, psi1);
    }
    return sum;
  }
  if (const auto* sw = std::get_if<SwitchModel>(&model)) {
    const std::vector<Branch> branches{{1.0, Order::y_then_x, sw->y_u0, sw->x_y0, sw->v_x0},
                                       {1.0, Order::x_then_y, sw->x_u1, sw->y_x1, sw->v_y1}};
    return switch_like(alg, branches, sw->psi, b, a);
  }
  const auto& fz = std::get<FuzzModel>(model);
  std::vector<Branch> branches;
  for (const auto& br : fz.branches) branches.push_back({br.weight, br.order, br.in, br.mid, br.out});
  return switch_like(alg, branches, fz.psi, b, a);
}

Scalar fixed_order_correlation(const Matrix& out, const Matrix& mid, const Matrix& in, Order order,
                               const Vector& target_psi, const Matrix& xb, const Matrix& yb, const Matrix& ub,
                               const Matrix& vb, const Matrix& xa, const Matrix& ya, const Matrix& ua,
                               const Matrix& va) {
  auto chain = [&](const Matrix& x, const Matrix& y, const Matrix& u, const Matrix& v) {
    return order == Order::y_then_x ? std::vector<Matrix>{v, out, x, mid, y, in, u}
                                    : std::vector<Matrix>{v, out, y, mid, x, in, u};
  };
  const auto ops_b = chain(xb, yb, ub, vb);
  const auto ops_a = chain(xa, ya, ua, va);
  Scalar sum{};
  for (Eigen::Index k = 0; k < target_psi.size(); ++k) {
    const Vector phi = basis_vector(target_psi.size(), k);
    sum += std::conj(chain_amplitude(ops_b, target_psi, phi)) * chain_amplitude(ops_a, target_psi, phi);
  }
  return sum;
}

}  // namespace causal::oracle
