#include "causal/states.hpp"

#include <mutex>
#include <numeric>

namespace causal {

namespace {

// Block-diagonal operator sum_c |c><c| (x) blocks[c], applied to a
// control-major vector.
Vector apply_blocks(const std::vector<Matrix>& blocks, const Vector& in, int dim) {
  Vector out(in.size());
  for (std::size_t c = 0; c < blocks.size(); ++c) {
    const auto off = static_cast<Eigen::Index>(c) * dim;
    out.segment(off, dim) = blocks[c] * in.segment(off, dim);
  }
  return out;
}

void check_amplitude_dims(Eigen::Index dim, Eigen::Index composite, const Vector& phi, const Matrix& x,
                          const Matrix& y, const Matrix& u, const Matrix& v) {
  auto square = [](const Matrix& m, Eigen::Index n) { return m.rows() == n && m.cols() == n; };
  if (!square(x, dim) || !square(y, dim)) throw DimensionError("x and y must act on the target space");
  if (!square(u, composite) || !square(v, composite))
    throw DimensionError("u and v must act on control (x) target");
  if (phi.size() != composite) throw DimensionError("phi must live in control (x) target");
}

Matrix branch_chain(const FuzzBranch& b, const Matrix& x, const Matrix& y) {
  return b.order == Order::y_then_x ? Matrix(b.out * x * b.mid * y * b.in) : Matrix(b.out * y * b.mid * x * b.in);
}

const std::vector<int> kSequentialSlots{1, 2};
const std::vector<int> kSwitchSlots{1, 2, 3, 4};

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::sequential: return "sequential";
    case Family::switch_: return "switch";
    case Family::fuzz: return "fuzz";
    case Family::superspacetime: return "superspacetime";
    case Family::custom: return "custom";
  }
  return "custom";
}

Groups group_by_factor(const FreeProduct& alg, const Word& w, std::span<const int> slots) {
  Groups out;
  out.reserve(slots.size());
  for (int f : slots) {
    const int d = alg.factor(f).dim();
    out.push_back(Matrix::Identity(d, d));
  }
  for (const auto& l : w.letters) {
    const auto it = std::find(slots.begin(), slots.end(), l.factor);
    if (it == slots.end()) throw UnknownFactorError("letter from unregistered slot " + std::to_string(l.factor));
    auto& g = out[static_cast<std::size_t>(it - slots.begin())];
    g = g * alg.letter_matrix(l);
  }
  return out;
}

const Groups& GroupCache::get(const Word& w) const {
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(w); it != cache_.end()) return it->second;
  }
  Groups g = group_by_factor(*alg_, w, slots_);
  std::unique_lock lock(mutex_);
  // A concurrent writer may have won; both computed the same value.
  return cache_.try_emplace(w, std::move(g)).first->second;
}

Scalar GeneralizedState::bilinear(const FreeElement& p, const FreeElement& q) const {
  Scalar sum{};
  for (const auto& [wp, cp] : p.terms())
    for (const auto& [wq, cq] : q.terms()) sum += cp * cq * kernel(wp, wq);
  return sum;
}

Scalar eval_bilinear(const GeneralizedState& state, const FreeElement& p, const FreeElement& q) {
  return state.bilinear(p, q);
}

namespace {

// For kernel(p, q) = <prop(rev p), prop(q)>: sum the bra and ket vectors first.
// The bra coefficients are conjugated so the result stays linear in p.
template <class State>
Scalar bilinear_by_vectors(const State& s, const GroupCache& cache, const FreeElement& p, const FreeElement& q) {
  Vector bra, ket;
  for (const auto& [w, c] : p.terms()) {
    const Vector v = std::conj(c) * s.propagate(cache.get(reversed(w)));
    if (bra.size() == 0) bra = v; else bra += v;
  }
  for (const auto& [w, c] : q.terms()) {
    const Vector v = c * s.propagate(cache.get(w));
    if (ket.size() == 0) ket = v; else ket += v;
  }
  if (bra.size() == 0 || ket.size() == 0) return Scalar{};
  return bra.dot(ket);
}

}  // namespace

FreeProduct sequential_algebra(int dim) { return FreeProduct::with_dims({{1, dim}, {2, dim}}); }

FreeProduct switch_algebra(int dim, int control_dim) {
  return FreeProduct::with_dims({{1, dim}, {2, dim}, {3, control_dim * dim}, {4, control_dim * dim}});
}

SequentialState::SequentialState(SequentialModel model)
    : GeneralizedState(sequential_algebra(model.dim)), model_(std::move(model)), groups_(algebra(), kSequentialSlots) {}

Scalar SequentialState::kernel(const Word& b, const Word& a) const {
  const auto& gb = groups_.get(b);
  const auto& ga = groups_.get(a);
  const int d = model_.dim;
  const Matrix resolution = Matrix::Identity(d, d);  // sum over |psi1><psi1|
  const Eigen::RowVectorXcd left = model_.psi2.adjoint() * gb[1] * model_.u12.adjoint() * gb[0];
  const Vector right = ga[0] * (model_.u12 * (ga[1] * model_.psi2));
  return (left * resolution * right)(0, 0);
}

namespace {

std::vector<int> chain_slots(int n) {
  std::vector<int> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 1);
  return s;
}

}  // namespace

FreeProduct sequential_chain_algebra(int dim, int slots) {
  std::vector<FactorSpec> factors;
  for (int k = 1; k <= slots; ++k) factors.emplace_back(k, dim);
  return FreeProduct(std::move(factors));
}

SequentialChainState::SequentialChainState(SequentialChainModel model)
    : GeneralizedState(sequential_chain_algebra(model.dim, model.slots())),
      model_(std::move(model)),
      groups_(algebra(), chain_slots(model_.slots())) {}

Vector SequentialChainState::propagate(const Groups& g) const {
  Vector v = g.back() * model_.psi;
  for (std::size_t k = model_.links.size(); k-- > 0;) v = g[k] * (model_.links[k] * v);
  return v;
}

Scalar SequentialChainState::kernel(const Word& b, const Word& a) const {
  return propagate(groups_.get(reversed(b))).dot(propagate(groups_.get(a)));
}

Scalar SequentialChainState::bilinear(const FreeElement& p, const FreeElement& q) const {
  return bilinear_by_vectors(*this, groups_, p, q);
}

Scalar amplitude_switch(const SwitchModel& m, const Vector& phi, const Matrix& x, const Matrix& y, const Matrix& u,
                        const Matrix& v) {
  check_amplitude_dims(m.dim, 2 * m.dim, phi, x, y, u, v);
  const std::vector<Matrix> blocks{m.v_x0 * x * m.x_y0 * y * m.y_u0, m.v_y1 * y * m.y_x1 * x * m.x_u1};
  return phi.dot(v * apply_blocks(blocks, u * m.psi, m.dim));
}

Scalar fuzz_amplitude(std::span<const FuzzBranch> branches, const Vector& psi, const Vector& phi, const Matrix& x,
                      const Matrix& y, const Matrix& u, const Matrix& v) {
  const auto dim = x.rows();
  const auto composite = static_cast<Eigen::Index>(branches.size()) * dim;
  check_amplitude_dims(dim, composite, phi, x, y, u, v);
  if (psi.size() != composite) throw DimensionError("psi must live in control (x) target");
  std::vector<Matrix> blocks;
  for (const auto& b : branches) {
    if (!(b.weight > 0.0)) throw ModelError("branch weight must be positive");
    blocks.push_back(b.weight * branch_chain(b, x, y));
  }
  return phi.dot(v * apply_blocks(blocks, u * psi, static_cast<int>(dim)));
}

Scalar amplitude_fuzz(const FuzzModel& m, const Vector& phi, const Matrix& x, const Matrix& y, const Matrix& u,
                      const Matrix& v) {
  return fuzz_amplitude(m.branches, m.psi, phi, x, y, u, v);
}

SwitchState::SwitchState(SwitchModel model)
    : GeneralizedState(switch_algebra(model.dim)), model_(std::move(model)), groups_(algebra(), kSwitchSlots) {}

Vector SwitchState::propagate(const Groups& g) const {
  const auto& [x, y, u, v] = std::tie(g[0], g[1], g[2], g[3]);
  const std::vector<Matrix> blocks{model_.v_x0 * x * model_.x_y0 * y * model_.y_u0,
                                   model_.v_y1 * y * model_.y_x1 * x * model_.x_u1};
  return v * apply_blocks(blocks, u * model_.psi, model_.dim);
}

Scalar SwitchState::kernel(const Word& p, const Word& q) const {
  const Vector bra = propagate(groups_.get(reversed(p)));
  const Vector ket = propagate(groups_.get(q));
  return bra.dot(ket);
}

Scalar SwitchState::bilinear(const FreeElement& p, const FreeElement& q) const {
  return bilinear_by_vectors(*this, groups_, p, q);
}

FuzzState::FuzzState(FuzzModel model)
    : GeneralizedState(switch_algebra(model.dim, model.control_dim())),
      model_(std::move(model)),
      groups_(algebra(), kSwitchSlots) {}

Vector FuzzState::propagate(const Groups& g) const {
  std::vector<Matrix> blocks;
  blocks.reserve(model_.branches.size());
  for (const auto& b : model_.branches) blocks.push_back(b.weight * branch_chain(b, g[0], g[1]));
  return g[3] * apply_blocks(blocks, g[2] * model_.psi, model_.dim);
}

Scalar FuzzState::kernel(const Word& p, const Word& q) const {
  const Vector bra = propagate(groups_.get(reversed(p)));
  const Vector ket = propagate(groups_.get(q));
  return bra.dot(ket);
}

Scalar FuzzState::bilinear(const FreeElement& p, const FreeElement& q) const {
  return bilinear_by_vectors(*this, groups_, p, q);
}

SuperspacetimeState::SuperspacetimeState(SuperspacetimeModel model)
    : FuzzState(from_superspacetime(model)), source_(std::move(model)) {}

}  // namespace causal
