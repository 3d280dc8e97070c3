#pragma once

#include <memory>
#include <shared_mutex>
#include <unordered_map>

#include "causal/free_product.hpp"
#include "causal/models.hpp"

namespace causal {

enum class Family { sequential, switch_, fuzz, superspacetime, custom };

std::string to_string(Family f);

/// One matrix per slot: the product of the word's letters from that slot's
/// factor in order of appearance (identity when there are none).
using Groups = std::vector<Matrix>;

Groups group_by_factor(const FreeProduct& alg, const Word& w, std::span<const int> slots);

/// Bilinear functional omega on A x A, given by its kernel on canonical words.
class GeneralizedState {
 public:
  virtual ~GeneralizedState() = default;

  virtual Family family() const = 0;
  const FreeProduct& algebra() const { return alg_; }

  /// omega(p, q) for canonical words p, q.
  virtual Scalar kernel(const Word& p, const Word& q) const = 0;

  /// omega(p, q) on general elements. The default sums the kernel over all
  /// term pairs; vector-valued states override it with a linear-time sum.
  virtual Scalar bilinear(const FreeElement& p, const FreeElement& q) const;

 protected:
  explicit GeneralizedState(FreeProduct alg) : alg_(std::move(alg)) {}

 private:
  FreeProduct alg_;
};

/// omega(p, q) = sum c_w^p c_w'^q kernel(w, w'). Linear in both slots; no
/// conjugation of coefficients.
Scalar eval_bilinear(const GeneralizedState& state, const FreeElement& p, const FreeElement& q);

/// Thread-safe memo of group_by_factor keyed by canonical word.
class GroupCache {
 public:
  GroupCache(const FreeProduct& alg, std::vector<int> slots) : alg_(&alg), slots_(std::move(slots)) {}

  const Groups& get(const Word& w) const;
  const std::vector<int>& slots() const { return slots_; }

 private:
  const FreeProduct* alg_;
  std::vector<int> slots_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Word, Groups, WordHash> cache_;
};

/// omega(b, a) = <psi2| B2 U21 B1 (sum_psi1 |psi1><psi1|) A1 U12 A2 |psi2>.
class SequentialState final : public GeneralizedState {
 public:
  explicit SequentialState(SequentialModel model);

  Family family() const override { return Family::sequential; }
  Scalar kernel(const Word& b, const Word& a) const override;
  const SequentialModel& model() const { return model_; }

 private:
  SequentialModel model_;
  GroupCache groups_;
};

/// omega(b, a) = <L(b*), L(a)> with L(a) = A1 U12 A2 U23 ... An |psi>.
class SequentialChainState final : public GeneralizedState {
 public:
  explicit SequentialChainState(SequentialChainModel model);

  Family family() const override { return Family::sequential; }
  Scalar kernel(const Word& b, const Word& a) const override;
  Scalar bilinear(const FreeElement& p, const FreeElement& q) const override;
  const SequentialChainModel& model() const { return model_; }

  Vector propagate(const Groups& g) const;

 private:
  SequentialChainModel model_;
  GroupCache groups_;
};

/// Amplitude <phi| v (|0><0| (x) U x U y U + |1><1| (x) U y U x U) u |psi>.
Scalar amplitude_switch(const SwitchModel& m, const Vector& phi, const Matrix& x, const Matrix& y, const Matrix& u,
                        const Matrix& v);

/// Fuzz amplitude for an arbitrary discrete branch list, without the
/// normalization check that FuzzModel::create performs.
Scalar fuzz_amplitude(std::span<const FuzzBranch> branches, const Vector& psi, const Vector& phi, const Matrix& x,
                      const Matrix& y, const Matrix& u, const Matrix& v);

Scalar amplitude_fuzz(const FuzzModel& m, const Vector& phi, const Matrix& x, const Matrix& y, const Matrix& u,
                      const Matrix& v);

/// omega(p, q) = sum_phi conj(A(phi, groups of p*)) A(phi, groups of q). The
/// basis sum runs as a resolution of the identity, i.e. the inner product of
/// the two propagated vectors.
class SwitchState final : public GeneralizedState {
 public:
  explicit SwitchState(SwitchModel model);

  Family family() const override { return Family::switch_; }
  Scalar kernel(const Word& p, const Word& q) const override;
  Scalar bilinear(const FreeElement& p, const FreeElement& q) const override;
  const SwitchModel& model() const { return model_; }

  /// v M u psi for the grouped operators of a word.
  Vector propagate(const Groups& g) const;

 private:
  SwitchModel model_;
  GroupCache groups_;
};

class FuzzState : public GeneralizedState {
 public:
  explicit FuzzState(FuzzModel model);

  Family family() const override { return Family::fuzz; }
  Scalar kernel(const Word& p, const Word& q) const override;
  Scalar bilinear(const FreeElement& p, const FreeElement& q) const override;
  const FuzzModel& model() const { return model_; }

  Vector propagate(const Groups& g) const;

 private:
  FuzzModel model_;
  GroupCache groups_;
};

/// A fuzz state built from superspacetime data.
class SuperspacetimeState final : public FuzzState {
 public:
  explicit SuperspacetimeState(SuperspacetimeModel model);

  Family family() const override { return Family::superspacetime; }
  const SuperspacetimeModel& source() const { return source_; }

 private:
  SuperspacetimeModel source_;
};

inline Scalar eval_sequential(const SequentialState& s, const Word& b, const Word& a) { return s.kernel(b, a); }
inline Scalar eval_switch(const SwitchState& s, const Word& b, const Word& a) { return s.kernel(b, a); }
inline Scalar eval_fuzz(const FuzzState& s, const Word& b, const Word& a) { return s.kernel(b, a); }

/// Factor algebras of each family (slot factors 1 = x, 2 = y, 3 = u, 4 = v).
FreeProduct sequential_algebra(int dim);
FreeProduct sequential_chain_algebra(int dim, int slots);
FreeProduct switch_algebra(int dim, int control_dim = 2);

}  // namespace causal
