#pragma once

// Shared fixtures for the unit tests and the acceptance binary.

#include <random>

#include "causal/free_product.hpp"
#include "causal/random.hpp"
#include "causal/states.hpp"

namespace causal::testing {

inline Matrix sx() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix sy() {
  Matrix m(2, 2);
  m << 0, Scalar(0, -1), Scalar(0, 1), 0;
  return m;
}

inline Matrix sz() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix id(Eigen::Index d) { return Matrix::Identity(d, d); }

inline Vector basis_vector(Eigen::Index n, Eigen::Index k) {
  Vector v = Vector::Zero(n);
  v(k) = 1.0;
  return v;
}

/// Reduction by a randomly ordered sequence of local rewrites, independent of
/// FreeProduct::normalize. A term is a coefficient and a list of arbitrary
/// factor matrices; each step picks a random term and a random applicable
/// rule: merge two adjacent same-factor letters, or split one non-basis
/// letter into its trace and Gell-Mann parts (coordinates by tr(b_k m) / 2).
class RandomRewriter {
 public:
  explicit RandomRewriter(const FreeProduct& alg) : alg_(&alg) {}

  template <typename Rng>
  FreeElement reduce(std::span<const Letter> word, Scalar c, Rng& rng) const {
    struct Raw {
      Scalar c;
      std::vector<Letter> letters;
      std::vector<int> basis;  // basis index per letter, -1 while arbitrary
    };
    std::vector<Raw> pending{{c, {word.begin(), word.end()}, std::vector<int>(word.size(), -1)}};
    FreeElement out;
    while (!pending.empty()) {
      const auto t = std::uniform_int_distribution<std::size_t>(0, pending.size() - 1)(rng);
      Raw term = std::move(pending[t]);
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(t));
      // Applicable rewrites: ('m', i) merges i and i+1; ('s', i) splits i.
      std::vector<std::pair<char, std::size_t>> moves;
      for (std::size_t i = 0; i < term.letters.size(); ++i) {
        if (i + 1 < term.letters.size() && term.letters[i].factor == term.letters[i + 1].factor)
          moves.emplace_back('m', i);
        if (term.basis[i] < 0) moves.emplace_back('s', i);
      }
      if (moves.empty()) {
        Word w;
        for (std::size_t i = 0; i < term.letters.size(); ++i) w.letters.push_back({term.letters[i].factor, term.basis[i]});
        out.accumulate(w, term.c);
        continue;
      }
      const auto [kind, i] = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
      if (kind == 'm') {
        term.letters[i].matrix = term.letters[i].matrix * term.letters[i + 1].matrix;
        term.basis[i] = -1;
        term.letters.erase(term.letters.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        term.basis.erase(term.basis.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        pending.push_back(std::move(term));
        continue;
      }
      const auto& spec = alg_->factor(term.letters[i].factor);
      const Matrix& m = term.letters[i].matrix;
      const Scalar trace_part = m.trace() / static_cast<double>(spec.dim());
      if (std::abs(trace_part) > tol::prune) {
        Raw r = term;
        r.c *= trace_part;
        r.letters.erase(r.letters.begin() + static_cast<std::ptrdiff_t>(i));
        r.basis.erase(r.basis.begin() + static_cast<std::ptrdiff_t>(i));
        pending.push_back(std::move(r));
      }
      for (int k = 0; k < spec.basis_size(); ++k) {
        const Scalar coord = (spec.basis(k) * m).trace() / 2.0;
        if (std::abs(coord) <= tol::prune) continue;
        Raw r = term;
        r.c *= coord;
        r.letters[i].matrix = spec.basis(k);
        r.basis[i] = k;
        pending.push_back(std::move(r));
      }
    }
    return out;
  }

 private:
  const FreeProduct* alg_;
};

/// omega(a*, b) = <Phi(a) psi, M Phi(b) psi> for a unital *-homomorphism Phi
/// and a positive definite metric M (identity by default). The null space is
/// a left ideal; with M = 1 this is a genuine state.
class HomState final : public GeneralizedState {
 public:
  HomState(FreeProduct alg, std::map<int, FactorImage> images, Vector psi, Matrix metric = {})
      : GeneralizedState(std::move(alg)), images_(std::move(images)), psi_(std::move(psi)), metric_(std::move(metric)) {
    if (metric_.size() == 0) metric_ = Matrix::Identity(psi_.size(), psi_.size());
  }

  Family family() const override { return Family::custom; }
  Scalar kernel(const Word& p, const Word& q) const override {
    return psi_.dot(image(p) * (metric_ * (image(q) * psi_)));
  }

 private:
  Matrix image(const Word& w) const {
    const auto n = psi_.size();
    Matrix m = Matrix::Identity(n, n);
    for (const auto& l : w.letters) m = m * images_.at(l.factor).basis[static_cast<std::size_t>(l.index)];
    return m;
  }

  std::map<int, FactorImage> images_;
  Vector psi_;
  Matrix metric_;
};

/// kernel(p, q) = <L(p*), L(q)> with L(e) = |0>, L = 0 on length-one words
/// and L = |0> again on longer words. Every single letter is null, but
/// multiplying one by another letter leaves the null space.
class ParityState final : public GeneralizedState {
 public:
  explicit ParityState(FreeProduct alg) : GeneralizedState(std::move(alg)) {}

  Family family() const override { return Family::custom; }
  Scalar kernel(const Word& p, const Word& q) const override { return weight(p) * weight(q); }

 private:
  static double weight(const Word& w) { return w.size() == 1 ? 0.0 : 1.0; }
};

/// A random unital *-homomorphism from each factor into M_k:
/// m -> V (m (x) 1) V^dagger with a Haar-random V per factor.
template <typename Rng>
std::map<int, FactorImage> random_hom_images(const FreeProduct& alg, Eigen::Index k, Rng& rng) {
  std::map<int, FactorImage> images;
  for (const auto& [f, spec] : alg.factors()) {
    const Eigen::Index d = spec.dim();
    if (k % d != 0) throw DimensionError("target dimension must be a multiple of every factor dimension");
    const Matrix v = random_unitary(k, rng);
    const Matrix pad = Matrix::Identity(k / d, k / d);
    images.emplace(f, FactorImage::from_map(spec, [&](const Matrix& m) {
                     Matrix t(k, k);
                     for (Eigen::Index i = 0; i < d; ++i)
                       for (Eigen::Index j = 0; j < d; ++j) t.block(i * (k / d), j * (k / d), k / d, k / d) = m(i, j) * pad;
                     return Matrix(v * t * v.adjoint());
                   }));
  }
  return images;
}

}  // namespace causal::testing
