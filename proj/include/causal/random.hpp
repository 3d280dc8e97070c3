#pragma once

#include <random>

#include "causal/free_product.hpp"
#include "causal/models.hpp"

namespace causal {

/// Complex Gaussian matrix with unit-variance entries.
template <typename Rng>
Matrix random_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Scalar(n(rng), n(rng));
  return m;
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
template <typename Rng>
Matrix random_unitary(Eigen::Index d, Rng& rng) {
  Eigen::HouseholderQR<Matrix> qr(random_ginibre(d, d, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Eigen::Index k = 0; k < d; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

template <typename Rng>
Matrix random_hermitian(Eigen::Index d, Rng& rng) {
  const Matrix g = random_ginibre(d, d, rng);
  return (g + g.adjoint()) / 2.0;
}

template <typename Rng>
Vector random_state(Eigen::Index d, Rng& rng) {
  Vector v = random_ginibre(d, 1, rng);
  return v / v.norm();
}

/// Uniform random canonical word of length <= max_len.
template <typename Rng>
Word random_word(const FreeProduct& alg, std::size_t max_len, Rng& rng) {
  std::vector<int> factors;
  for (const auto& [f, spec] : alg.factors())
    if (spec.basis_size() > 0) factors.push_back(f);
  Word w;
  if (factors.empty()) return w;
  const auto len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  for (std::size_t i = 0; i < len; ++i) {
    int f;
    do {
      f = factors[std::uniform_int_distribution<std::size_t>(0, factors.size() - 1)(rng)];
    } while (!w.empty() && w.letters.back().factor == f && factors.size() > 1);
    if (!w.empty() && w.letters.back().factor == f) break;
    const int k = std::uniform_int_distribution<int>(0, alg.factor(f).basis_size() - 1)(rng);
    w.letters.push_back({f, k});
  }
  return w;
}

/// Random canonical element with up to max_terms words of length <= max_len.
template <typename Rng>
FreeElement random_element(const FreeProduct& alg, std::size_t max_terms, std::size_t max_len, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const auto terms = std::uniform_int_distribution<std::size_t>(1, max_terms)(rng);
  FreeElement out;
  for (std::size_t t = 0; t < terms; ++t) {
    const Word w = random_word(alg, max_len, rng);
    out.accumulate(w, Scalar(n(rng), n(rng)));
  }
  return out;
}

/// Random unreduced word of arbitrary matrices (letters may repeat a factor
/// and may have identity components).
template <typename Rng>
std::vector<Letter> random_raw_word(const FreeProduct& alg, std::size_t max_len, Rng& rng) {
  std::vector<int> factors;
  for (const auto& [f, spec] : alg.factors()) factors.push_back(f);
  const auto len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  std::vector<Letter> out;
  for (std::size_t i = 0; i < len; ++i) {
    const int f = factors[std::uniform_int_distribution<std::size_t>(0, factors.size() - 1)(rng)];
    const int d = alg.factor(f).dim();
    out.push_back({f, random_ginibre(d, d, rng)});
  }
  return out;
}

template <typename Rng>
SequentialModel random_sequential(int d, Rng& rng) {
  return SequentialModel::create(random_state(d, rng), random_unitary(d, rng));
}

template <typename Rng>
SwitchModel random_switch(int d, Rng& rng, const Vector& control) {
  return SwitchModel::create(product_state(control, random_state(d, rng)), random_unitary(d, rng),
                             random_unitary(d, rng), random_unitary(d, rng), random_unitary(d, rng),
                             random_unitary(d, rng), random_unitary(d, rng));
}

template <typename Rng>
SwitchModel random_switch(int d, Rng& rng) {
  return random_switch(d, rng, random_state(2, rng));
}

/// Two branches, one per order class, with weights straddling 1 and the
/// control amplitudes solved so that omega(e, e) = 1.
template <typename Rng>
FuzzModel random_fuzz(int d, Rng& rng) {
  std::uniform_real_distribution<double> low(0.4, 0.9), high(1.1, 1.6);
  const double w1 = low(rng), w2 = high(rng);
  const double n2sq = (1.0 - w1 * w1) / (w2 * w2 - w1 * w1);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
  Vector control(2);
  control(0) = std::polar(std::sqrt(1.0 - n2sq), phase(rng));
  control(1) = std::polar(std::sqrt(n2sq), phase(rng));
  std::vector<FuzzBranch> branches{
      {w1, Order::y_then_x, random_unitary(d, rng), random_unitary(d, rng), random_unitary(d, rng)},
      {w2, Order::x_then_y, random_unitary(d, rng), random_unitary(d, rng), random_unitary(d, rng)}};
  Vector psi = product_state(control, random_state(d, rng));
  psi /= psi.norm();
  return FuzzModel::create(d, std::move(branches), std::move(psi));
}

template <typename Rng>
SuperspacetimeModel random_superspacetime(int d, Rng& rng) {
  std::uniform_real_distribution<double> time(0.1, 2.0);
  std::vector<SuperspacetimeBranch> branches;
  for (std::vector<int> ident : {std::vector<int>{1, 0}, std::vector<int>{0, 1}}) {
    SuperspacetimeBranch b;
    b.identification = ident;
    for (std::size_t s = 0; s < 3; ++s) {
      b.hamiltonians[s] = random_hermitian(d, rng);
      b.times[s] = time(rng);
    }
    const Vector a = random_ginibre(1, 1, rng);
    b.amplitude = a(0);
    branches.push_back(std::move(b));
  }
  return SuperspacetimeModel::create(d, {"x", "y"}, std::move(branches), random_state(d, rng));
}

}  // namespace causal
