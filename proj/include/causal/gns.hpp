#pragma once

#include <map>
#include <optional>

#include "causal/states.hpp"

namespace causal {

/// All canonical words of length <= max_length, in word order (so the empty
/// word comes first and shorter words precede longer ones).
class WordBasis {
 public:
  static WordBasis build(const FreeProduct& alg, std::size_t max_length);

  /// 1 + sum over admissible factor sequences of prod (d_i^2 - 1).
  static std::size_t expected_size(const FreeProduct& alg, std::size_t max_length);

  std::size_t max_length() const { return max_length_; }
  std::size_t size() const { return words_.size(); }
  const Word& operator[](std::size_t i) const { return words_[i]; }
  const std::vector<Word>& words() const { return words_; }
  std::optional<std::size_t> find(const Word& w) const;
  /// Number of basis words of length <= len (a prefix of the basis).
  std::size_t count_up_to(std::size_t len) const;

 private:
  std::size_t max_length_ = 0;
  std::vector<Word> words_;
  std::unordered_map<Word, std::size_t, WordHash> index_;
};

/// G[a][b] = omega(a*, b) over the basis. Rows are split across `jobs`
/// threads; every entry is independent so the result does not depend on it.
Matrix gram(const GeneralizedState& state, const WordBasis& basis, unsigned jobs = 1);

struct NullSpace {
  std::size_t null_rank = 0;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;
  Eigen::VectorXd eigenvalues;
  /// Columns are G-orthonormal word-coefficient vectors spanning the
  /// complement of N_omega.
  Matrix quotient_basis;
};

/// Eigenvalues below tol * max(1, lambda_max) span the numerical N_omega.
/// Throws GnsError naming the violated property when G is not hermitian or
/// not positive semidefinite.
NullSpace null_space(const Matrix& g, double tolerance = tol::null_space);

struct LeftIdealReport {
  std::size_t null_vectors = 0;
  std::size_t generators = 0;
  double max_violation = 0.0;
  std::optional<BasisLetter> worst_generator;
  bool passed(double tolerance) const { return max_violation <= tolerance; }
};

/// Measures max |omega((b a)*, b a)| over unit null vectors a of the Gram
/// restricted to words of length <= L-1 and all generator letters b.
/// Never assumes the property holds.
LeftIdealReport check_left_ideal(const GeneralizedState& state, const WordBasis& basis, const Matrix& g,
                                 double tolerance = tol::null_space);

struct GnsResult {
  Matrix gram;
  NullSpace quotient;
  Vector omega;  // [e] in quotient coordinates
  LeftIdealReport left_ideal;
  /// pi_omega(letter) on quotient coordinates; empty when the left-ideal
  /// check failed.
  std::map<BasisLetter, Matrix> rep;
  double tolerance = tol::null_space;

  std::size_t quotient_dim() const { return static_cast<std::size_t>(quotient.quotient_basis.cols()); }
};

struct GnsOptions {
  double tolerance = tol::null_space;
  unsigned jobs = 1;
};

/// Gram, quotient, left-ideal report and, when the report passes, the
/// representation of every generator letter.
GnsResult build_gns(const GeneralizedState& state, const WordBasis& basis, const GnsOptions& opts = {});

/// Quotient coordinates of a word-coefficient vector: Q^dagger G c.
Vector quotient_coords(const GnsResult& gns, const Vector& coeffs);

/// Matrix of [b] -> [letter b] for classes of words of length <= L-1.
/// Throws GnsError when the left-ideal report exceeds the tolerance.
Matrix represent(const GeneralizedState& state, const WordBasis& basis, const GnsResult& gns,
                 const BasisLetter& letter);

/// max |omega(a*, b) - <Omega| pi(a)^dagger pi(b) |Omega>| over words with
/// |a|, |b| <= L-1; pi(word) is the ordered product of letter matrices.
double reconstruct_check(const GeneralizedState& state, const WordBasis& basis, const GnsResult& gns);

/// max over generators of || pi(l)^dagger - pi(l*) ||. Not expected to vanish.
double star_defect(const GnsResult& gns);

}  // namespace causal
