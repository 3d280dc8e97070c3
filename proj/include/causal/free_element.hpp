#pragma once

#include <map>

#include "causal/word.hpp"

namespace causal {

/// Element of the free product: complex combination of canonical words.
/// Coefficients below tol::prune are never stored.
class FreeElement {
 public:
  using TermMap = std::map<Word, Scalar>;

  FreeElement() = default;
  explicit FreeElement(TermMap terms);
  FreeElement(Word w, Scalar c);

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Word& w) const;
  std::size_t max_length() const;

  /// Accumulates c into the coefficient of w, pruning if it cancels.
  void accumulate(const Word& w, Scalar c);

  friend bool operator==(const FreeElement&, const FreeElement&) = default;

 private:
  void prune();

  TermMap terms_;
};

FreeElement add(const FreeElement& a, const FreeElement& b);
FreeElement scale(Scalar c, const FreeElement& a);

/// Reverses words and conjugates coefficients; needs no factor data because
/// every basis letter is hermitian.
FreeElement star(const FreeElement& a);

/// Entrywise comparison of the term maps.
bool approx_equal(const FreeElement& a, const FreeElement& b,
                  double tolerance = tol::equality);

/// Largest coefficient difference over the union of words.
double max_difference(const FreeElement& a, const FreeElement& b);

}  // namespace causal
