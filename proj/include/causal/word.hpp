#pragma once

#include <compare>
#include <vector>

#include "causal/types.hpp"

namespace causal {

/// Arbitrary factor element x_k, used only for unreduced input words.
struct Letter {
  int factor;
  Matrix matrix;
};

/// Letter of a canonical word: one traceless basis matrix of a factor.
struct BasisLetter {
  int factor;
  int index;

  friend bool operator==(const BasisLetter&, const BasisLetter&) = default;
  friend auto operator<=>(const BasisLetter&, const BasisLetter&) = default;
};

/// Canonical word; the empty word is the unit e.
///
/// Ordering is by length, then factor sequence, then basis indices, which
/// fixes the order of terms in serialized elements.
struct Word {
  std::vector<BasisLetter> letters;

  Word() = default;
  Word(std::initializer_list<BasisLetter> ls) : letters(ls) {}
  explicit Word(std::vector<BasisLetter> ls) : letters(std::move(ls)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  const BasisLetter& operator[](std::size_t i) const { return letters[i]; }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);
};

/// Reverses the letter order. Basis letters are hermitian, so this is the
/// adjoint of the word.
Word reversed(const Word& w);

/// True when no two adjacent letters share a factor.
bool is_reduced(const Word& w);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace causal
