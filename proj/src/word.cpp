#include "causal/word.hpp"

#include <algorithm>

namespace causal {

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (auto c = a[i].factor <=> b[i].factor; c != 0) return c;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (auto c = a[i].index <=> b[i].index; c != 0) return c;
  return std::strong_ordering::equal;
}

Word reversed(const Word& w) {
  Word out = w;
  std::reverse(out.letters.begin(), out.letters.end());
  return out;
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i].factor == w[i - 1].factor) return false;
  return true;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto& l : w.letters) {
    h ^= static_cast<std::size_t>(l.factor) * 0x9e3779b97f4a7c15ull + static_cast<std::size_t>(l.index);
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace causal
