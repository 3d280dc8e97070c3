#include "causal/free_element.hpp"

#include <algorithm>

namespace causal {

FreeElement::FreeElement(TermMap terms) : terms_(std::move(terms)) { prune(); }

FreeElement::FreeElement(Word w, Scalar c) {
  if (std::abs(c) >= tol::prune) terms_.emplace(std::move(w), c);
}

Scalar FreeElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar{} : it->second;
}

std::size_t FreeElement::max_length() const {
  std::size_t n = 0;
  for (const auto& [w, c] : terms_) n = std::max(n, w.size());
  return n;
}

void FreeElement::accumulate(const Word& w, Scalar c) {
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < tol::prune) terms_.erase(it);
}

void FreeElement::prune() {
  std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) < tol::prune; });
}

FreeElement add(const FreeElement& a, const FreeElement& b) {
  FreeElement out = a;
  for (const auto& [w, c] : b.terms()) out.accumulate(w, c);
  return out;
}

FreeElement scale(Scalar c, const FreeElement& a) {
  FreeElement::TermMap terms;
  for (const auto& [w, x] : a.terms()) terms.emplace(w, c * x);
  return FreeElement(std::move(terms));
}

FreeElement star(const FreeElement& a) {
  FreeElement::TermMap terms;
  for (const auto& [w, c] : a.terms()) terms.emplace(reversed(w), std::conj(c));
  return FreeElement(std::move(terms));
}

double max_difference(const FreeElement& a, const FreeElement& b) {
  double worst = 0.0;
  for (const auto& [w, c] : a.terms()) worst = std::max(worst, std::abs(c - b.coefficient(w)));
  for (const auto& [w, c] : b.terms())
    if (!a.terms().contains(w)) worst = std::max(worst, std::abs(c));
  return worst;
}

bool approx_equal(const FreeElement& a, const FreeElement& b, double tolerance) {
  return max_difference(a, b) <= tolerance;
}

}  // namespace causal
