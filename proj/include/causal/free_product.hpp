#pragma once

#include <functional>
#include <map>
#include <span>

#include <json.hpp>

#include "causal/factor.hpp"
#include "causal/free_element.hpp"

namespace causal {

/// The free product of a family of matrix factor algebras.
///
/// Holds the factor registry; elements themselves are plain values. Products
/// are reduced eagerly, so every FreeElement produced here is canonical:
/// adjacent letters come from different factors and each letter is one
/// traceless basis matrix.
class FreeProduct {
 public:
  static constexpr std::size_t default_max_word_length = 6;

  explicit FreeProduct(std::vector<FactorSpec> factors,
                       std::size_t max_word_length = default_max_word_length);

  /// Convenience: Gell-Mann factors with the given (index, dim) pairs.
  static FreeProduct with_dims(std::initializer_list<std::pair<int, int>> dims,
                               std::size_t max_word_length = default_max_word_length);

  const FactorSpec& factor(int index) const;
  bool has_factor(int index) const { return factors_.contains(index); }
  const std::map<int, FactorSpec>& factors() const { return factors_; }
  std::size_t max_word_length() const { return max_word_length_; }

  const Matrix& letter_matrix(const BasisLetter& l) const;

  FreeElement unit() const;
  FreeElement letter(int factor, int basis_index) const;

  /// psi_i(m): trace part onto the unit, traceless part over the basis.
  FreeElement embed(int factor, const Matrix& m) const;

  /// Reduces an arbitrary word c * x_1 ... x_n to canonical form.
  FreeElement normalize(std::span<const Letter> word, Scalar c = 1.0) const;

  FreeElement multiply(const FreeElement& a, const FreeElement& b) const;

 private:
  void check_letter(int factor, const Matrix& m) const;
  // Appends m (of factor f) to canonical word w, merging with the last letter
  // when it shares the factor, and accumulates the expansion into out.
  void append(const Word& w, Scalar c, int f, const Matrix& m,
              FreeElement::TermMap& out) const;

  std::map<int, FactorSpec> factors_;
  std::size_t max_word_length_;
};

/// Image of one factor under a unital *-homomorphism into M_k: the image of
/// the identity and of each basis matrix.
struct FactorImage {
  Matrix unit;
  std::vector<Matrix> basis;

  /// Tabulates a matrix map on the factor's identity and basis.
  static FactorImage from_map(const FactorSpec& f,
                              const std::function<Matrix(const Matrix&)>& phi);
};

/// The homomorphism Phi of the universal property, evaluated on an element:
/// sum_w c_w * prod_letters phi_factor(letter). Throws when an image is not
/// unital or the target dimensions disagree.
Matrix induced_hom(const FreeProduct& alg, const std::map<int, FactorImage>& targets,
                   const FreeElement& a);

/// Transports an element into another free product through per-factor matrix
/// maps, re-reducing in the target.
struct FactorMap {
  int target_factor;
  std::function<Matrix(const Matrix&)> map;
};
FreeElement pushforward(const FreeProduct& source, const FreeElement& a,
                        const FreeProduct& target, const std::map<int, FactorMap>& maps);

/// Canonical JSON: [{"coeff": [re, im], "word": [[factor, basisIndex], ...]}, ...]
/// in word order.
nlohmann::json to_json(const FreeElement& a);
FreeElement element_from_json(const nlohmann::json& j);

}  // namespace causal
