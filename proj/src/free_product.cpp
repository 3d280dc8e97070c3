#include "causal/free_product.hpp"

#include <string>

namespace causal {

namespace {

void accumulate_into(FreeElement::TermMap& out, const Word& w, Scalar c) {
  if (c == Scalar{}) return;
  auto [it, inserted] = out.try_emplace(w, c);
  if (!inserted) it->second += c;
}

FreeElement::TermMap pruned(FreeElement::TermMap terms) {
  std::erase_if(terms, [](const auto& kv) { return std::abs(kv.second) < tol::prune; });
  return terms;
}

}  // namespace

FreeProduct::FreeProduct(std::vector<FactorSpec> factors, std::size_t max_word_length)
    : max_word_length_(max_word_length) {
  for (auto& f : factors) {
    const int idx = f.index();
    if (!factors_.emplace(idx, std::move(f)).second)
      throw ModelError("duplicate factor index " + std::to_string(idx));
  }
}

FreeProduct FreeProduct::with_dims(std::initializer_list<std::pair<int, int>> dims,
                                   std::size_t max_word_length) {
  std::vector<FactorSpec> fs;
  for (auto [index, dim] : dims) fs.emplace_back(index, dim);
  return FreeProduct(std::move(fs), max_word_length);
}

const FactorSpec& FreeProduct::factor(int index) const {
  auto it = factors_.find(index);
  if (it == factors_.end()) throw UnknownFactorError("unknown factor index " + std::to_string(index));
  return it->second;
}

const Matrix& FreeProduct::letter_matrix(const BasisLetter& l) const { return factor(l.factor).basis(l.index); }

FreeElement FreeProduct::unit() const { return FreeElement(Word{}, 1.0); }

FreeElement FreeProduct::letter(int f, int basis_index) const {
  factor(f).basis(basis_index);  // range check
  return FreeElement(Word{{f, basis_index}}, 1.0);
}

void FreeProduct::check_letter(int f, const Matrix& m) const {
  const auto& spec = factor(f);
  if (m.rows() != spec.dim() || m.cols() != spec.dim())
    throw DimensionError("letter for factor " + std::to_string(f) + " must be " + std::to_string(spec.dim()) +
                         "x" + std::to_string(spec.dim()) + ", got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
}

FreeElement FreeProduct::embed(int f, const Matrix& m) const {
  const Letter l{f, m};
  return normalize(std::span<const Letter>(&l, 1));
}

void FreeProduct::append(const Word& w, Scalar c, int f, const Matrix& m, FreeElement::TermMap& out) const {
  const auto& spec = factor(f);
  Word base = w;
  Matrix merged;
  const Matrix* letter = &m;
  // Canonical words never repeat a factor in adjacent letters, so one merge
  // with the last letter is all that can happen here.
  if (!base.empty() && base.letters.back().factor == f) {
    merged = spec.basis(base.letters.back().index) * m;
    base.letters.pop_back();
    letter = &merged;
  }
  const auto parts = spec.split(*letter);
  accumulate_into(out, base, c * parts.identity);
  if (parts.coords.size() == 0) return;
  Word extended = base;
  extended.letters.push_back({f, 0});
  for (Eigen::Index k = 0; k < parts.coords.size(); ++k) {
    const Scalar ck = c * parts.coords(k);
    if (std::abs(ck) < tol::prune) continue;
    if (extended.size() > max_word_length_)
      throw WordLengthError("word length " + std::to_string(extended.size()) + " exceeds cap " +
                            std::to_string(max_word_length_));
    extended.letters.back().index = static_cast<int>(k);
    accumulate_into(out, extended, ck);
  }
}

FreeElement FreeProduct::normalize(std::span<const Letter> word, Scalar c) const {
  FreeElement::TermMap current;
  current.emplace(Word{}, c);
  for (const auto& l : word) {
    check_letter(l.factor, l.matrix);
    FreeElement::TermMap next;
    for (const auto& [w, coeff] : current) append(w, coeff, l.factor, l.matrix, next);
    current = pruned(std::move(next));
  }
  return FreeElement(std::move(current));
}

FreeElement FreeProduct::multiply(const FreeElement& a, const FreeElement& b) const {
  FreeElement::TermMap out;
  for (const auto& [wb, cb] : b.terms()) {
    // Right factor expanded letter by letter onto every left word.
    FreeElement::TermMap current;
    for (const auto& [wa, ca] : a.terms()) accumulate_into(current, wa, ca * cb);
    for (const auto& l : wb.letters) {
      FreeElement::TermMap next;
      const Matrix& m = letter_matrix(l);
      for (const auto& [w, coeff] : current) append(w, coeff, l.factor, m, next);
      current = std::move(next);
    }
    for (const auto& [w, coeff] : current) accumulate_into(out, w, coeff);
  }
  return FreeElement(pruned(std::move(out)));
}

FactorImage FactorImage::from_map(const FactorSpec& f, const std::function<Matrix(const Matrix&)>& phi) {
  FactorImage img;
  img.unit = phi(Matrix::Identity(f.dim(), f.dim()));
  for (const auto& b : f.basis()) img.basis.push_back(phi(b));
  return img;
}

Matrix induced_hom(const FreeProduct& alg, const std::map<int, FactorImage>& targets, const FreeElement& a) {
  Eigen::Index k = -1;
  for (const auto& [f, img] : targets) {
    if (!alg.has_factor(f)) throw UnknownFactorError("target given for unknown factor " + std::to_string(f));
    if (k < 0) k = img.unit.rows();
    if (img.unit.rows() != k || img.unit.cols() != k)
      throw DimensionError("factor images disagree on the target dimension");
    if ((img.unit - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() > tol::equality)
      throw ModelError("image of factor " + std::to_string(f) + " is not unital");
    if (img.basis.size() != static_cast<std::size_t>(alg.factor(f).basis_size()))
      throw DimensionError("image of factor " + std::to_string(f) + " has the wrong basis count");
    for (const auto& m : img.basis)
      if (m.rows() != k || m.cols() != k) throw DimensionError("factor images disagree on the target dimension");
  }
  if (k < 0) throw ModelError("induced_hom needs at least one factor image");

  Matrix out = Matrix::Zero(k, k);
  for (const auto& [w, c] : a.terms()) {
    Matrix prod = Matrix::Identity(k, k);
    for (const auto& l : w.letters) {
      auto it = targets.find(l.factor);
      if (it == targets.end()) throw UnknownFactorError("no image for factor " + std::to_string(l.factor));
      prod = prod * it->second.basis.at(static_cast<std::size_t>(l.index));
    }
    out += c * prod;
  }
  return out;
}

FreeElement pushforward(const FreeProduct& source, const FreeElement& a, const FreeProduct& target,
                        const std::map<int, FactorMap>& maps) {
  FreeElement out;
  for (const auto& [w, c] : a.terms()) {
    std::vector<Letter> letters;
    letters.reserve(w.size());
    for (const auto& l : w.letters) {
      auto it = maps.find(l.factor);
      if (it == maps.end()) throw UnknownFactorError("no map for factor " + std::to_string(l.factor));
      letters.push_back({it->second.target_factor, it->second.map(source.letter_matrix(l))});
    }
    out = add(out, target.normalize(letters, c));
  }
  return out;
}

nlohmann::json to_json(const FreeElement& a) {
  auto out = nlohmann::json::array();
  for (const auto& [w, c] : a.terms()) {
    auto word = nlohmann::json::array();
    for (const auto& l : w.letters) word.push_back({l.factor, l.index});
    out.push_back({{"coeff", {c.real(), c.imag()}}, {"word", std::move(word)}});
  }
  return out;
}

FreeElement element_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ModelError("element JSON must be an array of terms");
  FreeElement::TermMap terms;
  try {
    for (const auto& term : j) {
      const auto& coeff = term.at("coeff");
      Word w;
      for (const auto& l : term.at("word")) w.letters.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
      if (!is_reduced(w)) throw ModelError("element JSON contains a non-reduced word");
      const Scalar c{coeff.at(0).get<double>(), coeff.at(1).get<double>()};
      if (!terms.emplace(std::move(w), c).second) throw ModelError("element JSON repeats a word");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("malformed element JSON: ") + e.what());
  }
  return FreeElement(std::move(terms));
}

}  // namespace causal
