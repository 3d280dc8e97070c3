#include "causal/gns.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

namespace causal {

namespace {

void extend(const FreeProduct& alg, Word& prefix, std::size_t remaining, std::vector<Word>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (const auto& [f, spec] : alg.factors()) {
    if (!prefix.empty() && prefix.letters.back().factor == f) continue;
    for (int k = 0; k < spec.basis_size(); ++k) {
      prefix.letters.push_back({f, k});
      extend(alg, prefix, remaining - 1, out);
      prefix.letters.pop_back();
    }
  }
}

std::vector<BasisLetter> generators(const FreeProduct& alg) {
  std::vector<BasisLetter> out;
  for (const auto& [f, spec] : alg.factors())
    for (int k = 0; k < spec.basis_size(); ++k) out.push_back({f, k});
  return out;
}

// Columns: coefficients of letter * w_j over the basis, for the domain words
// w_j of length <= L-1.
Matrix left_multiplication(const FreeProduct& alg, const WordBasis& basis, const BasisLetter& letter) {
  const std::size_t domain = basis.count_up_to(basis.max_length() - 1);
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(domain));
  const FreeElement l = alg.letter(letter.factor, letter.index);
  for (std::size_t j = 0; j < domain; ++j) {
    const FreeElement prod = alg.multiply(l, FreeElement(basis[j], 1.0));
    for (const auto& [w, c] : prod.terms()) {
      const auto row = basis.find(w);
      if (!row) throw GnsError("product leaves the truncated word basis");
      m(static_cast<Eigen::Index>(*row), static_cast<Eigen::Index>(j)) = c;
    }
  }
  return m;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

WordBasis WordBasis::build(const FreeProduct& alg, std::size_t max_length) {
  WordBasis b;
  b.max_length_ = max_length;
  for (std::size_t len = 0; len <= max_length; ++len) {
    std::vector<Word> layer;
    Word prefix;
    extend(alg, prefix, len, layer);
    std::sort(layer.begin(), layer.end());
    b.words_.insert(b.words_.end(), layer.begin(), layer.end());
  }
  for (std::size_t i = 0; i < b.words_.size(); ++i) b.index_.emplace(b.words_[i], i);
  return b;
}

std::size_t WordBasis::expected_size(const FreeProduct& alg, std::size_t max_length) {
  // ending[f] = number of admissible words of the current length ending in factor f.
  std::map<int, std::size_t> ending;
  std::size_t total = 1;
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::map<int, std::size_t> next;
    std::size_t all = 0;
    for (const auto& [f, n] : ending) all += n;
    for (const auto& [f, spec] : alg.factors()) {
      const auto letters = static_cast<std::size_t>(spec.basis_size());
      next[f] = len == 1 ? letters : letters * (all - ending[f]);
    }
    ending = std::move(next);
    for (const auto& [f, n] : ending) total += n;
  }
  return total;
}

std::optional<std::size_t> WordBasis::find(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t WordBasis::count_up_to(std::size_t len) const {
  const auto it = std::find_if(words_.begin(), words_.end(), [len](const Word& w) { return w.size() > len; });
  return static_cast<std::size_t>(it - words_.begin());
}

Matrix gram(const GeneralizedState& state, const WordBasis& basis, unsigned jobs) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Matrix g(n, n);
  auto rows = [&](unsigned offset, unsigned stride) {
    for (Eigen::Index a = offset; a < n; a += stride) {
      const FreeElement a_star = star(FreeElement(basis[static_cast<std::size_t>(a)], 1.0));
      for (Eigen::Index b = 0; b < n; ++b)
        g(a, b) = eval_bilinear(state, a_star, FreeElement(basis[static_cast<std::size_t>(b)], 1.0));
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    rows(0, 1);
    return g;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(rows, t, jobs);
  pool.clear();
  return g;
}

NullSpace null_space(const Matrix& g, double tolerance) {
  if (g.rows() != g.cols()) throw GnsError("gram matrix is not square");
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  const double asym = g.size() == 0 ? 0.0 : (g - g.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-9 * scale) throw GnsError("gram matrix is not hermitian: max |G - G^dagger| = " + fmt(asym));

  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  NullSpace out;
  out.eigenvalues = es.eigenvalues();
  const double top = g.size() == 0 ? 0.0 : out.eigenvalues.maxCoeff();
  out.min_eigenvalue = g.size() == 0 ? 0.0 : out.eigenvalues.minCoeff();
  out.threshold = tolerance * std::max(1.0, top);
  if (out.min_eigenvalue < -out.threshold)
    throw GnsError("gram matrix is not positive semidefinite: min eigenvalue = " + fmt(out.min_eigenvalue));

  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < out.eigenvalues.size(); ++i)
    if (out.eigenvalues(i) >= out.threshold) kept.push_back(i);
  out.null_rank = static_cast<std::size_t>(out.eigenvalues.size()) - kept.size();
  out.quotient_basis.resize(g.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j)
    out.quotient_basis.col(static_cast<Eigen::Index>(j)) =
        es.eigenvectors().col(kept[j]) / std::sqrt(out.eigenvalues(kept[j]));
  return out;
}

LeftIdealReport check_left_ideal(const GeneralizedState& state, const WordBasis& basis, const Matrix& g,
                                 double tolerance) {
  LeftIdealReport report;
  if (basis.max_length() == 0) return report;
  const auto domain = static_cast<Eigen::Index>(basis.count_up_to(basis.max_length() - 1));
  const Matrix restricted = g.topLeftCorner(domain, domain);
  Eigen::SelfAdjointEigenSolver<Matrix> es(restricted);
  const double threshold = tolerance * std::max(1.0, es.eigenvalues().maxCoeff());
  std::vector<Eigen::Index> null;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) < threshold) null.push_back(i);
  report.null_vectors = null.size();
  const auto gens = generators(state.algebra());
  report.generators = gens.size();
  if (null.empty()) return report;

  for (const auto& b : gens) {
    const Matrix m = left_multiplication(state.algebra(), basis, b);
    const Matrix k = m.adjoint() * g * m;
    for (auto i : null) {
      const Vector a = es.eigenvectors().col(i);
      const double v = std::abs(a.dot(k * a));
      if (v > report.max_violation) {
        report.max_violation = v;
        report.worst_generator = b;
      }
    }
  }
  return report;
}

Vector quotient_coords(const GnsResult& gns, const Vector& coeffs) {
  return gns.quotient.quotient_basis.adjoint() * (gns.gram * coeffs);
}

Matrix represent(const GeneralizedState& state, const WordBasis& basis, const GnsResult& gns,
                 const BasisLetter& letter) {
  if (!gns.left_ideal.passed(gns.tolerance))
    throw GnsError("null space is not a left ideal on the truncated domain: max violation " +
                   fmt(gns.left_ideal.max_violation) + " exceeds " + fmt(gns.tolerance));
  if (basis.max_length() == 0) throw GnsError("representation needs max word length >= 1");
  const auto domain = static_cast<Eigen::Index>(basis.count_up_to(basis.max_length() - 1));
  const Matrix& q = gns.quotient.quotient_basis;
  const Matrix embed = q.adjoint() * gns.gram.leftCols(domain);
  const Matrix image = q.adjoint() * gns.gram * left_multiplication(state.algebra(), basis, letter);

  // pi * embed = image, solved on the range of embed. Singular values of
  // embed are square roots of the restricted Gram eigenvalues.
  Eigen::JacobiSVD<Matrix> svd(embed, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cutoff = std::sqrt(gns.quotient.threshold);
  Eigen::VectorXd inv = svd.singularValues();
  for (Eigen::Index i = 0; i < inv.size(); ++i) inv(i) = inv(i) > cutoff ? 1.0 / inv(i) : 0.0;
  const Matrix pinv = svd.matrixV() * inv.cast<Scalar>().asDiagonal() * svd.matrixU().adjoint();
  return image * pinv;
}

GnsResult build_gns(const GeneralizedState& state, const WordBasis& basis, const GnsOptions& opts) {
  GnsResult out;
  out.tolerance = opts.tolerance;
  out.gram = gram(state, basis, opts.jobs);
  out.quotient = null_space(out.gram, opts.tolerance);
  Vector unit = Vector::Zero(static_cast<Eigen::Index>(basis.size()));
  unit(0) = 1.0;
  out.omega = quotient_coords(out, unit);
  out.left_ideal = check_left_ideal(state, basis, out.gram, opts.tolerance);
  if (out.left_ideal.passed(opts.tolerance) && basis.max_length() > 0)
    for (const auto& l : generators(state.algebra())) out.rep.emplace(l, represent(state, basis, out, l));
  return out;
}

double reconstruct_check(const GeneralizedState& state, const WordBasis& basis, const GnsResult& gns) {
  if (gns.rep.empty() && basis.max_length() > 0 && !generators(state.algebra()).empty())
    throw GnsError("representation was not built; the left-ideal check failed");
  const std::size_t domain = basis.count_up_to(basis.max_length() == 0 ? 0 : basis.max_length() - 1);
  std::vector<Vector> images;
  images.reserve(domain);
  for (std::size_t i = 0; i < domain; ++i) {
    Vector v = gns.omega;
    const auto& w = basis[i];
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) v = gns.rep.at(*it) * v;
    images.push_back(std::move(v));
  }
  double worst = 0.0;
  for (std::size_t a = 0; a < domain; ++a) {
    const FreeElement a_star = star(FreeElement(basis[a], 1.0));
    for (std::size_t b = 0; b < domain; ++b) {
      const Scalar direct = eval_bilinear(state, a_star, FreeElement(basis[b], 1.0));
      worst = std::max(worst, std::abs(direct - images[a].dot(images[b])));
    }
  }
  return worst;
}

double star_defect(const GnsResult& gns) {
  double worst = 0.0;
  // Basis letters are hermitian, so l* = l.
  for (const auto& [l, m] : gns.rep) worst = std::max(worst, (m.adjoint() - m).norm());
  return worst;
}

}  // namespace causal
