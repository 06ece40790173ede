#pragma once

// Formal sums in the group ring CG of a discrete group, convolution, and
// rank-based zero-divisor probes.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lindep/groups.hpp"
#include "lindep/numerics.hpp"
#include "lindep/rational.hpp"

namespace lindep {

inline bool coefficient_is_zero(const GaussianRational& c) { return c.is_zero(); }
inline bool coefficient_is_zero(const Complex& c) { return c == Complex{}; }

inline Complex to_complex(const GaussianRational& c) { return c.to_complex(); }
inline Complex to_complex(const Complex& c) { return c; }

/// Finitely supported map G -> C, written sum a_g g. Zero coefficients are
/// never stored. C is GaussianRational (exact mode) or Complex (float mode).
template <class G, class C>
class FormalSum {
 public:
  using Element = G;
  using Coefficient = C;

  FormalSum() = default;
  FormalSum(std::initializer_list<std::pair<G, C>> terms) {
    for (const auto& [g, c] : terms) add(g, c);
  }

  static FormalSum delta(const G& g, C c = C(1)) {
    FormalSum f;
    f.add(g, c);
    return f;
  }

  void add(const G& g, const C& c) {
    if (coefficient_is_zero(c)) return;
    auto it = terms_.find(g);
    if (it == terms_.end()) {
      terms_.emplace(g, c);
      return;
    }
    it->second += c;
    if (coefficient_is_zero(it->second)) terms_.erase(it);
  }

  C coefficient(const G& g) const {
    auto it = terms_.find(g);
    return it == terms_.end() ? C(0) : it->second;
  }

  const std::map<G, C>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  friend FormalSum operator+(FormalSum a, const FormalSum& b) {
    for (const auto& [g, c] : b.terms_) a.add(g, c);
    return a;
  }
  friend FormalSum operator-(FormalSum a, const FormalSum& b) {
    for (const auto& [g, c] : b.terms_) a.add(g, C(0) - c);
    return a;
  }
  friend FormalSum operator*(const C& s, const FormalSum& a) {
    FormalSum out;
    for (const auto& [g, c] : a.terms_) out.add(g, s * c);
    return out;
  }
  friend bool operator==(const FormalSum& a, const FormalSum& b) { return a.terms_ == b.terms_; }

 private:
  std::map<G, C> terms_;
};

template <class G>
using ExactSum = FormalSum<G, GaussianRational>;
template <class G>
using FloatSum = FormalSum<G, Complex>;

/// alpha * f = sum_{g,h} a_g b_h gh.
template <class G, class C>
FormalSum<G, C> convolve(const FormalSum<G, C>& alpha, const FormalSum<G, C>& f) {
  FormalSum<G, C> out;
  for (const auto& [g, a] : alpha.terms())
    for (const auto& [h, b] : f.terms()) out.add(multiply(g, h), a * b);
  return out;
}

/// L_g f = sum_x b_x gx.
template <class G, class C>
FormalSum<G, C> left_translate(const G& g, const FormalSum<G, C>& f) {
  FormalSum<G, C> out;
  for (const auto& [x, b] : f.terms()) out.add(multiply(g, x), b);
  return out;
}

// ---------------------------------------------------------------------------
// Support balls
// ---------------------------------------------------------------------------

/// Max-norm box of radius R in Z^n.
inline std::vector<ZnElement> support_ball(const ZnElement& shape, std::int64_t R) {
  const std::size_t n = shape.k.size();
  std::vector<ZnElement> out;
  std::vector<std::int64_t> k(n, -R);
  while (true) {
    out.push_back({k});
    std::size_t i = 0;
    while (i < n && k[i] == R) k[i++] = -R;
    if (i == n) break;
    ++k[i];
  }
  return out;
}

/// All of Z/m; the radius plays no role.
inline std::vector<CyclicElement> support_ball(const CyclicElement& shape, std::int64_t) {
  std::vector<CyclicElement> out;
  for (std::int64_t k = 0; k < shape.m; ++k) out.emplace_back(k, shape.m);
  return out;
}

/// Elements of word length at most R in the given generators and their
/// inverses.
template <class G>
std::vector<G> word_ball(const std::vector<G>& generators, const G& identity, std::int64_t R) {
  std::set<G> seen{identity};
  std::vector<G> frontier{identity};
  std::vector<G> steps;
  for (const auto& g : generators)
    if (!(g == identity)) {
      steps.push_back(g);
      steps.push_back(invert(g));
    }
  for (std::int64_t r = 0; r < R; ++r) {
    std::vector<G> next;
    for (const auto& x : frontier)
      for (const auto& s : steps) {
        G y = multiply(x, s);
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

template <class C>
std::vector<HeisenbergLatticeElement> support_ball(const FormalSum<HeisenbergLatticeElement, C>& alpha,
                                                   std::int64_t R) {
  std::vector<HeisenbergLatticeElement> gens;
  for (const auto& [g, c] : alpha.terms()) gens.push_back(g);
  return word_ball(gens, identity_like(gens.front()), R);
}

template <class C>
std::vector<ZnElement> support_ball(const FormalSum<ZnElement, C>& alpha, std::int64_t R) {
  return support_ball(alpha.terms().begin()->first, R);
}

template <class C>
std::vector<CyclicElement> support_ball(const FormalSum<CyclicElement, C>& alpha, std::int64_t R) {
  return support_ball(alpha.terms().begin()->first, R);
}

// ---------------------------------------------------------------------------
// Convolution matrices
// ---------------------------------------------------------------------------

/// Matrix of f -> alpha * f on functions supported in `cols`; rows are the
/// product support, entry (x, h) = a_{x h^{-1}}.
template <class G, class C>
struct ConvolutionMatrix {
  std::vector<G> rows;
  std::vector<G> cols;
  std::vector<C> entries;  // row-major

  const C& operator()(std::size_t i, std::size_t j) const { return entries[i * cols.size() + j]; }

  Eigen::MatrixXcd to_eigen() const {
    Eigen::MatrixXcd M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_complex((*this)(i, j));
    return M;
  }
};

template <class G, class C>
ConvolutionMatrix<G, C> convolution_matrix(const FormalSum<G, C>& alpha, std::vector<G> cols) {
  ConvolutionMatrix<G, C> M;
  std::set<G> rowset;
  for (const auto& [g, a] : alpha.terms())
    for (const auto& h : cols) rowset.insert(multiply(g, h));
  M.rows.assign(rowset.begin(), rowset.end());
  M.cols = std::move(cols);
  std::vector<G> inverses;
  for (const auto& h : M.cols) inverses.push_back(invert(h));
  M.entries.reserve(M.rows.size() * M.cols.size());
  for (const auto& x : M.rows)
    for (const auto& hi : inverses) M.entries.push_back(alpha.coefficient(multiply(x, hi)));
  return M;
}

// ---------------------------------------------------------------------------
// Zero-divisor probe
// ---------------------------------------------------------------------------

inline const char* finite_support_note =
    "finite-support probe: a full-rank matrix excludes kernel vectors supported in the ball only, "
    "not square-summable ones";

template <class G, class C>
struct ZeroDivisorReport {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  double min_singular_value = 0.0;
  bool exact = false;
  std::optional<FormalSum<G, C>> witness;
  std::string note = finite_support_note;

  bool has_kernel() const { return witness.has_value(); }
};

inline double min_singular_value(const Eigen::MatrixXcd& M) {
  if (M.cols() == 0) return 0.0;
  if (M.rows() < M.cols()) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
  return svd.singularValues().minCoeff();
}

/// Reduced row echelon form over the Gaussian rationals. Returns the pivot
/// column of each nonzero row.
inline std::vector<std::size_t> rref(std::vector<std::vector<GaussianRational>>& A, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < A.size(); ++col) {
    std::size_t p = row;
    while (p < A.size() && A[p][col].is_zero()) ++p;
    if (p == A.size()) continue;
    std::swap(A[p], A[row]);
    const GaussianRational inv = GaussianRational(1) / A[row][col];
    for (auto& v : A[row]) v = v * inv;
    for (std::size_t r = 0; r < A.size(); ++r) {
      if (r == row || A[r][col].is_zero()) continue;
      const GaussianRational factor = A[r][col];
      for (std::size_t c = col; c < ncols; ++c) A[r][c] -= factor * A[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Exact mode: rank by elimination over Q(i); the witness is the kernel
/// vector attached to the first free column.
template <class G>
ZeroDivisorReport<G, GaussianRational> zero_divisor_probe(const ConvolutionMatrix<G, GaussianRational>& M) {
  ZeroDivisorReport<G, GaussianRational> rep;
  rep.exact = true;
  rep.rows = M.rows.size();
  rep.cols = M.cols.size();
  std::vector<std::vector<GaussianRational>> A(rep.rows, std::vector<GaussianRational>(rep.cols));
  for (std::size_t i = 0; i < rep.rows; ++i)
    for (std::size_t j = 0; j < rep.cols; ++j) A[i][j] = M(i, j);
  const auto pivots = rref(A, rep.cols);
  rep.rank = pivots.size();
  if (rep.rank == rep.cols) {
    rep.min_singular_value = min_singular_value(M.to_eigen());
    return rep;
  }
  rep.min_singular_value = 0.0;
  std::size_t free_col = 0;
  for (std::size_t k = 0; k < pivots.size() && pivots[k] == free_col; ++k) ++free_col;
  FormalSum<G, GaussianRational> w;
  w.add(M.cols[free_col], GaussianRational(1));
  for (std::size_t k = 0; k < pivots.size(); ++k) w.add(M.cols[pivots[k]], -A[k][free_col]);
  rep.witness = std::move(w);
  return rep;
}

/// Float mode: smallest singular value by SVD; the witness is the matching
/// right singular vector when it falls below `kernel_tol`.
template <class G>
ZeroDivisorReport<G, Complex> zero_divisor_probe(const ConvolutionMatrix<G, Complex>& M, double kernel_tol = 1e-12) {
  ZeroDivisorReport<G, Complex> rep;
  rep.rows = M.rows.size();
  rep.cols = M.cols.size();
  const Eigen::MatrixXcd A = M.to_eigen();
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s.maxCoeff() : 0.0;
  rep.rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > kernel_tol * std::max(1.0, smax)) ++rep.rank;
  rep.min_singular_value = rep.rows < rep.cols ? 0.0 : s.minCoeff();
  if (rep.min_singular_value < kernel_tol) {
    const Eigen::VectorXcd v = svd.matrixV().col(static_cast<Eigen::Index>(rep.cols) - 1);
    FormalSum<G, Complex> w;
    for (std::size_t j = 0; j < rep.cols; ++j)
      if (std::abs(v[static_cast<Eigen::Index>(j)]) > kernel_tol) w.add(M.cols[j], v[static_cast<Eigen::Index>(j)]);
    rep.witness = std::move(w);
  }
  return rep;
}

/// Probe alpha on all f supported in the radius-R ball of its group.
template <class G, class C>
ZeroDivisorReport<G, C> zero_divisor_probe(const FormalSum<G, C>& alpha, std::int64_t R) {
  if (alpha.is_zero()) throw std::invalid_argument("zero_divisor_probe: alpha is zero");
  if (R < 0) throw std::invalid_argument("zero_divisor_probe: negative radius");
  return zero_divisor_probe(convolution_matrix(alpha, support_ball(alpha, R)));
}

// ---------------------------------------------------------------------------
// Z^n symbol
// ---------------------------------------------------------------------------

struct SymbolRange {
  double min_abs = 0.0;
  double max_abs = 0.0;
};

/// |alpha^(theta)| = |sum a_g e^{-2 pi i g.theta}| on the midpoint grid
/// theta_j = (j + 1/2)/resolution of the torus.
template <class C>
SymbolRange zn_fourier_criterion(const FormalSum<ZnElement, C>& alpha, std::size_t resolution) {
  if (alpha.is_zero()) return {0.0, 0.0};
  if (resolution == 0) throw std::invalid_argument("zn_fourier_criterion: resolution must be positive");
  const std::size_t n = alpha.terms().begin()->first.k.size();
  if (n == 0 || n > 3) throw std::invalid_argument("zn_fourier_criterion: supports n = 1, 2, 3");
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= resolution;
  SymbolRange out{std::numeric_limits<double>::infinity(), 0.0};
  std::vector<double> theta(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = 0; i < n; ++i) {
      theta[i] = (static_cast<double>(rest % resolution) + 0.5) / static_cast<double>(resolution);
      rest /= resolution;
    }
    Complex s{};
    for (const auto& [g, a] : alpha.terms()) {
      double phase = 0.0;
      for (std::size_t i = 0; i < n; ++i) phase += static_cast<double>(g.k[i]) * theta[i];
      s += to_complex(a) * unit_phase(-phase);
    }
    out.min_abs = std::min(out.min_abs, std::abs(s));
    out.max_abs = std::max(out.max_abs, std::abs(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rational Heisenberg lattices
// ---------------------------------------------------------------------------

struct LatticePoint {
  std::vector<Rational> a;
  std::vector<Rational> b;
};

/// Row Hermite normal form of an integer matrix: pivots positive, entries
/// above a pivot reduced into [0, pivot). Zero rows are dropped.
inline std::vector<std::vector<Integer>> hermite_normal_form(std::vector<std::vector<Integer>> A) {
  if (A.empty()) return A;
  const std::size_t d = A.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < d && row < A.size(); ++col) {
    while (true) {
      std::size_t best = A.size();
      for (std::size_t r = row; r < A.size(); ++r)
        if (A[r][col] != 0 && (best == A.size() || abs(A[r][col]) < abs(A[best][col]))) best = r;
      if (best == A.size()) break;
      std::swap(A[row], A[best]);
      bool done = true;
      for (std::size_t r = row + 1; r < A.size(); ++r) {
        if (A[r][col] == 0) continue;
        const Integer q = A[r][col] / A[row][col];
        for (std::size_t c = col; c < d; ++c) A[r][c] -= q * A[row][c];
        if (A[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (A[row][col] == 0) continue;
    if (A[row][col] < 0)
      for (auto& v : A[row]) v = -v;
    for (std::size_t r = 0; r < row; ++r) {
      Integer q = A[r][col] / A[row][col];
      if (A[r][col] - q * A[row][col] < 0) q -= 1;
      if (q != 0)
        for (std::size_t c = col; c < d; ++c) A[r][c] -= q * A[row][c];
    }
    ++row;
  }
  A.resize(row);
  return A;
}

struct LatticeCheck {
  bool products_integral = false;
  bool discrete = false;
  std::size_t rank = 0;
  Integer denominator = 1;
  std::vector<std::vector<Rational>> basis;

  bool ok() const { return products_integral && discrete; }
};

/// Whether r a_h . b_k is an integer for all h, k, and a basis of the
/// subgroup of R^{2n} generated by the points (a_k, b_k). Points with
/// rational coordinates always generate a discrete subgroup (it sits in
/// (1/D) Z^{2n} for a common denominator D); the basis is the Hermite normal
/// form of the scaled generators.
inline LatticeCheck heisenberg_lattice_check(const std::vector<LatticePoint>& points, const Integer& r) {
  if (r <= 0) throw std::invalid_argument("heisenberg_lattice_check: r must be positive");
  if (points.empty()) throw std::invalid_argument("heisenberg_lattice_check: no points");
  const std::size_t n = points.front().a.size();
  for (const auto& p : points)
    if (p.a.size() != n || p.b.size() != n || n == 0)
      throw std::invalid_argument("heisenberg_lattice_check: inconsistent point dimensions");

  LatticeCheck out;
  out.products_integral = true;
  for (const auto& h : points)
    for (const auto& k : points)
      if (!is_integer(Rational(r) * dot(h.a, k.b))) out.products_integral = false;

  Integer D = 1;
  for (const auto& p : points) {
    for (const auto* v : {&p.a, &p.b})
      for (const auto& q : *v) D = boost::multiprecision::lcm(D, boost::multiprecision::denominator(q));
  }
  std::vector<std::vector<Integer>> M;
  for (const auto& p : points) {
    std::vector<Integer> row;
    for (const auto* v : {&p.a, &p.b})
      for (const auto& q : *v) row.push_back(boost::multiprecision::numerator(q) * (D / boost::multiprecision::denominator(q)));
    M.push_back(std::move(row));
  }
  const auto H = hermite_normal_form(std::move(M));
  out.discrete = true;
  out.rank = H.size();
  out.denominator = D;
  for (const auto& row : H) {
    std::vector<Rational> v;
    for (const auto& x : row) v.emplace_back(x, D);
    out.basis.push_back(std::move(v));
  }
  return out;
}

/// Generators (0; a_k; b_k) of the Heisenberg-lattice subgroup over the points.
inline std::vector<HeisenbergLatticeElement> lattice_generators(const std::vector<LatticePoint>& points) {
  std::vector<HeisenbergLatticeElement> out;
  for (const auto& p : points) out.emplace_back(Rational(0), p.a, p.b);
  return out;
}

}  // namespace lindep
