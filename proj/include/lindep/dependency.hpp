#pragma once

// Refinement equations, shearlet certificates from masks, and numerical
// independence probes through Gram spectra.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lindep/certificate.hpp"
#include "lindep/coefficients.hpp"
#include "lindep/groups.hpp"
#include "lindep/numerics.hpp"
#include "lindep/representations.hpp"

namespace lindep {

// ---------------------------------------------------------------------------
// Refinement masks
// ---------------------------------------------------------------------------

/// Finitely supported mask beta -> a(beta) on Z^d, d = 1 or 2, together with
/// the box every beta must lie in.
struct RefinementMask {
  int dimension = 1;
  std::map<std::array<std::int64_t, 2>, Complex> entries;
  std::array<std::int64_t, 2> lower{0, 0};
  std::array<std::int64_t, 2> upper{0, 0};

  void set(std::array<std::int64_t, 2> beta, Complex a) { entries[beta] = a; }

  void check() const {
    if (dimension != 1 && dimension != 2) throw std::invalid_argument("mask: dimension must be 1 or 2");
    for (const auto& [beta, a] : entries)
      for (int i = 0; i < dimension; ++i)
        if (beta[i] < lower[i] || beta[i] > upper[i])
          throw std::out_of_range("mask: support point outside declared bounds");
    if (dimension == 1)
      for (const auto& [beta, a] : entries)
        if (beta[1] != 0) throw std::out_of_range("mask: second coordinate set on a 1D mask");
  }
};

/// Linear map x -> M x in the argument of the refinement equation
/// f(x) = sum a(beta) f(M x - beta). 1D uses M[0] only.
using ScalingMatrix = std::array<double, 4>;

inline ScalingMatrix scalar_scaling(double m) { return {m, 0.0, 0.0, m}; }

/// ||f - sum_beta a(beta) f(M x - beta)|| / ||f|| over the grid.
inline double verify_refinement(const AnalyticFunction& f, const Grid& grid, const RefinementMask& mask,
                                const ScalingMatrix& M) {
  mask.check();
  if (mask.dimension != f.dimension || grid.dimension() != f.dimension)
    throw std::invalid_argument("refinement: mask, function and grid dimensions differ");
  double diff = 0.0;
  double nf = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Point x = grid.point(j);
    const Point mx = f.dimension == 1 ? Point{M[0] * x[0], 0.0} : apply_matrix(M, x);
    const Complex fx = f(x);
    Complex r = fx;
    for (const auto& [beta, a] : mask.entries)
      r -= a * f(Point{mx[0] - static_cast<double>(beta[0]), mx[1] - static_cast<double>(beta[1])});
    diff += std::norm(r);
    nf += std::norm(fx);
  }
  if (nf == 0.0) throw std::invalid_argument("refinement: f vanishes on the grid");
  return std::sqrt(diff / nf);
}

inline double verify_refinement(const SampledFunction& f, const RefinementMask& mask, const ScalingMatrix& M) {
  return verify_refinement(interpolant(f), f.grid(), mask, M);
}

/// For a mask on Z^2 refining f with A_4^{-1} = diag(1/4, 1/2), the
/// certificate pi(S_0 A_1, 0) f - sum 4^{3/4} a(beta) pi(S_0 A_4, beta') f = 0
/// with beta' = (4 b1, 2 b2).
inline DependencyCertificate shearlet_dependency_from_mask(const RefinementMask& mask, const AnalyticFunction& f,
                                                           const Grid& grid) {
  mask.check();
  if (mask.entries.empty()) throw std::invalid_argument("shearlet certificate: empty mask");
  if (mask.dimension != 2) throw std::invalid_argument("shearlet certificate: mask must live on Z^2");
  DependencyCertificate cert;
  cert.space = HPiSpace{RepresentationTag::shearlet(), f, grid};
  cert.terms.push_back({1.0, ShearletElement{1.0, 0.0, {0.0, 0.0}}});
  const double scale = std::pow(4.0, 0.75);
  for (const auto& [beta, a] : mask.entries) {
    if (a == Complex{}) continue;
    cert.terms.push_back({-scale * a, ShearletElement{4.0, 0.0, {4.0 * static_cast<double>(beta[0]),
                                                                 2.0 * static_cast<double>(beta[1])}}});
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Independence probes
// ---------------------------------------------------------------------------

enum class Verdict { Independent, Dependent, Inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Independent: return "independent";
    case Verdict::Dependent: return "dependent";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct ProbeOptions {
  double threshold = 1e-8;
  double floor = 1e-10;
};

struct IndependenceProbe {
  Eigen::MatrixXcd gram;
  Eigen::VectorXd spectrum;  // ascending
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double relative = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  ProbeOptions options;
};

inline Verdict classify(double relative, const ProbeOptions& opt) {
  if (relative > opt.threshold) return Verdict::Independent;
  if (relative < opt.floor) return Verdict::Dependent;
  return Verdict::Inconclusive;
}

/// Gram matrix G_jk = sum_i w_i x_j[i] conj(x_k[i]) of sampled vectors.
inline Eigen::MatrixXcd gram_matrix(const std::vector<std::vector<Complex>>& vectors, const std::vector<double>& weights) {
  const auto n = static_cast<Eigen::Index>(vectors.size());
  const auto m = static_cast<Eigen::Index>(weights.size());
  Eigen::MatrixXcd V(m, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (vectors[static_cast<std::size_t>(k)].size() != weights.size())
      throw std::invalid_argument("gram_matrix: vector length does not match weights");
    for (Eigen::Index i = 0; i < m; ++i)
      V(i, k) = std::sqrt(weights[static_cast<std::size_t>(i)]) * vectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
  }
  Eigen::MatrixXcd G = V.transpose() * V.conjugate();
  // Symmetrize away rounding so the spectrum is that of a Hermitian matrix.
  return 0.5 * (G + G.adjoint());
}

inline IndependenceProbe probe_gram(Eigen::MatrixXcd gram, const ProbeOptions& opt = {}) {
  IndependenceProbe p;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("probe: eigen-solver did not converge");
  p.gram = std::move(gram);
  p.spectrum = es.eigenvalues();
  p.min_eigenvalue = p.spectrum.minCoeff();
  p.max_eigenvalue = p.spectrum.maxCoeff();
  p.relative = p.max_eigenvalue > 0.0 ? p.min_eigenvalue / p.max_eigenvalue : 0.0;
  p.verdict = classify(p.relative, opt);
  p.options = opt;
  return p;
}

using ProbeSpace = std::variant<HPiSpace, L2GSpace>;

/// Samples of Lambda(g) f for each g, with the node weights of the space.
inline std::vector<std::vector<Complex>> translated_samples(const ProbeSpace& space,
                                                            const std::vector<GroupElement>& elements,
                                                            std::vector<double>& weights) {
  std::vector<std::vector<Complex>> out;
  if (const auto* hs = std::get_if<HPiSpace>(&space)) {
    weights.assign(hs->grid.size(), hs->grid.cell_volume());
    for (const auto& g : elements) {
      const auto moved = apply(hs->rep, g, hs->target);
      std::vector<Complex> v(hs->grid.size());
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = moved(hs->grid.point(j));
      out.push_back(std::move(v));
    }
    return out;
  }
  const auto& ls = std::get<L2GSpace>(space);
  const GroupKind kind = ls.target.representation().group();
  const auto density = haar_density(kind, HaarSide::Left);
  weights.resize(ls.grid.size());
  std::vector<GroupElement> xs;
  for (std::size_t i = 0; i < ls.grid.size(); ++i) {
    weights[i] = ls.grid.weight(i) * density(ls.grid.node(i));
    xs.push_back(element_from_parameters(kind, ls.grid.node(i)));
  }
  for (const auto& g : elements) {
    const GroupElement gi = invert(g);
    std::vector<Complex> v(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) v[i] = ls.target(multiply(gi, xs[i]));
    out.push_back(std::move(v));
  }
  return out;
}

inline IndependenceProbe probe_independence(const ProbeSpace& space, const std::vector<GroupElement>& elements,
                                            const ProbeOptions& opt = {}) {
  if (elements.empty()) throw std::invalid_argument("probe: no elements");
  for (std::size_t k = 0; k < elements.size(); ++k)
    for (std::size_t j = 0; j < k; ++j)
      if (same_element(elements[j], elements[k]))
        throw std::invalid_argument("probe: elements " + std::to_string(j + 1) + " and " + std::to_string(k + 1) +
                                    " coincide");
  std::vector<double> weights;
  const auto base = translated_samples(space, {identity_like(elements.front())}, weights);
  if (std::all_of(base[0].begin(), base[0].end(), [](Complex z) { return z == Complex{}; }))
    throw std::invalid_argument("probe: f is zero on the evaluation grid");
  return probe_gram(gram_matrix(translated_samples(space, elements, weights), weights), opt);
}

}  // namespace lindep
