#pragma once

// Linear-dependency certificates: sum_k c_k Lambda(g_k) target = 0, where
// Lambda is a representation (space H_pi) or left translation
// L(g)F(x) = F(g^{-1} x) on the group (space L2(G)).

#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lindep/groups.hpp"
#include "lindep/matrix_coefficient.hpp"
#include "lindep/numerics.hpp"
#include "lindep/representations.hpp"

namespace lindep {

struct Term {
  Complex c;
  GroupElement g;
};

/// Target in the representation space, evaluated from its formula on `grid`.
struct HPiSpace {
  RepresentationTag rep;
  AnalyticFunction target;
  Grid grid;

  static HPiSpace from_samples(RepresentationTag rep, const SampledFunction& f) {
    return {rep, interpolant(f), f.grid()};
  }
};

/// Target on the group, measured with left Haar measure on a parameter grid.
struct L2GSpace {
  MatrixCoefficient target;
  ParameterGrid grid;
};

struct DependencyCertificate {
  std::vector<Term> terms;
  std::variant<HPiSpace, L2GSpace> space;

  bool in_representation_space() const { return std::holds_alternative<HPiSpace>(space); }
  GroupKind group() const {
    return in_representation_space() ? std::get<HPiSpace>(space).rep.group()
                                     : std::get<L2GSpace>(space).target.representation().group();
  }
};

class malformed_certificate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Nonzero coefficients, pairwise distinct elements, elements from the right
/// group.
inline void validate(const DependencyCertificate& cert, double distinct_tol = 1e-12) {
  if (cert.terms.empty()) throw malformed_certificate("certificate has no terms");
  const GroupKind kind = cert.group();
  for (std::size_t k = 0; k < cert.terms.size(); ++k) {
    const auto& t = cert.terms[k];
    if (t.c == Complex{}) throw malformed_certificate("term " + std::to_string(k + 1) + " has coefficient 0");
    const GroupKind tk = kind_of(t.g);
    const bool ok = tk == kind || (kind == GroupKind::PositiveAffine && tk == GroupKind::Affine);
    if (!ok)
      throw malformed_certificate("term " + std::to_string(k + 1) + " is an element of " + to_string(tk) +
                                  ", expected " + to_string(kind));
    if (kind == GroupKind::PositiveAffine && !std::get<AffineElement>(t.g).in_positive_subgroup())
      throw malformed_certificate("term " + std::to_string(k + 1) + " leaves the subgroup a > 0");
    for (std::size_t j = 0; j < k; ++j)
      if (same_element(cert.terms[j].g, t.g, distinct_tol))
        throw malformed_certificate("terms " + std::to_string(j + 1) + " and " + std::to_string(k + 1) +
                                    " use the same group element");
  }
}

/// Values of sum_k c_k Lambda(g_k) target at the evaluation nodes, together
/// with the weight of each node (cell volume or Haar weight).
struct ResidualField {
  std::vector<Complex> residual;
  std::vector<Complex> target;
  std::vector<double> weights;

  static double weighted_norm(const std::vector<Complex>& v, const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * std::norm(v[i]);
    return std::sqrt(s);
  }
  double residual_norm() const { return weighted_norm(residual, weights); }
  double target_norm() const { return weighted_norm(target, weights); }
  double max_abs_residual() const {
    double m = 0.0;
    for (const auto& r : residual) m = std::max(m, std::abs(r));
    return m;
  }
};

inline ResidualField residual_field(const DependencyCertificate& cert) {
  validate(cert);
  ResidualField out;
  if (const auto* hs = std::get_if<HPiSpace>(&cert.space)) {
    const std::size_t n = hs->grid.size();
    out.residual.assign(n, Complex{});
    out.weights.assign(n, hs->grid.cell_volume());
    out.target.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.target[j] = hs->target(hs->grid.point(j));
    for (const auto& t : cert.terms) {
      const auto moved = apply(hs->rep, t.g, hs->target);
      for (std::size_t j = 0; j < n; ++j) out.residual[j] += t.c * moved(hs->grid.point(j));
    }
    return out;
  }
  const auto& ls = std::get<L2GSpace>(cert.space);
  const GroupKind kind = ls.target.representation().group();
  const auto density = haar_density(kind, HaarSide::Left);
  std::vector<GroupElement> inverses;
  for (const auto& t : cert.terms) inverses.push_back(invert(t.g));
  const std::size_t n = ls.grid.size();
  out.residual.assign(n, Complex{});
  out.target.resize(n);
  out.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = ls.grid.node(i);
    const GroupElement x = element_from_parameters(kind, p);
    out.weights[i] = ls.grid.weight(i) * density(p);
    out.target[i] = ls.target(x);
    for (std::size_t k = 0; k < cert.terms.size(); ++k)
      out.residual[i] += cert.terms[k].c * ls.target(multiply(inverses[k], x));
  }
  return out;
}

/// || sum_k c_k Lambda(g_k) target ||, homogeneous of degree 1 in the c_k.
inline double residual_unnormalized(const DependencyCertificate& cert) { return residual_field(cert).residual_norm(); }

/// || sum_k c_k Lambda(g_k) target || / || target ||.
inline double verify(const DependencyCertificate& cert) {
  const auto field = residual_field(cert);
  const double nt = field.target_norm();
  if (nt == 0.0) throw malformed_certificate("certificate target vanishes on the evaluation grid");
  return field.residual_norm() / nt;
}

}  // namespace lindep
