#pragma once

// Matrix coefficients F_{v,u}(g) = <v, pi(g) u>.

#include <span>

#include "lindep/numerics.hpp"
#include "lindep/representations.hpp"

namespace lindep {

inline Complex matrix_coefficient(const RepresentationTag& rep, const SampledFunction& v,
                                  const SampledFunction& u, const GroupElement& g) {
  return inner_product(v, apply(rep, g, u));
}

inline Complex matrix_coefficient(const RepresentationTag& rep, const AnalyticFunction& v,
                                  const AnalyticFunction& u, const GroupElement& g, const NodeSet& rule) {
  return inner_product(v, apply(rep, g, u), rule);
}

/// A matrix coefficient as a function on the group: the recipe (rep, v, u)
/// plus the quadrature used for the inner product. Evaluating at g always
/// recomputes <v, pi(g) u>; nothing is interpolated on the group side.
class MatrixCoefficient {
 public:
  MatrixCoefficient() = default;
  MatrixCoefficient(RepresentationTag rep, AnalyticFunction v, AnalyticFunction u, const NodeSet& rule)
      : rep_(rep), v_(std::move(v)), u_(std::move(u)), rule_(restrict_to_support(rule, v_)) {}

  const RepresentationTag& representation() const { return rep_; }
  const AnalyticFunction& v() const { return v_; }
  const AnalyticFunction& u() const { return u_; }
  const NodeSet& rule() const { return rule_; }

  Complex operator()(const GroupElement& g) const { return inner_product(v_, apply(rep_, g, u_), rule_); }

  Complex at(std::span<const double> parameters) const {
    return (*this)(element_from_parameters(rep_.group(), parameters));
  }

 private:
  RepresentationTag rep_;
  AnalyticFunction v_;
  AnalyticFunction u_;
  NodeSet rule_;
};

}  // namespace lindep
