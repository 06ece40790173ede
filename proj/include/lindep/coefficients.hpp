#pragma once

// Admissibility constants, the Calderon energy identity, the Weyl-Heisenberg
// orthogonality relation, and transfer of dependency certificates from the
// representation space to L2(G) via matrix coefficients.

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lindep/certificate.hpp"
#include "lindep/matrix_coefficient.hpp"
#include "lindep/numerics.hpp"
#include "lindep/representations.hpp"

namespace lindep {

struct AdmissibilityOptions {
  double xi_min = std::ldexp(1.0, -14);
  // Keep below the folding frequency 1/(2h) of the sampled u; the default
  // suits the [-8, 8] grid with 1024 points.
  double xi_max = std::ldexp(1.0, 4);
  std::size_t panels = 256;
  std::size_t nodes_per_panel = 4;
  /// Largest share of the total an end panel may carry for the integral to
  /// count as convergent.
  double tail_tolerance = 1e-4;
};

struct AdmissibilityReport {
  double constant = 0.0;
  bool convergent = false;
  double xi_min = 0.0;
  double xi_max = 0.0;
  bool both_sides = true;
  double inner_tail = 0.0;  // share of the innermost panels (near xi = 0)
  double outer_tail = 0.0;  // share of the outermost panels

  std::string truncation_box() const {
    std::ostringstream os;
    os << std::setprecision(6) << (both_sides ? "|xi| in [" : "xi in [") << xi_min << ", " << xi_max << "]";
    return os.str();
  }
};

/// int |s(xi)|^2 / |xi| over log-spaced xi in [xi_min, xi_max], on both sides
/// of 0 or on the positive side only.
template <class Spectrum>
AdmissibilityReport weighted_spectral_energy(Spectrum&& spectrum, bool both_sides,
                                             const AdmissibilityOptions& opt = {}) {
  if (!(opt.xi_min > 0.0 && opt.xi_min < opt.xi_max)) throw std::invalid_argument("admissibility: bad xi range");
  const NodeSet logs = line_rule(std::log(opt.xi_min), std::log(opt.xi_max),
                                 {QuadratureKind::GaussLegendreComposite, opt.panels, opt.nodes_per_panel});
  // With the substitution xi = e^s, |s(xi)|^2 / xi dxi = |s(e^s)|^2 ds.
  std::vector<double> panel(opt.panels, 0.0);
  for (std::size_t j = 0; j < logs.size(); ++j) {
    const double xi = std::exp(logs.nodes[j][0]);
    double v = std::norm(spectrum(xi));
    if (both_sides) v += std::norm(spectrum(-xi));
    panel[j / opt.nodes_per_panel] += logs.weights[j] * v;
  }
  AdmissibilityReport rep;
  for (double p : panel) rep.constant += p;
  rep.xi_min = opt.xi_min;
  rep.xi_max = opt.xi_max;
  rep.both_sides = both_sides;
  if (rep.constant > 0.0) {
    rep.inner_tail = panel.front() / rep.constant;
    rep.outer_tail = panel.back() / rep.constant;
  }
  rep.convergent = rep.constant > 0.0 && std::isfinite(rep.constant) && rep.inner_tail < opt.tail_tolerance &&
                   rep.outer_tail < opt.tail_tolerance;
  return rep;
}

/// Calderon constant of u. For pi-affine this is int_{R*} |u^(xi)|^2/|xi|;
/// pi-plus already acts on the frequency side, so there the constant is
/// int_0^inf |u(xi)|^2/xi taken directly on the samples of u.
inline AdmissibilityReport admissibility_constant(const RepresentationTag& rep, const SampledFunction& u,
                                                  const AdmissibilityOptions& opt = {}) {
  if (u.is_zero()) throw std::invalid_argument("admissibility: u is zero");
  switch (rep.kind) {
    case RepresentationKind::AffinePi:
      return weighted_spectral_energy([&u](double xi) { return fourier_transform_at(u, xi); }, true, opt);
    case RepresentationKind::AffinePiPlus: {
      const auto f = interpolant(u);
      return weighted_spectral_energy([&f](double xi) { return f(xi); }, false, opt);
    }
    default: throw std::invalid_argument("admissibility: only pi-affine and pi-plus have a Calderon constant here");
  }
}

/// pi-plus constant straight from a formula for u on (0, inf).
inline AdmissibilityReport admissibility_constant(const RepresentationTag& rep, const AnalyticFunction& u,
                                                  const AdmissibilityOptions& opt = {}) {
  if (rep.kind != RepresentationKind::AffinePiPlus)
    throw std::invalid_argument("admissibility: formula input is only taken for pi-plus");
  auto r = weighted_spectral_energy([&u](double xi) { return u(xi); }, false, opt);
  if (r.constant == 0.0) throw std::invalid_argument("admissibility: u is zero");
  return r;
}

// ---------------------------------------------------------------------------
// Energy identities
// ---------------------------------------------------------------------------

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;

  double ratio() const { return lhs / rhs; }
};

struct CalderonOptions {
  double a_min = std::ldexp(1.0, -6);
  double a_max = std::ldexp(1.0, 6);
  std::size_t a_panels = 256;
  std::size_t a_nodes = 2;
  double b_bound = 12.0;
  std::size_t b_panels = 48;
  std::size_t b_nodes = 5;
  AdmissibilityOptions admissibility{};

  ParameterGrid parameter_grid() const {
    return ParameterGrid({ParameterAxis::multiplicative(a_min, a_max,
                                                        {QuadratureKind::GaussLegendreComposite, a_panels, a_nodes}, true),
                          ParameterAxis::additive(-b_bound, b_bound,
                                                  {QuadratureKind::GaussLegendreComposite, b_panels, b_nodes})});
  }
};

/// Squared L2(G) norm of F over a parameter grid with left Haar measure.
inline double coefficient_energy(const MatrixCoefficient& F, const ParameterGrid& grid) {
  return integrate_haar(grid, [&F](std::span<const double> p) { return std::norm(F.at(p)); },
                        haar_density(F.representation().group(), HaarSide::Left));
}

/// lhs = int |<v, pi(a,b) u>|^2 da db / a^2 over the truncated box,
/// rhs = ||v||^2 times the Calderon constant of u. v and u are given by
/// formulas; `grid` carries the x-quadrature and the samples of u used for
/// the constant.
inline IdentitySides calderon_energy_check(const AnalyticFunction& v, const AnalyticFunction& u, const Grid& grid,
                                           const CalderonOptions& opt = {}) {
  const auto rep = RepresentationTag::affine();
  const NodeSet rule = grid_rule(grid);
  const double nv = norm2(v, rule);
  if (nv == 0.0) return {};
  const MatrixCoefficient F(rep, v, u, rule);
  const auto constant = admissibility_constant(rep, SampledFunction::sample(grid, u), opt.admissibility);
  return {coefficient_energy(F, opt.parameter_grid()), nv * constant.constant};
}

/// Same identity with v and u given only by samples (read through the
/// piecewise-linear interpolant).
inline IdentitySides calderon_energy_check(const SampledFunction& v, const SampledFunction& u,
                                           const CalderonOptions& opt = {}) {
  if (!(v.grid() == u.grid())) throw std::invalid_argument("calderon: v and u live on different grids");
  if (v.is_zero()) return {};
  return calderon_energy_check(interpolant(v), interpolant(u), v.grid(), opt);
}

struct OrthogonalityOptions {
  double bound = 6.0;
  std::size_t panels = 96;
  std::size_t nodes = 4;
};

/// lhs = int_T int int |<f, pi(t,a,b) g>|^2 dt da db, rhs = ||f||^2 ||g||^2
/// for n = 1. The circle integral contributes a factor 1 since t only
/// enters through the phase e^{2 pi i t}.
inline IdentitySides wh_orthogonality_check(const AnalyticFunction& f, const AnalyticFunction& g, const Grid& grid,
                                            const OrthogonalityOptions& opt = {}) {
  if (f.dimension != 1 || g.dimension != 1 || grid.dimension() != 1)
    throw std::invalid_argument("wh_orthogonality_check: n = 1 only");
  const NodeSet rule = grid_rule(grid);
  const double nf = norm2(f, rule);
  const double ng = norm2(g, rule);
  if (nf == 0.0 || ng == 0.0) return {0.0, nf * ng};
  const MatrixCoefficient F(RepresentationTag::schroedinger(1), f, g, rule);
  const QuadratureRule q{QuadratureKind::GaussLegendreComposite, opt.panels, opt.nodes};
  const ParameterGrid box({ParameterAxis::additive(-opt.bound, opt.bound, q),
                           ParameterAxis::additive(-opt.bound, opt.bound, q)});
  const double lhs = integrate_haar(
      box,
      [&F](std::span<const double> p) {
        return std::norm(F(WeylHeisenbergElement(0.0, p[0], p[1])));
      },
      [](std::span<const double>) { return 1.0; });
  return {lhs, nf * ng};
}

inline IdentitySides wh_orthogonality_check(const SampledFunction& f, const SampledFunction& g,
                                            const OrthogonalityOptions& opt = {}) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("wh_orthogonality_check: grid mismatch");
  return wh_orthogonality_check(interpolant(f), interpolant(g), f.grid(), opt);
}

// ---------------------------------------------------------------------------
// Transfer to L2(G)
// ---------------------------------------------------------------------------

class unverified_certificate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Given a verified certificate sum c_k pi(g_k) v = 0, returns the same terms
/// acting by left translation on F = F_{v,u}. `rule` is the x-quadrature for
/// the inner products defining F.
inline DependencyCertificate transfer_certificate(const DependencyCertificate& cert, const AnalyticFunction& u,
                                                  const ParameterGrid& grid, const NodeSet& rule,
                                                  double tolerance = 1e-8) {
  const auto* hs = std::get_if<HPiSpace>(&cert.space);
  if (!hs) throw std::invalid_argument("transfer_certificate: input must live in the representation space");
  const double r = verify(cert);
  if (!(r <= tolerance))
    throw unverified_certificate("transfer_certificate: input residual " + std::to_string(r) +
                                 " exceeds tolerance " + std::to_string(tolerance));
  return {cert.terms, L2GSpace{MatrixCoefficient(hs->rep, hs->target, u, rule), grid}};
}

inline DependencyCertificate transfer_certificate(const DependencyCertificate& cert, const AnalyticFunction& u,
                                                  const ParameterGrid& grid, double tolerance = 1e-8) {
  const auto* hs = std::get_if<HPiSpace>(&cert.space);
  if (!hs) throw std::invalid_argument("transfer_certificate: input must live in the representation space");
  return transfer_certificate(cert, u, grid, grid_rule(hs->grid), tolerance);
}

/// One CSV row per parameter node: the parameters followed by |F|.
inline void write_coefficient_csv(std::ostream& os, const MatrixCoefficient& F, const ParameterGrid& grid) {
  const std::vector<std::string> names = [&] {
    switch (F.representation().group()) {
      case GroupKind::Affine:
      case GroupKind::PositiveAffine: return std::vector<std::string>{"a", "b"};
      case GroupKind::Shearlet: return std::vector<std::string>{"a", "s", "t1", "t2"};
      default: {
        std::vector<std::string> n{"t"};
        for (std::size_t i = 1; i < grid.dimension(); ++i) n.push_back("p" + std::to_string(i));
        return n;
      }
    }
  }();
  if (names.size() != grid.dimension())
    throw std::invalid_argument("coefficient csv: parameter grid does not match the group");
  for (const auto& n : names) os << n << ',';
  os << "abs_F\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (double x : grid.node(i)) os << x << ',';
    os << std::abs(F.at(grid.node(i))) << '\n';
  }
}

}  // namespace lindep
