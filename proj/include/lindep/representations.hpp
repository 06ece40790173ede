#pragma once

// Unitary operators T_y, E_y, D_y and the four representations
//
//   pi-affine    pi(a,b) f(x)     = |a|^{-1/2} f((x - b)/a)             = T_b D_a f
//   pi-plus      pi+(a,b) f(x)    = a^{1/2} e^{2 pi i b x} f(a x)       = E_b D_{1/a} f
//   schroedinger pi(t,a,b) f(x)   = e^{2 pi i t} e^{-2 pi i a.b} e^{2 pi i a.x} f(x - b)
//   pi-shearlet  pi(S_s A_a, t) f = a^{-3/4} f((S_s A_a)^{-1} (x - t))
//
// Every operator exists in two flavours. On AnalyticFunction it composes
// formulas, so evaluation is exact up to rounding. On SampledFunction it
// reads the samples through a linear interpolant; arguments that land on a
// sample (grid-multiple shifts) read that sample exactly, and arguments
// outside the box read 0.

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lindep/groups.hpp"
#include "lindep/numerics.hpp"

namespace lindep {

enum class RepresentationKind { AffinePi, AffinePiPlus, SchroedingerWH, ShearletPi };

struct RepresentationTag {
  RepresentationKind kind = RepresentationKind::AffinePi;
  int dimension = 1;

  static RepresentationTag affine() { return {RepresentationKind::AffinePi, 1}; }
  static RepresentationTag affine_plus() { return {RepresentationKind::AffinePiPlus, 1}; }
  static RepresentationTag schroedinger(int n = 1) { return {RepresentationKind::SchroedingerWH, n}; }
  static RepresentationTag shearlet() { return {RepresentationKind::ShearletPi, 2}; }

  GroupKind group() const {
    switch (kind) {
      case RepresentationKind::AffinePi: return GroupKind::Affine;
      case RepresentationKind::AffinePiPlus: return GroupKind::PositiveAffine;
      case RepresentationKind::SchroedingerWH: return GroupKind::WeylHeisenberg;
      case RepresentationKind::ShearletPi: return GroupKind::Shearlet;
    }
    return GroupKind::Affine;
  }

  friend bool operator==(const RepresentationTag&, const RepresentationTag&) = default;
};

inline std::string to_string(const RepresentationTag& rep) {
  switch (rep.kind) {
    case RepresentationKind::AffinePi: return "pi-affine";
    case RepresentationKind::AffinePiPlus: return "pi-plus";
    case RepresentationKind::SchroedingerWH: return "schroedinger";
    case RepresentationKind::ShearletPi: return "pi-shearlet";
  }
  return "?";
}

inline RepresentationTag parse_representation(std::string_view name, int n = 1) {
  if (name == "pi-affine") return RepresentationTag::affine();
  if (name == "pi-plus") return RepresentationTag::affine_plus();
  if (name == "schroedinger") return RepresentationTag::schroedinger(n);
  if (name == "pi-shearlet") return RepresentationTag::shearlet();
  throw std::invalid_argument("unknown representation '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Interpolated view of samples
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr double snap_tolerance = 1e-9;

struct AxisStencil {
  std::ptrdiff_t lo = 0;
  double weight_hi = 0.0;  // weight of lo + 1
  bool exact = false;
};

inline AxisStencil stencil(const Grid& g, int axis, double x) {
  const double u = (x - g.lower(axis)) / g.spacing(axis) - 0.5;
  const double r = std::round(u);
  if (std::abs(u - r) < snap_tolerance) return {static_cast<std::ptrdiff_t>(r), 0.0, true};
  const double fl = std::floor(u);
  return {static_cast<std::ptrdiff_t>(fl), u - fl, false};
}

inline std::ptrdiff_t wrap_index(std::ptrdiff_t i, std::size_t n, bool periodic) {
  const auto nn = static_cast<std::ptrdiff_t>(n);
  if (!periodic) return (i < 0 || i >= nn) ? -1 : i;
  i %= nn;
  return i < 0 ? i + nn : i;
}

}  // namespace detail

/// Linear (bilinear in 2D) interpolant of the samples. Points outside the
/// box evaluate to 0 unless `periodic`, in which case the box is a torus.
inline AnalyticFunction interpolant(const SampledFunction& f, bool periodic = false) {
  auto data = std::make_shared<const SampledFunction>(f);
  const int dim = f.grid().dimension();
  return {dim, [data, periodic, dim](const Point& x) -> Complex {
            const Grid& g = data->grid();
            if (!periodic && !g.contains(x)) return {};
            auto s0 = detail::stencil(g, 0, x[0]);
            if (dim == 1) {
              auto at = [&](std::ptrdiff_t i) -> Complex {
                const auto k = detail::wrap_index(i, g.points(0), periodic);
                return k < 0 ? Complex{} : (*data)[static_cast<std::size_t>(k)];
              };
              if (s0.exact) return at(s0.lo);
              return (1.0 - s0.weight_hi) * at(s0.lo) + s0.weight_hi * at(s0.lo + 1);
            }
            auto s1 = detail::stencil(g, 1, x[1]);
            auto at = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> Complex {
              const auto ki = detail::wrap_index(i, g.points(0), periodic);
              const auto kj = detail::wrap_index(j, g.points(1), periodic);
              if (ki < 0 || kj < 0) return {};
              return (*data)[static_cast<std::size_t>(ki) + g.points(0) * static_cast<std::size_t>(kj)];
            };
            Complex s{};
            const int n0 = s0.exact ? 1 : 2;
            const int n1 = s1.exact ? 1 : 2;
            for (int di = 0; di < n0; ++di)
              for (int dj = 0; dj < n1; ++dj) {
                const double w0 = s0.exact ? 1.0 : (di ? s0.weight_hi : 1.0 - s0.weight_hi);
                const double w1 = s1.exact ? 1.0 : (dj ? s1.weight_hi : 1.0 - s1.weight_hi);
                s += w0 * w1 * at(s0.lo + di, s1.lo + dj);
              }
            return s;
          }};
}

// ---------------------------------------------------------------------------
// T_y, E_y, D_y on formulas
// ---------------------------------------------------------------------------

/// T_y f(x) = f(x - y).
inline AnalyticFunction translate(const AnalyticFunction& f, Point y) {
  return {f.dimension, [f, y](const Point& x) { return f({x[0] - y[0], x[1] - y[1]}); }};
}
inline AnalyticFunction translate(const AnalyticFunction& f, double y) { return translate(f, Point{y, 0.0}); }

/// E_y f(x) = e^{2 pi i y.x} f(x).
inline AnalyticFunction modulate(const AnalyticFunction& f, Point y) {
  return {f.dimension, [f, y](const Point& x) { return unit_phase(y[0] * x[0] + y[1] * x[1]) * f(x); }};
}
inline AnalyticFunction modulate(const AnalyticFunction& f, double y) { return modulate(f, Point{y, 0.0}); }

/// D_y f(x) = |y|^{-1/2} f(x / y), y != 0 (one-dimensional).
inline AnalyticFunction dilate(const AnalyticFunction& f, double y) {
  if (y == 0.0) throw std::invalid_argument("dilate: y must be nonzero");
  if (f.dimension != 1) throw std::invalid_argument("dilate: one-dimensional functions only");
  const double amp = 1.0 / std::sqrt(std::abs(y));
  return {1, [f, y, amp](const Point& x) { return amp * f(x[0] / y); }};
}

// ---------------------------------------------------------------------------
// Representations on formulas
// ---------------------------------------------------------------------------

namespace detail {

inline void require_dimension(const RepresentationTag& rep, int dimension) {
  if (rep.dimension != dimension)
    throw std::invalid_argument(to_string(rep) + ": acts on dimension " + std::to_string(rep.dimension) +
                                ", function has dimension " + std::to_string(dimension));
}

template <class E>
const E& element_as(const RepresentationTag& rep, const GroupElement& g) {
  const E* e = std::get_if<E>(&g);
  if (!e) throw group_mismatch(to_string(rep) + ": element belongs to a different group");
  return *e;
}

}  // namespace detail

inline AnalyticFunction apply(const RepresentationTag& rep, const GroupElement& g, const AnalyticFunction& f) {
  detail::require_dimension(rep, f.dimension);
  switch (rep.kind) {
    case RepresentationKind::AffinePi: {
      const auto& e = detail::element_as<AffineElement>(rep, g);
      return translate(dilate(f, e.a), e.b);
    }
    case RepresentationKind::AffinePiPlus: {
      const auto& e = detail::element_as<AffineElement>(rep, g);
      if (!(e.a > 0.0)) throw std::invalid_argument("pi-plus: needs a > 0");
      return modulate(dilate(f, 1.0 / e.a), e.b);
    }
    case RepresentationKind::SchroedingerWH: {
      const auto& e = detail::element_as<WeylHeisenbergElement>(rep, g);
      if (static_cast<int>(e.n()) != f.dimension)
        throw std::invalid_argument("schroedinger: element dimension does not match function");
      const Point a{e.a[0], e.n() > 1 ? e.a[1] : 0.0};
      const Point b{e.b[0], e.n() > 1 ? e.b[1] : 0.0};
      const Complex scalar = unit_phase(e.t) * unit_phase(-dot(e.a, e.b));
      return {f.dimension, [f, a, b, scalar](const Point& x) {
                return scalar * unit_phase(a[0] * x[0] + a[1] * x[1]) * f({x[0] - b[0], x[1] - b[1]});
              }};
    }
    case RepresentationKind::ShearletPi: {
      const auto& e = detail::element_as<ShearletElement>(rep, g);
      const auto inv = e.inverse_matrix();
      const double amp = std::pow(e.a, -0.75);
      const Point t = e.t;
      return {2, [f, inv, amp, t](const Point& x) {
                return amp * f(apply_matrix(inv, {x[0] - t[0], x[1] - t[1]}));
              }};
    }
  }
  throw std::logic_error("apply: unknown representation");
}

/// Where a point x of the source function ends up under pi(g): the inverse
/// of the argument map x -> (argument of f).
inline Point forward_point(const RepresentationTag& rep, const GroupElement& g, const Point& y) {
  switch (rep.kind) {
    case RepresentationKind::AffinePi: {
      const auto& e = detail::element_as<AffineElement>(rep, g);
      return {e.a * y[0] + e.b, 0.0};
    }
    case RepresentationKind::AffinePiPlus: {
      const auto& e = detail::element_as<AffineElement>(rep, g);
      return {y[0] / e.a, 0.0};
    }
    case RepresentationKind::SchroedingerWH: {
      const auto& e = detail::element_as<WeylHeisenbergElement>(rep, g);
      return {y[0] + e.b[0], y[1] + (e.n() > 1 ? e.b[1] : 0.0)};
    }
    case RepresentationKind::ShearletPi: {
      const auto& e = detail::element_as<ShearletElement>(rep, g);
      const Point m = apply_matrix(e.matrix(), y);
      return {m[0] + e.t[0], m[1] + e.t[1]};
    }
  }
  throw std::logic_error("forward_point: unknown representation");
}

// ---------------------------------------------------------------------------
// Sampled versions
// ---------------------------------------------------------------------------

/// A resampled function with the squared norm of the source samples whose
/// image left the box.
struct Resampled {
  SampledFunction function;
  double mass_lost = 0.0;
};

inline SampledFunction translate(const SampledFunction& f, Point y) {
  return SampledFunction::sample(f.grid(), translate(interpolant(f), y));
}
inline SampledFunction translate(const SampledFunction& f, double y) { return translate(f, Point{y, 0.0}); }

/// Translation on the box viewed as a torus.
inline SampledFunction translate_periodic(const SampledFunction& f, Point y) {
  return SampledFunction::sample(f.grid(), translate(interpolant(f, true), y));
}

inline SampledFunction modulate(const SampledFunction& f, Point y) {
  SampledFunction out(f);
  for (std::size_t j = 0; j < out.size(); ++j) {
    const Point x = f.grid().point(j);
    out[j] *= unit_phase(y[0] * x[0] + y[1] * x[1]);
  }
  return out;
}
inline SampledFunction modulate(const SampledFunction& f, double y) { return modulate(f, Point{y, 0.0}); }

inline SampledFunction dilate(const SampledFunction& f, double y) {
  return SampledFunction::sample(f.grid(), dilate(interpolant(f), y));
}

inline Resampled apply_tracked(const RepresentationTag& rep, const GroupElement& g, const SampledFunction& f) {
  detail::require_dimension(rep, f.grid().dimension());
  const Grid& grid = f.grid();
  if (rep.kind == RepresentationKind::AffinePiPlus && grid.lower(0) < 0.0)
    throw std::invalid_argument("pi-plus: functions live on a grid over (0, L]");

  Resampled out;
  switch (rep.kind) {
    case RepresentationKind::AffinePi: {
      const auto& e = detail::element_as<AffineElement>(rep, g);
      out.function = translate(dilate(f, e.a), e.b);
      break;
    }
    case RepresentationKind::AffinePiPlus: {
      const auto& e = detail::element_as<AffineElement>(rep, g);
      if (!(e.a > 0.0)) throw std::invalid_argument("pi-plus: needs a > 0");
      out.function = modulate(dilate(f, 1.0 / e.a), e.b);
      break;
    }
    default:
      out.function = SampledFunction::sample(grid, apply(rep, g, interpolant(f)));
      break;
  }
  double lost = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j)
    if (f[j] != Complex{} && !grid.contains(forward_point(rep, g, grid.point(j)))) lost += std::norm(f[j]);
  out.mass_lost = lost * grid.cell_volume();
  return out;
}

inline SampledFunction apply(const RepresentationTag& rep, const GroupElement& g, const SampledFunction& f) {
  return apply_tracked(rep, g, f).function;
}

/// ||pi(gh) f - pi(g) pi(h) f|| / ||f|| with both sides evaluated from the
/// formula on `grid`.
inline double homomorphism_check(const RepresentationTag& rep, const GroupElement& g, const GroupElement& h,
                                 const AnalyticFunction& f, const Grid& grid) {
  const auto lhs = SampledFunction::sample(grid, apply(rep, multiply(g, h), f));
  const auto rhs = SampledFunction::sample(grid, apply(rep, g, apply(rep, h, f)));
  const double nf = SampledFunction::sample(grid, f).norm();
  if (nf == 0.0) return (lhs - rhs).norm();
  return (lhs - rhs).norm() / nf;
}

/// Same residual with both sides computed on samples (interpolated).
inline double homomorphism_check(const RepresentationTag& rep, const GroupElement& g, const GroupElement& h,
                                 const SampledFunction& f) {
  const auto lhs = apply(rep, multiply(g, h), f);
  const auto rhs = apply(rep, g, apply(rep, h, f));
  const double nf = f.norm();
  if (nf == 0.0) return (lhs - rhs).norm();
  return (lhs - rhs).norm() / nf;
}

}  // namespace lindep
