#pragma once

// Group elements, group laws and Haar densities.
//
// Continuous groups:
//   affine        (a, b), a != 0          (a,b)(c,d) = (ac, b + ad)
//   Weyl-Heisenberg (t, a, b), t in [0,1)  (t1,a1,b1)(t2,a2,b2) = (t1+t2+a1.b2 mod 1, a1+a2, b1+b2)
//   shearlet      (S_s A_a, t), a > 0      (M,t)(M',t') = (MM', t + Mt')
// Discrete groups (exact arithmetic): Z^n, Z/m, and the rational Heisenberg
// lattice whose centre coordinate z is kept unreduced.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lindep/numerics.hpp"
#include "lindep/rational.hpp"

namespace lindep {

enum class GroupKind { Affine, PositiveAffine, WeylHeisenberg, Shearlet, Zn, Cyclic, HeisenbergLattice };

inline std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::Affine: return "affine";
    case GroupKind::PositiveAffine: return "positive-affine";
    case GroupKind::WeylHeisenberg: return "weyl-heisenberg";
    case GroupKind::Shearlet: return "shearlet";
    case GroupKind::Zn: return "zn";
    case GroupKind::Cyclic: return "cyclic";
    case GroupKind::HeisenbergLattice: return "heisenberg-lattice";
  }
  return "?";
}

class group_mismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Affine group R* x| R and its subgroup K = {a > 0}
// ---------------------------------------------------------------------------

struct AffineElement {
  double a = 1.0;
  double b = 0.0;

  AffineElement() = default;
  AffineElement(double a_, double b_) : a(a_), b(b_) {
    if (a == 0.0 || !std::isfinite(a) || !std::isfinite(b))
      throw std::invalid_argument("affine element needs finite a != 0");
  }

  bool in_positive_subgroup() const { return a > 0.0; }
};

inline AffineElement multiply(const AffineElement& g, const AffineElement& h) {
  return {g.a * h.a, g.b + g.a * h.b};
}

inline AffineElement invert(const AffineElement& g) { return {1.0 / g.a, -g.b / g.a}; }

// ---------------------------------------------------------------------------
// Weyl-Heisenberg group: circle coordinate t in [0,1), a row vector, b column vector
// ---------------------------------------------------------------------------

inline double wrap_unit(double t) {
  double r = t - std::floor(t);
  if (r >= 1.0) r = 0.0;
  return r;
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw group_mismatch("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

struct WeylHeisenbergElement {
  double t = 0.0;
  std::vector<double> a;
  std::vector<double> b;

  WeylHeisenbergElement() : a(1, 0.0), b(1, 0.0) {}
  WeylHeisenbergElement(double t_, std::vector<double> a_, std::vector<double> b_)
      : t(wrap_unit(t_)), a(std::move(a_)), b(std::move(b_)) {
    if (a.size() != b.size() || a.empty())
      throw std::invalid_argument("Weyl-Heisenberg element: a and b need the same positive length");
  }
  WeylHeisenbergElement(double t_, double a_, double b_) : WeylHeisenbergElement(t_, std::vector<double>{a_}, std::vector<double>{b_}) {}

  std::size_t n() const { return a.size(); }
};

inline WeylHeisenbergElement multiply(const WeylHeisenbergElement& g, const WeylHeisenbergElement& h) {
  if (g.n() != h.n()) throw group_mismatch("Weyl-Heisenberg: dimension mismatch");
  std::vector<double> a(g.n()), b(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    a[i] = g.a[i] + h.a[i];
    b[i] = g.b[i] + h.b[i];
  }
  return {g.t + h.t + dot(g.a, h.b), std::move(a), std::move(b)};
}

inline WeylHeisenbergElement invert(const WeylHeisenbergElement& g) {
  std::vector<double> a(g.n()), b(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    a[i] = -g.a[i];
    b[i] = -g.b[i];
  }
  return {dot(g.a, g.b) - g.t, std::move(a), std::move(b)};
}

// ---------------------------------------------------------------------------
// Shearlet group: M = S_s A_a with A_a = diag(a, sqrt(a)), S_s = [[1, s], [0, 1]]
// ---------------------------------------------------------------------------

struct ShearletElement {
  double a = 1.0;
  double s = 0.0;
  Point t{0.0, 0.0};

  ShearletElement() = default;
  ShearletElement(double a_, double s_, Point t_) : a(a_), s(s_), t(t_) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("shearlet element needs a > 0");
  }

  /// M = [[a, s sqrt(a)], [0, sqrt(a)]], row major.
  std::array<double, 4> matrix() const {
    const double r = std::sqrt(a);
    return {a, s * r, 0.0, r};
  }
  /// M^{-1} = [[1/a, -s/a], [0, 1/sqrt(a)]].
  std::array<double, 4> inverse_matrix() const { return {1.0 / a, -s / a, 0.0, 1.0 / std::sqrt(a)}; }
};

inline Point apply_matrix(const std::array<double, 4>& m, const Point& x) {
  return {m[0] * x[0] + m[1] * x[1], m[2] * x[0] + m[3] * x[1]};
}

inline ShearletElement multiply(const ShearletElement& g, const ShearletElement& h) {
  // S_s A_a S_s' A_a' = S_{s + s' sqrt(a)} A_{a a'}
  const Point mt = apply_matrix(g.matrix(), h.t);
  return {g.a * h.a, g.s + h.s * std::sqrt(g.a), {g.t[0] + mt[0], g.t[1] + mt[1]}};
}

inline ShearletElement invert(const ShearletElement& g) {
  const Point mt = apply_matrix(g.inverse_matrix(), g.t);
  return {1.0 / g.a, -g.s / std::sqrt(g.a), {-mt[0], -mt[1]}};
}

// ---------------------------------------------------------------------------
// Discrete groups
// ---------------------------------------------------------------------------

struct ZnElement {
  std::vector<std::int64_t> k;

  friend bool operator==(const ZnElement&, const ZnElement&) = default;
  friend bool operator<(const ZnElement& x, const ZnElement& y) { return x.k < y.k; }
};

inline ZnElement multiply(const ZnElement& g, const ZnElement& h) {
  if (g.k.size() != h.k.size()) throw group_mismatch("Z^n: dimension mismatch");
  ZnElement out{g.k};
  for (std::size_t i = 0; i < h.k.size(); ++i) out.k[i] += h.k[i];
  return out;
}

inline ZnElement invert(const ZnElement& g) {
  ZnElement out{g.k};
  for (auto& v : out.k) v = -v;
  return out;
}

struct CyclicElement {
  std::int64_t k = 0;
  std::int64_t m = 1;

  CyclicElement() = default;
  CyclicElement(std::int64_t k_, std::int64_t m_) : k(k_), m(m_) {
    if (m <= 0) throw std::invalid_argument("Z/m needs m >= 1");
    k %= m;
    if (k < 0) k += m;
  }

  friend bool operator==(const CyclicElement&, const CyclicElement&) = default;
  friend bool operator<(const CyclicElement& x, const CyclicElement& y) {
    return x.m != y.m ? x.m < y.m : x.k < y.k;
  }
};

inline CyclicElement multiply(const CyclicElement& g, const CyclicElement& h) {
  if (g.m != h.m) throw group_mismatch("Z/m: modulus mismatch");
  return {g.k + h.k, g.m};
}

inline CyclicElement invert(const CyclicElement& g) { return {-g.k, g.m}; }

/// Element (z, a, b) of the Heisenberg group with rational coordinates.
struct HeisenbergLatticeElement {
  Rational z{0};
  std::vector<Rational> a;
  std::vector<Rational> b;

  HeisenbergLatticeElement() : a(1), b(1) {}
  HeisenbergLatticeElement(Rational z_, std::vector<Rational> a_, std::vector<Rational> b_)
      : z(std::move(z_)), a(std::move(a_)), b(std::move(b_)) {
    if (a.size() != b.size() || a.empty())
      throw std::invalid_argument("Heisenberg lattice element: a and b need the same positive length");
  }

  std::size_t n() const { return a.size(); }

  friend bool operator==(const HeisenbergLatticeElement& x, const HeisenbergLatticeElement& y) {
    return x.z == y.z && x.a == y.a && x.b == y.b;
  }
  friend bool operator<(const HeisenbergLatticeElement& x, const HeisenbergLatticeElement& y) {
    if (x.z != y.z) return x.z < y.z;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
};

inline Rational dot(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (x.size() != y.size()) throw group_mismatch("dot: dimension mismatch");
  Rational s{0};
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline HeisenbergLatticeElement multiply(const HeisenbergLatticeElement& g,
                                         const HeisenbergLatticeElement& h) {
  if (g.n() != h.n()) throw group_mismatch("Heisenberg lattice: dimension mismatch");
  std::vector<Rational> a(g.n()), b(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    a[i] = g.a[i] + h.a[i];
    b[i] = g.b[i] + h.b[i];
  }
  return {g.z + h.z + dot(g.a, h.b), std::move(a), std::move(b)};
}

inline HeisenbergLatticeElement invert(const HeisenbergLatticeElement& g) {
  std::vector<Rational> a(g.n()), b(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) {
    a[i] = -g.a[i];
    b[i] = -g.b[i];
  }
  return {dot(g.a, g.b) - g.z, std::move(a), std::move(b)};
}

/// The image in the Weyl-Heisenberg group (centre coordinate taken mod 1).
inline WeylHeisenbergElement to_weyl_heisenberg(const HeisenbergLatticeElement& g) {
  std::vector<double> a, b;
  for (const auto& v : g.a) a.push_back(to_double(v));
  for (const auto& v : g.b) b.push_back(to_double(v));
  const Rational frac = g.z - Rational(boost::multiprecision::numerator(g.z) /
                                       boost::multiprecision::denominator(g.z));
  return {to_double(frac), std::move(a), std::move(b)};
}

// ---------------------------------------------------------------------------
// Identity elements shaped like a given element
// ---------------------------------------------------------------------------

inline AffineElement identity_like(const AffineElement&) { return {}; }
inline WeylHeisenbergElement identity_like(const WeylHeisenbergElement& g) {
  return {0.0, std::vector<double>(g.n(), 0.0), std::vector<double>(g.n(), 0.0)};
}
inline ShearletElement identity_like(const ShearletElement&) { return {}; }
inline ZnElement identity_like(const ZnElement& g) { return {std::vector<std::int64_t>(g.k.size(), 0)}; }
inline CyclicElement identity_like(const CyclicElement& g) { return {0, g.m}; }
inline HeisenbergLatticeElement identity_like(const HeisenbergLatticeElement& g) {
  return {Rational(0), std::vector<Rational>(g.n()), std::vector<Rational>(g.n())};
}

// ---------------------------------------------------------------------------
// Type-erased element
// ---------------------------------------------------------------------------

using GroupElement = std::variant<AffineElement, WeylHeisenbergElement, ShearletElement, ZnElement,
                                  CyclicElement, HeisenbergLatticeElement>;

inline GroupKind kind_of(const GroupElement& g) {
  switch (g.index()) {
    case 0: return GroupKind::Affine;
    case 1: return GroupKind::WeylHeisenberg;
    case 2: return GroupKind::Shearlet;
    case 3: return GroupKind::Zn;
    case 4: return GroupKind::Cyclic;
    default: return GroupKind::HeisenbergLattice;
  }
}

inline GroupElement multiply(const GroupElement& g, const GroupElement& h) {
  return std::visit(
      [](const auto& x, const auto& y) -> GroupElement {
        using X = std::decay_t<decltype(x)>;
        using Y = std::decay_t<decltype(y)>;
        if constexpr (std::is_same_v<X, Y>) {
          return multiply(x, y);
        } else {
          throw group_mismatch("multiply: elements of different groups");
        }
      },
      g, h);
}

inline GroupElement invert(const GroupElement& g) {
  return std::visit([](const auto& x) -> GroupElement { return invert(x); }, g);
}

inline GroupElement identity_like(const GroupElement& g) {
  return std::visit([](const auto& x) -> GroupElement { return identity_like(x); }, g);
}

/// Real parameter tuple of a continuous element: affine (a, b),
/// Weyl-Heisenberg (t, a..., b...), shearlet (a, s, t1, t2).
inline std::vector<double> parameters(const GroupElement& g) {
  if (const auto* x = std::get_if<AffineElement>(&g)) return {x->a, x->b};
  if (const auto* x = std::get_if<ShearletElement>(&g)) return {x->a, x->s, x->t[0], x->t[1]};
  if (const auto* x = std::get_if<WeylHeisenbergElement>(&g)) {
    std::vector<double> p{x->t};
    p.insert(p.end(), x->a.begin(), x->a.end());
    p.insert(p.end(), x->b.begin(), x->b.end());
    return p;
  }
  throw std::invalid_argument("parameters: lattice elements have no real parameter tuple");
}

/// Inverse of parameters() for continuous groups.
inline GroupElement element_from_parameters(GroupKind kind, std::span<const double> p) {
  switch (kind) {
    case GroupKind::Affine:
    case GroupKind::PositiveAffine:
      if (p.size() != 2) throw std::invalid_argument("affine element needs 2 parameters");
      return AffineElement{p[0], p[1]};
    case GroupKind::Shearlet:
      if (p.size() != 4) throw std::invalid_argument("shearlet element needs 4 parameters");
      return ShearletElement{p[0], p[1], {p[2], p[3]}};
    case GroupKind::WeylHeisenberg: {
      if (p.size() < 3 || p.size() % 2 == 0)
        throw std::invalid_argument("Weyl-Heisenberg element needs 1 + 2n parameters");
      const std::size_t n = (p.size() - 1) / 2;
      return WeylHeisenbergElement{p[0], {p.begin() + 1, p.begin() + 1 + static_cast<std::ptrdiff_t>(n)},
                                   {p.begin() + 1 + static_cast<std::ptrdiff_t>(n), p.end()}};
    }
    default: throw std::invalid_argument("element_from_parameters: not a continuous group");
  }
}

/// Equality up to `tol` on parameters for continuous groups (circle
/// coordinate compared modulo 1), exact for lattice groups.
inline bool same_element(const GroupElement& g, const GroupElement& h, double tol = 1e-12) {
  if (g.index() != h.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using X = std::decay_t<decltype(x)>;
        const auto& y = std::get<X>(h);
        if constexpr (std::is_same_v<X, ZnElement> || std::is_same_v<X, CyclicElement> ||
                      std::is_same_v<X, HeisenbergLatticeElement>) {
          return x == y;
        } else {
          const auto p = parameters(x);
          const auto q = parameters(y);
          if (p.size() != q.size()) return false;
          for (std::size_t i = 0; i < p.size(); ++i) {
            double d = std::abs(p[i] - q[i]);
            if constexpr (std::is_same_v<X, WeylHeisenbergElement>)
              if (i == 0) d = std::min(d, 1.0 - d);
            if (d > tol) return false;
          }
          return true;
        }
      },
      g);
}

// ---------------------------------------------------------------------------
// Haar densities (with respect to Lebesgue measure on the parameter tuple)
// ---------------------------------------------------------------------------

enum class HaarSide { Left, Right };

struct HaarDensity {
  DensityFunction left_density;
  DensityFunction right_density;

  const DensityFunction& operator[](HaarSide side) const {
    return side == HaarSide::Left ? left_density : right_density;
  }
};

inline HaarDensity haar_density(GroupKind kind) {
  switch (kind) {
    case GroupKind::Affine:
    case GroupKind::PositiveAffine:
      return {[](std::span<const double> p) { return 1.0 / (p[0] * p[0]); },
              [](std::span<const double> p) { return 1.0 / std::abs(p[0]); }};
    case GroupKind::Shearlet:
      return {[](std::span<const double> p) { return 1.0 / (p[0] * p[0] * p[0]); },
              [](std::span<const double> p) { return 1.0 / p[0]; }};
    case GroupKind::WeylHeisenberg:
      return {[](std::span<const double>) { return 1.0; }, [](std::span<const double>) { return 1.0; }};
    default:
      // Counting measure on discrete groups.
      return {[](std::span<const double>) { return 1.0; }, [](std::span<const double>) { return 1.0; }};
  }
}

inline DensityFunction haar_density(GroupKind kind, HaarSide side) { return haar_density(kind)[side]; }

}  // namespace lindep
