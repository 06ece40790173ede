#pragma once

// Grids, sampled functions, inner products, quadrature and the Fourier
// transform f^(xi) = int f(x) exp(-2 pi i xi x) dx.

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace lindep {

using Complex = std::complex<double>;

/// A point of R^1 or R^2. One-dimensional code only reads x[0].
using Point = std::array<double, 2>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// exp(2 pi i theta), computed from the fractional part of theta so that
/// large arguments keep their phase accuracy.
inline Complex unit_phase(double theta) {
  const double frac = theta - std::round(theta);
  return {std::cos(two_pi * frac), std::sin(two_pi * frac)};
}

/// Uniform midpoint grid over a box in R^n, n = 1 or 2.
///
/// Sample j on axis i sits at lower[i] + (j + 1/2) h_i with
/// h_i = (upper[i] - lower[i]) / points[i]. Samples are stored with axis 0
/// running fastest.
class Grid {
 public:
  Grid() = default;

  Grid(double lower, double upper, std::size_t points)
      : dimension_(1), lower_{lower, 0.0}, upper_{upper, 1.0}, points_{points, 1} {
    validate();
  }

  Grid(Point lower, Point upper, std::array<std::size_t, 2> points)
      : dimension_(2), lower_(lower), upper_(upper), points_(points) {
    validate();
  }

  int dimension() const { return dimension_; }
  double lower(int axis = 0) const { return lower_[axis]; }
  double upper(int axis = 0) const { return upper_[axis]; }
  std::size_t points(int axis = 0) const { return points_[axis]; }
  double length(int axis = 0) const { return upper_[axis] - lower_[axis]; }
  double spacing(int axis = 0) const { return length(axis) / static_cast<double>(points_[axis]); }
  std::size_t size() const { return points_[0] * (dimension_ == 2 ? points_[1] : 1); }

  double cell_volume() const {
    return dimension_ == 2 ? spacing(0) * spacing(1) : spacing(0);
  }

  double coordinate(int axis, std::size_t j) const {
    return lower_[axis] + (static_cast<double>(j) + 0.5) * spacing(axis);
  }

  Point point(std::size_t index) const {
    if (dimension_ == 1) return {coordinate(0, index), 0.0};
    return {coordinate(0, index % points_[0]), coordinate(1, index / points_[0])};
  }

  /// Closed box membership; points on the boundary count as inside.
  bool contains(const Point& x) const {
    for (int axis = 0; axis < dimension_; ++axis)
      if (x[axis] < lower_[axis] || x[axis] > upper_[axis]) return false;
    return true;
  }

  friend bool operator==(const Grid& g, const Grid& h) {
    if (g.dimension_ != h.dimension_) return false;
    for (int axis = 0; axis < g.dimension_; ++axis)
      if (g.lower_[axis] != h.lower_[axis] || g.upper_[axis] != h.upper_[axis] ||
          g.points_[axis] != h.points_[axis])
        return false;
    return true;
  }

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    for (int axis = 0; axis < dimension_; ++axis) {
      if (axis) os << " x ";
      os << "[" << lower_[axis] << "," << upper_[axis] << "]/" << points_[axis];
    }
    return os.str();
  }

 private:
  void validate() const {
    for (int axis = 0; axis < dimension_; ++axis) {
      if (!(lower_[axis] < upper_[axis]))
        throw std::invalid_argument("grid: lower bound must be below upper bound");
      if (points_[axis] == 0) throw std::invalid_argument("grid: need at least one point per axis");
    }
  }

  int dimension_ = 1;
  Point lower_{0.0, 0.0};
  Point upper_{1.0, 1.0};
  std::array<std::size_t, 2> points_{1, 1};
};

/// A function given by a formula. Used wherever exact pointwise evaluation
/// matters (jump functions, re-evaluation at transformed points).
struct AnalyticFunction {
  int dimension = 1;
  std::function<Complex(const Point&)> eval;

  Complex operator()(const Point& x) const { return eval(x); }
  Complex operator()(double x) const { return eval(Point{x, 0.0}); }
};

/// Complex samples of a function on a midpoint grid.
class SampledFunction {
 public:
  SampledFunction() = default;

  explicit SampledFunction(Grid grid) : grid_(std::move(grid)), values_(grid_.size()) {}

  SampledFunction(Grid grid, std::vector<Complex> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size())
      throw std::invalid_argument("sampled function: value count does not match grid");
  }

  template <class F>
  static SampledFunction sample(const Grid& grid, F&& f) {
    SampledFunction out(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) out.values_[j] = Complex(f(grid.point(j)));
    return out;
  }

  static SampledFunction sample(const Grid& grid, const AnalyticFunction& f) {
    if (f.dimension != grid.dimension())
      throw std::invalid_argument("sample: function and grid dimensions differ");
    return sample(grid, f.eval);
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  const Complex& operator[](std::size_t j) const { return values_[j]; }
  Complex& operator[](std::size_t j) { return values_[j]; }

  double norm2() const {
    double s = 0.0;
    for (const auto& v : values_) s += std::norm(v);
    return s * grid_.cell_volume();
  }
  double norm() const { return std::sqrt(norm2()); }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const Complex& v) { return v == Complex{}; });
  }

  SampledFunction& operator+=(const SampledFunction& o) {
    require_same_grid(o, "sum");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += o.values_[j];
    return *this;
  }
  SampledFunction& operator-=(const SampledFunction& o) {
    require_same_grid(o, "difference");
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= o.values_[j];
    return *this;
  }
  SampledFunction& operator*=(Complex c) {
    for (auto& v : values_) v *= c;
    return *this;
  }

  friend SampledFunction operator+(SampledFunction a, const SampledFunction& b) { return a += b; }
  friend SampledFunction operator-(SampledFunction a, const SampledFunction& b) { return a -= b; }
  friend SampledFunction operator*(Complex c, SampledFunction a) { return a *= c; }

 private:
  void require_same_grid(const SampledFunction& o, const char* what) const {
    if (!(grid_ == o.grid_))
      throw std::invalid_argument(std::string(what) + ": grids differ (" + grid_.describe() +
                                  " vs " + o.grid_.describe() + ")");
  }

  Grid grid_;
  std::vector<Complex> values_;
};

/// <f, g> = sum f(x_j) conj(g(x_j)) * cell volume. Linear in f,
/// conjugate linear in g.
inline Complex inner_product(const SampledFunction& f, const SampledFunction& g) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("inner_product: grids differ (" + f.grid().describe() + " vs " +
                                g.grid().describe() + ")");
  Complex s{};
  const auto fv = f.values();
  const auto gv = g.values();
  for (std::size_t j = 0; j < fv.size(); ++j) s += fv[j] * std::conj(gv[j]);
  return s * f.grid().cell_volume();
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

enum class QuadratureKind { Midpoint, GaussLegendreComposite };

struct QuadratureRule {
  QuadratureKind kind = QuadratureKind::GaussLegendreComposite;
  std::size_t panels = 1;
  std::size_t nodes_per_panel = 1;

  std::size_t total_nodes() const { return panels * nodes_per_panel; }
};

/// Nodes and weights on a line or a tensor product of lines.
struct NodeSet {
  int dimension = 1;
  std::vector<Point> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: need at least one node");
  if (n == 1) return {{0.0}, {2.0}};
  std::vector<double> x(n), w(n);
  const auto nd = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        const auto kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * z * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      dp = nd * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

/// One-dimensional composite rule on [lo, hi]. Panel boundaries are placed
/// at lo + k (hi - lo) / panels and at every breakpoint strictly inside.
inline NodeSet line_rule(double lo, double hi, const QuadratureRule& rule,
                         std::span<const double> breakpoints = {}) {
  if (!(lo < hi)) throw std::invalid_argument("line_rule: empty interval");
  if (rule.panels == 0 || rule.nodes_per_panel == 0)
    throw std::invalid_argument("line_rule: rule needs at least one node");
  std::vector<double> edges;
  for (std::size_t k = 0; k <= rule.panels; ++k)
    edges.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(rule.panels));
  for (double b : breakpoints)
    if (b > lo && b < hi) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  NodeSet out;
  const auto m = rule.nodes_per_panel;
  std::vector<double> ref_x, ref_w;
  if (rule.kind == QuadratureKind::GaussLegendreComposite) {
    std::tie(ref_x, ref_w) = gauss_legendre(m);
  } else {
    for (std::size_t k = 0; k < m; ++k) {
      ref_x.push_back(-1.0 + (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(m));
      ref_w.push_back(2.0 / static_cast<double>(m));
    }
  }
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double mid = 0.5 * (edges[p] + edges[p + 1]);
    const double half = 0.5 * (edges[p + 1] - edges[p]);
    for (std::size_t k = 0; k < m; ++k) {
      out.nodes.push_back({mid + half * ref_x[k], 0.0});
      out.weights.push_back(half * ref_w[k]);
    }
  }
  return out;
}

/// The midpoint grid viewed as a quadrature rule.
inline NodeSet grid_rule(const Grid& grid) {
  NodeSet out;
  out.dimension = grid.dimension();
  out.nodes.reserve(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) out.nodes.push_back(grid.point(j));
  out.weights.assign(grid.size(), grid.cell_volume());
  return out;
}

/// Tensor product of two line rules (axis 0 fastest).
inline NodeSet tensor_rule(const NodeSet& x, const NodeSet& y) {
  NodeSet out;
  out.dimension = 2;
  for (std::size_t j = 0; j < y.size(); ++j)
    for (std::size_t i = 0; i < x.size(); ++i) {
      out.nodes.push_back({x.nodes[i][0], y.nodes[j][0]});
      out.weights.push_back(x.weights[i] * y.weights[j]);
    }
  return out;
}

/// Drop nodes where |f| vanishes identically. Inner products against f are
/// unchanged.
inline NodeSet restrict_to_support(const NodeSet& rule, const AnalyticFunction& f,
                                   double cutoff = 0.0) {
  NodeSet out;
  out.dimension = rule.dimension;
  for (std::size_t j = 0; j < rule.size(); ++j)
    if (std::abs(f(rule.nodes[j])) > cutoff) {
      out.nodes.push_back(rule.nodes[j]);
      out.weights.push_back(rule.weights[j]);
    }
  return out;
}

inline Complex inner_product(const AnalyticFunction& f, const AnalyticFunction& g,
                             const NodeSet& rule) {
  Complex s{};
  for (std::size_t j = 0; j < rule.size(); ++j)
    s += rule.weights[j] * f(rule.nodes[j]) * std::conj(g(rule.nodes[j]));
  return s;
}

inline double norm2(const AnalyticFunction& f, const NodeSet& rule) {
  double s = 0.0;
  for (std::size_t j = 0; j < rule.size(); ++j) s += rule.weights[j] * std::norm(f(rule.nodes[j]));
  return s;
}

// ---------------------------------------------------------------------------
// Fourier transform
// ---------------------------------------------------------------------------

/// Frequency grid paired with a spatial grid: spacing 1/L on each axis and
/// frequencies (k - N/2)/L, k = 0..N-1, laid out with the midpoint convention.
inline Grid frequency_grid(const Grid& spatial) {
  auto axis_box = [&](int axis) {
    const double L = spatial.length(axis);
    const auto N = static_cast<double>(spatial.points(axis));
    return std::pair{-(N + 1.0) / (2.0 * L), (N - 1.0) / (2.0 * L)};
  };
  if (spatial.dimension() == 1) {
    auto [lo, hi] = axis_box(0);
    return Grid(lo, hi, spatial.points(0));
  }
  auto [lo0, hi0] = axis_box(0);
  auto [lo1, hi1] = axis_box(1);
  return Grid(Point{lo0, lo1}, Point{hi0, hi1}, {spatial.points(0), spatial.points(1)});
}

namespace detail {

// f^(xi_k) = h exp(-2 pi i xi_k x_0) sum_j f_j (-1)^j exp(-2 pi i k j / N),
// where xi_k = (k - N/2)/L and x_0 is the first sample.
inline void transform_line(std::vector<Complex>& line, double x0, double h, double L,
                           Eigen::FFT<double>& fft) {
  const std::size_t N = line.size();
  std::vector<Complex> in(N), out;
  for (std::size_t j = 0; j < N; ++j) {
    // (-1)^j generalised to exp(i pi j) so odd N stays correct.
    in[j] = line[j] * unit_phase(0.5 * static_cast<double>(j));
  }
  fft.fwd(out, in);
  for (std::size_t k = 0; k < N; ++k) {
    const double xi = (static_cast<double>(k) - static_cast<double>(N) / 2.0) / L;
    line[k] = h * out[k] * unit_phase(-xi * x0);
  }
}

}  // namespace detail

/// Samples of f^ on frequency_grid(f.grid()). Accurate when f is smooth and
/// negligible near the edges of its box; the caller is responsible for that.
inline SampledFunction fourier_transform(const SampledFunction& f) {
  const Grid& g = f.grid();
  Eigen::FFT<double> fft;
  std::vector<Complex> values(f.values().begin(), f.values().end());
  const std::size_t n0 = g.points(0);
  const std::size_t n1 = g.dimension() == 2 ? g.points(1) : 1;
  std::vector<Complex> line;
  for (std::size_t r = 0; r < n1; ++r) {
    line.assign(values.begin() + static_cast<std::ptrdiff_t>(r * n0),
                values.begin() + static_cast<std::ptrdiff_t>((r + 1) * n0));
    detail::transform_line(line, g.coordinate(0, 0), g.spacing(0), g.length(0), fft);
    std::copy(line.begin(), line.end(), values.begin() + static_cast<std::ptrdiff_t>(r * n0));
  }
  if (g.dimension() == 2) {
    line.resize(n1);
    for (std::size_t c = 0; c < n0; ++c) {
      for (std::size_t r = 0; r < n1; ++r) line[r] = values[c + r * n0];
      detail::transform_line(line, g.coordinate(1, 0), g.spacing(1), g.length(1), fft);
      for (std::size_t r = 0; r < n1; ++r) values[c + r * n0] = line[r];
    }
  }
  return SampledFunction(frequency_grid(g), std::move(values));
}

/// f^(xi) at an arbitrary frequency by the midpoint sum of the defining
/// integral (one-dimensional).
inline Complex fourier_transform_at(const SampledFunction& f, double xi) {
  const Grid& g = f.grid();
  if (g.dimension() != 1) throw std::invalid_argument("fourier_transform_at: 1D only");
  Complex s{};
  for (std::size_t j = 0; j < g.size(); ++j) s += f[j] * unit_phase(-xi * g.coordinate(0, j));
  return s * g.spacing(0);
}

// ---------------------------------------------------------------------------
// Haar integrals over parameter boxes
// ---------------------------------------------------------------------------

enum class AxisScale { Additive, Multiplicative };

/// One axis of a group-parameter box. Multiplicative axes are split into
/// panels uniform in log(a); `both_signs` mirrors the nodes onto negative a.
struct ParameterAxis {
  double lower = 0.0;
  double upper = 1.0;
  AxisScale scale = AxisScale::Additive;
  QuadratureRule rule{QuadratureKind::GaussLegendreComposite, 1, 8};
  bool both_signs = false;

  static ParameterAxis additive(double lo, double hi, QuadratureRule r) {
    return {lo, hi, AxisScale::Additive, r, false};
  }
  static ParameterAxis multiplicative(double lo, double hi, QuadratureRule r, bool both = false) {
    return {lo, hi, AxisScale::Multiplicative, r, both};
  }

  NodeSet nodes() const {
    if (scale == AxisScale::Additive) return line_rule(lower, upper, rule);
    if (!(lower > 0.0)) throw std::invalid_argument("multiplicative axis must stay above 0");
    NodeSet logs = line_rule(std::log(lower), std::log(upper), rule);
    NodeSet out;
    for (std::size_t j = 0; j < logs.size(); ++j) {
      const double a = std::exp(logs.nodes[j][0]);
      out.nodes.push_back({a, 0.0});
      out.weights.push_back(logs.weights[j] * a);
    }
    if (!both_signs) return out;
    NodeSet mirrored;
    for (std::size_t j = out.size(); j-- > 0;) {
      mirrored.nodes.push_back({-out.nodes[j][0], 0.0});
      mirrored.weights.push_back(out.weights[j]);
    }
    mirrored.nodes.insert(mirrored.nodes.end(), out.nodes.begin(), out.nodes.end());
    mirrored.weights.insert(mirrored.weights.end(), out.weights.begin(), out.weights.end());
    return mirrored;
  }
};

/// Tensor-product quadrature over a box of group parameters (last axis
/// fastest). Weights are Lebesgue weights; Haar densities are applied by
/// the caller.
class ParameterGrid {
 public:
  ParameterGrid() = default;
  explicit ParameterGrid(std::vector<ParameterAxis> axes) : axes_(std::move(axes)) {
    if (axes_.empty()) throw std::invalid_argument("parameter grid needs at least one axis");
    std::vector<NodeSet> per_axis;
    std::size_t total = 1;
    for (const auto& ax : axes_) {
      per_axis.push_back(ax.nodes());
      total *= per_axis.back().size();
    }
    const std::size_t d = axes_.size();
    coords_.resize(total * d);
    weights_.resize(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      double w = 1.0;
      for (std::size_t ax = d; ax-- > 0;) {
        const std::size_t k = rest % per_axis[ax].size();
        rest /= per_axis[ax].size();
        coords_[idx * d + ax] = per_axis[ax].nodes[k][0];
        w *= per_axis[ax].weights[k];
      }
      weights_[idx] = w;
    }
  }

  std::size_t dimension() const { return axes_.size(); }
  std::size_t size() const { return weights_.size(); }
  const std::vector<ParameterAxis>& axes() const { return axes_; }
  std::span<const double> node(std::size_t idx) const {
    return {coords_.data() + idx * axes_.size(), axes_.size()};
  }
  double weight(std::size_t idx) const { return weights_[idx]; }

 private:
  std::vector<ParameterAxis> axes_;
  std::vector<double> coords_;
  std::vector<double> weights_;
};

using DensityFunction = std::function<double(std::span<const double>)>;

/// sum_i values[i] * density(node_i) * weight_i over the parameter grid.
inline double integrate_haar(const ParameterGrid& grid, std::span<const double> values,
                             const DensityFunction& density) {
  if (values.size() != grid.size())
    throw std::invalid_argument("integrate_haar: value count does not match parameter grid");
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = density(grid.node(i));
    if (!std::isfinite(d))
      throw std::domain_error("integrate_haar: non-finite density at a quadrature node");
    s += values[i] * d * grid.weight(i);
  }
  return s;
}

template <class Integrand>
  requires std::invocable<Integrand&, std::span<const double>>
double integrate_haar(const ParameterGrid& grid, Integrand&& integrand,
                      const DensityFunction& density) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = integrand(grid.node(i));
  return integrate_haar(grid, values, density);
}

}  // namespace lindep
