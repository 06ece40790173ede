#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "lindep/functions.hpp"
#include "lindep/groups.hpp"
#include "lindep/numerics.hpp"

using namespace lindep;

namespace {

constexpr double pi = std::numbers::pi;

// Plain Riemann sum of f(x_j) e^{-2 pi i xi x_j} h with std::polar phases.
Complex direct_transform(const SampledFunction& f, double xi) {
  const Grid& g = f.grid();
  Complex s{};
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.lower() + (static_cast<double>(j) + 0.5) * g.spacing();
    s += f[j] * std::polar(1.0, -2.0 * pi * xi * x);
  }
  return s * g.spacing();
}

}  // namespace

TEST(Grid, MidpointCoordinates) {
  const Grid g(-1.0, 2.0, 6);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.5);
  EXPECT_DOUBLE_EQ(g.coordinate(0, 0), -0.75);
  EXPECT_DOUBLE_EQ(g.coordinate(0, 5), 1.75);
  EXPECT_EQ(g.size(), 6u);
}

TEST(Grid, AxisZeroRunsFastest) {
  const Grid g({0.0, 0.0}, {2.0, 3.0}, {2, 3});
  ASSERT_EQ(g.size(), 6u);
  EXPECT_DOUBLE_EQ(g.point(1)[0], 1.5);
  EXPECT_DOUBLE_EQ(g.point(1)[1], 0.5);
  EXPECT_DOUBLE_EQ(g.point(2)[0], 0.5);
  EXPECT_DOUBLE_EQ(g.point(2)[1], 1.5);
}

TEST(Grid, RejectsEmptyBoxes) {
  EXPECT_THROW(Grid(1.0, 1.0, 4), std::invalid_argument);
  EXPECT_THROW(Grid(0.0, 1.0, 0), std::invalid_argument);
}

TEST(UnitPhase, MatchesPolarForModerateArguments) {
  for (double t : {-3.7, -0.25, 0.0, 0.125, 0.5, 2.3}) {
    const Complex z = unit_phase(t);
    const Complex w = std::polar(1.0, 2.0 * pi * t);
    EXPECT_NEAR(std::abs(z - w), 0.0, 1e-14) << t;
  }
}

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  for (std::size_t n : {1u, 2u, 5u, 10u}) {
    const auto [x, w] = gauss_legendre(n);
    for (std::size_t p = 0; p < 2 * n; ++p) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += w[i] * std::pow(x[i], static_cast<double>(p));
      const double exact = p % 2 ? 0.0 : 2.0 / static_cast<double>(p + 1);
      EXPECT_NEAR(s, exact, 1e-13) << "n=" << n << " p=" << p;
    }
  }
  EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
}

TEST(LineRule, BreakpointsAlignPanels) {
  const std::vector<double> bp{0.3};
  const NodeSet r = line_rule(0.0, 1.0, {QuadratureKind::GaussLegendreComposite, 3, 4}, bp);
  double below = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r.nodes[j][0] < 0.3) below += r.weights[j];
  EXPECT_NEAR(below, 0.3, 1e-15);
}

TEST(LineRule, MidpointIntegratesLinearExactly) {
  const NodeSet r = line_rule(-2.0, 5.0, {QuadratureKind::Midpoint, 7, 3});
  double s = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) s += r.weights[j] * (3.0 * r.nodes[j][0] + 1.0);
  EXPECT_NEAR(s, 1.5 * (25.0 - 4.0) + 7.0, 1e-12);
}

TEST(InnerProduct, ConjugateLinearInSecondSlot) {
  const Grid g(0.0, 1.0, 16);
  const auto f = SampledFunction::sample(g, [](const Point& x) { return Complex(x[0], 1.0); });
  auto h = f;
  for (auto& v : h.values()) v *= Complex(0.0, 2.0);
  const Complex a = inner_product(f, h);
  const Complex b = inner_product(f, f);
  EXPECT_NEAR(std::abs(a - Complex(0.0, -2.0) * b), 0.0, 1e-14);
}

TEST(FourierTransform, MatchesDirectSumOnFrequencyGrid) {
  const Grid g(-6.0, 6.0, 96);
  const auto f = SampledFunction::sample(g, [](const Point& x) {
    return Complex(std::exp(-pi * (x[0] - 0.3) * (x[0] - 0.3)), x[0] * std::exp(-pi * x[0] * x[0]));
  });
  const auto F = fourier_transform(f);
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double xi = F.grid().coordinate(0, k);
    EXPECT_NEAR(std::abs(F[k] - direct_transform(f, xi)), 0.0, 1e-12) << k;
  }
}

TEST(FourierTransform, GaussianIsSelfDual) {
  const Grid g(-8.0, 8.0, 256);
  const auto F = fourier_transform(SampledFunction::sample(g, functions::gaussian()));
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double xi = F.grid().coordinate(0, k);
    EXPECT_NEAR(std::abs(F[k] - std::exp(-pi * xi * xi)), 0.0, 1e-12);
  }
}

TEST(FourierTransform, TwoDimensionalSeparableGaussian) {
  const Grid g({-6.0, -6.0}, {6.0, 6.0}, {128, 128});
  const auto F = fourier_transform(SampledFunction::sample(g, functions::gaussian2d()));
  for (std::size_t k = 0; k < F.size(); k += 37) {
    const Point xi = F.grid().point(k);
    EXPECT_NEAR(std::abs(F[k] - std::exp(-pi * (xi[0] * xi[0] + xi[1] * xi[1]))), 0.0, 1e-12);
  }
}

TEST(FourierTransform, PointEvaluationMatchesAnalyticDerivativeTransform) {
  const Grid g(-8.0, 8.0, 1024);
  const auto f = SampledFunction::sample(g, functions::gaussian_derivative());
  const auto fhat = functions::gaussian_derivative_hat();
  for (double xi : {-3.0, -0.7, 0.0, 0.01, 1.5, 10.0}) {
    EXPECT_NEAR(std::abs(fourier_transform_at(f, xi) - fhat(xi)), 0.0, 1e-12) << xi;
  }
}

TEST(ParameterGrid, LeftHaarVolumeOfAffineBox) {
  // int_1^2 int_0^1 da db / a^2 = 1/2
  const ParameterGrid box({ParameterAxis::multiplicative(1.0, 2.0, {QuadratureKind::GaussLegendreComposite, 4, 8}),
                           ParameterAxis::additive(0.0, 1.0, {QuadratureKind::GaussLegendreComposite, 1, 2})});
  const double v = integrate_haar(box, [](std::span<const double>) { return 1.0; },
                                  haar_density(GroupKind::Affine, HaarSide::Left));
  EXPECT_NEAR(v, 0.5, 1e-14);
}

TEST(ParameterGrid, MirroredAxisDoublesMeasure) {
  const ParameterAxis one = ParameterAxis::multiplicative(0.5, 4.0, {QuadratureKind::GaussLegendreComposite, 8, 4});
  ParameterAxis both = one;
  both.both_signs = true;
  const auto a = one.nodes();
  const auto b = both.nodes();
  ASSERT_EQ(b.size(), 2 * a.size());
  double sa = 0.0, sb = 0.0;
  for (double w : a.weights) sa += w;
  for (double w : b.weights) sb += w;
  EXPECT_NEAR(sa, 3.5, 1e-13);
  EXPECT_NEAR(sb, 7.0, 1e-13);
  EXPECT_LT(b.nodes.front()[0], 0.0);
}

TEST(ParameterGrid, LastAxisRunsFastest) {
  const ParameterGrid g({ParameterAxis::additive(0.0, 2.0, {QuadratureKind::Midpoint, 2, 1}),
                         ParameterAxis::additive(0.0, 3.0, {QuadratureKind::Midpoint, 3, 1})});
  ASSERT_EQ(g.size(), 6u);
  EXPECT_DOUBLE_EQ(g.node(1)[0], 0.5);
  EXPECT_DOUBLE_EQ(g.node(1)[1], 1.5);
}

TEST(IntegrateHaar, RejectsMismatchAndNonFiniteDensity) {
  const ParameterGrid g({ParameterAxis::additive(0.0, 1.0, {QuadratureKind::Midpoint, 4, 1})});
  const std::vector<double> three(3, 1.0);
  EXPECT_THROW(integrate_haar(g, three, [](std::span<const double>) { return 1.0; }), std::invalid_argument);
  EXPECT_THROW(integrate_haar(g, [](std::span<const double>) { return 1.0; },
                              [](std::span<const double>) { return std::numeric_limits<double>::infinity(); }),
               std::domain_error);
}

TEST(RestrictToSupport, DropsNodesWhereFunctionVanishes) {
  const NodeSet r = line_rule(-1.0, 2.0, {QuadratureKind::GaussLegendreComposite, 3, 4});
  const NodeSet s = restrict_to_support(r, functions::indicator());
  EXPECT_EQ(s.size(), 4u);
  double w = 0.0;
  for (double x : s.weights) w += x;
  EXPECT_NEAR(w, 1.0, 1e-14);
}
