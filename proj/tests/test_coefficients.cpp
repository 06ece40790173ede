#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "lindep/certificate.hpp"
#include "lindep/coefficients.hpp"
#include "lindep/functions.hpp"
#include "lindep/suites.hpp"

using namespace lindep;

namespace {

constexpr double pi = std::numbers::pi;
const double r2 = std::pow(2.0, -0.5);

DependencyCertificate chi_certificate(std::vector<Term> terms) {
  return {std::move(terms), HPiSpace{RepresentationTag::affine(), functions::indicator(), Grid(-1.0, 2.0, 1024)}};
}

// Trapezoid rule in s = log xi of |spec(e^s)|^2 on [log lo, log hi].
template <class F>
double log_trapezoid(F&& spec, double lo, double hi, int n) {
  const double a = std::log(lo), b = std::log(hi), h = (b - a) / n;
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 0.5 : 1.0;
    s += w * std::norm(spec(std::exp(a + k * h)));
  }
  return s * h;
}

}  // namespace

TEST(Validate, RejectsMalformedCertificates) {
  EXPECT_THROW(validate(chi_certificate({})), malformed_certificate);
  EXPECT_THROW(validate(chi_certificate({{0.0, AffineElement{1.0, 0.0}}})), malformed_certificate);
  EXPECT_THROW(validate(chi_certificate({{1.0, AffineElement{1.0, 0.0}}, {-1.0, AffineElement{1.0, 0.0}}})),
               malformed_certificate);
  EXPECT_THROW(validate(chi_certificate({{1.0, WeylHeisenbergElement{}}})), malformed_certificate);
  DependencyCertificate plus{{{1.0, AffineElement{-1.0, 0.0}}},
                             HPiSpace{RepresentationTag::affine_plus(), functions::indicator_hat(), Grid(0.0, 4.0, 64)}};
  EXPECT_THROW(validate(plus), malformed_certificate);
}

TEST(Verify, AffineIndicatorRelationIsExact) {
  const auto cert = chi_certificate({{1.0, AffineElement{1.0, 0.0}}, {-r2, AffineElement{0.5, 0.0}}, {-r2, AffineElement{0.5, 0.5}}});
  EXPECT_EQ(residual_unnormalized(cert), 0.0);
  EXPECT_EQ(verify(cert), 0.0);
}

TEST(Verify, WrongCoefficientGivesHandComputedResidual) {
  // chi - sqrt(2) chi(2x) - chi(2x-1): residual 1 - sqrt(2) on [0, 1/2), 0 elsewhere.
  const auto cert = chi_certificate({{1.0, AffineElement{1.0, 0.0}}, {-1.0, AffineElement{0.5, 0.0}}, {-r2, AffineElement{0.5, 0.5}}});
  const auto field = residual_field(cert);
  EXPECT_NEAR(field.max_abs_residual(), std::sqrt(2.0) - 1.0, 1e-15);
  EXPECT_NEAR(verify(cert), (std::sqrt(2.0) - 1.0) * std::sqrt(0.5), 1e-14);
}

TEST(Verify, VanishingTargetThrows) {
  DependencyCertificate cert{{{1.0, AffineElement{1.0, 0.0}}},
                             HPiSpace{RepresentationTag::affine(), functions::indicator(), Grid(5.0, 6.0, 16)}};
  EXPECT_THROW(verify(cert), malformed_certificate);
}

TEST(Verify, PiPlusFourierRelation) {
  EXPECT_LT(verify(suites::pi_plus_certificate()), 1e-14);
}

TEST(Transfer, KeepsTermsAndVerifiesOnMatrixCoefficients) {
  const auto cert = suites::affine_chi_certificate();
  const auto moved = transfer_certificate(cert, functions::gaussian_derivative(), suites::transfer_grid(),
                                          suites::unit_interval_rule());
  ASSERT_EQ(moved.terms.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(moved.terms[k].c, cert.terms[k].c);
    EXPECT_TRUE(same_element(moved.terms[k].g, cert.terms[k].g, 0.0));
  }
  EXPECT_FALSE(moved.in_representation_space());
  EXPECT_LT(verify(moved), 1e-10);
}

TEST(Transfer, ResidualFieldMatchesDirectLeftTranslation) {
  const auto cert = suites::affine_chi_certificate();
  auto moved = transfer_certificate(cert, functions::gaussian_derivative(), suites::transfer_grid(),
                                    suites::unit_interval_rule());
  const auto field = residual_field(moved);
  const auto& space = std::get<L2GSpace>(moved.space);
  for (std::size_t i = 0; i < space.grid.size(); i += 97) {
    const auto p = space.grid.node(i);
    const AffineElement x{p[0], p[1]};
    Complex want{};
    for (const auto& t : moved.terms) {
      const auto& g = std::get<AffineElement>(t.g);
      // g^{-1} x = (x.a / g.a, (x.b - g.b) / g.a)
      want += t.c * space.target(AffineElement{x.a / g.a, (x.b - g.b) / g.a});
    }
    EXPECT_NEAR(std::abs(field.residual[i] - want), 0.0, 1e-15);
  }
}

TEST(Transfer, RefusesUnverifiedInput) {
  const auto bad = chi_certificate({{1.0, AffineElement{1.0, 0.0}}, {-1.0, AffineElement{0.5, 0.0}}});
  EXPECT_THROW(transfer_certificate(bad, functions::gaussian_derivative(), suites::transfer_grid()),
               unverified_certificate);
}

TEST(Admissibility, DerivativeOfGaussianHasConstantOne) {
  const auto u = SampledFunction::sample(Grid(-8.0, 8.0, 1024), functions::gaussian_derivative());
  const auto r = admissibility_constant(RepresentationTag::affine(), u);
  EXPECT_TRUE(r.convergent);
  EXPECT_NEAR(r.constant, 1.0, 1e-6);
}

TEST(Admissibility, AgreesWithIndependentLogTrapezoid) {
  const auto u = SampledFunction::sample(Grid(-8.0, 8.0, 1024), functions::bump_derivative());
  const auto r = admissibility_constant(RepresentationTag::affine(), u);
  const double oracle = log_trapezoid([&](double xi) { return std::abs(fourier_transform_at(u, xi)); }, r.xi_min, r.xi_max, 20000) +
                        log_trapezoid([&](double xi) { return std::abs(fourier_transform_at(u, -xi)); }, r.xi_min, r.xi_max, 20000);
  EXPECT_NEAR(r.constant, oracle, 1e-6 * oracle);
  EXPECT_TRUE(r.convergent);
}

TEST(Admissibility, PiPlusFormulaIsOneSided) {
  // Half of the two-sided constant of the derivative of the Gaussian.
  const auto r = admissibility_constant(RepresentationTag::affine_plus(), functions::gaussian_derivative_hat());
  EXPECT_NEAR(r.constant, 0.5, 1e-6);
  EXPECT_FALSE(r.both_sides);
}

TEST(Admissibility, NonZeroMeanDiverges) {
  const auto u = SampledFunction::sample(Grid(-8.0, 8.0, 1024), functions::gaussian());
  const auto r = admissibility_constant(RepresentationTag::affine(), u);
  EXPECT_FALSE(r.convergent);
  EXPECT_GT(r.inner_tail, 1e-3);
}

TEST(Admissibility, ErrorPaths) {
  const Grid g(-1.0, 1.0, 8);
  EXPECT_THROW(admissibility_constant(RepresentationTag::affine(), SampledFunction(g)), std::invalid_argument);
  EXPECT_THROW(admissibility_constant(RepresentationTag::schroedinger(1), SampledFunction::sample(g, functions::gaussian())),
               std::invalid_argument);
  AdmissibilityOptions bad;
  bad.xi_min = 2.0;
  bad.xi_max = 1.0;
  EXPECT_THROW(admissibility_constant(RepresentationTag::affine(), SampledFunction::sample(g, functions::gaussian()), bad),
               std::invalid_argument);
}

TEST(Calderon, QuadraticInTheAnalysedVector) {
  CalderonOptions opt;
  opt.a_panels = 48;
  opt.b_panels = 12;
  const Grid grid(-8.0, 8.0, 512);
  const auto u = functions::gaussian_derivative();
  const AnalyticFunction two_u{1, [u](const Point& x) { return 2.0 * u(x); }};
  const auto s1 = calderon_energy_check(u, u, grid, opt);
  const auto s2 = calderon_energy_check(two_u, u, grid, opt);
  EXPECT_NEAR(s2.lhs / s1.lhs, 4.0, 1e-12);
  EXPECT_NEAR(s2.rhs / s1.rhs, 4.0, 1e-12);
}

TEST(Calderon, ZeroVectorGivesZeroSides) {
  const auto s = calderon_energy_check(functions::constant(0.0), functions::gaussian_derivative(), Grid(-1.0, 1.0, 16));
  EXPECT_EQ(s.lhs, 0.0);
  EXPECT_EQ(s.rhs, 0.0);
}

TEST(Orthogonality, GaussianPairOnReducedBox) {
  OrthogonalityOptions opt;
  opt.panels = 24;
  const auto f = functions::normalized_gaussian();
  const auto s = wh_orthogonality_check(f, f, Grid(-8.0, 8.0, 256), opt);
  EXPECT_NEAR(s.rhs, 1.0, 1e-12);
  EXPECT_NEAR(s.lhs, 1.0, 1e-6);
  EXPECT_THROW(wh_orthogonality_check(functions::gaussian2d(), functions::gaussian2d(), Grid({0, 0}, {1, 1}, {2, 2})),
               std::invalid_argument);
}

TEST(CoefficientCsv, HeaderAndRowCount) {
  const ParameterGrid grid({ParameterAxis::multiplicative(0.5, 2.0, {QuadratureKind::Midpoint, 3, 1}),
                            ParameterAxis::additive(-1.0, 1.0, {QuadratureKind::Midpoint, 2, 1})});
  std::ostringstream os;
  write_coefficient_csv(os, suites::affine_coefficient(), grid);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "a,b,abs_F");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 6);
  const ParameterGrid wrong({ParameterAxis::additive(0.0, 1.0, {QuadratureKind::Midpoint, 2, 1})});
  EXPECT_THROW(write_coefficient_csv(os, suites::affine_coefficient(), wrong), std::invalid_argument);
}
