#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "lindep/dependency.hpp"
#include "lindep/functions.hpp"

using namespace lindep;

namespace {

constexpr double pi = std::numbers::pi;

// Cyclic Jacobi on the real symmetric embedding [[Re, -Im], [Im, Re]] of a
// Hermitian matrix; every eigenvalue of H appears twice.
std::vector<double> jacobi_eigenvalues(const Eigen::MatrixXcd& H) {
  const std::size_t n = static_cast<std::size_t>(H.rows()), m = 2 * n;
  std::vector<std::vector<double>> A(m, std::vector<double>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex z = H(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      A[i][j] = A[i + n][j + n] = z.real();
      A[i + n][j] = z.imag();
      A[i][j + n] = -z.imag();
    }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) off += A[p][q] * A[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) {
        if (std::abs(A[p][q]) < 1e-300) continue;
        const double theta = (A[q][q] - A[p][p]) / (2.0 * A[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = A[k][p], akq = A[k][q];
          A[k][p] = c * akp - s * akq;
          A[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = A[p][k], aqk = A[q][k];
          A[p][k] = c * apk - s * aqk;
          A[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev;
  for (std::size_t i = 0; i < m; i += 1) ev.push_back(A[i][i]);
  std::sort(ev.begin(), ev.end());
  std::vector<double> out;
  for (std::size_t i = 0; i < m; i += 2) out.push_back(ev[i]);
  return out;
}

// G_jk = sum_i w_i v_j(i) conj(v_k(i)), by a plain triple loop.
std::vector<std::vector<Complex>> brute_gram(const std::vector<std::vector<Complex>>& v, const std::vector<double>& w) {
  std::vector<std::vector<Complex>> G(v.size(), std::vector<Complex>(v.size()));
  for (std::size_t j = 0; j < v.size(); ++j)
    for (std::size_t k = 0; k < v.size(); ++k)
      for (std::size_t i = 0; i < w.size(); ++i) G[j][k] += w[i] * v[j][i] * std::conj(v[k][i]);
  return G;
}

Complex phase(double t) { return std::polar(1.0, 2.0 * pi * t); }

}  // namespace

TEST(Refinement, IndicatorHatAndGaussian) {
  const Grid g(-1.0, 3.0, 1024);
  RefinementMask chi;
  chi.upper = {1, 0};
  chi.set({0, 0}, 1.0);
  chi.set({1, 0}, 1.0);
  EXPECT_EQ(verify_refinement(functions::indicator(), g, chi, scalar_scaling(2.0)), 0.0);

  RefinementMask hat;
  hat.upper = {2, 0};
  hat.set({0, 0}, 0.5);
  hat.set({1, 0}, 1.0);
  hat.set({2, 0}, 0.5);
  EXPECT_LT(verify_refinement(functions::hat(), g, hat, scalar_scaling(2.0)), 1e-15);
  EXPECT_LT(verify_refinement(SampledFunction::sample(g, functions::hat()), hat, scalar_scaling(2.0)), 1e-15);

  RefinementMask one;
  one.set({0, 0}, 1.0);
  EXPECT_GT(verify_refinement(functions::gaussian(), Grid(-8.0, 8.0, 1024), one, scalar_scaling(2.0)), 0.1);
}

TEST(Refinement, MaskOutsideBoundsThrows) {
  RefinementMask m;
  m.upper = {1, 0};
  m.set({2, 0}, 1.0);
  EXPECT_THROW(verify_refinement(functions::indicator(), Grid(0.0, 1.0, 8), m, scalar_scaling(2.0)), std::out_of_range);
  RefinementMask wrong_dim;
  wrong_dim.set({0, 0}, 1.0);
  EXPECT_THROW(verify_refinement(functions::gaussian2d(), Grid({0, 0}, {1, 1}, {4, 4}), wrong_dim, scalar_scaling(2.0)),
               std::invalid_argument);
  EXPECT_THROW(verify_refinement(functions::indicator(), Grid(5.0, 6.0, 8), wrong_dim, scalar_scaling(2.0)),
               std::invalid_argument);
}

TEST(ShearletMask, TermsFollowTheParabolicScaling) {
  RefinementMask m;
  m.dimension = 2;
  m.lower = {-2, -2};
  m.upper = {2, 2};
  m.set({1, -1}, 0.5);
  m.set({0, 2}, 0.25);
  const auto cert = shearlet_dependency_from_mask(m, functions::gaussian2d(), Grid({-4, -4}, {4, 4}, {32, 32}));
  ASSERT_EQ(cert.terms.size(), 3u);
  EXPECT_EQ(cert.terms[0].c, Complex(1.0));
  EXPECT_TRUE(same_element(cert.terms[0].g, ShearletElement{}, 0.0));
  const double s = std::pow(4.0, 0.75);
  bool saw_a = false, saw_b = false;
  for (std::size_t k = 1; k < 3; ++k) {
    const auto& e = std::get<ShearletElement>(cert.terms[k].g);
    EXPECT_EQ(e.a, 4.0);
    EXPECT_EQ(e.s, 0.0);
    if (e.t == Point{4.0, -2.0}) saw_a = std::abs(cert.terms[k].c + s * 0.5) < 1e-15;
    if (e.t == Point{0.0, 4.0}) saw_b = std::abs(cert.terms[k].c + s * 0.25) < 1e-15;
  }
  EXPECT_TRUE(saw_a);
  EXPECT_TRUE(saw_b);
  EXPECT_THROW(shearlet_dependency_from_mask(RefinementMask{2}, functions::gaussian2d(), Grid({0, 0}, {1, 1}, {2, 2})),
               std::invalid_argument);
}

TEST(Classify, ThresholdAndFloor) {
  const ProbeOptions o;
  EXPECT_EQ(classify(1e-7, o), Verdict::Independent);
  EXPECT_EQ(classify(1e-12, o), Verdict::Dependent);
  EXPECT_EQ(classify(1e-9, o), Verdict::Inconclusive);
  EXPECT_EQ(to_string(Verdict::Inconclusive), "inconclusive");
}

TEST(GramMatrix, MatchesBruteForceTripleLoop) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> w01(0.1, 1.0);
  for (std::size_t terms = 1; terms <= 6; ++terms) {
    std::vector<std::vector<Complex>> v(terms, std::vector<Complex>(40));
    std::vector<double> w(40);
    for (auto& x : w) x = w01(rng);
    for (auto& row : v)
      for (auto& z : row) z = {n01(rng), n01(rng)};
    const auto G = gram_matrix(v, w);
    const auto B = brute_gram(v, w);
    for (std::size_t j = 0; j < terms; ++j)
      for (std::size_t k = 0; k < terms; ++k)
        EXPECT_NEAR(std::abs(G(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) - B[j][k]), 0.0, 1e-12);
  }
}

TEST(ProbeGram, SpectrumMatchesJacobi) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXcd X(5, 5);
    for (Eigen::Index i = 0; i < 5; ++i)
      for (Eigen::Index j = 0; j < 5; ++j) X(i, j) = {n01(rng), n01(rng)};
    const Eigen::MatrixXcd H = X * X.adjoint();
    const auto probe = probe_gram(H);
    const auto oracle = jacobi_eigenvalues(H);
    ASSERT_EQ(static_cast<std::size_t>(probe.spectrum.size()), oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i)
      EXPECT_NEAR(probe.spectrum[static_cast<Eigen::Index>(i)], oracle[i], 1e-10 * oracle.back());
    EXPECT_NEAR(probe.relative, oracle.front() / oracle.back(), 1e-10);
  }
}

TEST(Probe, GaborGramMatchesClosedForm) {
  const HPiSpace space{RepresentationTag::schroedinger(1), functions::normalized_gaussian(), Grid(-8.0, 8.0, 1024)};
  std::vector<GroupElement> els;
  std::vector<std::pair<double, double>> pts;
  for (double a : {-0.5, 0.0, 0.5})
    for (double b : {-0.5, 0.0, 0.5}) {
      els.push_back(WeylHeisenbergElement(0.0, a, b));
      pts.emplace_back(a, b);
    }
  std::vector<double> w;
  const auto G = gram_matrix(translated_samples(space, els, w), w);
  for (std::size_t j = 0; j < pts.size(); ++j)
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const auto [a1, b1] = pts[j];
      const auto [a2, b2] = pts[k];
      const double da = a1 - a2, db = b1 - b2;
      const Complex want =
          phase(-(a1 * b1 - a2 * b2)) * phase(0.5 * da * (b1 + b2)) * std::exp(-pi * (da * da + db * db) / 2.0);
      EXPECT_NEAR(std::abs(G(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) - want), 0.0, 1e-12);
    }
  const auto probe = probe_independence(space, els);
  EXPECT_EQ(probe.verdict, Verdict::Independent);
  EXPECT_GT(probe.relative, 1e-6);
}

TEST(Probe, CentralPhaseMakesTranslatesDependent) {
  const HPiSpace space{RepresentationTag::schroedinger(1), functions::normalized_gaussian(), Grid(-8.0, 8.0, 512)};
  const std::vector<GroupElement> els{WeylHeisenbergElement(0.0, 0.5, 0.0), WeylHeisenbergElement(0.25, 0.5, 0.0)};
  const auto probe = probe_independence(space, els);
  EXPECT_EQ(probe.verdict, Verdict::Dependent);
}

TEST(Probe, ShearletSystemIsIndependent) {
  const HPiSpace space{RepresentationTag::shearlet(), functions::gaussian2d(), Grid({-6.0, -6.0}, {6.0, 6.0}, {96, 96})};
  std::vector<GroupElement> els;
  for (int n = -1; n <= 1; ++n)
    for (double t1 : {0.0, 1.0})
      for (double t2 : {0.0, 1.0}) els.push_back(ShearletElement{1.0, static_cast<double>(n), {t1, t2}});
  EXPECT_EQ(probe_independence(space, els).verdict, Verdict::Independent);
}

TEST(Probe, ErrorPaths) {
  const HPiSpace space{RepresentationTag::affine(), functions::gaussian(), Grid(-4.0, 4.0, 64)};
  EXPECT_THROW(probe_independence(space, {}), std::invalid_argument);
  EXPECT_THROW(probe_independence(space, {AffineElement{1.0, 0.0}, AffineElement{1.0, 0.0}}), std::invalid_argument);
  const HPiSpace zero{RepresentationTag::affine(), functions::constant(0.0), Grid(-4.0, 4.0, 64)};
  EXPECT_THROW(probe_independence(zero, {AffineElement{1.0, 0.0}}), std::invalid_argument);
}
