#pragma once

// Closed-form test functions used by the suites and the CLI.

#include <cmath>
#include <numbers>

#include "lindep/numerics.hpp"

namespace lindep::functions {

/// Indicator of [lo, hi).
inline AnalyticFunction indicator(double lo = 0.0, double hi = 1.0) {
  return {1, [lo, hi](const Point& x) { return Complex(x[0] >= lo && x[0] < hi ? 1.0 : 0.0); }};
}

/// e^{-pi x^2}; its own Fourier transform.
inline AnalyticFunction gaussian() {
  return {1, [](const Point& x) { return Complex(std::exp(-std::numbers::pi * x[0] * x[0])); }};
}

/// 2^{1/4} e^{-pi x^2}, unit L2 norm.
inline AnalyticFunction normalized_gaussian() {
  const double c = std::pow(2.0, 0.25);
  return {1, [c](const Point& x) { return Complex(c * std::exp(-std::numbers::pi * x[0] * x[0])); }};
}

/// sqrt(2 pi) x e^{-pi x^2}. Admissible for the affine group with
/// int |f^(xi)|^2 / |xi| dxi = 1.
inline AnalyticFunction gaussian_derivative() {
  const double c = std::sqrt(2.0 * std::numbers::pi);
  return {1, [c](const Point& x) { return Complex(c * x[0] * std::exp(-std::numbers::pi * x[0] * x[0])); }};
}

/// Fourier transform of sqrt(2 pi) x e^{-pi x^2}: -i sqrt(2 pi) xi e^{-pi xi^2}.
inline AnalyticFunction gaussian_derivative_hat() {
  const double c = std::sqrt(2.0 * std::numbers::pi);
  return {1, [c](const Point& x) {
            return Complex(0.0, -c * x[0] * std::exp(-std::numbers::pi * x[0] * x[0]));
          }};
}

/// (e^{i theta} - 1) without cancellation for small theta.
inline Complex expm1_i(double theta) {
  const double s = std::sin(0.5 * theta);
  return {-2.0 * s * s, std::sin(theta)};
}

/// Fourier transform of the indicator of [0,1):
/// (e^{-2 pi i xi} - 1) / (-2 pi i xi), equal to 1 at xi = 0.
inline Complex indicator_hat_value(double xi) {
  if (xi == 0.0) return {1.0, 0.0};
  const double theta = -2.0 * std::numbers::pi * xi;
  return expm1_i(theta) / Complex(0.0, theta);
}

inline AnalyticFunction indicator_hat() {
  return {1, [](const Point& x) { return indicator_hat_value(x[0]); }};
}

/// Triangle on [lo, hi] with peak 1 at the midpoint.
inline AnalyticFunction hat(double lo = 0.0, double hi = 2.0) {
  return {1, [lo, hi](const Point& x) {
            const double mid = 0.5 * (lo + hi);
            const double half = 0.5 * (hi - lo);
            const double v = 1.0 - std::abs(x[0] - mid) / half;
            return Complex(v > 0.0 ? v : 0.0);
          }};
}

/// Smooth compactly supported bump exp(-1/(1-s^2)) on (lo, hi).
inline AnalyticFunction bump(double lo = -1.0, double hi = 1.0) {
  return {1, [lo, hi](const Point& x) {
            const double s = (2.0 * x[0] - lo - hi) / (hi - lo);
            return Complex(std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0);
          }};
}

/// Derivative of the bump: compactly supported with zero mean.
inline AnalyticFunction bump_derivative(double lo = -1.0, double hi = 1.0) {
  return {1, [lo, hi](const Point& x) {
            const double s = (2.0 * x[0] - lo - hi) / (hi - lo);
            if (std::abs(s) >= 1.0) return Complex(0.0);
            const double q = 1.0 - s * s;
            return Complex(-2.0 * s / (q * q) * std::exp(-1.0 / q) * 2.0 / (hi - lo));
          }};
}

inline AnalyticFunction constant(Complex c, int dimension = 1) {
  return {dimension, [c](const Point&) { return c; }};
}

/// e^{-pi |x|^2} on R^2.
inline AnalyticFunction gaussian2d() {
  return {2, [](const Point& x) {
            return Complex(std::exp(-std::numbers::pi * (x[0] * x[0] + x[1] * x[1])));
          }};
}

/// Anisotropic, off-centre Gaussian on R^2 (no symmetry under shears).
inline AnalyticFunction skew_gaussian2d() {
  return {2, [](const Point& x) {
            const double u = x[0] - 0.25;
            const double v = x[1] + 0.125;
            return Complex(std::exp(-std::numbers::pi * (1.5 * u * u + 0.75 * v * v + 0.5 * u * v)));
          }};
}

}  // namespace lindep::functions
