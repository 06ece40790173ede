// Library tour: a dependency certificate, its transfer to matrix
// coefficients, an independence probe and a group-ring kernel.

#include <iostream>

#include "lindep/lindep.hpp"

int main() {
  using namespace lindep;

  const auto cert = suites::affine_chi_certificate();
  std::cout << "affine certificate, unnormalized residual: " << residual_unnormalized(cert) << '\n';

  const auto moved = transfer_certificate(cert, functions::gaussian_derivative(), suites::transfer_grid(),
                                          suites::unit_interval_rule());
  std::cout << "on F = <chi, pi(a,b) u>, relative residual:  " << verify(moved) << '\n';

  std::vector<GroupElement> shifts;
  for (int n = -3; n <= 3; ++n) shifts.push_back(AffineElement{1.0, static_cast<double>(n)});
  const auto probe =
      probe_independence(L2GSpace{suites::affine_coefficient(), suites::z_translation_grid()}, shifts);
  std::cout << "Z-translates of F: relative min eigenvalue " << probe.relative << " -> " << to_string(probe.verdict)
            << '\n';

  const auto alpha = suites::geometric_sum(CyclicElement(1, 3), 3);
  const auto rep = zero_divisor_probe(alpha, 0);
  std::cout << "kernel of 1 + g + g^2 in C[Z/3]:\n";
  for (const auto& [g, c] : rep.witness->terms()) std::cout << "  " << c << " * " << format_element(g) << '\n';
}
